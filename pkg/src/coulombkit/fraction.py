"""Fractions whose denominators are products of linear forms.

The denominator is kept factored as a multiset of *atoms*: monic linear
polynomials (leading variable chosen by :func:`coulombkit.poly.var_key`, so
``h`` only leads when it is the whole atom).  Scalar factors are absorbed into
the numerator.  After :meth:`RestrictedFraction.reduce` no atom divides the
numerator; since atoms are irreducible and monic this makes the
representation unique, so equality is structural.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .poly import HBAR, Poly, Scalar, norm_scalar

Atoms = Tuple[Tuple[Poly, int], ...]


def normalize_atom(form: Poly) -> Tuple[Scalar, Poly]:
    """Split a linear form into ``(scalar, monic atom)``.

    A constant form is returned as ``(value, 1)``.
    """
    if form.is_constant():
        c = form.constant_value()
        if not c:
            raise ZeroDivisionError("zero factor in a denominator")
        return c, Poly.const(1)
    if form.degree() != 1:
        raise ValueError(f"denominator factor {form} is not linear")
    lead = form.leading_variable()
    a = form.coefficient(((lead, 1),))
    if a == 1:
        return 1, form
    return a, form * (Fraction(1) / a)


def _atom_sort_key(atom: Poly):
    return str(atom)


def _pack(counts: Mapping[Poly, int]) -> Atoms:
    return tuple(sorted(((a, k) for a, k in counts.items() if k),
                        key=lambda ak: _atom_sort_key(ak[0])))


class RestrictedFraction:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den: Iterable[Tuple[Poly, int]] | Mapping[Poly, int] = (),
                 *, reduced: bool = False):
        num = Poly.coerce(num)
        items = den.items() if isinstance(den, Mapping) else den
        counts: Dict[Poly, int] = {}
        scale = Fraction(1)
        for form, k in items:
            if k < 0:
                raise ValueError("negative multiplicity in a denominator")
            c, atom = normalize_atom(Poly.coerce(form))
            scale *= Fraction(c) ** k
            if not atom.is_constant():
                counts[atom] = counts.get(atom, 0) + k
        if scale != 1:
            num = num * (1 / scale)
        if num.is_zero():
            counts = {}
        self.num = num
        self.den = _pack(counts)
        self._hash = None
        if not reduced:
            self._reduce_in_place()

    @classmethod
    def _raw(cls, num: Poly, counts: Mapping[Poly, int]) -> "RestrictedFraction":
        f = cls.__new__(cls)
        f.num = num
        f.den = () if num.is_zero() else _pack(counts)
        f._hash = None
        return f

    @classmethod
    def poly(cls, p) -> "RestrictedFraction":
        return cls._raw(Poly.coerce(p), {})

    @classmethod
    def coerce(cls, x) -> "RestrictedFraction":
        if isinstance(x, RestrictedFraction):
            return x
        return cls.poly(x)

    def _reduce_in_place(self):
        if not self.den:
            return
        num = self.num
        counts = dict(self.den)
        for atom in list(counts):
            while counts[atom]:
                q = num.divide_linear(atom)
                if q is None:
                    break
                num = q
                counts[atom] -= 1
        self.num = num
        self.den = () if num.is_zero() else _pack(counts)

    def reduce(self) -> "RestrictedFraction":
        """Cancel every atom dividing the numerator.  Idempotent."""
        out = RestrictedFraction._raw(self.num, dict(self.den))
        out._reduce_in_place()
        return out

    # inspection
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def to_poly(self) -> Poly:
        if self.den:
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def atoms(self) -> Dict[Poly, int]:
        return dict(self.den)

    def denominator(self) -> Poly:
        out = Poly.const(1)
        for a, k in self.den:
            out = out * a ** k
        return out

    def variables(self) -> set:
        out = self.num.variables()
        for a, _ in self.den:
            out |= a.variables()
        return out

    def degree(self) -> int | None:
        """Numerator degree minus denominator degree, None if inhomogeneous."""
        if self.num.is_zero() or not self.num.is_homogeneous():
            return None
        return self.num.degree() - sum(k for _, k in self.den)

    # arithmetic
    def __add__(self, other):
        other = RestrictedFraction.coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RestrictedFraction._from_unreduced(self.num + other.num, dict(self.den))
        a, b = dict(self.den), dict(other.den)
        common = dict(a)
        for atom, k in b.items():
            if k > common.get(atom, 0):
                common[atom] = k
        na = self.num * _product(common, a)
        nb = other.num * _product(common, b)
        return RestrictedFraction._from_unreduced(na + nb, common)

    __radd__ = __add__

    def __neg__(self):
        return RestrictedFraction._raw(-self.num, dict(self.den))

    def __sub__(self, other):
        return self + (-RestrictedFraction.coerce(other))

    def __rsub__(self, other):
        return RestrictedFraction.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RestrictedFraction):
            if isinstance(other, Poly):
                other = RestrictedFraction.poly(other)
            else:
                c = norm_scalar(other)
                return RestrictedFraction._raw(self.num * c, dict(self.den))
        if self.is_zero() or other.is_zero():
            return RestrictedFraction.poly(0)
        counts = dict(self.den)
        for atom, k in other.den:
            counts[atom] = counts.get(atom, 0) + k
        return RestrictedFraction._from_unreduced(self.num * other.num, counts)

    __rmul__ = __mul__

    def divide_by_atom(self, form: Poly, k: int = 1) -> "RestrictedFraction":
        """Multiply by ``form**-k`` for a linear (or nonzero constant) form."""
        return self * RestrictedFraction(1, [(form, k)], reduced=True)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = RestrictedFraction.poly(1)
        for _ in range(n):
            out = out * self
        return out

    @classmethod
    def _from_unreduced(cls, num: Poly, counts: Dict[Poly, int]) -> "RestrictedFraction":
        f = cls._raw(num, counts)
        f._reduce_in_place()
        return f

    # substitution
    def substitute(self, mapping: Mapping[str, Poly]) -> "RestrictedFraction":
        """Apply a substitution under which every atom stays linear or constant."""
        num = self.num.substitute(mapping)
        den = [(a.substitute(mapping), k) for a, k in self.den]
        return RestrictedFraction(num, den)

    def shift_substitute(self, assignments: Mapping[str, Scalar], hbar: str = HBAR) -> "RestrictedFraction":
        if not assignments:
            return self
        h = Poly.var(hbar)
        mapping = {v: Poly.var(v) + h * c for v, c in assignments.items() if c}
        if not mapping:
            return self
        num = self.num.substitute(mapping)
        if not any(a.variables() & mapping.keys() for a, _ in self.den):
            return RestrictedFraction._from_unreduced(num, dict(self.den))
        return RestrictedFraction(num, [(a.substitute(mapping), k) for a, k in self.den])

    def map_numerator(self, fn) -> "RestrictedFraction":
        return RestrictedFraction._from_unreduced(fn(self.num), dict(self.den))

    # comparison / text
    def __eq__(self, other):
        if not isinstance(other, RestrictedFraction):
            try:
                other = RestrictedFraction.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        if not self.den:
            return f"({self.num})"
        factors = "*".join(f"({a})" if k == 1 else f"({a})^{k}" for a, k in self.den)
        return f"({self.num})/({factors})"

    def __repr__(self):
        return f"RestrictedFraction({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "RestrictedFraction":
        text = text.strip()
        num_text, den_text = _split_fraction(text)
        num = Poly.parse(num_text)
        if den_text is None:
            return cls.poly(num)
        den = []
        for factor in _split_top(den_text, "*"):
            factor = factor.strip()
            k = 1
            body = factor
            if not factor.endswith(")") and "^" in factor:
                body, exp = factor.rsplit("^", 1)
                k = int(exp)
            den.append((Poly.parse(body), k))
        return cls(num, den)


def _product(target: Mapping[Poly, int], have: Mapping[Poly, int]) -> Poly:
    out = Poly.const(1)
    for atom, k in target.items():
        extra = k - have.get(atom, 0)
        if extra:
            out = out * atom ** extra
    return out


def _split_top(text: str, sep: str):
    depth = 0
    start = 0
    parts = []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def _split_fraction(text: str):
    """Split ``(num)/(den)`` at its top-level slash."""
    parts = _split_top(text, "/")
    if len(parts) == 1:
        return text, None
    if len(parts) != 2:
        raise ValueError(f"cannot parse fraction {text!r}")
    num, den = parts[0].strip(), parts[1].strip()
    if den.startswith("(") and den.endswith(")") and _balanced_outer(den):
        den = den[1:-1]
    return num, den


def _balanced_outer(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(text) - 1:
                return False
    return True


def fraction_reduce(f: RestrictedFraction) -> RestrictedFraction:
    return f.reduce()
