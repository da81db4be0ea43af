"""Sparse multivariate polynomials over the rationals with named variables.

A monomial is a tuple of ``(name, exponent)`` pairs sorted by name; a
polynomial maps monomials to nonzero coefficients.  Coefficients are kept as
``int`` whenever they are integral and as :class:`fractions.Fraction`
otherwise, which keeps the common case fast without giving up exactness.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

HBAR = "h"

Monomial = Tuple[Tuple[str, int], ...]
Scalar = Union[int, Fraction]

_VAR_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*(\[[^\]]*\])?$")
_INTERNED: set = set()


class UnknownVariableError(KeyError):
    pass


def norm_scalar(c) -> Scalar:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return norm_scalar(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return norm_scalar(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def var_key(name: str):
    """Ordering used to pick leading variables: hbar always comes last."""
    return (name == HBAR, name)


def w(vertex, r: int) -> str:
    return f"w[{vertex},{r}]"


def t(k: int) -> str:
    return f"t[{k}]"


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_str(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def _scalar_str(c: Scalar) -> str:
    return str(c)


class Poly:
    """Immutable sparse polynomial.  The zero polynomial has no terms."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, Scalar] = {}
        if terms:
            for m, c in terms.items():
                c = norm_scalar(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Scalar]) -> "Poly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # construction
    @classmethod
    def var(cls, name: str) -> "Poly":
        if not _VAR_RE.match(name):
            raise ValueError(f"bad variable name {name!r}")
        _INTERNED.add(name)
        return cls._raw({((name, 1),): 1})

    @classmethod
    def const(cls, c) -> "Poly":
        c = norm_scalar(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return cls.const(x)

    # inspection
    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), 0)

    def variables(self) -> set:
        out = set()
        for m in self._terms:
            out.update(v for v, _ in m)
        return out

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((_mono_degree(m) for m in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({_mono_degree(m) for m in self._terms}) <= 1

    def coefficient(self, monomial: Monomial) -> Scalar:
        return self._terms.get(tuple(sorted(monomial)), 0)

    # arithmetic
    def __add__(self, other):
        other = Poly.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = norm_scalar(s)
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = norm_scalar(other)
            if not c:
                return Poly._raw({})
            return Poly._raw({m: norm_scalar(v * c) for m, v in self._terms.items()})
        if not self._terms or not other._terms:
            return Poly._raw({})
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Monomial, Scalar] = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly._raw({m: norm_scalar(c) for m, c in out.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = norm_scalar(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (Fraction(1) / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        try:
            return self._terms == Poly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # substitution
    def substitute(self, mapping: Mapping[str, "Poly"]) -> "Poly":
        """Ring homomorphism sending each listed variable to a polynomial."""
        if not mapping:
            return self
        mapping = {k: Poly.coerce(v) for k, v in mapping.items()}
        powers: Dict[Tuple[str, int], Poly] = {}
        acc: Dict[Monomial, Scalar] = {}
        for m, c in self._terms.items():
            kept = []
            factor = None
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = mapping[v] ** e
                    factor = powers[key] if factor is None else factor * powers[key]
                else:
                    kept.append((v, e))
            if factor is None:
                acc[m] = acc.get(m, 0) + c
                continue
            term = factor * Poly._raw({tuple(kept): c})
            for tm, tc in term._terms.items():
                acc[tm] = acc.get(tm, 0) + tc
        return Poly({m: c for m, c in acc.items() if c})

    def shift_substitute(self, assignments: Mapping[str, Scalar], hbar: str = HBAR,
                         known: Iterable[str] | None = None) -> "Poly":
        """Replace each listed variable ``v`` by ``v + c*hbar``.

        ``known`` is the table of declared variables; substituting a name
        outside it raises :class:`UnknownVariableError`.
        """
        if known is not None:
            known = set(known)
            if hbar not in known:
                raise UnknownVariableError(hbar)
            for v in assignments:
                if v not in known:
                    raise UnknownVariableError(v)
        h = Poly.var(hbar)
        return self.substitute({v: Poly.var(v) + h * c
                                for v, c in assignments.items() if norm_scalar(c)})

    def evaluate(self, values: Mapping[str, Scalar]) -> Scalar:
        total = Fraction(0)
        for m, c in self._terms.items():
            term = Fraction(c)
            for v, e in m:
                term *= Fraction(values[v]) ** e
            total += term
        return norm_scalar(total)

    # division by a linear form
    def as_univariate(self, name: str) -> Dict[int, "Poly"]:
        parts: Dict[int, Dict[Monomial, Scalar]] = {}
        for m, c in self._terms.items():
            k = 0
            rest = []
            for v, e in m:
                if v == name:
                    k = e
                else:
                    rest.append((v, e))
            parts.setdefault(k, {})[tuple(rest)] = c
        return {k: Poly._raw(d) for k, d in parts.items()}

    def leading_variable(self) -> str:
        vs = self.variables()
        if not vs:
            raise ValueError("constant polynomial has no leading variable")
        return min(vs, key=var_key)

    def divide_linear(self, linear: "Poly") -> "Poly | None":
        """Exact quotient by a degree-one polynomial, or ``None``."""
        if linear.degree() != 1:
            raise ValueError(f"{linear} is not linear")
        if not self._terms:
            return self
        x = linear.leading_variable()
        a = linear._terms[((x, 1),)]
        rest = linear - Poly._raw({((x, 1),): a})
        parts = self.as_univariate(x)
        n = max(parts)
        if n == 0:
            return None
        inv_a = Fraction(1) / a
        xq = Poly.var(x)
        quotient = Poly._raw({})
        for k in range(n, 0, -1):
            ck = parts.pop(k, None)
            if ck is None or not ck._terms:
                continue
            q = ck * inv_a
            quotient = quotient + q * xq ** (k - 1)
            parts[k - 1] = parts.get(k - 1, Poly._raw({})) - q * rest
        remainder = parts.get(0)
        if remainder is not None and remainder._terms:
            return None
        return quotient

    # text
    def sorted_terms(self):
        return sorted(self._terms.items(),
                      key=lambda mc: (-_mono_degree(mc[0]), mc[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            if not m:
                body = _scalar_str(a)
            elif a == 1:
                body = _mono_str(m)
            else:
                body = f"{_scalar_str(a)}*{_mono_str(m)}"
            if i == 0:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return _Parser(text).parse()


def var(name: str) -> Poly:
    return Poly.var(name)


def const(c) -> Poly:
    return Poly.const(c)


def hbar() -> Poly:
    return Poly.var(HBAR)


def poly_shift_substitute(p: Poly, assignments: Mapping[str, Scalar],
                          known: Iterable[str] | None = None) -> Poly:
    """Replace each listed variable ``v`` by ``v + c*h`` exactly.

    Without an explicit ``known`` table the names must have been interned,
    i.e. created through :meth:`Poly.var` at some point.
    """
    return p.shift_substitute(assignments, known=_INTERNED if known is None else known)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>[A-Za-z][A-Za-z0-9_]*(?:\[[^\]]*\])?)|(?P<op>[-+*/^()]))")


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
            pos = m.end()
            if m.group("num"):
                self.tokens.append(("num", int(m.group("num"))))
            elif m.group("var"):
                self.tokens.append(("var", m.group("var")))
            else:
                self.tokens.append(("op", m.group("op")))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing tokens in polynomial: {self.tokens[self.i:]}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        total = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            total = total + rhs if op == "+" else total - rhs
        return total

    def term(self) -> Poly:
        acc = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.power()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    raise ValueError("division by a non-constant in polynomial text")
                acc = acc / rhs.constant_value()
        return acc

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, n = self.take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            base = base ** n
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(val)
        if kind == "var":
            return Poly.var(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if (kind, val) == ("op", "-"):
            return -self.power()
        raise ValueError(f"unexpected token {val!r}")
