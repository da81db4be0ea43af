"""Localized difference operators in left normal form.

An operator is a finite sum ``sum_n f_n * u^n`` where ``u^n`` is a monomial
in the shift generators ``u[i,r]^{±1}`` and each coefficient ``f_n`` is a
:class:`RestrictedFraction` in ``w[i,r]``, ``t[k]`` and ``h``.  Moving a
coefficient past ``u[i,r]`` shifts ``w[i,r]`` by ``d_i h``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .fraction import RestrictedFraction, _split_top
from .poly import HBAR, Poly, norm_scalar, t as t_name, w as w_name

ShiftKey = Tuple[Tuple[Tuple[str, int], int], ...]
INHOMOGENEOUS = "inhomogeneous"


class AdmissibilityError(ValueError):
    """A denominator atom outside the permitted localization."""


@dataclass(frozen=True)
class Ambient:
    """Index data: symmetrizer and rank per vertex, flavor tags ``t_k -> i_k``."""

    vertices: Tuple[str, ...]
    d: Tuple[int, ...]
    dims: Tuple[int, ...]
    flavors: Tuple[str, ...] = ()  # flavors[k-1] is the vertex carrying t_k

    @classmethod
    def from_quiver(cls, q) -> "Ambient":
        flavors = []
        for vertex, wi in zip(q.ids, q.w):
            flavors.extend([vertex] * wi)
        return cls(tuple(q.ids), tuple(q.d), tuple(q.v), tuple(flavors))

    def sym(self, vertex) -> int:
        return self.d[self.vertices.index(str(vertex))]

    def dim(self, vertex) -> int:
        return self.dims[self.vertices.index(str(vertex))]

    def w_vars(self) -> List[str]:
        return [w_name(i, r) for i, n in zip(self.vertices, self.dims) for r in range(1, n + 1)]

    def t_vars(self) -> List[str]:
        return [t_name(k) for k in range(1, len(self.flavors) + 1)]

    def known_variables(self) -> set:
        return set(self.w_vars()) | set(self.t_vars()) | {HBAR}

    def shift_map(self, key: ShiftKey) -> Dict[str, int]:
        return {w_name(i, r): n * self.sym(i) for (i, r), n in key}

    # element constructors
    def zero(self) -> "ShiftOperator":
        return ShiftOperator(self, {})

    def scalar(self, value) -> "ShiftOperator":
        return ShiftOperator(self, {(): RestrictedFraction.coerce(value)})

    def w(self, vertex, r) -> "ShiftOperator":
        self._check_index(vertex, r)
        return self.scalar(Poly.var(w_name(vertex, r)))

    def t(self, k) -> "ShiftOperator":
        if not 1 <= k <= len(self.flavors):
            raise IndexError(f"no flavor variable t[{k}]")
        return self.scalar(Poly.var(t_name(k)))

    def hbar(self) -> "ShiftOperator":
        return self.scalar(Poly.var(HBAR))

    def u(self, vertex, r, power: int = 1) -> "ShiftOperator":
        self._check_index(vertex, r)
        return ShiftOperator(self, {make_key({(str(vertex), r): power}): RestrictedFraction.poly(1)})

    def monomial(self, coeff, shifts: Mapping[Tuple[str, int], int]) -> "ShiftOperator":
        for (vertex, r) in shifts:
            self._check_index(vertex, r)
        return ShiftOperator(self, {make_key(shifts): RestrictedFraction.coerce(coeff)})

    def _check_index(self, vertex, r):
        vertex = str(vertex)
        if vertex not in self.vertices or not 1 <= r <= self.dim(vertex):
            raise IndexError(f"no index ({vertex},{r}) in dims {dict(zip(self.vertices, self.dims))}")

    # admissibility
    def atom_is_admissible(self, atom: Poly) -> bool:
        """``h`` or ``w[i,r] - w[i,s] + q h`` with r != s and q in d_i Z."""
        if atom == Poly.var(HBAR):
            return True
        if atom.degree() != 1:
            return False
        ws = {}
        hcoef = 0
        for mono, c in atom.items():
            if not mono:
                return False
            (name, e), = mono
            if name == HBAR:
                hcoef = c
                continue
            m = _W_RE.match(name)
            if not m:
                return False
            ws[(m.group(1), int(m.group(2)))] = c
        if len(ws) != 2:
            return False
        (a, ca), (b, cb) = sorted(ws.items())
        if a[0] != b[0] or a[1] == b[1] or sorted((ca, cb)) != [-1, 1]:
            return False
        if a[0] not in self.vertices:
            return False
        return Fraction(hcoef) % self.sym(a[0]) == 0

    def check_fraction(self, f: RestrictedFraction) -> None:
        for atom, _ in f.den:
            if not self.atom_is_admissible(atom):
                raise AdmissibilityError(f"denominator atom ({atom}) is not admissible")


_W_RE = re.compile(r"^w\[([^,\]]+),(\d+)\]$")
_U_RE = re.compile(r"^u\[([^,\]]+),(\d+)\](?:\^(-?\d+))?$")


def make_key(shifts: Mapping[Tuple[str, int], int]) -> ShiftKey:
    return tuple(sorted(((str(i), int(r)), int(n)) for (i, r), n in shifts.items() if n))


def add_keys(a: ShiftKey, b: ShiftKey) -> ShiftKey:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for k, n in b:
        out[k] = out.get(k, 0) + n
    return tuple(sorted((k, n) for k, n in out.items() if n))


def key_str(key: ShiftKey) -> str:
    return " ".join(f"u[{i},{r}]" + (f"^{n}" if n != 1 else "") for (i, r), n in key)


class ShiftOperator:
    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: Ambient, terms: Mapping[ShiftKey, RestrictedFraction],
                 *, check: bool = True):
        self.ambient = ambient
        clean = {}
        for k, c in terms.items():
            c = RestrictedFraction.coerce(c)
            if c.is_zero():
                continue
            if check:
                ambient.check_fraction(c)
            clean[k] = c
        self.terms: Dict[ShiftKey, RestrictedFraction] = clean

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_shift_free(self) -> bool:
        return all(not k for k in self.terms)

    def support(self) -> List[ShiftKey]:
        return sorted(self.terms)

    def coefficient(self, key: ShiftKey = ()) -> RestrictedFraction:
        return self.terms.get(key, RestrictedFraction.poly(0))

    def grade(self):
        """Common degree of all terms, ``None`` for zero, else ``"inhomogeneous"``."""
        degrees = set()
        for c in self.terms.values():
            deg = c.degree()
            if deg is None:
                return INHOMOGENEOUS
            degrees.add(deg)
        if not degrees:
            return None
        if len(degrees) > 1:
            return INHOMOGENEOUS
        return degrees.pop()

    # arithmetic
    def _same(self, other: "ShiftOperator"):
        if other.ambient != self.ambient:
            raise ValueError("operators live in different ambient algebras")

    def _lift(self, other) -> "ShiftOperator":
        if isinstance(other, ShiftOperator):
            self._same(other)
            return other
        return self.ambient.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return ShiftOperator(self.ambient, out, check=False)

    __radd__ = __add__

    def __neg__(self):
        return ShiftOperator(self.ambient, {k: -c for k, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, ShiftOperator):
            if isinstance(other, (Poly, RestrictedFraction)):
                other = self.ambient.scalar(other)
            else:
                c = norm_scalar(other)
                return ShiftOperator(self.ambient, {k: v * c for k, v in self.terms.items()},
                                     check=False)
        self._same(other)
        out: Dict[ShiftKey, RestrictedFraction] = {}
        for n, f in self.terms.items():
            shifts = self.ambient.shift_map(n)
            for m, g in other.terms.items():
                moved = g.shift_substitute(shifts) if shifts else g
                k = add_keys(n, m)
                p = f * moved
                out[k] = out[k] + p if k in out else p
        result = ShiftOperator(self.ambient, out, check=False)
        for c in result.terms.values():
            # products of admissible operators stay admissible
            self.ambient.check_fraction(c)
        return result

    def __rmul__(self, other):
        return self.ambient.scalar(other) * self

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = self.ambient.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def commutator(self, other: "ShiftOperator") -> "ShiftOperator":
        return self * other - other * self

    def divide_by_hbar(self, strict: bool = True) -> "ShiftOperator":
        """Multiply by ``1/h``; with ``strict`` the division must be exact."""
        h = Poly.var(HBAR)
        out = {}
        for k, c in self.terms.items():
            q = c.divide_by_atom(h)
            if strict and h in q.atoms():
                raise ArithmeticError(f"coefficient {c} is not divisible by h")
            out[k] = q
        return ShiftOperator(self.ambient, out, check=False)

    def map_coefficients(self, fn) -> "ShiftOperator":
        return ShiftOperator(self.ambient, {k: fn(c) for k, c in self.terms.items()})

    def substitute(self, mapping: Mapping[str, Poly]) -> "ShiftOperator":
        return self.map_coefficients(lambda c: c.substitute(mapping))

    # comparison / text
    def __eq__(self, other):
        if isinstance(other, ShiftOperator):
            return self.ambient == other.ambient and self.terms == other.terms
        try:
            return self == self.ambient.scalar(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "(0)"
        parts = []
        for k in sorted(self.terms):
            c = str(self.terms[k])
            parts.append(f"{c} * {key_str(k)}" if k else c)
        return " + ".join(parts)

    def __repr__(self):
        return f"ShiftOperator({str(self)!r})"

    @classmethod
    def parse(cls, ambient: Ambient, text: str) -> "ShiftOperator":
        out: Dict[ShiftKey, RestrictedFraction] = {}
        for piece in _split_terms(text):
            coef_text, _, shift_text = _split_coefficient(piece)
            coef = RestrictedFraction.parse(coef_text or "1")
            unknown = {v for v in coef.variables() if not v.startswith("s[")}
            unknown -= ambient.known_variables()
            if unknown:
                raise ValueError(f"unknown variables {sorted(unknown)} in {piece!r}")
            shifts: Dict[Tuple[str, int], int] = {}
            for token in shift_text.split():
                m = _U_RE.match(token)
                if not m:
                    raise ValueError(f"bad shift token {token!r}")
                idx = (m.group(1), int(m.group(2)))
                shifts[idx] = shifts.get(idx, 0) + int(m.group(3) or 1)
            key = make_key(shifts)
            out[key] = out[key] + coef if key in out else coef
        return ShiftOperator(ambient, out)


def _split_terms(text: str) -> List[str]:
    parts = [p.strip() for p in _split_top(text.strip(), "+")]
    return [p for p in parts if p]


def _split_coefficient(piece: str):
    if piece.startswith("u["):
        return "", "", piece
    depth = 0
    for pos, ch in enumerate(piece):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "*" and depth == 0 and piece[pos + 1:].lstrip().startswith("u["):
            return piece[:pos].strip(), "*", piece[pos + 1:].strip()
    return piece.strip(), "", ""


def op_multiply(x: ShiftOperator, y: ShiftOperator) -> ShiftOperator:
    return x * y


def grade(x: ShiftOperator):
    return x.grade()


def sigma_substitution(ambient: Ambient, sigma: Mapping[str, object]) -> Dict[str, Fraction]:
    shifts: Dict[str, Fraction] = {}
    for vertex, n in zip(ambient.vertices, ambient.dims):
        s = Fraction(sigma.get(vertex, 0))
        if s:
            for r in range(1, n + 1):
                shifts[w_name(vertex, r)] = s
    for k, vertex in enumerate(ambient.flavors, start=1):
        s = Fraction(sigma.get(vertex, 0))
        if s:
            shifts[t_name(k)] = s
    return shifts


def apply_sigma(x: ShiftOperator, sigma: Mapping[str, object]) -> ShiftOperator:
    """``w[i,r] -> w[i,r] + sigma_i h`` and ``t[k] -> t[k] + sigma_{i_k} h``."""
    shifts = sigma_substitution(x.ambient, {str(k): v for k, v in sigma.items()})
    if not shifts:
        return x
    return ShiftOperator(x.ambient, {k: c.shift_substitute(shifts) for k, c in x.terms.items()})


# random generation (for property checks) -------------------------------------

def random_operator(ambient: Ambient, rng, *, terms: int = 2, max_degree: int = 2,
                    max_atoms: int = 1, max_shift: int = 1) -> ShiftOperator:
    """A random admissible operator drawn from ``rng`` (a ``random.Random``)."""
    names = ambient.w_vars() + ambient.t_vars() + [HBAR]
    w_index = [(i, r) for i, n in zip(ambient.vertices, ambient.dims) for r in range(1, n + 1)]
    atoms = [Poly.var(HBAR)]
    for i, n in zip(ambient.vertices, ambient.dims):
        for r, s in itertools.permutations(range(1, n + 1), 2):
            for q in (-1, 0, 1):
                atoms.append(Poly.var(w_name(i, r)) - Poly.var(w_name(i, s))
                             + Poly.var(HBAR) * (q * ambient.sym(i)))
    out = ambient.zero()
    for _ in range(terms):
        num = Poly.const(0)
        for _ in range(rng.randint(1, 3)):
            mono = Poly.const(rng.choice([-2, -1, 1, 2, Fraction(1, 2)]))
            for _ in range(rng.randint(0, max_degree)):
                mono = mono * Poly.var(rng.choice(names))
            num = num + mono
        den = [(rng.choice(atoms), 1) for _ in range(rng.randint(0, max_atoms))]
        shifts = {idx: rng.randint(-max_shift, max_shift) for idx in w_index
                  if rng.random() < 0.5}
        out = out + ambient.monomial(RestrictedFraction(num, den), shifts)
    return out


def elementary_symmetric(values: Sequence[Poly], k: int) -> Poly:
    total = Poly.const(0)
    for combo in itertools.combinations(values, k):
        term = Poly.const(1)
        for x in combo:
            term = term * x
        total = total + term
    return total


def shifted(values: Iterable[Poly], amount) -> List[Poly]:
    return [x + Poly.var(HBAR) * amount for x in values]
