"""Abelian rank-2 Coulomb branch algebras inside the torus model.

Classes live in the faithful model  ⊕ Q[w1, w2] u_{a,b}  with
``u_{a,b} u_{a',b'} = u_{a+a',b+b'}``.  A fiber class ``y_{a,b}`` is pushed
into it by :func:`zstar`; identities between classes are then plain
polynomial identities.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .fraction import RestrictedFraction
from .poly import Poly

Lattice = Tuple[int, int]

W1, W2 = "w1", "w2"


def w1() -> Poly:
    return Poly.var(W1)


def w2() -> Poly:
    return Poly.var(W2)


def w_diff() -> Poly:
    return Poly.var(W1) - Poly.var(W2)


class TorusClass:
    """Finite sum of polynomial multiples of lattice classes ``u_{a,b}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Lattice, Poly] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            c = Poly.coerce(c)
            if not c.is_zero():
                clean[(int(k[0]), int(k[1]))] = c
        self.terms: Dict[Lattice, Poly] = clean

    @classmethod
    def u(cls, a: int, b: int, coeff=1) -> "TorusClass":
        return cls({(a, b): Poly.coerce(coeff)})

    @classmethod
    def scalar(cls, p) -> "TorusClass":
        return cls({(0, 0): Poly.coerce(p)})

    @classmethod
    def coerce(cls, x) -> "TorusClass":
        return x if isinstance(x, TorusClass) else cls.scalar(x)

    def support(self) -> List[Lattice]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = TorusClass.coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TorusClass(out)

    __radd__ = __add__

    def __neg__(self):
        return TorusClass({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-TorusClass.coerce(other))

    def __rsub__(self, other):
        return TorusClass.coerce(other) - self

    def __mul__(self, other):
        other = TorusClass.coerce(other)
        out: Dict[Lattice, Poly] = {}
        for (a, b), c in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a + a2, b + b2)
                p = c * c2
                out[k] = out[k] + p if k in out else p
        return TorusClass(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined for general classes")
        out = TorusClass.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TorusClass):
            other = TorusClass.coerce(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            unit = f"u[{k[0]},{k[1]}]"
            parts.append(unit if c == 1 else f"({c})*{unit}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TorusClass({str(self)!r})"

    def to_json(self) -> Dict[str, str]:
        return {f"{a},{b}": str(self.terms[(a, b)]) for a, b in sorted(self.terms)}


@dataclass(frozen=True)
class EdgeData:
    """Valuation data ``(g12, f12, f21)`` of the rank-2 quiver."""

    g: int = 1
    f12: int = 1
    f21: int = 1

    @classmethod
    def from_m(cls, m: int) -> "EdgeData":
        if m < 1:
            raise ValueError("m must be positive")
        return cls(1, 1, m)

    def exponent(self, a: int, b: int) -> int:
        return self.g * max(self.f12 * b - self.f21 * a, 0)

    def to_json(self) -> dict:
        return {"g": self.g, "f12": self.f12, "f21": self.f21}


@dataclass(frozen=True)
class YClass:
    a: int
    b: int
    edge: EdgeData = EdgeData()


def zstar(y: YClass | Lattice, edge: EdgeData | None = None) -> TorusClass:
    """Image ``(w1 - w2)^{g max(f12 b - f21 a, 0)} u_{a,b}``."""
    if isinstance(y, YClass):
        a, b, edge = y.a, y.b, y.edge
    else:
        a, b = y
        edge = edge or EdgeData()
    return TorusClass.u(a, b, w_diff() ** edge.exponent(a, b))


def multiply(x: TorusClass, y: TorusClass) -> TorusClass:
    return x * y


# products of generators -----------------------------------------------------

@dataclass(frozen=True)
class Word:
    """``scalar * prod y_{a,b}^power``; powers may be negative only for units."""

    factors: Tuple[Tuple[Lattice, int], ...] = ()
    scalar: Poly = Poly.const(1)

    @classmethod
    def of(cls, *points: Lattice, scalar=1) -> "Word":
        counts: Dict[Lattice, int] = {}
        for p in points:
            counts[tuple(p)] = counts.get(tuple(p), 0) + 1
        return cls(tuple(sorted(counts.items())), Poly.coerce(scalar))

    @classmethod
    def powers(cls, items: Iterable[Tuple[Lattice, int]], scalar=1) -> "Word":
        counts: Dict[Lattice, int] = {}
        for p, k in items:
            if k:
                counts[tuple(p)] = counts.get(tuple(p), 0) + k
        return cls(tuple(sorted((p, k) for p, k in counts.items() if k)), Poly.coerce(scalar))

    def image(self, edge: EdgeData) -> TorusClass:
        out = TorusClass.scalar(self.scalar)
        for (a, b), k in self.factors:
            if k >= 0:
                out = out * zstar((a, b), edge) ** k
            else:
                if edge.exponent(a, b) or edge.exponent(-a, -b):
                    raise ValueError(f"y_{{{a},{b}}} is not a unit")
                out = out * TorusClass.u(a * k, b * k)
        return out

    def __str__(self):
        parts = []
        if self.scalar != 1 or not self.factors:
            s = str(self.scalar)
            parts.append(f"({s})" if len(self.scalar) > 1 else s)
        for (a, b), k in self.factors:
            parts.append(f"y[{a},{b}]" + (f"^{k}" if k != 1 else ""))
        return "*".join(parts)


@dataclass
class RelationResult:
    id: str
    anchor: str
    lhs: str
    rhs: str
    holds: bool
    lhs_image: TorusClass
    rhs_image: TorusClass

    def to_json(self) -> dict:
        out = {"id": self.id, "anchor": self.anchor, "status": "pass" if self.holds else "fail",
               "identity": f"{self.lhs} = {self.rhs}"}
        if not self.holds:
            out["witness"] = {"lhs": self.lhs_image.to_json(), "rhs": self.rhs_image.to_json()}
        return out


def check_relation(lhs: Word, rhs: Word, edge: EdgeData, *, id: str = "", anchor: str = "") -> RelationResult:
    left, right = lhs.image(edge), rhs.image(edge)
    return RelationResult(id, anchor, str(lhs), str(rhs), left == right, left, right)


def ladder_relation(m: int, b: int) -> Tuple[TorusClass, TorusClass]:
    """Both sides of ``y_{1,b} y_{0,1} = (w1 - w2) y_{1,b+1}``; they must agree."""
    if not 0 <= b <= m - 1:
        raise ValueError(f"ladder relation needs 0 <= b <= m-1, got b={b}, m={m}")
    edge = EdgeData.from_m(m)
    left = Word.of((1, b), (0, 1)).image(edge)
    right = Word.of((1, b + 1), scalar=w_diff()).image(edge)
    if left != right:
        raise AssertionError(f"ladder relation fails for m={m}, b={b}: {left} != {right}")
    return left, right


def ladder_relations(m: int) -> List[RelationResult]:
    edge = EdgeData.from_m(m)
    return [check_relation(Word.of((1, b), (0, 1)), Word.of((1, b + 1), scalar=w_diff()), edge,
                           id=f"ladder-m{m}-b{b}", anchor=f"rank-2 positive part, ladder relation m={m} b={b}")
            for b in range(m)]


def quadratic_relations(m: int) -> List[RelationResult]:
    """The family ``y_{1,a} y_{1,b} = y_{1,0} y_{1,a+b}`` or ``y_{1,a+b-m} y_{1,m}``."""
    edge = EdgeData.from_m(m)
    out = []
    for a in range(1, m):
        for b in range(a, m):
            if a + b <= m:
                rhs = Word.of((1, 0), (1, a + b))
            else:
                rhs = Word.of((1, a + b - m), (1, m))
            out.append(check_relation(Word.of((1, a), (1, b)), rhs, edge,
                                      id=f"quadratic-m{m}-{a}-{b}",
                                      anchor=f"rank-2 positive part, general-m relation m={m} a={a} b={b}"))
    return out


def named_relations() -> List[RelationResult]:
    """The m = 2 relation and the two m = 3 relations, as printed."""
    e2, e3 = EdgeData.from_m(2), EdgeData.from_m(3)
    return [
        check_relation(Word.of((1, 0), (1, 2)), Word.of((1, 1), (1, 1)), e2,
                       id="m2-relation", anchor="rank-2 positive part, m=2 relation"),
        check_relation(Word.of((1, 0), (1, 3)), Word.of((1, 1), (1, 2)), e3,
                       id="m3-relation-1", anchor="rank-2 positive part, m=3 relation 1"),
        check_relation(Word.of((1, 1), (1, 3)), Word.of((1, 2), (1, 2)), e3,
                       id="m3-relation-2", anchor="rank-2 positive part, m=3 relation 2"),
    ]


def positive_normal_form(a: int, b: int, m: int) -> Word:
    """A product of ``y_{1,0..m}``, ``y_{0,1}`` with the same image as ``y_{a,b}``."""
    if a < 0 or b < 0:
        raise ValueError("positive part needs a, b >= 0")
    if m < 1:
        raise ValueError("m must be positive")
    if b <= m * a:
        q, r = divmod(b, m)
        bump = 1 if r else 0
        return Word.powers([((1, m), q), ((1, 0), a - q - bump), ((1, r), bump)])
    return Word.powers([((1, m), a), ((0, 1), b - m * a)])


# whole algebra ----------------------------------------------------------------

def unit_offset(edge: EdgeData) -> Lattice:
    """A lattice point with ``f12 b0 - f21 a0 = 1`` (smallest positive b0)."""
    if edge.f21 == 1:
        return edge.f12 - 1, 1
    b0 = pow(edge.f12, -1, edge.f21)
    return (edge.f12 * b0 - 1) // edge.f21, b0


def presentation_word(a: int, b: int, edge: EdgeData) -> Word:
    """``y_{a,b}`` as a Laurent word in the unit Y = y_{f12,f21}, P = y_{a0,b0}, N = y_{-a0,-b0}."""
    a0, b0 = unit_offset(edge)
    k = edge.f12 * b - edge.f21 * a
    s, rem = divmod(a - k * a0, edge.f12)
    assert rem == 0
    word = [((edge.f12, edge.f21), s)]
    if k >= 0:
        word.append(((a0, b0), k))
    else:
        word.append(((-a0, -b0), -k))
    return Word.powers(word)


def presentation_checks(edge: EdgeData, box: int = 3) -> List[RelationResult]:
    a0, b0 = unit_offset(edge)
    unit = (edge.f12, edge.f21)
    tag = f"g={edge.g} f12={edge.f12} f21={edge.f21}"
    out = [
        check_relation(Word.of((a0, b0), (-a0, -b0)), Word(scalar=w_diff() ** edge.g), edge,
                       id=f"unit-pair-{tag}",
                       anchor=f"rank-2 whole algebra, (w1-w2)^g = y_(a0,b0) y_(-a0,-b0), {tag}"),
        check_relation(Word.powers([(unit, 1), ((-unit[0], -unit[1]), 1)]), Word(), edge,
                       id=f"invertible-{tag}", anchor=f"rank-2 whole algebra, invertible class, {tag}"),
    ]
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            out.append(check_relation(Word.of((a, b)), presentation_word(a, b, edge), edge,
                                      id=f"generated-{a}-{b}-{tag}",
                                      anchor=f"rank-2 whole algebra, Laurent generators, {tag}"))
    return out


# G2 zastava ------------------------------------------------------------------

ZASTAVA_VARS = ("A1", "A2", "b0", "b1", "b2", "b3", "b4")


def zastava_relations() -> List[Tuple[str, Poly, Poly]]:
    A1, A2, b0, b1, b2, b3, b4 = (Poly.var(x) for x in ZASTAVA_VARS)
    return [
        ("zastava-1", b0 * b1, (A2 - A1) * b2),
        ("zastava-2", b0 * b2, (A1 - A2) * b3),
        ("zastava-3", b0 * b3, (A1 - A2) * b4),
        ("zastava-4", b2 ** 2, -b1 * b3),
        ("zastava-5", b2 * b3, -b1 * b4),
        ("zastava-6", b3 ** 2, b2 * b4),
    ]


def zastava_dictionary() -> Dict[str, TorusClass]:
    """Coordinate images: w1 = -A2, w2 = -A1, b0 = y01, b1 = -y10, b2..b4 = y11..y13."""
    edge = EdgeData.from_m(3)
    return {
        "A1": TorusClass.scalar(-w2()),
        "A2": TorusClass.scalar(-w1()),
        "b0": zstar((0, 1), edge),
        "b1": -zstar((1, 0), edge),
        "b2": zstar((1, 1), edge),
        "b3": zstar((1, 2), edge),
        "b4": zstar((1, 3), edge),
    }


def evaluate_in_torus(p: Poly, images: Mapping[str, TorusClass]) -> TorusClass:
    """Ring homomorphism from a polynomial ring into the torus model."""
    out = TorusClass()
    cache: Dict[Tuple[str, int], TorusClass] = {}
    for mono, c in p.items():
        term = TorusClass.scalar(c)
        for v, e in mono:
            key = (v, e)
            if key not in cache:
                cache[key] = images[v] ** e
            term = term * cache[key]
        out = out + term
    return out


def derive_boundary() -> RestrictedFraction:
    """Solve relations 1-3 for b2, b3, b4 by exact division by A1 - A2."""
    A1, A2, b0, b1 = (Poly.var(x) for x in ZASTAVA_VARS[:4])
    gap = A1 - A2
    b2 = RestrictedFraction(b0 * b1, [(A2 - A1, 1)])
    b3 = (b2 * b0).divide_by_atom(gap)
    b4 = (b3 * b0).divide_by_atom(gap)
    return b4


def boundary_expected() -> RestrictedFraction:
    A1, A2, b0, b1 = (Poly.var(x) for x in ZASTAVA_VARS[:4])
    return RestrictedFraction(-(b0 ** 3) * b1, [(A1 - A2, 3)])


def boundary_in_torus() -> bool:
    """Divide the image of -b0^3 b1 by (w1 - w2)^3 and compare with y_{1,3}."""
    images = zastava_dictionary()
    numerator = evaluate_in_torus(-(Poly.var("b0") ** 3) * Poly.var("b1"), images)
    gap = -(w2()) + w1()  # A1 - A2 = -w2 + w1
    quotient = {}
    for k, c in numerator.terms.items():
        f = RestrictedFraction(c, [(gap, 3)])
        if not f.is_polynomial():
            return False
        quotient[k] = f.to_poly()
    return TorusClass(quotient) == images["b4"]


@dataclass
class ZastavaReport:
    relations: List[RelationResult]
    boundary: RestrictedFraction
    boundary_matches: bool
    boundary_in_torus: bool

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.relations) and self.boundary_matches and self.boundary_in_torus


def g2_zastava_dictionary() -> ZastavaReport:
    images = zastava_dictionary()
    results = []
    for n, (name, lhs, rhs) in enumerate(zastava_relations(), start=1):
        left, right = evaluate_in_torus(lhs, images), evaluate_in_torus(rhs, images)
        results.append(RelationResult(name, f"G2 zastava degree a1+a2, relation {n}",
                                      str(lhs), str(rhs), left == right, left, right))
    boundary = derive_boundary()
    return ZastavaReport(results, boundary, boundary == boundary_expected(), boundary_in_torus())


def multiplicative_defect(p: Lattice, q: Lattice, edge: EdgeData) -> int:
    """Excess power of (w1 - w2) in zstar(p) zstar(q) over zstar(p + q)."""
    prod = zstar(p, edge) * zstar(q, edge)
    (point, coeff), = prod.terms.items()
    k = coeff.degree()
    if coeff != w_diff() ** k:
        raise AssertionError(f"unexpected coefficient {coeff}")
    return k - edge.exponent(*point)


def edge_from_args(m: int | None = None, g: int | None = None, f12: int | None = None,
                   f21: int | None = None) -> EdgeData:
    if g is None and f12 is None and f21 is None:
        return EdgeData.from_m(3 if m is None else m)
    return EdgeData(g or 1, f12 or 1, f21 if f21 is not None else (m or 1))


def words_to_json(words: Sequence[Word]) -> List[str]:
    return [str(w) for w in words]
