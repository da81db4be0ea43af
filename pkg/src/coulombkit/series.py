"""Truncated Laurent series in one variable.

A series carries a truncation ``order``: coefficients at degrees ``>= order``
are *unknown*, not zero.  ``order=None`` marks an exact (finite) Laurent
polynomial.  Coefficients may be any exact ring elements supporting ``+``,
``*`` and truthiness (rationals, :class:`~coulombkit.poly.Poly`, ...).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping

from .poly import Poly, norm_scalar


class SeriesError(ValueError):
    pass


def _min_order(*orders):
    known = [o for o in orders if o is not None]
    return min(known) if known else None


def _norm(c):
    if isinstance(c, (int, Fraction)):
        return norm_scalar(c)
    return c


class GradedSeries:
    __slots__ = ("var", "coeffs", "order")

    def __init__(self, var: str = "t", coeffs: Mapping[int, object] | None = None,
                 order: int | None = None):
        self.var = var
        self.order = order
        clean: Dict[int, object] = {}
        for k, c in (coeffs or {}).items():
            if order is not None and k >= order:
                continue
            c = _norm(c)
            if c:
                clean[int(k)] = c
        self.coeffs = clean

    # constructors
    @classmethod
    def monomial(cls, var: str, degree: int, coeff=1, order: int | None = None):
        return cls(var, {degree: coeff}, order)

    @classmethod
    def geometric(cls, var: str, step: int, order: int) -> "GradedSeries":
        """Expansion of ``1/(1 - var**step)`` below ``order``."""
        if step <= 0:
            raise SeriesError("geometric step must be positive")
        return cls(var, {k: 1 for k in range(0, max(order, 0), step)}, order)

    @classmethod
    def from_dense(cls, var: str, values: Iterable, start: int = 0,
                   order: int | None = None) -> "GradedSeries":
        return cls(var, {start + i: c for i, c in enumerate(values)}, order)

    # inspection
    def valuation(self):
        """Lowest stored degree; the order for an all-unknown-zero series."""
        if self.coeffs:
            return min(self.coeffs)
        return self.order

    def coefficient(self, k: int):
        if self.order is not None and k >= self.order:
            raise SeriesError(f"coefficient of {self.var}^{k} is beyond order {self.order}")
        return self.coeffs.get(k, 0)

    def __getitem__(self, k: int):
        return self.coefficient(k)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self):
        return sorted(self.coeffs)

    def truncate(self, order: int) -> "GradedSeries":
        return GradedSeries(self.var, self.coeffs, _min_order(self.order, order))

    def _check(self, other: "GradedSeries"):
        if self.var != other.var:
            raise SeriesError(f"variable mismatch: {self.var} vs {other.var}")

    def _lift(self, other) -> "GradedSeries":
        if isinstance(other, GradedSeries):
            self._check(other)
            return other
        return GradedSeries(self.var, {0: other}, None)

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        order = _min_order(self.order, other.order)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return GradedSeries(self.var, out, order)

    __radd__ = __add__

    def __neg__(self):
        return GradedSeries(self.var, {k: -c for k, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, GradedSeries):
            return GradedSeries(self.var, {k: c * other for k, c in self.coeffs.items()},
                                self.order)
        self._check(other)
        va, vb = self.valuation(), other.valuation()
        candidates = []
        if self.order is not None and vb is not None:
            candidates.append(self.order + vb)
        if other.order is not None and va is not None:
            candidates.append(other.order + va)
        order = min(candidates) if candidates else None
        out: Dict[int, object] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                if order is not None and k >= order:
                    continue
                p = a * b
                out[k] = out[k] + p if k in out else p
        return GradedSeries(self.var, out, order)

    def __rmul__(self, other):
        return GradedSeries(self.var, {k: other * c for k, c in self.coeffs.items()},
                            self.order)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = GradedSeries(self.var, {0: 1}, None)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "GradedSeries":
        """Multiply by ``var**k``."""
        return GradedSeries(self.var, {d + k: c for d, c in self.coeffs.items()},
                            None if self.order is None else self.order + k)

    def inverse(self, order: int | None = None) -> "GradedSeries":
        """Multiplicative inverse when the leading coefficient is a unit.

        The result is known to ``order - 2*v`` for a series of valuation ``v``
        known to ``order``; an exact input needs an explicit ``order``.
        """
        if not self.coeffs:
            raise SeriesError("cannot invert a series with no known nonzero term")
        v = min(self.coeffs)
        lead = self.coeffs[v]
        inv_lead = _unit_inverse(lead)
        limit = _min_order(None if self.order is None else self.order - 2 * v, order)
        if limit is None:
            raise SeriesError("inverting an exact series needs an explicit order")
        # a = t^v (lead + sum_j rel_j t^j); b = t^-v sum_k b_k t^k
        rel = {k - v: c for k, c in self.coeffs.items() if k != v}
        b = []
        for k in range(max(limit + v, 0)):
            if k == 0:
                b.append(inv_lead)
                continue
            acc = 0
            for j in range(1, k + 1):
                cj = rel.get(j)
                if cj is not None and b[k - j]:
                    acc = acc + cj * b[k - j]
            b.append(_norm(-(acc * inv_lead)) if acc else 0)
        out = {k - v: c for k, c in enumerate(b)}
        return GradedSeries(self.var, out, limit)

    def map_coefficients(self, fn) -> "GradedSeries":
        return GradedSeries(self.var, {k: fn(c) for k, c in self.coeffs.items()}, self.order)

    # comparison / export
    def agrees_with(self, other: "GradedSeries", upto: int | None = None) -> bool:
        """Equality on the degrees known for both operands (and below ``upto``)."""
        self._check(other)
        limit = _min_order(self.order, other.order, upto)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0)
                   for k in keys if limit is None or k < limit)

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (self.var, self.order, self.coeffs) == (other.var, other.order, other.coeffs)

    def __hash__(self):
        return hash((self.var, self.order, frozenset(self.coeffs.items())))

    def to_json(self) -> Dict[str, str]:
        return {str(k): str(self.coeffs[k]) for k in sorted(self.coeffs)}

    def __str__(self) -> str:
        body = ""
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            neg = isinstance(c, (int, Fraction)) and c < 0
            cs = str(-c if neg else c)
            if isinstance(c, Poly) and len(c) > 1:
                cs = f"({cs})"
            if k == 0:
                piece = cs
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                piece = mono if cs == "1" else f"{cs}*{mono}"
            if body:
                body += (" - " if neg else " + ") + piece
            else:
                body = ("-" if neg else "") + piece
        body = body or "0"
        if self.order is not None:
            body += f" + O({self.var}^{self.order})"
        return body

    def __repr__(self):
        return f"GradedSeries({str(self)!r})"


def _unit_inverse(c):
    if isinstance(c, Poly):
        if not c.is_constant():
            raise SeriesError(f"leading coefficient {c} is not a unit")
        return Poly.const(Fraction(1) / Fraction(c.constant_value()))
    return norm_scalar(Fraction(1) / Fraction(c))


def series_mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    return a * b
