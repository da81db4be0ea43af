"""Twisted monopole formula for quiver gauge theories with symmetrizers."""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from .poly import norm_scalar
from .quiver import ValuedQuiver, edge_constants, require_assumption
from .series import GradedSeries

Coweight = Tuple[Tuple[int, ...], ...]

WORKERS_ENV = "COULOMBKIT_WORKERS"
GRADINGS = ("delta", "homological")


# enumeration ----------------------------------------------------------------

def dominant_tuples(n: int, bound: int) -> List[Tuple[int, ...]]:
    """Non-increasing length-``n`` integer tuples with entries in [-bound, bound]."""
    values = range(bound, -bound - 1, -1)
    return list(itertools.combinations_with_replacement(values, n))


def dominated(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """``lam <= mu`` in dominance order for GL(n): same sum, partial sums bounded."""
    if len(lam) != len(mu) or sum(lam) != sum(mu):
        return False
    a = b = 0
    for x, y in zip(lam, mu):
        a += x
        b += y
        if a > b:
            return False
    return True


def _vertex_choices(dims, bound, cap):
    choices = []
    for k, n in enumerate(dims):
        options = dominant_tuples(n, bound)
        if cap is not None:
            options = [lam for lam in options if dominated(lam, cap[k])]
        choices.append(options)
    return choices


def enumerate_coweights(dims: Sequence[int], bound: int,
                        cap: Sequence[Sequence[int]] | None = None) -> Iterator[Coweight]:
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if cap is not None:
        cap = [tuple(c) for c in cap]
        if [len(c) for c in cap] != list(dims):
            raise ValueError("cap must have the same shape as the dimension vector")
    yield from itertools.product(*_vertex_choices(dims, bound, cap))


def shell(lam: Coweight) -> int:
    """Largest absolute entry of ``lam``."""
    return max((abs(x) for part in lam for x in part), default=0)


def _check_shape(q: ValuedQuiver, lam: Coweight):
    if len(lam) != q.rank or any(len(part) != n for part, n in zip(lam, q.v)):
        raise ValueError(f"coweight {lam} does not match dimension vector {q.v}")


# exponents ------------------------------------------------------------------

@dataclass(frozen=True)
class _Edge:
    tail: int  # o(h)
    head: int  # i(h)
    g: int
    f_head_tail: int  # f_{i(h), o(h)}: multiplies the tail entry
    f_tail_head: int  # f_{o(h), i(h)}: multiplies the head entry


def _edges(q: ValuedQuiver) -> List[_Edge]:
    out = []
    for e in edge_constants(q).values():
        # e.i is the tail, e.j the head of the arrow
        out.append(_Edge(q.index(e.i), q.index(e.j), e.g, e.f_ji, e.f_ij))
    return out


def rho_pairing(lam: Coweight) -> Fraction:
    """<rho, lam> for a product of GL's: half the sum of a<b differences."""
    total = 0
    for part in lam:
        for a, b in itertools.combinations(part, 2):
            total += a - b
    return Fraction(total, 2)


def _twice_delta(edges, w, lam) -> int:
    total = 0
    for part in lam:
        for a, b in itertools.combinations(part, 2):
            total -= 2 * abs(a - b)
    for e in edges:
        for x in lam[e.tail]:
            for y in lam[e.head]:
                total += e.g * abs(e.f_head_tail * x - e.f_tail_head * y)
    if w is not None:
        for wi, part in zip(w, lam):
            if wi:
                total += wi * sum(abs(x) for x in part)
    return total


def delta(q: ValuedQuiver, lam: Coweight, flavor_term: bool = True):
    """The monopole dimension formula; a half-integer in general."""
    _check_shape(q, lam)
    return norm_scalar(Fraction(_twice_delta(_edges(q), q.w if flavor_term else None, lam), 2))


def _d_lambda(edges, w, lam) -> int:
    total = 0
    for e in edges:
        for x in lam[e.tail]:
            for y in lam[e.head]:
                total += e.g * max(e.f_head_tail * x - e.f_tail_head * y, 0)
    if w is not None:
        for wi, part in zip(w, lam):
            if wi:
                total += wi * sum(max(-x, 0) for x in part)
    return total


def d_lambda(q: ValuedQuiver, lam: Coweight, flavor_term: bool = True) -> int:
    """Rank of the quotient bundle T_lambda / R_lambda.

    For an arrow j -> i the fiber contributes ``g max(f_ij lam_j - f_ji lam_i, 0)``.
    """
    require_assumption(q)
    _check_shape(q, lam)
    return _d_lambda(_edges(q), q.w if flavor_term else None, lam)


def homological_exponent(q: ValuedQuiver, lam: Coweight, flavor_term: bool = True) -> int:
    """2 d_lambda - 4 <rho, lam>."""
    return 2 * d_lambda(q, lam, flavor_term) - int(4 * rho_pairing(lam))


def grading_gap(q: ValuedQuiver, lam: Coweight, flavor_term: bool = True):
    """2 Delta(lam) minus the homological exponent."""
    return 2 * delta(q, lam, flavor_term) - homological_exponent(q, lam, flavor_term)


def grading_gap_from_sums(q: ValuedQuiver, sums: Sequence[int], flavor_term: bool = True) -> int:
    """Closed form of :func:`grading_gap` in terms of the per-vertex sums."""
    total = 0
    for e in _edges(q):
        total -= e.g * (e.f_head_tail * q.v[e.head] * sums[e.tail]
                        - e.f_tail_head * q.v[e.tail] * sums[e.head])
    if flavor_term:
        total += sum(wi * s for wi, s in zip(q.w, sums))
    return total


# classical factors -----------------------------------------------------------

def multiplicity_key(lam: Coweight) -> Tuple[int, ...]:
    """Sorted multiplicities of repeated values, over all vertices."""
    out = []
    for part in lam:
        counts: Dict[int, int] = {}
        for x in part:
            counts[x] = counts.get(x, 0) + 1
        out.extend(counts.values())
    return tuple(sorted(out))


@lru_cache(maxsize=4096)
def _classical_dense(key: Tuple[int, ...], length: int) -> Tuple[int, ...]:
    coeffs = [0] * length
    if length:
        coeffs[0] = 1
    for m in key:
        for j in range(1, m + 1):
            step = 2 * j
            for n in range(step, length):
                coeffs[n] += coeffs[n - step]
    return tuple(coeffs)


def classical_factor(lam: Coweight, order: int, var: str = "t") -> GradedSeries:
    """Poincare series of H^*_{Stab(lam)}(pt), known below ``order``."""
    return GradedSeries.from_dense(var, _classical_dense(multiplicity_key(lam), max(order, 0)),
                                   order=order)


# summation ------------------------------------------------------------------

def _exponent_fn(q: ValuedQuiver, grading: str, flavor_term: bool):
    edges = _edges(q)
    w = q.w if flavor_term else None
    if grading == "delta":
        return lambda lam: _twice_delta(edges, w, lam)
    if grading == "homological":
        return lambda lam: 2 * _d_lambda(edges, w, lam) - int(4 * rho_pairing(lam))
    raise ValueError(f"unknown grading {grading!r}; expected one of {GRADINGS}")


def _shell_sums(q, grading, flavor_term, order, bound, cap, first_choices):
    """Per-shell partial sums and counts of non-positive exponents."""
    exponent = _exponent_fn(q, grading, flavor_term)
    sums: Dict[int, Dict[int, int]] = {}
    nonpositive: Dict[int, int] = {}
    choices = _vertex_choices(q.v, bound, cap)
    if first_choices is not None:
        choices = [first_choices] + choices[1:]
    for lam in itertools.product(*choices):
        k = shell(lam)
        e = exponent(lam)
        if e <= 0:
            nonpositive[k] = nonpositive.get(k, 0) + 1
        if e >= order:
            continue
        acc = sums.setdefault(k, {})
        dense = _classical_dense(multiplicity_key(lam), order - e)
        for n, c in enumerate(dense):
            if c:
                acc[e + n] = acc.get(e + n, 0) + c
    return sums, nonpositive


def _worker(args):
    return _shell_sums(*args)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class MonopoleReport:
    series: GradedSeries
    bound: int
    order: int
    status: str
    grading: str
    flavor_term: bool
    first_stable: Dict[int, int]
    nonpositive_counts: Tuple[int, int]
    previous: GradedSeries = field(repr=False, default=None)

    def to_json(self) -> dict:
        return {
            "series": self.series.to_json(),
            "status": self.status,
            "bound": self.bound,
            "order": self.order,
            "grading": self.grading,
            "flavor_term": self.flavor_term,
            "first_stable": {str(k): v for k, v in sorted(self.first_stable.items())},
            "nonpositive_counts": {"previous": self.nonpositive_counts[0],
                                   "current": self.nonpositive_counts[1]},
        }


def hilbert_series(q: ValuedQuiver, order: int, bound: int, *, flavor_term: bool = True,
                   grading: str = "delta", cap: Sequence[Sequence[int]] | None = None,
                   workers: int | None = None, var: str = "t") -> MonopoleReport:
    """Truncated monopole sum over coweights with entries bounded by ``bound``.

    The sums at bounds ``bound - 1`` and ``bound`` are compared: equal
    truncations give ``stable``; growth of the number of coweights whose
    exponent is at most zero gives ``divergent``; anything else ``unstable``.
    """
    require_assumption(q)
    if bound < 1:
        raise ValueError("bound must be at least 1 so that two bounds can be compared")
    if grading not in GRADINGS:
        raise ValueError(f"unknown grading {grading!r}; expected one of {GRADINGS}")
    if cap is not None:
        cap = [tuple(c) for c in cap]
        if [len(c) for c in cap] != list(q.v):
            raise ValueError("cap must have the same shape as the dimension vector")
    workers = worker_count() if workers is None else max(1, workers)
    sums: Dict[int, Dict[int, int]] = {}
    nonpositive: Dict[int, int] = {}
    if workers == 1 or q.rank == 0 or not q.v or q.v[0] == 0:
        sums, nonpositive = _shell_sums(q, grading, flavor_term, order, bound, cap, None)
    else:
        first = _vertex_choices(q.v[:1], bound, None if cap is None else cap[:1])[0]
        chunks = [first[k::workers] for k in range(workers)]
        jobs = [(q, grading, flavor_term, order, bound, cap, chunk) for chunk in chunks if chunk]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part_sums, part_np in pool.map(_worker, jobs):
                for k, acc in part_sums.items():
                    target = sums.setdefault(k, {})
                    for e, c in acc.items():
                        target[e] = target.get(e, 0) + c
                for k, c in part_np.items():
                    nonpositive[k] = nonpositive.get(k, 0) + c

    total: Dict[int, int] = {}
    previous: Dict[int, int] = {}
    first_stable: Dict[int, int] = {}
    for k in sorted(sums):
        for e, c in sums[k].items():
            if c:
                total[e] = total.get(e, 0) + c
                if k < bound:
                    previous[e] = previous.get(e, 0) + c
                first_stable[e] = k
    series = GradedSeries(var, total, order)
    prev_series = GradedSeries(var, previous, order)
    np_prev = sum(c for k, c in nonpositive.items() if k < bound)
    np_cur = sum(nonpositive.values())
    if np_cur > np_prev:
        status = "divergent"
    elif series == prev_series:
        status = "stable"
    else:
        status = "unstable"
    first_stable = {e: first_stable[e] for e in series.coeffs}
    return MonopoleReport(series, bound, order, status, grading, flavor_term, first_stable,
                          (np_prev, np_cur), prev_series)
