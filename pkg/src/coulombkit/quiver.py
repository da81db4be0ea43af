"""Valued quivers with symmetrizers and their combinatorics."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Mapping, Sequence, Tuple


class QuiverError(ValueError):
    """Raised for invalid quiver input; ``errors`` lists every violation."""

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class AssumptionError(QuiverError):
    """An edge has both f_ij > 1 and f_ji > 1."""


@dataclass(frozen=True)
class ValuedQuiver:
    ids: Tuple[str, ...]
    cartan: Tuple[Tuple[int, ...], ...]
    d: Tuple[int, ...]
    arrows: Tuple[Tuple[str, str], ...]
    v: Tuple[int, ...]
    w: Tuple[int, ...]
    symmetrizer_inferred: bool = field(default=False, compare=False)

    @classmethod
    def build(cls, cartan: Sequence[Sequence[int]], *, d: Sequence[int] | None = None,
              arrows: Sequence[Tuple] | None = None, v: Sequence[int] | None = None,
              w: Sequence[int] | None = None, ids: Sequence | None = None,
              check: bool = True) -> "ValuedQuiver":
        """Convenience constructor.

        Missing ``ids`` default to ``"1".."n"``, missing arrows point from the
        higher to the lower index, missing ``d`` is the minimal symmetrizer.
        """
        n = len(cartan)
        ids = tuple(str(i) for i in (ids or range(1, n + 1)))
        cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        inferred = d is None
        if d is None:
            d = minimal_symmetrizer(cartan)
        if arrows is None:
            arrows = [(ids[j], ids[i]) for i in range(n) for j in range(i + 1, n)
                      if cartan[i][j] < 0 or cartan[j][i] < 0]
        q = cls(ids=ids, cartan=cartan, d=tuple(int(x) for x in d),
                arrows=tuple((str(a), str(b)) for a, b in arrows),
                v=tuple(v) if v is not None else (0,) * n,
                w=tuple(w) if w is not None else (0,) * n,
                symmetrizer_inferred=inferred)
        if check:
            errors = validate(q)
            if errors:
                raise QuiverError(errors)
        return q

    # indexing helpers
    @property
    def rank(self) -> int:
        return len(self.ids)

    def index(self, vertex) -> int:
        return self.ids.index(str(vertex))

    def c(self, i, j) -> int:
        return self.cartan[self.index(i)][self.index(j)]

    def dim(self, i) -> int:
        return self.v[self.index(i)]

    def framing(self, i) -> int:
        return self.w[self.index(i)]

    def sym(self, i) -> int:
        return self.d[self.index(i)]

    def in_arrows(self, i) -> List[Tuple[str, str]]:
        return [a for a in self.arrows if a[1] == str(i)]

    def out_arrows(self, i) -> List[Tuple[str, str]]:
        return [a for a in self.arrows if a[0] == str(i)]

    def with_dims(self, v: Sequence[int], w: Sequence[int] | None = None) -> "ValuedQuiver":
        return ValuedQuiver(self.ids, self.cartan, self.d, self.arrows, tuple(v),
                            tuple(w) if w is not None else self.w, self.symmetrizer_inferred)

    def reversed(self) -> "ValuedQuiver":
        return ValuedQuiver(self.ids, self.cartan, self.d,
                            tuple((b, a) for a, b in self.arrows), self.v, self.w,
                            self.symmetrizer_inferred)

    # JSON
    @classmethod
    def from_json(cls, data) -> "ValuedQuiver":
        if isinstance(data, (str, bytes)):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise QuiverError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
        return _quiver_from_mapping(data)

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": i, "v": v, "w": w, "d": d}
                         for i, v, w, d in zip(self.ids, self.v, self.w, self.d)],
            "cartan": [list(row) for row in self.cartan],
            "edges": [{"from": a, "to": b} for a, b in self.arrows],
        }


_TOP_KEYS = {"vertices", "cartan", "edges"}
_VERTEX_KEYS = {"id", "v", "w", "d"}
_EDGE_KEYS = {"from", "to"}


def _quiver_from_mapping(data) -> ValuedQuiver:
    errors: List[str] = []
    if not isinstance(data, Mapping):
        raise QuiverError("quiver JSON must be an object")
    for key in sorted(set(data) - _TOP_KEYS):
        errors.append(f"unknown key '{key}'")
    for key in ("vertices", "cartan"):
        if key not in data:
            errors.append(f"missing key '{key}'")
    if errors:
        raise QuiverError(errors)
    vertices = data["vertices"]
    if not isinstance(vertices, list):
        raise QuiverError("'vertices' must be a list")
    ids, vs, ws, ds = [], [], [], []
    for pos, vert in enumerate(vertices):
        where = f"vertices[{pos}]"
        if not isinstance(vert, Mapping):
            errors.append(f"{where}: must be an object")
            continue
        for key in sorted(set(vert) - _VERTEX_KEYS):
            errors.append(f"{where}: unknown key '{key}'")
        if "id" not in vert:
            errors.append(f"{where}: missing key 'id'")
        ids.append(str(vert.get("id", pos + 1)))
        for key, store, default in (("v", vs, 0), ("w", ws, 0)):
            val = vert.get(key, default)
            if not isinstance(val, int) or isinstance(val, bool) or val < 0:
                errors.append(f"{where}: '{key}' must be a non-negative integer")
                val = 0
            store.append(val)
        if "d" in vert:
            dv = vert["d"]
            if not isinstance(dv, int) or isinstance(dv, bool) or dv <= 0:
                errors.append(f"{where}: 'd' must be a positive integer")
                dv = 1
            ds.append(dv)
    if ds and len(ds) != len(ids):
        errors.append("'d' must be given for all vertices or none")
    cartan = data["cartan"]
    if (not isinstance(cartan, list) or len(cartan) != len(ids)
            or any(not isinstance(r, list) or len(r) != len(ids) for r in cartan)
            or any(not isinstance(x, int) or isinstance(x, bool) for r in cartan for x in r)):
        errors.append(f"'cartan' must be a {len(ids)}x{len(ids)} integer matrix")
    arrows = []
    for pos, edge in enumerate(data.get("edges", [])):
        where = f"edges[{pos}]"
        if not isinstance(edge, Mapping):
            errors.append(f"{where}: must be an object")
            continue
        for key in sorted(set(edge) - _EDGE_KEYS):
            errors.append(f"{where}: unknown key '{key}'")
        for key in sorted(_EDGE_KEYS - set(edge)):
            errors.append(f"{where}: missing key '{key}'")
        if _EDGE_KEYS <= set(edge):
            arrows.append((str(edge["from"]), str(edge["to"])))
    if errors:
        raise QuiverError(errors)
    inferred = not ds
    if inferred:
        try:
            ds = minimal_symmetrizer(cartan)
        except QuiverError as exc:
            raise QuiverError(exc.errors)
    q = ValuedQuiver(tuple(ids), tuple(tuple(r) for r in cartan), tuple(ds), tuple(arrows),
                     tuple(vs), tuple(ws), inferred)
    problems = validate(q)
    if problems:
        raise QuiverError(problems)
    return q


def validate(q: ValuedQuiver) -> List[str]:
    """Every violated invariant as a message; empty when ``q`` is valid."""
    errors: List[str] = []
    n = len(q.ids)
    if len(set(q.ids)) != n:
        errors.append("ids: vertex ids must be distinct")
    C = q.cartan
    if len(C) != n or any(len(row) != n for row in C):
        return errors + [f"cartan: matrix must be {n}x{n}"]
    if len(q.d) != n or len(q.v) != n or len(q.w) != n:
        return errors + ["shape: d, v and w must have one entry per vertex"]
    for i in range(n):
        if C[i][i] != 2:
            errors.append(f"diagonal: c[{q.ids[i]},{q.ids[i]}] = {C[i][i]}, expected 2")
        if q.d[i] <= 0:
            errors.append(f"symmetrizer: d[{q.ids[i]}] must be positive")
        if q.v[i] < 0 or q.w[i] < 0:
            errors.append(f"dimension: v and w at {q.ids[i]} must be non-negative")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if C[i][j] > 0:
                errors.append(f"sign pattern: c[{q.ids[i]},{q.ids[j]}] = {C[i][j]} is positive")
            if i < j and (C[i][j] < 0) != (C[j][i] < 0):
                errors.append(f"sign pattern: c[{q.ids[i]},{q.ids[j]}] = {C[i][j]} but "
                              f"c[{q.ids[j]},{q.ids[i]}] = {C[j][i]}")
            if i < j and q.d[i] * C[i][j] != q.d[j] * C[j][i]:
                errors.append(f"symmetrizer: d[{q.ids[i]}]*c[{q.ids[i]},{q.ids[j]}] = "
                              f"{q.d[i] * C[i][j]} != {q.d[j] * C[j][i]} = "
                              f"d[{q.ids[j]}]*c[{q.ids[j]},{q.ids[i]}]")
    seen = {}
    known = set(q.ids)
    for a, b in q.arrows:
        if a not in known or b not in known:
            errors.append(f"edge: arrow {a}->{b} names an unknown vertex")
            continue
        if a == b:
            errors.append(f"edge: loop at {a} is not supported")
            continue
        key = frozenset((a, b))
        if key in seen:
            errors.append(f"edge: more than one arrow between {a} and {b}")
        seen[key] = (a, b)
        if C[q.index(a)][q.index(b)] == 0:
            errors.append(f"edge: arrow {a}->{b} but c[{a},{b}] = 0")
    for i in range(n):
        for j in range(i + 1, n):
            if C[i][j] < 0 and frozenset((q.ids[i], q.ids[j])) not in seen:
                errors.append(f"edge: no arrow between {q.ids[i]} and {q.ids[j]}")
    return errors


@dataclass(frozen=True)
class EdgeConstants:
    i: str
    j: str
    g: int
    f_ij: int
    f_ji: int
    d_ij: int

    def f(self, a, b) -> int:
        if (str(a), str(b)) == (self.i, self.j):
            return self.f_ij
        if (str(a), str(b)) == (self.j, self.i):
            return self.f_ji
        raise KeyError((a, b))


def pair_constants(c_ij: int, c_ji: int, d_i: int, d_j: int) -> Tuple[int, int, int, int]:
    """``(g_ij, f_ij, f_ji, d_ij)`` for one edge."""
    g = gcd(abs(c_ij), abs(c_ji))
    return g, abs(c_ij) // g, abs(c_ji) // g, gcd(d_i, d_j)


def edge_constants(q: ValuedQuiver) -> Dict[frozenset, EdgeConstants]:
    """Constants keyed by the unordered pair; ``i``/``j`` follow the arrow."""
    out = {}
    for a, b in q.arrows:
        ia, ib = q.index(a), q.index(b)
        g, fab, fba, dab = pair_constants(q.cartan[ia][ib], q.cartan[ib][ia], q.d[ia], q.d[ib])
        out[frozenset((a, b))] = EdgeConstants(a, b, g, fab, fba, dab)
    return out


def edge_identities_hold(q: ValuedQuiver) -> bool:
    """d_ij = gcd, d_i = d_ij f_ji, and d_i f_ij = d_j f_ji = lcm on every edge."""
    for e in edge_constants(q).values():
        di, dj = q.sym(e.i), q.sym(e.j)
        if not (e.d_ij == gcd(di, dj) and di == e.d_ij * e.f_ji and dj == e.d_ij * e.f_ij
                and di * e.f_ij == dj * e.f_ji == lcm(di, dj)
                and e.g * e.f_ij == abs(q.c(e.i, e.j))):
            return False
    return True


def check_assumption(q: ValuedQuiver) -> bool:
    return all(e.f_ij == 1 or e.f_ji == 1 for e in edge_constants(q).values())


def require_assumption(q: ValuedQuiver) -> None:
    bad = [f"{e.i}-{e.j} (f={e.f_ij},{e.f_ji})" for e in edge_constants(q).values()
           if e.f_ij != 1 and e.f_ji != 1]
    if bad:
        raise AssumptionError(
            "Cartan assumption violated (need f_ij = 1 or f_ji = 1 on every edge): "
            + ", ".join(bad))


def minimal_symmetrizer(cartan: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Componentwise-minimal positive integers with d_i c_ij = d_j c_ji."""
    n = len(cartan)
    ratio: List[Fraction | None] = [None] * n
    for root in range(n):
        if ratio[root] is not None:
            continue
        ratio[root] = Fraction(1)
        component = [root]
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j == i or (cartan[i][j] == 0 and cartan[j][i] == 0):
                    continue
                if cartan[i][j] == 0 or cartan[j][i] == 0:
                    raise QuiverError(f"not symmetrizable: c[{i + 1},{j + 1}] and "
                                      f"c[{j + 1},{i + 1}] differ in sign pattern")
                want = ratio[i] * Fraction(cartan[i][j], cartan[j][i])
                if ratio[j] is None:
                    ratio[j] = want
                    component.append(j)
                    queue.append(j)
                elif ratio[j] != want:
                    raise QuiverError("not symmetrizable: inconsistent ratios around a cycle")
        den = lcm(*(ratio[k].denominator for k in component))
        ints = [ratio[k] * den for k in component]
        g = gcd(*(int(x) for x in ints))
        for k, x in zip(component, ints):
            ratio[k] = Fraction(int(x) // g)
    return tuple(int(r) for r in ratio)


# finite types -------------------------------------------------------------

def _chain_cartan(d: Sequence[int], links: Sequence[Tuple[int, int]]) -> List[List[int]]:
    """Cartan matrix of a tree with root lengths ``d``: c_ij = -max(1, d_j/d_i)."""
    n = len(d)
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in links:
        C[i][j] = -max(1, d[j] // d[i])
        C[j][i] = -max(1, d[i] // d[j])
    return C


def finite_type_quiver(kind: str, n: int, v=None, w=None) -> ValuedQuiver:
    """Finite-type quiver whose symmetrizer equals the root lengths.

    Vertices are numbered along the Dynkin diagram; arrows point from the
    higher to the lower index.
    """
    kind = kind.upper()
    chain = [(i, i + 1) for i in range(n - 1)]
    if kind == "A":
        d, links = [1] * n, chain
    elif kind == "B":
        d, links = [2] * (n - 1) + [1], chain
    elif kind == "C":
        d, links = [1] * (n - 1) + [2], chain
    elif kind == "D":
        d, links = [1] * n, chain[:-1] + [(n - 3, n - 1)]
    elif kind == "E":
        # 1-3-4-5-6..., 2 attached to 4 (Bourbaki numbering)
        d = [1] * n
        links = [(0, 2), (2, 3), (1, 3)] + [(k, k + 1) for k in range(3, n - 1)]
    elif kind == "F":
        if n != 4:
            raise ValueError("F is only defined in rank 4")
        d, links = [2, 2, 1, 1], chain
    elif kind == "G":
        if n != 2:
            raise ValueError("G is only defined in rank 2")
        d, links = [3, 1], chain
    else:
        raise ValueError(f"unknown type {kind}")
    C = _chain_cartan(d, links)
    return ValuedQuiver.build(C, d=d, v=v, w=w)


def classify_simply_laced(adjacency: Mapping[str, Mapping[str, int]]) -> str | None:
    """ADE label of a connected simply-laced graph, or None."""
    verts = list(adjacency)
    n = len(verts)
    if n == 0:
        return None
    if any(m != 1 for nb in adjacency.values() for m in nb.values()):
        return None
    edges = sum(len(nb) for nb in adjacency.values()) // 2
    if edges != n - 1 or not _connected(adjacency):
        return None
    degrees = {x: len(adjacency[x]) for x in verts}
    branch = [x for x in verts if degrees[x] >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or degrees[branch[0]] != 3:
        return None
    centre = branch[0]
    arms = []
    for start in adjacency[centre]:
        length, prev, cur = 1, centre, start
        while degrees[cur] == 2:
            nxt = next(x for x in adjacency[cur] if x != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{n}"
    return None


def _connected(adjacency) -> bool:
    verts = list(adjacency)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        x = stack.pop()
        for y in adjacency[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


def classify_finite(q: ValuedQuiver) -> str | None:
    """Dynkin label (e.g. ``"B3"``) of a connected finite-type quiver, else None."""
    adj = {i: {} for i in q.ids}
    for a, b in q.arrows:
        adj[a][b] = adj[b][a] = 1
    # the underlying graph of a finite type is itself an ADE-shaped tree
    shape = classify_simply_laced(adj)
    if shape is None:
        return None
    n = q.rank
    odd = [e for e in edge_constants(q).values() if (e.f_ij, e.f_ji) != (1, 1)]
    if not odd:
        return shape if all(e.g == 1 for e in edge_constants(q).values()) else None
    if len(odd) != 1 or odd[0].g != 1 or not shape.startswith("A"):
        return None
    e = odd[0]
    product = e.f_ij * e.f_ji
    if product == 3:
        return "G2" if n == 2 else None
    if product != 2:
        return None
    if n == 2:
        return "B2"
    ends = [x for x in q.ids if len(adj[x]) == 1]
    long_vertex = e.i if q.sym(e.i) > q.sym(e.j) else e.j
    short_vertex = e.j if long_vertex == e.i else e.i
    if short_vertex in ends:
        return f"B{n}"
    if long_vertex in ends:
        return f"C{n}"
    return "F4" if n == 4 else None


UNFOLDING_TABLE = {"B": lambda n: f"A{2 * n - 1}", "C": lambda n: f"D{n + 1}",
                   "F": lambda n: "E6", "G": lambda n: "D4"}


def expected_unfolding(label: str) -> str | None:
    kind, n = label[0], int(label[1:])
    if kind in "ADE":
        return label
    return UNFOLDING_TABLE[kind](n)


@dataclass(frozen=True)
class Unfolding:
    quiver: ValuedQuiver
    weight: Dict[str, int]
    source_type: str | None
    target_type: str | None
    expected_type: str | None

    @property
    def table_matches(self) -> bool:
        return self.expected_type is not None and self.expected_type == self.target_type


def split_name(vertex: str, k: int) -> str:
    return f"{vertex}_{k}"


def default_partition(q: ValuedQuiver) -> Dict[str, List[int]]:
    """Put all of V_i in the first piece."""
    return {i: [q.dim(i)] + [0] * (q.sym(i) - 1) for i in q.ids}


def unfold(q: ValuedQuiver, partition: Mapping[str, Sequence[int]] | None = None) -> Unfolding:
    """Split vertex i into i_1..i_{d_i}; i_k and j_l are joined iff k = l mod d_ij."""
    if partition is None:
        partition = default_partition(q)
    errors = []
    for i in q.ids:
        parts = list(partition.get(i, []))
        if len(parts) != q.sym(i):
            errors.append(f"partition at {i}: expected {q.sym(i)} pieces, got {len(parts)}")
        elif any(x < 0 for x in parts) or sum(parts) != q.dim(i):
            errors.append(f"partition at {i}: pieces {parts} do not sum to v = {q.dim(i)}")
    if errors:
        raise QuiverError(errors)
    ids, dims, framings = [], [], []
    for i in q.ids:
        for k in range(1, q.sym(i) + 1):
            ids.append(split_name(i, k))
            dims.append(partition[i][k - 1])
            framings.append(q.framing(i) if k == 1 else 0)
    index = {x: n for n, x in enumerate(ids)}
    size = len(ids)
    C = [[2 if a == b else 0 for b in range(size)] for a in range(size)]
    arrows = []
    adjacency: Dict[str, Dict[str, int]] = {x: {} for x in ids}
    for e in edge_constants(q).values():
        for k in range(1, q.sym(e.i) + 1):
            for l in range(1, q.sym(e.j) + 1):
                if (k - l) % e.d_ij:
                    continue
                a, b = split_name(e.i, k), split_name(e.j, l)
                C[index[a]][index[b]] = C[index[b]][index[a]] = -e.g
                arrows.append((a, b))
                adjacency[a][b] = adjacency[b][a] = e.g
    unfolded = ValuedQuiver(tuple(ids), tuple(tuple(r) for r in C), (1,) * size,
                            tuple(arrows), tuple(dims), tuple(framings))
    weight = {x: -dim for x, dim in zip(ids, dims)}
    source = classify_finite(q)
    target = classify_simply_laced(adjacency)
    expected = expected_unfolding(source) if source else None
    return Unfolding(unfolded, weight, source, target, expected)


# (G_k, N_k) data ------------------------------------------------------------

@dataclass(frozen=True)
class Summand:
    kind: str  # "framing" or "bifundamental"
    source: str
    target: str
    multiplicity: int

    def describe(self) -> str:
        if self.kind == "framing":
            return f"{self.multiplicity} x Hom(W_{self.target}, V_{self.target})"
        return f"{self.multiplicity} x Hom(V_{self.source}, V_{self.target})"

    def vertices(self) -> Tuple[str, ...]:
        if self.kind == "framing":
            return (self.target,)
        return (self.source, self.target)


@dataclass(frozen=True)
class PairData:
    groups: Dict[int, Tuple[str, ...]]
    reps: Dict[int, Tuple[Summand, ...]]

    def trivial_action_holds(self, q: ValuedQuiver) -> bool:
        """GL(V_i) in G_k touches a summand of N_j only when j divides k."""
        for j, summands in self.reps.items():
            for s in summands:
                for vtx in s.vertices():
                    if q.sym(vtx) % j:
                        return False
        return True

    def to_json(self) -> dict:
        return {
            "G": {str(k): [f"GL(V_{i})" for i in self.groups[k]] for k in sorted(self.groups)},
            "N": {str(k): [s.describe() for s in self.reps[k]] for k in sorted(self.reps)},
        }


def build_pair(q: ValuedQuiver) -> PairData:
    groups: Dict[int, List[str]] = {}
    reps: Dict[int, List[Summand]] = {}
    for i in q.ids:
        groups.setdefault(q.sym(i), []).append(i)
        if q.framing(i):
            reps.setdefault(q.sym(i), []).append(Summand("framing", i, i, q.framing(i)))
    for e in edge_constants(q).values():
        reps.setdefault(e.d_ij, []).append(Summand("bifundamental", e.i, e.j, e.g))
    return PairData({k: tuple(v) for k, v in groups.items()},
                    {k: tuple(v) for k, v in reps.items()})
