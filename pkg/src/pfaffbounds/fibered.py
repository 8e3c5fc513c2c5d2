"""Fibered products of simplicial surjections and the descent inequality.

For a surjective simplicial map ``f: X -> Y`` the ``(p+1)``-fold fibered
product ``W^p = X x_Y ... x_Y X`` is built as a simplicial set.  Source
vertices are ordered so that ``f`` is weakly monotone; then ``X`` and ``Y``
are ordered simplicial sets, ``f`` is a map of simplicial sets, and the
non-degenerate ``k``-simplices of ``W^p`` are chains ``t_0 < ... < t_k`` of
``(p+1)``-tuples with equal image, strictly increasing in the product order,
whose ``i``-th coordinates span a simplex of ``X`` for every ``i``.  Faces
delete one position of the chain.

The second half of the module counts components of the expanded diagonal of a
finite point sample.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Sequence, Tuple

from .errors import InequalityViolated, InvalidMap, NotSurjective
from .homology import (BettiVector, SimplicialComplex, SimplicialSet, betti,
                       betti_simplicial_set, cycle)


# --------------------------------------------------------------------------
# simplicial maps


class SimplicialMap:
    """Vertex map between finite simplicial complexes.

    Raises :class:`InvalidMap` if a vertex is unmapped or a simplex is not sent
    to a simplex.  Surjectivity is checked separately (:meth:`is_surjective`)
    because only the fibered-product operations require it.
    """

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex,
                 vertex_map: Dict[Hashable, Hashable]):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        tv = set(target.vertices)
        for v in source.vertices:
            if v not in self.vertex_map:
                raise InvalidMap(f"vertex {v!r} is not mapped")
            if self.vertex_map[v] not in tv:
                raise InvalidMap(f"{v!r} maps to {self.vertex_map[v]!r}, not a target vertex")
        for s in source.simplices:
            if self.image(s) not in target.simplices:
                raise InvalidMap(f"image of {sorted(map(repr, s))} is not a simplex")

    def __call__(self, v):
        return self.vertex_map[v]

    def image(self, simplex) -> frozenset:
        return frozenset(self.vertex_map[v] for v in simplex)

    def missed(self) -> List[tuple]:
        hit = {self.image(s) for s in self.source.simplices}
        return sorted((self.target.ordered(s) for s in self.target.simplices - hit), key=repr)

    def is_surjective(self) -> bool:
        return not self.missed()

    def require_surjective(self) -> None:
        miss = self.missed()
        if miss:
            raise NotSurjective(f"{len(miss)} target simplices are missed, e.g. {miss[0]!r}")

    # ---- JSON
    def to_dict(self) -> dict:
        return {"source": self.source.to_dict(), "target": self.target.to_dict(),
                "vertex_map": {_key(v): self.vertex_map[v] for v in self.source.vertices}}

    @classmethod
    def from_dict(cls, d: dict) -> "SimplicialMap":
        source = SimplicialComplex.from_dict(d["source"])
        target = SimplicialComplex.from_dict(d["target"])
        raw = d["vertex_map"]
        tv = {_key(v): v for v in target.vertices}
        vm = {}
        for v in source.vertices:
            k = _key(v)
            if k not in raw:
                raise InvalidMap(f"vertex {v!r} is not mapped")
            w = raw[k]
            w = tuple(w) if isinstance(w, list) else w
            vm[v] = tv.get(_key(w), w)
        return cls(source, target, vm)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _key(v) -> str:
    # JSON object keys are strings; tuples use their JSON list spelling
    return json.dumps(list(v)) if isinstance(v, tuple) else str(v)


# --------------------------------------------------------------------------
# fibered products


@dataclass
class FiberedProduct:
    """Non-degenerate simplices of ``W^p``; vertices are ``(p+1)``-tuples."""

    p: int
    vertices: List[tuple]
    simplices: Dict[int, List[tuple]]  # dim -> chains of vertices

    @property
    def dim(self) -> int:
        return max((k for k, v in self.simplices.items() if v), default=-1)

    def count(self) -> List[int]:
        return [len(self.simplices.get(k, [])) for k in range(self.dim + 1)]

    def simplicial_set(self) -> SimplicialSet:
        faces = {}
        for k, chains in self.simplices.items():
            for c in chains:
                faces[c] = tuple(c[:j] + c[j + 1:] for j in range(len(c))) if k else ()
        return SimplicialSet(dict(self.simplices), faces)

    def complex(self) -> SimplicialComplex:
        """The same object as an ordered simplicial complex on the tuples."""
        return SimplicialComplex(
            (c for chains in self.simplices.values() for c in chains), self.vertices)

    def betti(self, field: str = "q") -> BettiVector:
        return betti_simplicial_set(self.simplicial_set(), field)


def _vertex_order(f: SimplicialMap) -> Dict[Hashable, int]:
    """Rank of each source vertex in an order making ``f`` weakly monotone."""
    t_rank = {w: i for i, w in enumerate(f.target.vertices)}
    s_idx = {v: i for i, v in enumerate(f.source.vertices)}
    order = sorted(f.source.vertices, key=lambda v: (t_rank[f(v)], s_idx[v]))
    return {v: i for i, v in enumerate(order)}


def fibered_product(f: SimplicialMap, p: int) -> FiberedProduct:
    """``(p+1)``-fold fibered product of ``f`` as a simplicial set."""
    if isinstance(p, bool) or not isinstance(p, int) or p < 0:
        raise ValueError("p must be a natural number")
    f.require_surjective()
    X = f.source
    rank = _vertex_order(f)
    fibers: Dict[Hashable, List[Hashable]] = {}
    for v in sorted(X.vertices, key=rank.__getitem__):
        fibers.setdefault(f(v), []).append(v)
    # neighbours above v (and v itself) in the monotone order
    up = {v: [u for u in X.vertices if rank[u] >= rank[v] and frozenset((u, v)) in X]
          for v in X.vertices}
    for v in X.vertices:
        up[v].sort(key=rank.__getitem__)

    vertices = [t for w in f.target.vertices for t in itertools.product(fibers.get(w, []), repeat=p + 1)]
    simplices: Dict[int, List[tuple]] = {}

    def extend(chain: List[tuple], coords: List[frozenset]):
        simplices.setdefault(len(chain) - 1, []).append(tuple(chain))
        last = chain[-1]
        options = []
        for i in range(p + 1):
            opts = [u for u in up[last[i]] if coords[i] | {u} in X.simplices]
            options.append(opts)
        for t in itertools.product(*options):
            if t == last or len({f(u) for u in t}) != 1:
                continue
            chain.append(t)
            extend(chain, [c | {u} for c, u in zip(coords, t)])
            chain.pop()

    for t in vertices:
        extend([t], [frozenset([u]) for u in t])
    for k in simplices:
        simplices[k].sort(key=lambda c: [[rank[u] for u in t] for t in c])
    return FiberedProduct(p, vertices, simplices)


@dataclass
class SpectralReport:
    """Both sides of ``b_k(Y) <= sum_{p+q=k} b_q(W^p)`` for ``k <= k_max``."""

    lhs: List[int]
    rhs: List[int]
    terms: List[List[int]]  # terms[p][q] = b_q(W^p)
    field: str = "q"

    @property
    def ok(self) -> bool:
        return all(a <= b for a, b in zip(self.lhs, self.rhs))

    def to_dict(self) -> dict:
        return {"ok": self.ok, "lhs": self.lhs, "rhs": self.rhs,
                "terms": self.terms, "field": self.field}


def verify_spectral_inequality(f: SimplicialMap, k_max: int, field: str = "q",
                               strict: bool = True) -> SpectralReport:
    """Compute both sides of the descent inequality up to degree ``k_max``.

    With ``strict`` a violation raises :class:`InequalityViolated`; that can
    only mean a bug, since the inequality is a theorem.
    """
    f.require_surjective()
    bY = betti(f.target, field)
    terms = []
    for p in range(k_max + 1):
        bW = fibered_product(f, p).betti(field)
        terms.append([bW[q] for q in range(k_max - p + 1)])
    lhs = [bY[k] for k in range(k_max + 1)]
    rhs = [sum(terms[p][k - p] for p in range(k + 1)) for k in range(k_max + 1)]
    report = SpectralReport(lhs, rhs, terms, field)
    if strict and not report.ok:
        raise InequalityViolated(f"b(Y)={lhs} exceeds {rhs}")
    return report


# --------------------------------------------------------------------------
# map corpus


def _path(m: int, tag: str = "") -> SimplicialComplex:
    return SimplicialComplex(((f"{tag}{i}", f"{tag}{i + 1}") for i in range(m)),
                             [f"{tag}{i}" for i in range(m + 1)])


def _filled_square() -> SimplicialComplex:
    return SimplicialComplex([(0, 1, 2), (0, 2, 3)], range(4))


def map_corpus() -> Dict[str, SimplicialMap]:
    """Named surjective simplicial maps used by tests, demos and the CLI."""
    tri = cycle(3)
    hexagon = cycle(6)
    out: Dict[str, SimplicialMap] = {}

    out["identity-triangle"] = SimplicialMap(tri, tri, {v: v for v in tri.vertices})
    out["vertex-collapse"] = SimplicialMap(
        SimplicialComplex([("a",), ("b",)]), SimplicialComplex([("*",)]), {"a": "*", "b": "*"})
    out["segment-collapse"] = SimplicialMap(
        SimplicialComplex([("a", "b")]), SimplicialComplex([("*",)]), {"a": "*", "b": "*"})
    out["hexagon-double-cover"] = SimplicialMap(cycle(12), hexagon, {i: i % 6 for i in range(12)})
    out["triangle-triple-cover"] = SimplicialMap(cycle(9), tri, {i: i % 3 for i in range(9)})

    # two closed arcs A = 0..3 and B = 3..6(=0) glued only through f
    arcs = SimplicialComplex([(f"a{i}", f"a{i + 1}") for i in range(3)]
                             + [(f"b{i}", f"b{i + 1}") for i in range(3, 6)])
    vm = {f"a{i}": i for i in range(4)}
    vm.update({f"b{i}": i % 6 for i in range(3, 7)})
    out["arcs-over-circle"] = SimplicialMap(arcs, hexagon, vm)

    out["fold-path"] = SimplicialMap(_path(2), _path(1), {"0": "0", "1": "1", "2": "0"})
    sq = _filled_square()
    edge = SimplicialComplex([("L", "R")])
    out["square-onto-edge"] = SimplicialMap(sq, edge, {0: "L", 1: "R", 2: "R", 3: "L"})
    filled = SimplicialComplex([(0, 1, 2)])
    sphere = SimplicialComplex(itertools.combinations(range(4), 3), range(4))
    out["sphere-onto-triangle"] = SimplicialMap(sphere, filled, {0: 0, 1: 1, 2: 2, 3: 2})
    out["triangle-onto-edge"] = SimplicialMap(tri, SimplicialComplex([(0, 1)]), {0: 0, 1: 1, 2: 1})
    out["circle-onto-point"] = SimplicialMap(tri, SimplicialComplex([("*",)]), {v: "*" for v in range(3)})
    out["two-circles-onto-one"] = SimplicialMap(
        SimplicialComplex([("x0", "x1"), ("x1", "x2"), ("x0", "x2"),
                           ("y0", "y1"), ("y1", "y2"), ("y0", "y2")]),
        tri, {"x0": 0, "x1": 1, "x2": 2, "y0": 0, "y1": 1, "y2": 2})
    return out


# --------------------------------------------------------------------------
# expanded diagonal


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x)) if isinstance(x, float) else Fraction(x)


@dataclass
class DiagonalSample:
    """Finite point sample with a symmetric adjacency relation.

    ``points`` hold exact rational coordinates.  ``edges`` are index pairs.
    """

    points: List[Tuple[Fraction, ...]]
    edges: List[Tuple[int, int]]
    p: int = 1
    delta: Fraction = Fraction(0)
    neighbours: Dict[int, List[int]] = field(init=False, repr=False)

    def __post_init__(self):
        self.points = [tuple(_frac(c) for c in pt) for pt in self.points]
        if len({len(pt) for pt in self.points}) > 1:
            raise ValueError("points must share one dimension")
        self.delta = _frac(self.delta)
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")
        if isinstance(self.p, bool) or not isinstance(self.p, int) or self.p < 0:
            raise ValueError("p must be a natural number")
        nb: Dict[int, set] = {i: set() for i in range(len(self.points))}
        for i, j in self.edges:
            if not (0 <= i < len(self.points) and 0 <= j < len(self.points)):
                raise ValueError(f"edge ({i}, {j}) out of range")
            if i != j:
                nb[i].add(j)
                nb[j].add(i)
        self.neighbours = {i: sorted(v) for i, v in nb.items()}

    @classmethod
    def with_radius(cls, points, radius2, p: int = 1, delta=0) -> "DiagonalSample":
        """Adjacency: squared distance at most ``radius2``."""
        pts = [tuple(_frac(c) for c in pt) for pt in points]
        r2 = _frac(radius2)
        edges = [(i, j) for i, j in itertools.combinations(range(len(pts)), 2)
                 if sq_dist(pts[i], pts[j]) <= r2]
        return cls(pts, edges, p, delta)

    def to_dict(self) -> dict:
        return {"points": [[str(c) for c in pt] for pt in self.points],
                "edges": [list(e) for e in self.edges], "p": self.p, "delta": str(self.delta)}

    @classmethod
    def from_dict(cls, d: dict) -> "DiagonalSample":
        pts = [tuple(Fraction(str(c)) for c in pt) for pt in d["points"]]
        p = d.get("p", 1)
        delta = Fraction(str(d.get("delta", 0)))
        if "edges" in d:
            return cls(pts, [tuple(e) for e in d["edges"]], p, delta)
        if "radius2" in d:
            return cls.with_radius(pts, Fraction(str(d["radius2"])), p, delta)
        raise ValueError("sample needs 'edges' or 'radius2'")


def sq_dist(a, b) -> Fraction:
    return sum(((x - y) ** 2 for x, y in zip(a, b)), Fraction(0))


def rho(points: Sequence[Sequence[Fraction]]) -> Fraction:
    """``sum_{i<j} |x_i - x_j|^2``, exact."""
    return sum((sq_dist(a, b) for a, b in itertools.combinations(points, 2)), Fraction(0))


def diagonal_nodes(sample: DiagonalSample) -> List[tuple]:
    """Index tuples of length ``p+1`` with ``rho <= delta`` (partial sums prune)."""
    pts, delta, size = sample.points, sample.delta, sample.p + 1
    out = []

    def grow(t: List[int], acc: Fraction):
        if len(t) == size:
            out.append(tuple(t))
            return
        for j in range(len(pts)):
            a = acc + sum((sq_dist(pts[i], pts[j]) for i in t), Fraction(0))
            if a <= delta:
                t.append(j)
                grow(t, a)
                t.pop()

    grow([], Fraction(0))
    return out


def expanded_diagonal_components(sample: DiagonalSample) -> int:
    """Components of the expanded-diagonal graph of ``sample``.

    Two tuples are adjacent when they differ and every coordinate either stays
    put or moves along one edge of the sample (strong product adjacency).
    """
    nodes = diagonal_nodes(sample)
    index = {t: i for i, t in enumerate(nodes)}
    parent = list(range(len(nodes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    nb = sample.neighbours
    for t, i in index.items():
        for u in itertools.product(*([c] + nb[c] for c in t)):
            j = index.get(u)
            if j is not None:
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
    return len({find(i) for i in range(len(nodes))})
