"""Betti numbers of finite simplicial complexes and simplicial sets.

Ranks are computed exactly, over the rationals by fraction-free elimination
on sparse integer rows, or over GF(2) with bitmask rows.  The module also
checks the Mayer-Vietoris inequalities (two sets and their ``m``-fold
generalisation) and Alexander duality inside a triangulated cube.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .errors import InconsistentFaces

FIELDS = ("q", "gf2")


# --------------------------------------------------------------------------
# complexes


class SimplicialComplex:
    """A finite abstract simplicial complex, closed under faces.

    ``vertices`` fixes the vertex order used to orient simplices.  Simplices
    are given as iterables of vertex ids; all their faces are added.
    """

    def __init__(self, simplices: Iterable[Iterable[Hashable]] = (),
                 vertices: Optional[Sequence[Hashable]] = None):
        closed = set()
        for s in simplices:
            s = frozenset(s)
            if not s or s in closed:
                continue
            for r in range(1, len(s) + 1):
                closed.update(frozenset(c) for c in itertools.combinations(s, r))
        used = {v for s in closed if len(s) == 1 for v in s}
        if vertices is None:
            try:
                vertices = sorted(used)
            except TypeError:
                vertices = sorted(used, key=repr)
        else:
            vertices = list(dict.fromkeys(vertices))
            missing = used - set(vertices)
            if missing:
                raise ValueError(f"simplices use unknown vertices {sorted(map(repr, missing))}")
        for v in vertices:
            closed.add(frozenset([v]))
        self.vertices: Tuple[Hashable, ...] = tuple(vertices)
        self.simplices: frozenset = frozenset(closed)
        self._index = {v: i for i, v in enumerate(self.vertices)}

    # ---- basic structure
    @property
    def dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def ordered(self, simplex: Iterable[Hashable]) -> tuple:
        return tuple(sorted(simplex, key=self._index.__getitem__))

    def simplices_of_dim(self, k: int) -> List[tuple]:
        out = [self.ordered(s) for s in self.simplices if len(s) == k + 1]
        out.sort(key=lambda t: [self._index[v] for v in t])
        return out

    def f_vector(self) -> List[int]:
        counts = [0] * (self.dim + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return counts

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector()))

    def __contains__(self, simplex) -> bool:
        return frozenset(simplex) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.vertices)} vertices, f={self.f_vector()})"

    def maximal_simplices(self) -> List[frozenset]:
        out = []
        for s in self.simplices:
            if not any(s < t for t in self.simplices if len(t) == len(s) + 1):
                out.append(s)
        return out

    # ---- operations inside a common ambient complex
    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.simplices <= other.simplices

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        verts = list(self.vertices) + [v for v in other.vertices if v not in self._index]
        return SimplicialComplex(self.simplices | other.simplices, verts)

    def intersection(self, other: "SimplicialComplex") -> "SimplicialComplex":
        common = self.simplices & other.simplices
        verts = [v for v in self.vertices if frozenset([v]) in common]
        return SimplicialComplex(common, verts)

    def full_subcomplex(self, vertices: Iterable[Hashable]) -> "SimplicialComplex":
        keep = set(vertices)
        verts = [v for v in self.vertices if v in keep]
        return SimplicialComplex((s for s in self.simplices if s <= keep), verts)

    def subcomplex(self, simplices: Iterable[Iterable[Hashable]]) -> "SimplicialComplex":
        """Closure of ``simplices``, which must belong to this complex."""
        simplices = [frozenset(s) for s in simplices]
        for s in simplices:
            if s not in self.simplices:
                raise ValueError(f"{sorted(map(repr, s))} is not a simplex of the complex")
        sub = SimplicialComplex(simplices)
        verts = [v for v in self.vertices if frozenset([v]) in sub.simplices]
        return SimplicialComplex(sub.simplices, verts)

    # ---- JSON
    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices),
                "simplices": [list(s) for s in map(self.ordered, self.maximal_simplices())]}

    @classmethod
    def from_dict(cls, d: dict) -> "SimplicialComplex":
        def conv(v):
            return tuple(v) if isinstance(v, list) else v
        verts = [conv(v) for v in d.get("vertices", [])] or None
        return cls(([conv(v) for v in s] for s in d.get("simplices", [])), verts)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# --------------------------------------------------------------------------
# exact ranks


def _normalize(row: Dict[int, int]) -> Dict[int, int]:
    g = reduce(gcd, row.values(), 0)
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def rank_q(rows: Iterable[Dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix given as ``{column: value}`` rows.

    Fraction-free: a row is reduced against a pivot row by
    ``b * row - a * pivot`` and then divided by the gcd of its entries.
    """
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = _normalize(row)
                break
            a, b = row[c], piv[c]
            new = {k: b * v for k, v in row.items()}
            for k, v in piv.items():
                x = new.get(k, 0) - a * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            row = _normalize(new)
    return len(pivots)


def rank_gf2(rows: Iterable[Dict[int, int]]) -> int:
    """Rank over GF(2) of a sparse integer matrix (entries reduced mod 2)."""
    basis: Dict[int, int] = {}
    for row in rows:
        x = 0
        for c, v in row.items():
            if v % 2:
                x |= 1 << c
        while x:
            top = x.bit_length() - 1
            if top in basis:
                x ^= basis[top]
            else:
                basis[top] = x
                break
    return len(basis)


def _rank(rows, field: str) -> int:
    if field == "q":
        return rank_q(rows)
    if field == "gf2":
        return rank_gf2(rows)
    raise ValueError(f"field must be one of {FIELDS}, got {field!r}")


# --------------------------------------------------------------------------
# chain complexes


@dataclass(frozen=True)
class ChainComplexRanks:
    """Chain-group dimensions and boundary ranks of a finite chain complex.

    ``ranks[k]`` is the rank of the boundary ``C_k -> C_{k-1}`` (``ranks[0] = 0``).
    """

    dims: Tuple[int, ...]
    ranks: Tuple[int, ...]
    field: str

    def betti(self) -> "BettiVector":
        top = len(self.dims)
        b = [self.dims[k] - self.ranks[k] - (self.ranks[k + 1] if k + 1 < top else 0)
             for k in range(top)]
        return BettiVector(b)


class BettiVector(tuple):
    """Betti numbers ``(b_0, b_1, ...)``; missing degrees are zero."""

    def __new__(cls, values=()):
        return super().__new__(cls, (int(v) for v in values))

    def __getitem__(self, k):
        if isinstance(k, int) and k >= len(self):
            return 0
        return super().__getitem__(k)

    def trimmed(self) -> tuple:
        out = tuple(self)
        while out and out[-1] == 0:
            out = out[:-1]
        return out

    # equality ignores trailing zeros: (1, 1) == (1, 1, 0)
    def __eq__(self, other):
        if isinstance(other, tuple):
            return self.trimmed() == BettiVector(other).trimmed()
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.trimmed())

    def degree(self, k: int) -> int:
        return self[k] if k >= 0 else 0

    @property
    def total(self) -> int:
        return sum(self)

    def reduced(self) -> "BettiVector":
        """Reduced Betti numbers (``b_0 - 1``, empty space has ``b~_{-1} = 1``, dropped)."""
        if not self or self[0] == 0:
            return BettiVector(self)
        return BettiVector((self[0] - 1,) + tuple(self[1:]))

    def __repr__(self) -> str:
        return f"BettiVector({tuple(self)})"


def boundary_rows(K: SimplicialComplex, k: int) -> List[Dict[int, int]]:
    """Rows of the boundary ``C_k -> C_{k-1}``: one sparse row per ``k``-simplex."""
    faces = {s: i for i, s in enumerate(K.simplices_of_dim(k - 1))}
    rows = []
    for s in K.simplices_of_dim(k):
        rows.append({faces[s[:j] + s[j + 1:]]: (-1) ** j for j in range(len(s))})
    return rows


def chain_complex(K: SimplicialComplex, field: str = "q") -> ChainComplexRanks:
    if not K.simplices:
        return ChainComplexRanks((), (), field)
    dims = tuple(len(K.simplices_of_dim(k)) for k in range(K.dim + 1))
    ranks = (0,) + tuple(_rank(boundary_rows(K, k), field) for k in range(1, K.dim + 1))
    return ChainComplexRanks(dims, ranks, field)


def betti(K: SimplicialComplex, field: str = "q") -> BettiVector:
    """Betti numbers of ``K`` over Q (default) or GF(2)."""
    return chain_complex(K, field).betti()


def boundary_squares_to_zero(K: SimplicialComplex) -> bool:
    for k in range(2, K.dim + 1):
        low = boundary_rows(K, k - 1)
        for row in boundary_rows(K, k):
            acc: Dict[int, int] = {}
            for i, a in row.items():
                for j, b in low[i].items():
                    acc[j] = acc.get(j, 0) + a * b
            if any(acc.values()):
                return False
    return True


# --------------------------------------------------------------------------
# simplicial sets


@dataclass
class SimplicialSet:
    """Non-degenerate simplices of a finite simplicial set with face maps.

    ``cells[k]`` lists the keys of the non-degenerate ``k``-simplices and
    ``faces[key]`` gives ``(d_0 x, ..., d_k x)``; a face that is degenerate is
    ``None``.  Only the normalized chain complex is needed for homology.
    """

    cells: Dict[int, List[Hashable]]
    faces: Dict[Hashable, tuple] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return max((k for k, v in self.cells.items() if v), default=-1)

    def boundary_rows(self, k: int) -> List[Dict[int, int]]:
        index = {key: i for i, key in enumerate(self.cells.get(k - 1, []))}
        rows = []
        for key in self.cells.get(k, []):
            fs = self.faces.get(key)
            if fs is None or len(fs) != k + 1:
                raise InconsistentFaces(f"{key!r} needs {k + 1} faces")
            row: Dict[int, int] = {}
            for j, f in enumerate(fs):
                if f is None:
                    continue
                if f not in index:
                    raise InconsistentFaces(f"face {f!r} of {key!r} is not a {k - 1}-simplex")
                c = index[f]
                row[c] = row.get(c, 0) + (-1) ** j
            rows.append({c: v for c, v in row.items() if v})
        return rows

    def check(self) -> None:
        """Raise :class:`InconsistentFaces` unless the normalized boundary squares to 0."""
        for k in range(2, self.dim + 1):
            low = self.boundary_rows(k - 1)
            for row in self.boundary_rows(k):
                acc: Dict[int, int] = {}
                for i, a in row.items():
                    for j, b in low[i].items():
                        acc[j] = acc.get(j, 0) + a * b
                if any(acc.values()):
                    raise InconsistentFaces(f"boundary does not square to zero in degree {k}")
        if self.dim >= 1:
            self.boundary_rows(1)


def betti_simplicial_set(S: SimplicialSet, field: str = "q") -> BettiVector:
    """Betti numbers of the normalized chain complex of ``S``."""
    S.check()
    top = S.dim
    if top < 0:
        return BettiVector()
    dims = tuple(len(S.cells.get(k, [])) for k in range(top + 1))
    ranks = (0,) + tuple(_rank(S.boundary_rows(k), field) for k in range(1, top + 1))
    return ChainComplexRanks(dims, ranks, field).betti()


def simplicial_set_of(K: SimplicialComplex) -> SimplicialSet:
    """Ordered simplicial set of ``K``: non-degenerate simplices are the
    simplices of ``K`` listed in vertex order."""
    cells = {k: K.simplices_of_dim(k) for k in range(K.dim + 1)}
    faces = {s: tuple(s[:j] + s[j + 1:] for j in range(len(s))) if len(s) > 1 else ()
             for k in cells for s in cells[k]}
    return SimplicialSet(cells, faces)


# --------------------------------------------------------------------------
# Mayer-Vietoris


@dataclass
class InequalityReport:
    """Result of checking a family of inequalities ``lhs <= rhs``."""

    name: str
    checks: List[dict] = field(default_factory=list)

    @property
    def violations(self) -> List[dict]:
        return [c for c in self.checks if c["lhs"] > c["rhs"]]

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, label: str, degree: int, lhs: int, rhs: int) -> None:
        self.checks.append({"inequality": label, "degree": degree, "lhs": lhs, "rhs": rhs})

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checks": self.checks,
                "violations": self.violations}


def mayer_vietoris_check(K1: SimplicialComplex, K2: SimplicialComplex,
                         field: str = "q") -> InequalityReport:
    """Check both two-set Mayer-Vietoris inequalities in every degree.

    ``b_i(K1) + b_i(K2) <= b_i(K1 u K2) + b_i(K1 n K2)`` and
    ``b_i(K1 u K2) <= b_i(K1) + b_i(K2) + b_{i-1}(K1 n K2)``.
    """
    union, inter = K1.union(K2), K1.intersection(K2)
    b1, b2, bu, bi = (betti(K, field) for K in (K1, K2, union, inter))
    top = max(K1.dim, K2.dim, union.dim) + 1
    rep = InequalityReport("mayer_vietoris")
    for i in range(top + 1):
        rep.add("sum <= union + intersection", i, b1[i] + b2[i], bu[i] + bi[i])
        rep.add("union <= sum + shifted intersection", i, bu[i],
                b1[i] + b2[i] + bi.degree(i - 1))
    return rep


def _empty() -> SimplicialComplex:
    return SimplicialComplex()


def generalized_mayer_vietoris_check(parts: Sequence[SimplicialComplex],
                                     field: str = "q") -> InequalityReport:
    """``m``-fold inequalities for closed sets ``X_1 .. X_m`` (``J`` ranges over
    non-empty index sets).

    ``b_i(U X_j) <= sum_J b_{i-|J|+1}(n_{j in J} X_j)`` and
    ``b_i(n X_j) <= sum_J b_{i+|J|-1}(U_{j in J} X_j)``.
    """
    m = len(parts)
    if m < 1:
        raise ValueError("need at least one set")
    subsets = [J for r in range(1, m + 1) for J in itertools.combinations(range(m), r)]
    inter_b, union_b = {}, {}
    for J in subsets:
        inter_b[J] = betti(reduce(lambda a, b: a.intersection(b), (parts[j] for j in J)), field)
        union_b[J] = betti(reduce(lambda a, b: a.union(b), (parts[j] for j in J)), field)
    full = tuple(range(m))
    top = max(p.dim for p in parts) + m
    rep = InequalityReport(f"generalized_mayer_vietoris_m{m}")
    for i in range(top + 1):
        rep.add("union", i, union_b[full][i],
                sum(inter_b[J].degree(i - len(J) + 1) for J in subsets))
        rep.add("intersection", i, inter_b[full][i],
                sum(union_b[J].degree(i + len(J) - 1) for J in subsets))
    return rep


# --------------------------------------------------------------------------
# triangulated cubes and Alexander duality


def cube_grid(n: int, k: int) -> SimplicialComplex:
    """Freudenthal triangulation of ``[0, k]^n`` with integer vertices.

    Each unit cube ``c + [0,1]^n`` is cut into ``n!`` simplices, one per
    permutation ``pi``: ``c, c + e_pi(1), c + e_pi(1) + e_pi(2), ...``.
    """
    simplices = []
    for corner in itertools.product(range(k), repeat=n):
        for perm in itertools.permutations(range(n)):
            v = list(corner)
            chain = [tuple(v)]
            for axis in perm:
                v[axis] += 1
                chain.append(tuple(v))
            simplices.append(chain)
    verts = list(itertools.product(range(k + 1), repeat=n))
    return SimplicialComplex(simplices, verts)


def cube_boundary(cube: SimplicialComplex, n: int, k: int) -> SimplicialComplex:
    """Subcomplex of ``cube_grid(n, k)`` lying in the boundary of the cube."""
    def on_face(s):
        return any(all(v[a] == side for v in s) for a in range(n) for side in (0, k))
    return cube.subcomplex(s for s in cube.simplices if on_face(s))


@dataclass
class DualityReport:
    """Alexander duality in the cube: ``b_q(I^n \\ X) = b~^{n-q-1}(X u bd I^n)``."""

    status: str  # "ok" or "inconclusive"
    rows: List[dict]

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_dict(self) -> dict:
        return {"status": self.status, "rows": self.rows}


def alexander_cube_check(X: SimplicialComplex, n: int, k: int,
                         field: str = "q") -> DualityReport:
    """Compare the complement of ``X`` in ``cube_grid(n, k)`` with ``X u bd``.

    The complement is modelled by the full subcomplex on the vertices not in
    ``X``; this is faithful only when the grid is fine enough around ``X``, so a
    mismatch is reported as ``"inconclusive"`` rather than as a failure.
    """
    cube = cube_grid(n, k)
    if not X.is_subcomplex_of(cube):
        raise ValueError("X must be a subcomplex of cube_grid(n, k)")
    bd = cube_boundary(cube, n, k)
    x_vertices = {v for s in X.simplices for v in s}
    complement = cube.full_subcomplex(v for v in cube.vertices if v not in x_vertices)
    b_comp = betti(complement, field)
    # over a field reduced cohomology and reduced homology have equal ranks
    b_dual = betti(X.union(bd), field).reduced()
    rows = []
    for q in range(n):
        rows.append({"q": q, "complement": b_comp[q], "dual": b_dual.degree(n - q - 1)})
    status = "ok" if all(r["complement"] == r["dual"] for r in rows) else "inconclusive"
    return DualityReport(status, rows)


# --------------------------------------------------------------------------
# small named complexes used by tests, demos and the CLI


def simplex_boundary(k: int) -> SimplicialComplex:
    """Boundary of the ``k``-simplex on vertices ``0..k`` (a ``(k-1)``-sphere)."""
    return SimplicialComplex(itertools.combinations(range(k + 1), k), range(k + 1))


def cycle(m: int) -> SimplicialComplex:
    """Hollow ``m``-gon on vertices ``0..m-1``."""
    return SimplicialComplex(((i, (i + 1) % m) for i in range(m)), range(m))


def annulus(k: int = 3) -> SimplicialComplex:
    """``cube_grid(2, k)`` with the central unit square (and its diagonal) removed."""
    if k < 3 or k % 2 == 0:
        raise ValueError("k must be odd and >= 3")
    sq = cube_grid(2, k)
    c = k // 2
    diagonal = frozenset([(c, c), (c + 1, c + 1)])
    return SimplicialComplex((s for s in sq.simplices if not diagonal <= s), sq.vertices)
