"""Grid oracle for sign conditions of small polynomial systems.

Polynomials are evaluated exactly at the nodes of a regular grid over a box
(denominators are cleared, so the arithmetic is on Python integers).  A
strict sign vector is realized at a node.  A sign vector with zeros is
realized either at a node where the polynomials vanish exactly, or by a
*witness box*: a grid cell on whose corners each vanishing polynomial takes
both a value ``<= 0`` and a value ``>= 0`` (so it has a zero in the cell),
every other polynomial keeps one strict sign, and, when two or more
polynomials must vanish, some corner is a common exact zero.

Connected components are counted per sign vector: strict vectors with axis
adjacency between nodes, zero vectors with full (king) adjacency between
witness boxes and through exactly vanishing corners.  This is an estimate of
``b_0``; thin cells may be missed at coarse resolution.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage

from .errors import BoundViolated
from .exactbounds import cells_bound, optm
from .formats import polynomial_format

MAX_NODES = 10 ** 7
MAX_VARS = 3

Monomials = Dict[Tuple[int, ...], Fraction]


# --------------------------------------------------------------------------
# systems


@dataclass(frozen=True)
class PolynomialSystem:
    """Polynomials in ``n <= 3`` variables with rational coefficients, and a box.

    Each polynomial maps exponent vectors to coefficients.  ``box`` is a list of
    ``(lo, hi)`` rational intervals with ``lo < hi``.
    """

    n: int
    polys: Tuple[Monomials, ...]
    box: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VARS:
            raise ValueError(f"n must be between 1 and {MAX_VARS}")
        polys = []
        for p in self.polys:
            clean = {}
            for e, c in dict(p).items():
                e = tuple(int(k) for k in e)
                if len(e) != self.n or min(e, default=0) < 0:
                    raise ValueError(f"exponent {e} does not have {self.n} natural entries")
                c = Fraction(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            polys.append({e: c for e, c in clean.items() if c})
        box = tuple((Fraction(lo), Fraction(hi)) for lo, hi in self.box)
        if len(box) != self.n:
            raise ValueError("box must have one interval per variable")
        if any(lo >= hi for lo, hi in box):
            raise ValueError("box intervals must satisfy lo < hi")
        object.__setattr__(self, "polys", tuple(polys))
        object.__setattr__(self, "box", box)

    @property
    def s(self) -> int:
        return len(self.polys)

    def degree(self) -> int:
        return max((sum(e) for p in self.polys for e in p), default=0)

    def evaluate(self, point: Sequence[Fraction]) -> List[Fraction]:
        out = []
        for p in self.polys:
            v = Fraction(0)
            for e, c in p.items():
                t = c
                for x, k in zip(point, e):
                    t *= Fraction(x) ** k
                v += t
            out.append(v)
        return out

    # ---- JSON: {"n", "box": [[lo, hi], ...], "polys": [[[exps], "coef"], ...]}
    def to_dict(self) -> dict:
        return {"n": self.n,
                "box": [[str(lo), str(hi)] for lo, hi in self.box],
                "polys": [[[list(e), str(c)] for e, c in sorted(p.items())] for p in self.polys]}

    @classmethod
    def from_dict(cls, d: dict) -> "PolynomialSystem":
        polys = []
        for p in d["polys"]:
            mono: Monomials = {}
            for e, c in p:
                e = tuple(e)
                mono[e] = mono.get(e, 0) + Fraction(str(c))
            polys.append(mono)
        box = [(Fraction(str(lo)), Fraction(str(hi))) for lo, hi in d["box"]]
        return cls(int(d["n"]), tuple(polys), tuple(box))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def univariate(coeffs: Sequence) -> Monomials:
    """``sum coeffs[k] x^k`` as a monomial dict (helper for examples)."""
    return {(k,): Fraction(c) for k, c in enumerate(coeffs) if c}


def squares_family(s: int) -> PolynomialSystem:
    """``p_i = (x - i)^2`` for ``i = 1..s`` on ``[0, s + 1]``."""
    polys = tuple({(2,): Fraction(1), (1,): Fraction(-2 * i), (0,): Fraction(i * i)}
                  for i in range(1, s + 1))
    return PolynomialSystem(1, polys, ((Fraction(0), Fraction(s + 1)),))


def circle() -> PolynomialSystem:
    return PolynomialSystem(2, ({(2, 0): Fraction(1), (0, 2): Fraction(1), (0, 0): Fraction(-1)},),
                            ((Fraction(-2), Fraction(2)),) * 2)


# --------------------------------------------------------------------------
# exact grid evaluation


def _node_coordinates(sys: PolynomialSystem, resolution: int):
    """Integer numerators ``a + i b`` and common denominator ``D`` per axis."""
    axes = []
    for lo, hi in sys.box:
        h = (hi - lo) / resolution
        D = lcm(lo.denominator, h.denominator)
        a, b = int(lo * D), int(h * D)
        axes.append((np.array([a + i * b for i in range(resolution + 1)], dtype=object), D))
    return axes


def _signs(sys: PolynomialSystem, resolution: int) -> np.ndarray:
    """Sign array of shape ``(s, R+1, ..., R+1)`` with entries in {-1, 0, 1}."""
    shape = (resolution + 1,) * sys.n
    axes = _node_coordinates(sys, resolution)
    out = np.zeros((sys.s,) + shape, dtype=np.int8)
    for j, p in enumerate(sys.polys):
        if not p:
            continue
        deg = [max(e[k] for e in p) for k in range(sys.n)]
        den = lcm(*(c.denominator for c in p.values()))
        # multiply by den * prod D_k^deg_k > 0; every term is then an integer
        total = np.zeros(shape, dtype=object)
        for e, c in p.items():
            term = np.full(shape, int(c * den), dtype=object)
            for k, (nums, D) in enumerate(axes):
                factor = nums ** e[k] * D ** (deg[k] - e[k])
                view = [1] * sys.n
                view[k] = resolution + 1
                term = term * factor.reshape(view)
            total = total + term
        out[j] = np.sign(total).astype(np.int8)
    return out


# --------------------------------------------------------------------------
# reports


def sign_string(vec: Sequence[int]) -> str:
    return "".join("-0+"[v + 1] for v in vec)


@dataclass
class SignCellReport:
    """Realized sign vectors and estimated component counts on one grid."""

    realized: List[str]
    components_per_sign: Dict[str, int]
    resolution: int
    step: Tuple[Fraction, ...]
    nodes: int
    notes: List[str] = field(default_factory=list)

    @property
    def open_realized(self) -> List[str]:
        return [v for v in self.realized if "0" not in v]

    def to_dict(self) -> dict:
        return {"realized": self.realized,
                "components_per_sign": self.components_per_sign,
                "total_components": count_components(self),
                "resolution": self.resolution,
                "step": [str(h) for h in self.step],
                "nodes": self.nodes,
                "notes": self.notes}


def _check_size(n: int, resolution: int) -> None:
    if isinstance(resolution, bool) or not isinstance(resolution, int) or resolution < 2:
        raise ValueError("resolution must be an integer >= 2")
    if (resolution + 1) ** n > MAX_NODES:
        raise ValueError(f"grid of {(resolution + 1) ** n} nodes exceeds {MAX_NODES}")


def enumerate_signs(sys: PolynomialSystem, resolution: int) -> SignCellReport:
    """Sign vectors realized on the ``resolution``-step grid and their components."""
    _check_size(sys.n, resolution)
    s = sys.s
    S = _signs(sys, resolution)
    grid = S.shape[1:]
    counts: Dict[str, int] = {}

    # strict vectors at nodes; axis adjacency
    nonzero = np.all(S != 0, axis=0) if s else np.ones(grid, dtype=bool)
    code = np.zeros(grid, dtype=np.int64)
    for j in range(s):
        code = code * 3 + (S[j] + 1)
    for c in np.unique(code[nonzero]):
        _, k = ndimage.label(nonzero & (code == c))
        counts[_decode(int(c), s)] = int(k)

    if s:
        counts.update(_zero_cells(S, resolution))
    realized = sorted(counts, key=_order_key)
    step = tuple((hi - lo) / resolution for lo, hi in sys.box)
    notes = ["zero cells are detected through exact node zeros and witness boxes; "
             "cells thinner than one grid step may be missed"]
    return SignCellReport(realized, {k: counts[k] for k in realized}, resolution, step,
                          int(np.prod(grid)), notes)


def _decode(c: int, s: int) -> str:
    digits = []
    for _ in range(s):
        c, r = divmod(c, 3)
        digits.append(r - 1)
    return sign_string(reversed(digits))


def _order_key(v: str):
    return ("0" in v, v)


def _zero_cells(S: np.ndarray, resolution: int) -> Dict[str, int]:
    s = S.shape[0]
    n = S.ndim - 1
    corners = list(itertools.product((0, 1), repeat=n))
    cut = [tuple(slice(o, o + resolution) for o in off) for off in corners]
    # per polynomial: min and max over the 2^n corners of every box
    cmin = np.stack([np.min([S[j][c] for c in cut], axis=0) for j in range(s)])
    cmax = np.stack([np.max([S[j][c] for c in cut], axis=0) for j in range(s)])
    full = np.ones((3,) * n, dtype=bool)

    out: Dict[str, int] = {}
    zeros_at = S == 0
    for Z in (z for r in range(1, s + 1) for z in itertools.combinations(range(s), r)):
        others = [j for j in range(s) if j not in Z]
        crossing = np.all([(cmin[j] <= 0) & (cmax[j] >= 0) for j in Z], axis=0)
        if len(Z) >= 2:
            common = np.all([zeros_at[j] for j in Z], axis=0)
            crossing &= np.any([common[c] for c in cut], axis=0)
        # exact nodes where exactly Z vanishes
        exact = np.all([zeros_at[j] for j in Z], axis=0)
        for j in others:
            exact &= ~zeros_at[j]
        if not crossing.any() and not exact.any():
            continue
        # split by the strict signs of the other polynomials
        patterns: Dict[tuple, Tuple[np.ndarray, np.ndarray]] = {}
        if others:
            fixed = np.all([cmin[j] == cmax[j] for j in others], axis=0) & np.all(
                [cmin[j] != 0 for j in others], axis=0)
            crossing &= fixed
            box_code = np.zeros(crossing.shape, dtype=np.int64)
            node_code = np.zeros(exact.shape, dtype=np.int64)
            for j in others:
                box_code = box_code * 3 + (cmin[j] + 1)
                node_code = node_code * 3 + (S[j] + 1)
            for c in set(np.unique(box_code[crossing]).tolist()) | set(np.unique(node_code[exact]).tolist()):
                patterns[c] = (crossing & (box_code == c), exact & (node_code == c))
        else:
            patterns[0] = (crossing, exact)
        for c, (boxes, nodes) in patterns.items():
            other_signs = _decode(int(c), len(others)) if others else ""
            vec = ["0"] * s
            for j, ch in zip(others, other_signs):
                vec[j] = ch
            k = _merged_components(boxes, nodes, cut, full)
            if k:
                out["".join(vec)] = k
    return out


def _merged_components(boxes, nodes, cut, full) -> int:
    """Components of witness boxes (king adjacency) joined through exact nodes."""
    lb, nb = ndimage.label(boxes, structure=full)
    ln, nn = ndimage.label(nodes, structure=full)
    parent = list(range(nb + nn + 1))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for c in cut:
        a = lb
        b = ln[c]
        mask = (a > 0) & (b > 0)
        for x, y in set(zip(a[mask].tolist(), b[mask].tolist())):
            rx, ry = find(x), find(nb + y)
            if rx != ry:
                parent[rx] = ry
    return len({find(i) for i in range(1, nb + nn + 1)})


def count_components(report: SignCellReport) -> int:
    """Sum of the estimated component counts over all realized sign vectors."""
    return sum(report.components_per_sign.values())


# --------------------------------------------------------------------------
# comparison with the exact bounds


@dataclass
class Verdict:
    status: str  # "ok" or "inconclusive"
    measured: int
    bound: int
    variety_components: int
    variety_bound: int
    resolution: int
    refined_measured: Optional[int] = None

    @property
    def margin(self) -> int:
        return self.bound - self.measured

    def to_dict(self) -> dict:
        d = {"status": self.status, "measured": self.measured, "bound": str(self.bound),
             "margin": str(self.margin), "variety_components": self.variety_components,
             "variety_bound": str(self.variety_bound), "resolution": self.resolution}
        if self.refined_measured is not None:
            d["refined_measured"] = self.refined_measured
        return d


def system_format(sys: PolynomialSystem):
    """The polynomial (``ell = 0``) format of ``sys`` on ``R^n`` (``d = n``)."""
    return polynomial_format(sys.n, max(1, sys.degree()), sys.s, d=sys.n)


def check_against_bound(sys: PolynomialSystem, report: SignCellReport) -> Verdict:
    """Compare measured counts with the cell bound and the variety bound.

    The variety is the common zero set of all polynomials.  A measured count
    above a bound is re-measured at twice the resolution: if the count moves
    the verdict is ``"inconclusive"``, otherwise :class:`BoundViolated` is raised.
    """
    bound = cells_bound(system_format(sys)).value
    vbound = optm(sys.n, max(1, sys.degree())).value
    measured = count_components(report)
    variety = report.components_per_sign.get("0" * sys.s, 0) if sys.s else 0
    verdict = Verdict("ok", measured, bound, variety, vbound, report.resolution)
    if measured <= bound and variety <= vbound:
        return verdict
    finer = enumerate_signs(sys, 2 * report.resolution)
    verdict.refined_measured = count_components(finer)
    fvariety = finer.components_per_sign.get("0" * sys.s, 0)
    if verdict.refined_measured != measured or fvariety != variety:
        verdict.status = "inconclusive"
        return verdict
    raise BoundViolated(f"measured {measured} cells (variety {variety}) against bounds "
                        f"{bound} and {vbound} at stable resolution")
