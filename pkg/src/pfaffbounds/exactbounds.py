"""Closed-form topological bounds evaluated as exact integers.

Every function returns an :class:`ExactBound`.  Intermediate values are
Python integers; the only non-integral factor that occurs is ``gamma / 2``
(and ``max(beta, gamma / 2)`` for non-compact varieties), which is handled by
the ceiling rule: evaluate exactly over the rationals, round up once at the
end.  Any integer at least the real bound still bounds an integer quantity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, prod
from typing import Optional, Sequence

from .errors import InvalidFormat
from .formats import CoupleFormat, SetFormat, _nat


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class ExactBound:
    """Value of a closed-form bound, with the formula and inputs that made it."""

    value: int
    formula_id: str
    inputs: dict = field(default_factory=dict, compare=False)
    flags: tuple = field(default=(), compare=False)

    def __int__(self) -> int:
        return self.value

    @property
    def bit_length(self) -> int:
        return self.value.bit_length()

    def to_dict(self) -> dict:
        return {
            "formula_id": self.formula_id,
            "inputs": self.inputs,
            "value": str(self.value),
            "bit_length": self.bit_length,
            "flags": list(self.flags),
        }


def _chain_inputs(n, ell, alpha, gamma, **more) -> dict:
    d = {"n": n, "ell": ell, "alpha": alpha, "gamma": gamma}
    d.update(more)
    return d


def _check_chain(n: int, ell: int, alpha: int, gamma: Optional[int] = None) -> None:
    _nat("n", n, 1)
    _nat("ell", ell, 0)
    _nat("alpha", alpha, 1)
    if gamma is not None:
        _nat("gamma", gamma, 1)


# --------------------------------------------------------------------------
# Isolated solutions and root counts


def khovanskii(n: int, ell: int, alpha: int, betas: Sequence[int]) -> ExactBound:
    """Khovanskii's bound on isolated solutions of ``n`` Pfaffian equations.

    ``2^{l(l-1)/2} b_1...b_n (b_1+...+b_n - n + min(n,l) alpha + 1)^l``
    """
    betas = tuple(betas)
    if not betas:
        raise InvalidFormat("betas non-empty")
    _check_chain(n, ell, alpha)
    if len(betas) != n:
        raise InvalidFormat("len(betas) == n", f"{len(betas)} != {n}")
    for b in betas:
        _nat("beta_i", b, 1)
    bracket = sum(betas) - n + min(n, ell) * alpha + 1
    value = 2 ** (ell * (ell - 1) // 2) * prod(betas) * bracket ** ell
    return ExactBound(value, "khovanskii",
                      {"n": n, "ell": ell, "alpha": alpha, "betas": list(betas)})


def khovanskii_uniform(n: int, ell: int, alpha: int, beta: int) -> ExactBound:
    """:func:`khovanskii` with all ``n`` equations of degree ``beta``."""
    return khovanskii(n, ell, alpha, [beta] * n)


def khovanskii_domain(n: int, ell: int, alpha: int, betas: Sequence[int],
                      gamma: int) -> ExactBound:
    """Khovanskii's bound for solutions in a domain of bounded complexity ``gamma``."""
    betas = tuple(betas)
    if not betas:
        raise InvalidFormat("betas non-empty")
    _check_chain(n, ell, alpha, gamma)
    if len(betas) != n:
        raise InvalidFormat("len(betas) == n", f"{len(betas)} != {n}")
    for b in betas:
        _nat("beta_i", b, 1)
    bracket = sum(betas) + gamma - n + min(n + 1, ell) * alpha
    twice = 2 ** (ell * (ell - 1) // 2) * prod(betas) * gamma * bracket ** ell
    flags = ("ceiling",) if twice % 2 else ()
    return ExactBound(_ceil_div(twice, 2), "khovanskii_domain",
                      {"n": n, "ell": ell, "alpha": alpha, "betas": list(betas),
                       "gamma": gamma}, flags)


def fewnomial_system(n: int, r: int) -> ExactBound:
    """Non-degenerate positive solutions of ``n`` polynomials with ``r`` monomials."""
    _nat("n", n, 1)
    _nat("r", r, 1)
    value = 2 ** (r * (r - 1) // 2) * (n + 1) ** r
    return ExactBound(value, "fewnomial_system", {"n": n, "r": r})


def additive_complexity(k: int) -> ExactBound:
    """Real roots of a univariate polynomial of additive complexity ``k``."""
    _nat("k", k, 0)
    value = (k + 2) ** (2 * k + 1) * 2 ** (2 * k * k + 2 * k + 1)
    return ExactBound(value, "additive_complexity", {"k": k})


def descartes(r: int) -> ExactBound:
    """Real roots of a univariate polynomial with ``r`` monomials: ``2r - 1``."""
    _nat("r", r, 1)
    return ExactBound(2 * r - 1, "descartes", {"r": r})


def optm(n: int, d: int) -> ExactBound:
    """Oleinik-Petrovskii-Thom-Milnor bound ``d (2d - 1)^{n-1}``."""
    _nat("n", n, 1)
    _nat("d", d, 1)
    return ExactBound(d * (2 * d - 1) ** (n - 1), "optm", {"n": n, "d": d})


# --------------------------------------------------------------------------
# Varieties, P-closed sets, cells


def _variety_twice(n: int, ell: int, alpha: int, beta: int, gamma: int) -> int:
    """``2 * V(n, l, alpha, beta, gamma)`` as an exact integer."""
    ab = alpha + beta - 1
    bracket = n * ab + gamma + min(n, ell) * alpha
    return 2 ** (ell * (ell - 1) // 2) * beta * ab ** (n - 1) * gamma * bracket ** ell


@lru_cache(maxsize=65536)
def _variety_value(n: int, ell: int, alpha: int, beta: int, gamma: int) -> int:
    return _ceil_div(_variety_twice(n, ell, alpha, beta, gamma), 2)


def variety_V(n: int, ell: int, alpha: int, beta: int, gamma: int) -> ExactBound:
    """Betti-number bound for a compact Pfaffian variety.

    ``2^{l(l-1)/2} beta (alpha+beta-1)^{n-1} (gamma/2)
    [n(alpha+beta-1) + gamma + min(n,l) alpha]^l``, rounded up.
    """
    _check_chain(n, ell, alpha, gamma)
    _nat("beta", beta, 1)
    twice = _variety_twice(n, ell, alpha, beta, gamma)
    flags = ("ceiling",) if twice % 2 else ()
    return ExactBound(_ceil_div(twice, 2), "variety_V",
                      _chain_inputs(n, ell, alpha, gamma, beta=beta), flags)


def _V(n, ell, alpha, beta, gamma) -> int:
    return _variety_value(n, ell, alpha, beta, gamma)


def variety_noncompact(n: int, ell: int, alpha: int, beta: int, gamma: int) -> ExactBound:
    """Variety bound without compactness: ``beta`` replaced by ``max(beta, gamma/2)``.

    A half-integral ``gamma/2`` is rounded up (flag ``"beta_star_ceiling"``).
    """
    _check_chain(n, ell, alpha, gamma)
    _nat("beta", beta, 1)
    half = _ceil_div(gamma, 2)
    beta_star = max(beta, half)
    flags = ("beta_star_ceiling",) if gamma % 2 and half > beta else ()
    v = variety_V(n, ell, alpha, beta_star, gamma)
    return ExactBound(v.value, "variety_noncompact",
                      _chain_inputs(n, ell, alpha, gamma, beta=beta, beta_star=beta_star),
                      flags + v.flags)


def _require(fmt: SetFormat, attr: str) -> int:
    value = getattr(fmt, attr)
    if value is None:
        raise InvalidFormat(f"{attr} present", f"{attr} is required for this bound")
    return value


def _set_inputs(fmt: SetFormat) -> dict:
    d = {"n": fmt.n, "ell": fmt.ell, "alpha": fmt.alpha, "gamma": fmt.gamma,
         "beta": fmt.beta, "s": fmt.s}
    for k in ("m", "d", "r"):
        if getattr(fmt, k) is not None:
            d[k] = getattr(fmt, k)
    return d


def basic_set_B0(fmt: SetFormat) -> ExactBound:
    """Basic (strict-inequality) set bound ``2^m C(s, m) V(n, l, alpha, beta, gamma)``."""
    m = _require(fmt, "m")
    value = 2 ** m * comb(fmt.s, m) * _V(fmt.n, fmt.ell, fmt.alpha, fmt.beta, fmt.gamma)
    return ExactBound(value, "basic_set_B0", _set_inputs(fmt))


def pclosed_recursive(fmt: SetFormat) -> ExactBound:
    """Unrolled recursion for sets given by a P-closed formula.

    ``B(s, m) = B0(2 beta, s, m) + 3 s B(3 s, m - 1)`` with base
    ``B(s, 0) = V(n, l, alpha, 2 beta, gamma)``.
    """
    m = _require(fmt, "m")
    v2 = _V(fmt.n, fmt.ell, fmt.alpha, 2 * fmt.beta, fmt.gamma)

    @lru_cache(maxsize=None)
    def rec(s: int, level: int) -> int:
        if level == 0:
            return v2
        return 2 ** level * comb(s, level) * v2 + 3 * s * rec(3 * s, level - 1)

    return ExactBound(rec(fmt.s, m), "pclosed_recursive", _set_inputs(fmt))


def pclosed_closed(fmt: SetFormat, variant: str = "m") -> ExactBound:
    """Closed-form P-closed bound.

    ``variant="m"``: ``(5s)^m V(n, l, alpha, 2 beta, gamma)``;
    ``variant="d"``: ``(10s)^d V(n, l, alpha, 2 beta, gamma)`` (any combinatorial
    level, ``d`` the dimension of the compact variety).
    """
    v2 = _V(fmt.n, fmt.ell, fmt.alpha, 2 * fmt.beta, fmt.gamma)
    if variant == "m":
        value = (5 * fmt.s) ** _require(fmt, "m") * v2
    elif variant == "d":
        value = (10 * fmt.s) ** _require(fmt, "d") * v2
    else:
        raise InvalidFormat("variant in {'m', 'd'}", variant)
    return ExactBound(value, f"pclosed_closed_{variant}", _set_inputs(fmt))


def sigma(s: int, d: int) -> ExactBound:
    """Number of subsets of size at most ``d`` of a ``4s + 1`` element set."""
    _nat("s", s, 0)
    _nat("d", d, 0)
    value = sum(comb(4 * s + 1, i) for i in range(d + 1))
    return ExactBound(value, "sigma", {"s": s, "d": d})


def cells_bound(fmt: SetFormat) -> ExactBound:
    """Number of sign cells of ``s`` functions on a variety of dimension ``d``.

    ``Sigma(s, d) V(n, l, alpha, max(beta, gamma), gamma)``.
    """
    d = _require(fmt, "d")
    beta_star = max(fmt.beta, fmt.gamma)
    value = sigma(fmt.s, d).value * _V(fmt.n, fmt.ell, fmt.alpha, beta_star, fmt.gamma)
    return ExactBound(value, "cells_bound", _set_inputs(fmt))


def bm_composed(fmt: SetFormat) -> ExactBound:
    """Constant-free Borel-Moore bound for a locally closed set.

    Sums the strict-sign-condition bound ``b(X) + b(Y)`` (two compact sets
    given by P-closed formulas in ``s + 1`` functions) over at most
    ``cells_bound`` non-empty sign conditions.
    """
    d = _require(fmt, "d")
    cells = cells_bound(fmt).value
    widened = SetFormat(fmt.chain, beta=fmt.beta, s=fmt.s + 1, d=d)
    per_cell = 2 * pclosed_closed(widened, "d").value
    return ExactBound(cells * per_cell, "bm_composed", _set_inputs(fmt))


# --------------------------------------------------------------------------
# Connected components of relative closures


def _couple_inputs(c: CoupleFormat, **more) -> dict:
    ch = c.chain
    d = {"n": ch.n, "ell": ch.ell, "alpha": ch.alpha, "gamma": ch.gamma,
         "beta": c.beta, "M": c.M, "N": c.N}
    d.update(more)
    return d


def smooth_cc(couple: CoupleFormat, d: Optional[int] = None,
              k: Optional[int] = None) -> ExactBound:
    """Components of the relative closure in the effectively non-singular case.

    ``d`` and ``k`` are the fibre dimensions of ``X`` and ``Y``; they default to
    ``couple.x.d`` and ``couple.y.d``.
    """
    ch = couple.chain
    n, ell, alpha, gamma, beta = ch.n, ch.ell, ch.alpha, ch.gamma, couple.beta
    d = couple.x.d if d is None else d
    k = couple.y.d if k is None else k
    if d is None or k is None:
        raise InvalidFormat("d and k present")
    _nat("d", d, 0)
    _nat("k", k, 0)
    if d > n:
        raise InvalidFormat("d <= n", f"d={d}, n={n}")
    if k > n:
        raise InvalidFormat("k <= n", f"k={k}, n={n}")
    ab = alpha + beta - 1
    total = 0
    for p in range(d + 1):
        beta_p = max(1 + (n - k) * ab, 1 + (n - d + p) * ab)
        total += _V((p + 2) * n, (p + 2) * ell, alpha, beta_p, gamma)
    return ExactBound(2 * total, "smooth_cc", _couple_inputs(couple, d=d, k=k))


def singular_cc(couple: CoupleFormat) -> ExactBound:
    """Components of the relative closure of unions of ``M`` and ``N`` basic sets."""
    ch = couple.chain
    n, ell, alpha, gamma, beta = ch.n, ch.ell, ch.alpha, ch.gamma, couple.beta
    if couple.M < 1:
        raise InvalidFormat("M >= 1")
    if couple.N < 1:
        raise InvalidFormat("N >= 1")
    total = 0
    for p in range(n):
        beta_p = 1 + (p + 1) * (alpha + 2 * beta - 1)
        total += _V((p + 2) * n, (p + 2) * ell, alpha, beta_p, gamma)
    return ExactBound(2 * couple.M * couple.N * total, "singular_cc", _couple_inputs(couple))


def fewnomial_cc(couple: CoupleFormat, r: Optional[int] = None) -> ExactBound:
    """Components of the relative closure of a fewnomial couple.

    The couple must live on the fewnomial chain: ``l = n + r``, ``alpha = 2``,
    ``beta = 1``.  The exponent ``q^2 (n+r)^2 / 2`` is rounded up when odd.
    """
    ch = couple.chain
    n = ch.n
    if r is None:
        r = couple.x.r if couple.x.r is not None else ch.ell - n
    _nat("r", r, 1)
    if ch.ell != n + r or ch.alpha != 2 or couple.beta != 1:
        raise InvalidFormat("fewnomial chain (ell = n + r, alpha = 2, beta = 1)",
                            f"ell={ch.ell}, alpha={ch.alpha}, beta={couple.beta}, r={r}")
    total = 0
    flags = ()
    for p in range(n):
        q = p + 2
        sq = q * q * (n + r) * (n + r)
        if sq % 2:
            flags = ("exponent_ceiling",)
        total += (2 ** _ceil_div(sq, 2) * (6 * n + 6) ** (q * (3 * n + 2 * r))
                  * q ** (q * (n + r)))
    return ExactBound(couple.M * couple.N * total, "fewnomial_cc",
                      _couple_inputs(couple, r=r), flags)


# --------------------------------------------------------------------------
# Hausdorff limits


def hausdorff_betti(fmt: SetFormat, k: int) -> ExactBound:
    """Bound on ``b_k`` of the Hausdorff limit of a compact semi-Pfaffian family."""
    d = _require(fmt, "d")
    _nat("k", k, 0)
    if k > d:
        raise InvalidFormat("k <= d", f"k={k}, d={d}")
    total = 0
    for p in range(k + 1):
        total += ((10 * fmt.s) ** ((p + 1) * d)
                  * _V((p + 1) * fmt.n, (p + 1) * fmt.ell, fmt.alpha, 2 * fmt.beta, fmt.gamma))
    return ExactBound(total, "hausdorff_betti", dict(_set_inputs(fmt), k=k))
