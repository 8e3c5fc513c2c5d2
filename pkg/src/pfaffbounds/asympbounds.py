"""Asymptotic (``O``-form) bounds as structured descriptors.

Many results only hold up to a constant that depends on the domain.  Such a
bound is stored as a product of factors ``base ** exponent`` where the base is
an exact integer and the exponent may carry an ``O(.)`` part.  Nothing is
guessed about the hidden constant: :meth:`AsymptoticBound.log2_value` takes
it as an argument, and :meth:`AsymptoticBound.log2_lower` fixes it to 1.

The module also runs the quantifier-block recursion that turns a formula
with ``nu`` alternating blocks into one with a single block.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import InvalidFormat, RecursionExhausted
from .formats import QuantifierFormat, SetFormat, _nat


@dataclass(frozen=True)
class Exponent:
    """``exact + C * big_o`` where ``C`` is the unknown constant."""

    exact: int = 0
    big_o: int = 0

    @property
    def is_big_o(self) -> bool:
        return self.big_o != 0

    def value(self, constant: float = 1):
        return self.exact + constant * self.big_o

    def log2_magnitude(self, constant: float = 1) -> float:
        v = self.value(constant)
        return math.log2(v) if v > 0 else -math.inf

    def describe(self) -> str:
        if not self.big_o:
            return str(self.exact)
        if not self.exact:
            return f"O({self.big_o})"
        return f"{self.exact}+O({self.big_o})"

    def to_dict(self) -> dict:
        return {"class": "BigO" if self.big_o else "Exact",
                "exact": self.exact, "big_o": self.big_o}


def Exact(k: int) -> Exponent:
    return Exponent(exact=k)


def BigO(c: int) -> Exponent:
    return Exponent(big_o=c)


@dataclass(frozen=True)
class Tower:
    """Exponent ``base ** inner``, for iterated exponentials."""

    base: int
    inner: Union[Exponent, "Tower"]

    @property
    def is_big_o(self) -> bool:
        return self.inner.is_big_o

    def log2_magnitude(self, constant: float = 1) -> float:
        if self.base <= 1:
            return 0.0
        inner_log = self.inner.log2_magnitude(constant)
        if inner_log > 1000:
            return math.inf
        return 2.0 ** inner_log * math.log2(self.base)

    def describe(self) -> str:
        return f"{self.base}^({self.inner.describe()})"

    def to_dict(self) -> dict:
        return {"class": "Tower", "base": self.base, "inner": self.inner.to_dict()}


@dataclass(frozen=True)
class Factor:
    """One factor ``base ** exponent``.

    A term ``O(x)^k`` is stored as ``Factor(x, BigO(k))``: for ``x >= 2`` a
    constant in the base can always be moved into the exponent.
    """

    base: int
    exponent: Union[Exponent, Tower]

    @property
    def degenerate(self) -> bool:
        return self.base < 2

    def log2_value(self, constant: float = 1) -> float:
        if self.base <= 1:
            return 0.0
        mag = self.exponent.log2_magnitude(constant)
        if mag == -math.inf:
            return 0.0
        if mag > 1000:
            return math.inf
        return 2.0 ** mag * math.log2(self.base)

    def describe(self) -> str:
        return f"{self.base}^{self.exponent.describe()}"

    def to_dict(self) -> dict:
        return {"base": str(self.base), "exponent": self.exponent.to_dict(),
                "degenerate": self.degenerate}


@dataclass(frozen=True)
class AsymptoticBound:
    """Product of :class:`Factor` objects, valid up to an unknown constant."""

    factors: tuple
    formula_id: str
    unknown_constant: bool = True
    inputs: dict = field(default_factory=dict, compare=False)
    extras: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise InvalidFormat("at least one factor")

    def log2_value(self, constant: float = 1) -> float:
        """``log2`` of the bound with the hidden constant set to ``constant``."""
        if constant < 1:
            raise InvalidFormat("constant >= 1", str(constant))
        return sum(f.log2_value(constant) for f in self.factors)

    def log2_lower(self) -> float:
        return self.log2_value(1)

    def describe(self) -> str:
        return " * ".join(f.describe() for f in self.factors)

    def to_dict(self, constant: Optional[float] = None) -> dict:
        d = {
            "formula_id": self.formula_id,
            "inputs": self.inputs,
            "factors": [f.to_dict() for f in self.factors],
            "unknown_constant": self.unknown_constant,
            "expression": self.describe(),
            "log2_lower": self.log2_lower(),
        }
        if constant is not None:
            d["constant"] = constant
            d["log2_value"] = self.log2_value(constant)
        if self.extras:
            d["extras"] = {k: (str(v) if isinstance(v, int) and v.bit_length() > 53 else v)
                           for k, v in self.extras.items()}
        return d


def _bound(formula_id: str, factors, inputs: dict, unknown_constant: bool = True,
           **extras) -> AsymptoticBound:
    """Drop factors with a zero exponent (``x^0``) and build the descriptor."""
    kept = [f for f in factors
            if not (isinstance(f.exponent, Exponent) and f.exponent.exact == 0
                    and f.exponent.big_o == 0)]
    if not kept:
        kept = [Factor(1, Exact(1))]
    return AsymptoticBound(tuple(kept), formula_id, unknown_constant, inputs, extras)


def _pfaffian_core(n: int, ell: int, alpha: int, beta: int, power: int = 1) -> list:
    """Factors ``2^{p l(l-1)/2} O(n beta + min(n,l) alpha)^{p(n+l)}``."""
    return [
        Factor(2, Exact(power * (ell * (ell - 1) // 2))),
        Factor(n * beta + min(n, ell) * alpha, BigO(power * (n + ell))),
    ]


# --------------------------------------------------------------------------
# Varieties and closed sets


def variety_asymptotic(n: int, ell: int, alpha: int, beta: int) -> AsymptoticBound:
    """``b(V) <= 2^{l(l-1)/2} O(n beta + min(n,l) alpha)^{n+l}`` (domain fixed)."""
    for name, v, lo in (("n", n, 1), ("ell", ell, 0), ("alpha", alpha, 1), ("beta", beta, 1)):
        _nat(name, v, lo)
    return _bound("variety_asymptotic", _pfaffian_core(n, ell, alpha, beta),
                  {"n": n, "ell": ell, "alpha": alpha, "beta": beta})


def pclosed_asymptotic(fmt: SetFormat) -> AsymptoticBound:
    """``b(X) <= s^d 2^{l(l-1)/2} O(n beta + min(n,l) alpha)^{n+l}``."""
    if fmt.d is None:
        raise InvalidFormat("d present")
    factors = [Factor(fmt.s, Exact(fmt.d))] + _pfaffian_core(fmt.n, fmt.ell, fmt.alpha, fmt.beta)
    return _bound("pclosed_asymptotic", factors,
                  {"n": fmt.n, "ell": fmt.ell, "alpha": fmt.alpha, "beta": fmt.beta,
                   "s": fmt.s, "d": fmt.d})


def bm_asymptotic(fmt: SetFormat) -> AsymptoticBound:
    """Borel-Moore bound ``s^{2d} 2^{l(l-1)} O(n beta + min(n,l) alpha)^{2(n+l)}``."""
    if fmt.d is None:
        raise InvalidFormat("d present")
    factors = [Factor(fmt.s, Exact(2 * fmt.d))] + _pfaffian_core(
        fmt.n, fmt.ell, fmt.alpha, fmt.beta, power=2)
    return _bound("bm_asymptotic", factors,
                  {"n": fmt.n, "ell": fmt.ell, "alpha": fmt.alpha, "beta": fmt.beta,
                   "s": fmt.s, "d": fmt.d})


def gv_qf(fmt: SetFormat) -> AsymptoticBound:
    """Bound for any quantifier-free set: ``2^{l(l-1)/2} s^{2n} O(n beta + min(n,l) alpha)^{n+l}``."""
    n, ell = fmt.n, fmt.ell
    factors = [Factor(2, Exact(ell * (ell - 1) // 2)),
               Factor(fmt.s, Exact(2 * n)),
               Factor(n * fmt.beta + min(n, ell) * fmt.alpha, BigO(n + ell))]
    return _bound("gv_qf", factors,
                  {"n": n, "ell": ell, "alpha": fmt.alpha, "beta": fmt.beta, "s": fmt.s})


# --------------------------------------------------------------------------
# One quantifier block


def existential(n0: int, n1: int, ell: int, alpha: int, beta: int, s: int,
                k: int) -> AsymptoticBound:
    """``b_k`` of the projection of a closed set along ``n1`` coordinates.

    ``(ks + n0 + k n1)^N 2^{L(L-1)/2} O(N beta + min(N, L) alpha)^{N+L}`` with
    ``N = n0 + (k+1) n1`` and ``L = (k+1) l``.
    """
    _nat("k", k, 0)
    N = n0 + (k + 1) * n1
    L = (k + 1) * ell
    factors = [Factor(k * s + n0 + k * n1, Exact(N)),
               Factor(2, Exact(L * (L - 1) // 2)),
               Factor(N * beta + min(N, L) * alpha, BigO(N + L))]
    return _bound("existential", factors,
                  {"n0": n0, "n1": n1, "ell": ell, "alpha": alpha, "beta": beta, "s": s, "k": k},
                  N=N, L=L)


def universal(n0: int, n1: int, ell: int, alpha: int, beta: int, s: int,
              k: int) -> AsymptoticBound:
    """``b_k`` of a set defined by one universal block (complement of the above).

    ``(n0 + (n0-k)(s+n1))^{N*} 2^{L*(L*-1)/2} O(N* beta + min(N*, L*) alpha)^{N*+L*}``
    with ``N* = n0 + (n0-k) n1`` and ``L* = (n0-k) l``.
    """
    _nat("k", k, 0)
    if k > n0:
        raise InvalidFormat("k <= n0", f"k={k}, n0={n0}")
    N = n0 + (n0 - k) * n1
    L = (n0 - k) * ell
    factors = [Factor(n0 + (n0 - k) * (s + n1), Exact(N)),
               Factor(2, Exact(L * (L - 1) // 2)),
               Factor(N * beta + min(N, L) * alpha, BigO(N + L))]
    return _bound("universal", factors,
                  {"n0": n0, "n1": n1, "ell": ell, "alpha": alpha, "beta": beta, "s": s, "k": k},
                  N=N, L=L)


# --------------------------------------------------------------------------
# Block recursion


@dataclass(frozen=True)
class RecursionState:
    """Parameters after ``i`` eliminations of the outermost quantifier block.

    ``N`` free variables, ``s`` functions, ``M`` sets, accumulated factor ``F``
    and chain length ``ell``.
    """

    i: int
    N: int
    s: int
    M: int
    F: int
    ell: int


def initial_state(qf: QuantifierFormat) -> RecursionState:
    return RecursionState(i=0, N=qf.n0, s=qf.inner.s, M=qf.M, F=1, ell=qf.inner.ell)


def recursion_step(state: RecursionState, blocks: Sequence[int], ell: int) -> RecursionState:
    """Eliminate one more block.

    ``N' = (n_{nu-i} + 1) N``, ``s' = N s``, ``M' = N``, ``F' = F (4 M N)^N`` and
    ``l' = N l + l_i`` where the chain length carried by the state is
    ``l_i = l (N_0 + ... + N_{i-1})`` (so the first step gives ``N_0 l``).
    """
    nu = len(blocks)
    if state.i >= nu - 1:
        raise RecursionExhausted(f"step {state.i} with nu={nu}")
    n_block = blocks[nu - state.i - 1]
    carried = state.ell if state.i > 0 else 0
    return RecursionState(
        i=state.i + 1,
        N=(n_block + 1) * state.N,
        s=state.N * state.s,
        M=state.N,
        F=state.F * (4 * state.M * state.N) ** state.N,
        ell=state.N * ell + carried,
    )


def run_recursion(qf: QuantifierFormat) -> list:
    """All states ``0 .. nu-1``."""
    states = [initial_state(qf)]
    for _ in range(qf.nu - 1):
        states.append(recursion_step(states[-1], qf.blocks, qf.inner.ell))
    return states


def n_majorant(qf: QuantifierFormat, i: int) -> int:
    """``2^i n0 n_nu n_{nu-1} ... n_{nu-i+1}`` (``i`` block sizes, outermost first)."""
    nu = qf.nu
    out = 2 ** i * qf.n0
    for j in range(i):
        out *= qf.blocks[nu - 1 - j]
    return out


def one_block_bound(N: int, n1: int, ell: int, alpha: int, beta: int, s: int,
                    M: int, formula_id: str = "one_block") -> AsymptoticBound:
    """Single-block closure for ``M`` sets:
    ``2^{N l (N l - 1)/2} (s M)^{2 N (n1+1)} O(N n1 (alpha+beta))^{N (n1+1+l)}``."""
    Nl = N * ell
    factors = [Factor(2, Exact(Nl * (Nl - 1) // 2)),
               Factor(s * M, Exact(2 * N * (n1 + 1))),
               Factor(N * n1 * (alpha + beta), BigO(N * (n1 + 1 + ell)))]
    return _bound(formula_id, factors,
                  {"N": N, "n1": n1, "ell": ell, "alpha": alpha, "beta": beta, "s": s, "M": M})


def u_nu(qf: QuantifierFormat) -> int:
    out = 2 ** qf.nu * qf.n0
    for b in qf.blocks:
        out *= b
    return out


def v_nu(qf: QuantifierFormat) -> int:
    """``2^{2 nu} n0^2 n_nu^2 ... n_3^2 n_2`` (the ``n_2`` factor only when ``nu >= 2``)."""
    out = 2 ** (2 * qf.nu) * qf.n0 ** 2
    for j in range(3, qf.nu + 1):
        out *= qf.blocks[j - 1] ** 2
    if qf.nu >= 2:
        out *= qf.blocks[1]
    return out


@dataclass(frozen=True)
class QuantifierBound:
    """Engine result (exact recursion + one-block closure) next to the closed form."""

    engine: AsymptoticBound
    closed: AsymptoticBound
    states: tuple
    u: int
    v: int

    def dominating_constant(self) -> float:
        """Smallest ``C >= 1`` with ``log2 engine(1) <= log2 closed(C)``."""
        e = self.engine.log2_lower()
        c = self.closed.log2_lower()
        if e <= c:
            return 1.0
        if c <= 0:
            return math.inf
        return e / c

    def to_dict(self, constant: Optional[float] = None) -> dict:
        return {
            "engine": self.engine.to_dict(constant),
            "closed": self.closed.to_dict(constant),
            "states": [{"i": st.i, "N": st.N, "s": st.s, "M": st.M, "F": str(st.F),
                        "ell": st.ell} for st in self.states],
            "u": self.u,
            "v": self.v,
        }


def quantifier_bound(qf: QuantifierFormat) -> QuantifierBound:
    """Betti bound for a set defined with ``nu`` alternating quantifier blocks."""
    inner = qf.inner
    states = run_recursion(qf)
    last = states[-1]
    n1 = qf.blocks[0]
    closure = one_block_bound(last.N, n1, last.ell, inner.alpha, inner.beta, last.s, last.M,
                              formula_id="one_block")
    factors = ([Factor(last.F, Exact(1))] if last.F > 1 else []) + list(closure.factors)
    inputs = {"n0": qf.n0, "blocks": list(qf.blocks), "ell": inner.ell, "alpha": inner.alpha,
              "beta": inner.beta, "s": inner.s, "M": qf.M}
    engine = _bound("quantifier_engine", factors, inputs, F=last.F, N=last.N,
                    ell_final=last.ell, s_final=last.s, M_final=last.M)
    u, v, ell = u_nu(qf), v_nu(qf), inner.ell
    closed = _bound("quantifier_closed",
                    [Factor(2, BigO(qf.nu * u + ell * ell * v * v)),
                     Factor(inner.s, BigO(u)),
                     Factor(u * (inner.alpha + inner.beta), BigO(u + ell * v))],
                    inputs, u=u, v=v)
    return QuantifierBound(engine, closed, tuple(states), u, v)


def _require_algebraic(qf: QuantifierFormat) -> None:
    if qf.inner.ell != 0:
        raise InvalidFormat("inner.ell == 0", f"ell={qf.inner.ell}")


def algebraic_quantifier(qf: QuantifierFormat) -> AsymptoticBound:
    """Semi-algebraic case: ``[2^{nu^2} d s n0 ... n_nu]^{O(2^nu n0 ... n_nu)}``.

    The degree ``d`` is ``qf.inner.beta``.
    """
    _require_algebraic(qf)
    prod_n = qf.n0
    for b in qf.blocks:
        prod_n *= b
    nu = qf.nu
    base = 2 ** (nu * nu) * qf.inner.beta * qf.inner.s * prod_n
    return _bound("algebraic_quantifier", [Factor(base, BigO(2 ** nu * prod_n))],
                  {"n0": qf.n0, "blocks": list(qf.blocks), "d": qf.inner.beta, "s": qf.inner.s})


def qe_comparison(qf: QuantifierFormat) -> AsymptoticBound:
    """Bound obtained through quantifier elimination:
    ``s^{4 n0 (n0+1) prod_{i>=0}(n_i+1)} d^{O(n0^2 n_1 ... n_nu)}``."""
    _require_algebraic(qf)
    prod_plus = qf.n0 + 1
    prod_n = qf.n0 ** 2
    for b in qf.blocks:
        prod_plus *= b + 1
        prod_n *= b
    s_exp = 4 * qf.n0 * (qf.n0 + 1) * prod_plus
    return _bound("qe_comparison",
                  [Factor(qf.inner.s, Exact(s_exp)), Factor(qf.inner.beta, BigO(prod_n))],
                  {"n0": qf.n0, "blocks": list(qf.blocks), "d": qf.inner.beta, "s": qf.inner.s},
                  s_exponent=s_exp, d_exponent_coefficient=prod_n)


# --------------------------------------------------------------------------
# Couples and Hausdorff limits


def singular_cc_asymptotic(n: int, ell: int, alpha: int, beta: int, M: int = 1,
                           N: int = 1) -> AsymptoticBound:
    """``M N 2^{(n l)^2} O(n^2 (alpha+beta))^{(n+1) l}``."""
    factors = [Factor(M * N, Exact(1)), Factor(2, Exact((n * ell) ** 2)),
               Factor(n * n * (alpha + beta), BigO((n + 1) * ell))]
    return _bound("singular_cc_asymptotic", factors,
                  {"n": n, "ell": ell, "alpha": alpha, "beta": beta, "M": M, "N": N})


def frontier_cc(n: int, r: int, s: int, N: int) -> AsymptoticBound:
    """Components of ``(X, fr X)_0`` for a fewnomial family of ``N`` basic sets:
    ``N^2 s^{N + r O(n^2)} n^{(n+r)^{n^{O(n^2 + n r)}}}``."""
    for name, v, lo in (("n", n, 1), ("r", r, 1), ("s", s, 0), ("N", N, 1)):
        _nat(name, v, lo)
    factors = [Factor(N, Exact(2)),
               Factor(s, Exponent(exact=N, big_o=r * n * n)),
               Factor(n, Tower(n + r, Tower(n, BigO(n * n + n * r))))]
    return _bound("frontier_cc", factors, {"n": n, "r": r, "s": s, "N": N})


def hausdorff_asymptotic(fmt: SetFormat, k: int) -> AsymptoticBound:
    """``b_k(X_0) <= s^{d(k+1)} 2^{(k l)^2} O(k n beta + k min(n,l) alpha)^{(k+1)(n+l)}``."""
    if fmt.d is None:
        raise InvalidFormat("d present")
    _nat("k", k, 1)
    n, ell = fmt.n, fmt.ell
    factors = [Factor(fmt.s, Exact(fmt.d * (k + 1))),
               Factor(2, Exact((k * ell) ** 2)),
               Factor(k * n * fmt.beta + k * min(n, ell) * fmt.alpha, BigO((k + 1) * (n + ell)))]
    return _bound("hausdorff_asymptotic", factors,
                  {"n": n, "ell": ell, "alpha": fmt.alpha, "beta": fmt.beta, "s": fmt.s,
                   "d": fmt.d, "k": k})


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Comparison:
    """Outcome of :func:`compare`; only indicative when constants are unknown."""

    smaller: str  # "a", "b" or "equal"
    log2_a: float
    log2_b: float
    constant: float
    indicative_only: bool

    def to_dict(self) -> dict:
        return {"smaller": self.smaller, "log2_a": self.log2_a, "log2_b": self.log2_b,
                "constant": self.constant, "indicative_only": self.indicative_only}


def compare(a: AsymptoticBound, b: AsymptoticBound, constant: float = 1,
            rel_tol: float = 1e-12) -> Comparison:
    """Order two descriptors by ``log2`` with the hidden constant set to ``constant``."""
    la, lb = a.log2_value(constant), b.log2_value(constant)
    if la == lb or math.isclose(la, lb, rel_tol=rel_tol, abs_tol=1e-12):
        smaller = "equal"
    else:
        smaller = "a" if la < lb else "b"
    return Comparison(smaller, la, lb, constant, a.unknown_constant or b.unknown_constant)


def algebraic_qf(n0: int, blocks: Sequence[int], d: int, s: int, M: int = 1) -> QuantifierFormat:
    """Quantifier format of ``s`` polynomials of degree ``d`` (``l = 0``)."""
    from .formats import polynomial_format
    n = n0 + sum(blocks)
    return QuantifierFormat(n0=n0, blocks=tuple(blocks), inner=polynomial_format(n, d, s), M=M)
