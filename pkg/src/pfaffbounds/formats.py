"""Discrete complexity parameters ("formats") consumed by every bound.

A format records only the integers that describe a Pfaffian formula: the
ambient dimension ``n``, the chain length ``ell`` and degree ``alpha``, the
complexity ``gamma`` of the domain, the degree ``beta`` of the functions and
their number ``s``.  No actual functions are represented.

All format types are frozen dataclasses.  Invariants are checked on
construction, so an instance that exists is valid; :func:`validate` re-checks
an instance and is idempotent.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Optional, Union

from .errors import InvalidFormat

#: Degree of the exhausting function assumed for the polynomial case
#: (``1 - |x|^2`` on a ball).  Callers may override it.
POLYNOMIAL_GAMMA = 2


def _nat(name: str, value: Any, minimum: int = 0) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidFormat(f"{name} is a natural number", f"got {value!r}")
    if value < minimum:
        raise InvalidFormat(f"{name} >= {minimum}", f"got {value}")


@dataclass(frozen=True)
class ChainFormat:
    """Parameters of a Pfaffian chain on a domain of bounded complexity."""

    n: int
    ell: int
    alpha: int
    gamma: int

    def __post_init__(self):
        _nat("n", self.n, 1)
        _nat("ell", self.ell, 0)
        _nat("alpha", self.alpha, 1)
        _nat("gamma", self.gamma, 1)


@dataclass(frozen=True)
class SetFormat:
    """Format of a semi-Pfaffian set: a chain plus degree and function count.

    ``m`` is the combinatorial level, ``d`` the dimension of the ambient
    variety and ``r`` the number of equations (or monomials for fewnomials).
    """

    chain: ChainFormat
    beta: int
    s: int
    m: Optional[int] = None
    d: Optional[int] = None
    r: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.chain, ChainFormat):
            raise InvalidFormat("chain is a ChainFormat", f"got {type(self.chain).__name__}")
        _nat("beta", self.beta, 1)
        _nat("s", self.s, 0)
        if self.m is not None:
            _nat("m", self.m, 0)
            if self.m > self.s:
                raise InvalidFormat("m <= s", f"m={self.m}, s={self.s}")
        if self.d is not None:
            _nat("d", self.d, 0)
            if self.d > self.chain.n:
                raise InvalidFormat("d <= n", f"d={self.d}, n={self.chain.n}")
        if self.r is not None:
            _nat("r", self.r, 0)

    # convenience accessors, used heavily by the bound formulas
    @property
    def n(self) -> int:
        return self.chain.n

    @property
    def ell(self) -> int:
        return self.chain.ell

    @property
    def alpha(self) -> int:
        return self.chain.alpha

    @property
    def gamma(self) -> int:
        return self.chain.gamma


@dataclass(frozen=True)
class CoupleFormat:
    """Format of a semi-Pfaffian couple ``(X, Y)`` sharing one chain.

    ``M`` and ``N`` count the basic sets making up ``X`` and ``Y``.
    """

    x: SetFormat
    y: SetFormat
    M: int = 1
    N: int = 1

    def __post_init__(self):
        if self.x.chain != self.y.chain:
            raise InvalidFormat("x.chain == y.chain")
        _nat("M", self.M, 0)
        _nat("N", self.N, 0)

    @property
    def chain(self) -> ChainFormat:
        return self.x.chain

    @property
    def beta(self) -> int:
        return max(self.x.beta, self.y.beta)


@dataclass(frozen=True)
class QuantifierFormat:
    """Format of a formula with ``nu`` alternating quantifier blocks.

    ``blocks`` lists ``n_1, ..., n_nu``; ``n0`` counts the free variables.
    """

    n0: int
    blocks: tuple
    inner: SetFormat
    M: int = 1

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        _nat("n0", self.n0, 1)
        if len(self.blocks) < 1:
            raise InvalidFormat("nu >= 1")
        for i, b in enumerate(self.blocks, start=1):
            _nat(f"n_{i}", b, 1)
        _nat("M", self.M, 1)
        if self.inner.chain.n != self.n0 + sum(self.blocks):
            raise InvalidFormat(
                "inner.chain.n == n0 + sum(blocks)",
                f"{self.inner.chain.n} != {self.n0 + sum(self.blocks)}",
            )

    @property
    def nu(self) -> int:
        return len(self.blocks)


AnyFormat = Union[ChainFormat, SetFormat, CoupleFormat, QuantifierFormat]


def validate(f: AnyFormat) -> None:
    """Re-check every invariant of ``f``; raises :class:`InvalidFormat`."""
    if isinstance(f, SetFormat):
        validate(f.chain)
    elif isinstance(f, CoupleFormat):
        validate(f.x)
        validate(f.y)
    elif isinstance(f, QuantifierFormat):
        validate(f.inner)
    elif not isinstance(f, ChainFormat):
        raise InvalidFormat("value is a format", f"got {type(f).__name__}")
    f.__post_init__()


def polynomial_format(n: int, degree: int, s: int, gamma: int = POLYNOMIAL_GAMMA,
                      **extra) -> SetFormat:
    """Format of ``s`` polynomials of degree ``degree`` in ``n`` variables."""
    _nat("degree", degree, 1)
    return SetFormat(ChainFormat(n=n, ell=0, alpha=1, gamma=gamma), beta=degree, s=s, **extra)


def fewnomial_format(n: int, r: int, pseudo_degree: int, s: int, *,
                     reduced_chain: bool = False, gamma: int = POLYNOMIAL_GAMMA,
                     **extra) -> SetFormat:
    """Format of ``s`` fewnomials with ``r`` monomials and given pseudo-degree.

    The default chain is ``(1/x_1, ..., 1/x_n, x^{m_1}, ..., x^{m_r})`` of
    length ``n + r`` and degree 2.  With ``reduced_chain`` the logarithmic
    change of variables on the positive quadrant leaves the chain of the
    ``r`` exponentials only, of length ``r``.
    """
    _nat("r", r, 1)
    ell = r if reduced_chain else n + r
    return SetFormat(ChainFormat(n=n, ell=ell, alpha=2, gamma=gamma),
                     beta=pseudo_degree, s=s, r=r, **extra)


# --------------------------------------------------------------------------
# JSON round-trip

def to_dict(f: AnyFormat) -> dict:
    """Plain-dict form of a format, field names as in the dataclasses."""
    d = asdict(f)
    if isinstance(f, QuantifierFormat):
        d["blocks"] = list(f.blocks)
    return d


def chain_from_dict(d: dict) -> ChainFormat:
    return ChainFormat(**{k: d[k] for k in ("n", "ell", "alpha", "gamma")})


def set_from_dict(d: dict) -> SetFormat:
    return SetFormat(chain=chain_from_dict(d["chain"]), beta=d["beta"], s=d["s"],
                     m=d.get("m"), d=d.get("d"), r=d.get("r"))


def couple_from_dict(d: dict) -> CoupleFormat:
    return CoupleFormat(x=set_from_dict(d["x"]), y=set_from_dict(d["y"]),
                        M=d.get("M", 1), N=d.get("N", 1))


def quantifier_from_dict(d: dict) -> QuantifierFormat:
    return QuantifierFormat(n0=d["n0"], blocks=tuple(d["blocks"]),
                            inner=set_from_dict(d["inner"]), M=d.get("M", 1))


_NAT = {"type": "integer", "minimum": 0}
_POS = {"type": "integer", "minimum": 1}
_OPT_NAT = {"type": ["integer", "null"], "minimum": 0}

CHAIN_SCHEMA = {
    "type": "object",
    "properties": {"n": _POS, "ell": _NAT, "alpha": _POS, "gamma": _POS},
    "required": ["n", "ell", "alpha", "gamma"],
    "additionalProperties": False,
}
SET_SCHEMA = {
    "type": "object",
    "properties": {"chain": CHAIN_SCHEMA, "beta": _POS, "s": _NAT,
                   "m": _OPT_NAT, "d": _OPT_NAT, "r": _OPT_NAT},
    "required": ["chain", "beta", "s"],
    "additionalProperties": False,
}
COUPLE_SCHEMA = {
    "type": "object",
    "properties": {"x": SET_SCHEMA, "y": SET_SCHEMA, "M": _NAT, "N": _NAT},
    "required": ["x", "y"],
    "additionalProperties": False,
}
QUANTIFIER_SCHEMA = {
    "type": "object",
    "properties": {"n0": _POS, "blocks": {"type": "array", "items": _POS, "minItems": 1},
                   "inner": SET_SCHEMA, "M": _POS},
    "required": ["n0", "blocks", "inner"],
    "additionalProperties": False,
}

SCHEMAS = {
    "ChainFormat": CHAIN_SCHEMA,
    "SetFormat": SET_SCHEMA,
    "CoupleFormat": COUPLE_SCHEMA,
    "QuantifierFormat": QUANTIFIER_SCHEMA,
}

_LOADERS = {
    "ChainFormat": chain_from_dict,
    "SetFormat": set_from_dict,
    "CoupleFormat": couple_from_dict,
    "QuantifierFormat": quantifier_from_dict,
}


def from_dict(kind: str, d: dict) -> AnyFormat:
    """Inverse of :func:`to_dict`; ``kind`` is the type name."""
    try:
        loader = _LOADERS[kind]
    except KeyError:
        raise InvalidFormat("known format kind", kind) from None
    try:
        return loader(d)
    except (KeyError, TypeError) as exc:
        raise InvalidFormat(f"{kind} fields present", str(exc)) from None
