"""Random monotonicity sweep over every exact bound (shared by the tests)."""
import random

from pfaffbounds import exactbounds as eb
from pfaffbounds.errors import InvalidFormat
from pfaffbounds.formats import ChainFormat, CoupleFormat, SetFormat


def _set(p, **opt):
    return SetFormat(ChainFormat(p["n"], p["ell"], p["alpha"], p["gamma"]), p["beta"], p["s"], **opt)


def _couple(p, **opt):
    ch = ChainFormat(p["n"], p["ell"], p["alpha"], p["gamma"])
    x = SetFormat(ch, p["beta"], 1, **opt)
    return CoupleFormat(x, x, p["M"], p["N"])


def _few(p):
    ch = ChainFormat(p["n"], p["n"] + p["r"], 2, p["gamma"])
    x = SetFormat(ch, 1, 1, r=p["r"])
    return CoupleFormat(x, x, p["M"], p["N"])


# name -> (parameter ranges, evaluator)
OPS = {
    "khovanskii": ({"n": (1, 3), "ell": (0, 3), "alpha": (1, 3), "beta": (1, 4)},
                   lambda p: eb.khovanskii(p["n"], p["ell"], p["alpha"], [p["beta"]] * p["n"])),
    "khovanskii_domain": ({"n": (1, 3), "ell": (0, 3), "alpha": (1, 3), "beta": (1, 4), "gamma": (1, 4)},
                          lambda p: eb.khovanskii_domain(p["n"], p["ell"], p["alpha"],
                                                         [p["beta"]] * p["n"], p["gamma"])),
    "fewnomial_system": ({"n": (1, 4), "r": (1, 5)}, lambda p: eb.fewnomial_system(p["n"], p["r"])),
    "additive_complexity": ({"k": (0, 5)}, lambda p: eb.additive_complexity(p["k"])),
    "descartes": ({"r": (1, 20)}, lambda p: eb.descartes(p["r"])),
    "optm": ({"n": (1, 4), "d": (1, 6)}, lambda p: eb.optm(p["n"], p["d"])),
    "variety_V": ({"n": (1, 4), "ell": (0, 3), "alpha": (1, 3), "beta": (1, 4), "gamma": (1, 4)},
                  lambda p: eb.variety_V(p["n"], p["ell"], p["alpha"], p["beta"], p["gamma"])),
    "variety_noncompact": ({"n": (1, 4), "ell": (0, 3), "alpha": (1, 3), "beta": (1, 4), "gamma": (1, 6)},
                           lambda p: eb.variety_noncompact(p["n"], p["ell"], p["alpha"], p["beta"], p["gamma"])),
    "basic_set_B0": ({"n": (1, 3), "ell": (0, 2), "alpha": (1, 3), "beta": (1, 3), "gamma": (1, 3),
                      "s": (1, 6), "m": (0, 4)},
                     lambda p: eb.basic_set_B0(_set(p, m=p["m"]))),
    "pclosed_recursive": ({"n": (1, 3), "ell": (0, 2), "alpha": (1, 3), "beta": (1, 3), "gamma": (1, 3),
                           "s": (1, 6), "m": (0, 4)},
                          lambda p: eb.pclosed_recursive(_set(p, m=p["m"]))),
    "pclosed_closed_m": ({"n": (1, 3), "ell": (0, 2), "alpha": (1, 3), "beta": (1, 3), "gamma": (1, 3),
                          "s": (1, 6), "m": (0, 4)},
                         lambda p: eb.pclosed_closed(_set(p, m=p["m"]), "m")),
    "pclosed_closed_d": ({"n": (1, 3), "ell": (0, 2), "alpha": (1, 3), "beta": (1, 3), "gamma": (1, 3),
                          "s": (1, 6), "d": (0, 3)},
                         lambda p: eb.pclosed_closed(_set(p, d=p["d"]), "d")),
    "sigma": ({"s": (0, 20), "d": (0, 8)}, lambda p: eb.sigma(p["s"], p["d"])),
    "cells_bound": ({"n": (1, 3), "ell": (0, 2), "alpha": (1, 3), "beta": (1, 3), "gamma": (1, 3),
                     "s": (0, 6), "d": (0, 3)},
                    lambda p: eb.cells_bound(_set(p, d=p["d"]))),
    "bm_composed": ({"n": (1, 3), "ell": (0, 2), "alpha": (1, 3), "beta": (1, 3), "gamma": (1, 3),
                     "s": (0, 5), "d": (0, 3)},
                    lambda p: eb.bm_composed(_set(p, d=p["d"]))),
    "smooth_cc": ({"n": (1, 3), "ell": (0, 2), "alpha": (1, 2), "beta": (1, 3), "gamma": (1, 3),
                   "M": (1, 2), "N": (1, 2), "d": (0, 3), "k": (0, 3)},
                  lambda p: eb.smooth_cc(_couple(p), d=p["d"], k=p["k"])),
    "singular_cc": ({"n": (1, 2), "ell": (0, 2), "alpha": (1, 2), "beta": (1, 3), "gamma": (1, 3),
                     "M": (1, 3), "N": (1, 3)},
                    lambda p: eb.singular_cc(_couple(p))),
    "fewnomial_cc": ({"n": (1, 2), "r": (1, 3), "gamma": (1, 3), "M": (1, 3), "N": (1, 3)},
                     lambda p: eb.fewnomial_cc(_few(p))),
    "hausdorff_betti": ({"n": (1, 2), "ell": (0, 2), "alpha": (1, 2), "beta": (1, 3), "gamma": (1, 3),
                         "s": (1, 4), "d": (0, 2), "k": (0, 2)},
                        lambda p: eb.hausdorff_betti(_set(p, d=p["d"]), p["k"])),
}


def _value(op, p):
    try:
        return OPS[op][1](p).value
    except InvalidFormat:
        return None  # outside the domain (e.g. m > s, d > n, k > d)


def sweep(points: int = 500, seed: int = 0):
    """Return ``(checked, violations)``; each violation is ``(op, param, point)``.

    For every operation, ``points`` random valid points are drawn and each
    parameter is increased by one; a strictly smaller value is a violation.
    """
    rng = random.Random(seed)
    checked, violations = 0, []
    for op, (ranges, _) in OPS.items():
        drawn = 0
        while drawn < points:
            p = {k: rng.randint(lo, hi) for k, (lo, hi) in ranges.items()}
            base = _value(op, p)
            if base is None:
                continue
            drawn += 1
            for k in ranges:
                q = dict(p, **{k: p[k] + 1})
                v = _value(op, q)
                if v is None:
                    continue
                checked += 1
                if v < base:
                    violations.append((op, k, p))
    return checked, violations
