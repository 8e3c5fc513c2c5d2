"""Independent re-derivation of the closed-form bounds.

Written straight from the formulas with Fraction arithmetic and explicit
loops, sharing no code with the package.  Rounding: one ceiling at the end.
"""
from fractions import Fraction
from math import ceil, comb


def V(n, l, a, b, g):
    x = Fraction(2) ** (l * (l - 1) // 2) * b
    for _ in range(n - 1):
        x *= a + b - 1
    x *= Fraction(g, 2)
    for _ in range(l):
        x *= n * (a + b - 1) + g + min(n, l) * a
    return ceil(x)


def khovanskii(n, l, a, betas):
    x = Fraction(2) ** (l * (l - 1) // 2)
    for b in betas:
        x *= b
    for _ in range(l):
        x *= sum(betas) - n + min(n, l) * a + 1
    return int(x)


def khovanskii_domain(n, l, a, betas, g):
    x = Fraction(2) ** (l * (l - 1) // 2) * Fraction(g, 2)
    for b in betas:
        x *= b
    for _ in range(l):
        x *= sum(betas) + g - n + min(n + 1, l) * a
    return ceil(x)


def sigma(s, d):
    return sum(comb(4 * s + 1, i) for i in range(d + 1))


def pclosed_rec(n, l, a, b, g, s, m):
    if m == 0:
        return V(n, l, a, 2 * b, g)
    return (2 ** m * comb(s, m) * V(n, l, a, 2 * b, g)
            + 3 * s * pclosed_rec(n, l, a, b, g, 3 * s, m - 1))


def hausdorff(n, l, a, b, g, s, d, k):
    return sum((10 * s) ** ((p + 1) * d) * V((p + 1) * n, (p + 1) * l, a, 2 * b, g)
               for p in range(k + 1))


def fewnomial_cc_n1_r1():
    # q = 2, n = r = 1: 2^{ceil(q^2 (n+r)^2 / 2)} (6n+6)^{q(3n+2r)} q^{q(n+r)}
    return 2 ** 8 * 12 ** 10 * 2 ** 4


DERIVED = {
    # (label, oracle value)
    "variety_V(1,1,1,2,2)": V(1, 1, 1, 2, 2),
    "variety_V(2,0,1,2,2)": V(2, 0, 1, 2, 2),
    "variety_V(1,1,1,1,2)": V(1, 1, 1, 1, 2),
    "khovanskii(1,1,1,[1])": khovanskii(1, 1, 1, [1]),
    "khovanskii(1,2,1,[2])": khovanskii(1, 2, 1, [2]),
    "khovanskii_domain(1,1,1,[1],2)": khovanskii_domain(1, 1, 1, [1], 2),
    "khovanskii_domain(1,0,1,[3],2)": khovanskii_domain(1, 0, 1, [3], 2),
    "khovanskii_domain(1,1,1,[1],3)": khovanskii_domain(1, 1, 1, [1], 3),
    "fewnomial_system(1,2)": 2 ** 1 * 2 ** 2,
    "fewnomial_system(1,1)": 2,
    "fewnomial_system(2,2)": 2 * 9,
    "additive_complexity(0)": 2 ** 1 * 2 ** 1,
    "additive_complexity(1)": 3 ** 3 * 2 ** 5,
    "optm(2,2)": 2 * 3,
    "optm(3,3)": 3 * 5 ** 2,
    "sigma(3,2)": sigma(3, 2),
    "pclosed_closed_m(s=2,m=1,chain 1,1,1 beta 1 gamma 2)": 10 * V(1, 1, 1, 2, 2),
    "pclosed_closed_d(s=2,d=1,same)": 20 * V(1, 1, 1, 2, 2),
    "cells_bound(1,0,1,2,2,s=2,d=1)": sigma(2, 1) * V(1, 0, 1, 2, 2),
    "hausdorff_betti(k=1,s=1,d=1,chain 1,1,1,1,2)": hausdorff(1, 1, 1, 1, 2, 1, 1, 1),
    "fewnomial_cc(n=1,r=1)": fewnomial_cc_n1_r1(),
    "smooth_cc(1,1,1,1,2,d=0,k=0)": 2 * V(2, 2, 1, 2, 2),
    "singular_cc(1,1,1,1,2)": 2 * V(2, 2, 1, 1 + (1 + 2 - 1), 2),
}
