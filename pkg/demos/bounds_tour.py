"""A walk through the exact and asymptotic bounds.

Run: python3 demos/bounds_tour.py
"""
from pfaffbounds import asympbounds as ab
from pfaffbounds import exactbounds as eb
from pfaffbounds.formats import ChainFormat, SetFormat, polynomial_format

print("Without a Pfaffian chain the root count is the Bezout number.")
print("  khovanskii(n=3, l=0, betas=[2,3,4]) =", eb.khovanskii(3, 0, 1, [2, 3, 4]).value)

print("\nOne exponential in the chain adds a 2^{l(l-1)/2} factor and a larger degree sum.")
print("  khovanskii(n=1, l=2, alpha=1, betas=[2]) =", eb.khovanskii(1, 2, 1, [2]).value)

print("\nVariety bound V(n, l, alpha, beta, gamma) grows with the degree beta:")
for beta in range(1, 6):
    print(f"  beta={beta}: V = {eb.variety_V(2, 1, 1, beta, 2).value}")

f = SetFormat(ChainFormat(2, 1, 1, 2), beta=2, s=3, m=2)
rec, closed = eb.pclosed_recursive(f).value, eb.pclosed_closed(f).value
print("\nThe P-closed recursion against its closed form (s=3, m=2):")
print(f"  recursive {rec}  closed {closed}  closed dominates: {rec <= closed}")

print("\nSign cells of s=2 quadrics on a line, exact:")
print("  cells_bound =", eb.cells_bound(polynomial_format(1, 2, 2, d=1)).value)

print("\nAsymptotic bounds carry an unknown constant C; log2 at C=1 is a lower view.")
b = ab.variety_asymptotic(2, 1, 1, 2)
print(f"  {b.describe()}")
for c in (1, 2, 4):
    print(f"  C={c}: log2 = {b.log2_value(c):.1f}")

print("\nRecursion-based bound against the quantifier-elimination bound (n0=2, d=s=2, blocks of 2):")
for nu in range(1, 5):
    qf = ab.algebraic_qf(2, [1] + [2] * (nu - 1), d=2, s=2)
    c = ab.compare(ab.algebraic_quantifier(qf), ab.qe_comparison(qf))
    who = {"a": "recursion", "b": "QE", "equal": "tie"}[c.smaller]
    print(f"  nu={nu}: log2 {c.log2_a:8.0f} vs {c.log2_b:8.0f} -> {who}")
