"""Counting sign cells on a grid and comparing with the exact bound.

Run: python3 demos/sign_cells.py
"""
from pfaffbounds.signcells import (check_against_bound, circle, count_components,
                                   enumerate_signs, squares_family)

print("p_i = (x - i)^2, i = 1..s.  The set where all are positive splits at each root.")
for s in range(1, 6):
    system = squares_family(s)
    rep = enumerate_signs(system, 16 * (s + 1))
    v = check_against_bound(system, rep)
    print(f"  s={s}: positive part has {rep.components_per_sign['+' * s]} components, "
          f"all cells {count_components(rep)}, bound {v.bound}")

print("\nThe unit circle x^2 + y^2 - 1 on [-2, 2]^2, refined:")
for R in (10, 20, 40, 80):
    rep = enumerate_signs(circle(), R)
    print(f"  R={R:3d}: {rep.components_per_sign}")
