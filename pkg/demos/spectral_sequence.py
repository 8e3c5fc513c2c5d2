"""Why the fibered products matter: arcs mapped onto a circle.

Two contractible arcs cover a circle.  The source has no loops, yet the
target does; the loop is only seen through the fibered square W^1.

Run: python3 demos/spectral_sequence.py
"""
from pfaffbounds.fibered import fibered_product, map_corpus, verify_spectral_inequality
from pfaffbounds.homology import betti

f = map_corpus()["arcs-over-circle"]
print("source Betti:", tuple(betti(f.source)))
print("target Betti:", tuple(betti(f.target)))
for p in range(3):
    W = fibered_product(f, p)
    print(f"W^{p}: simplices per dimension {W.count()}, Betti {tuple(W.betti())}")

rep = verify_spectral_inequality(f, 1)
print("\nb_k(Y) <= sum_{p+q=k} b_q(W^p):")
for k, (lhs, rhs) in enumerate(zip(rep.lhs, rep.rhs)):
    print(f"  k={k}: {lhs} <= {rhs}")
print("Without the p=1 term, k=1 would read 1 <= 0.")

print("\nThe whole built-in corpus, k <= 2:")
for name, g in map_corpus().items():
    r = verify_spectral_inequality(g, 2, strict=False)
    print(f"  {name:22s} lhs {r.lhs}  rhs {r.rhs}  {'ok' if r.ok else 'VIOLATED'}")
