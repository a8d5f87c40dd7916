"""
Combinations of diagonal tails that vanish identically
======================================================

Collect the weight-k diagonal tails over duality representatives in X_n.
Then X_{n-1} = X_n + A Y_n for an integer matrix A, and any L with L A = 0
gives L X_n constant, hence 0 for all n.
"""
from doubletails import relations

tm = relations.build_matrix(6)
print(tm.to_text())

rep = relations.kernel(6)
print("rank", rep.rank, "kernel", rep.basis)

# the relation holds at every n, checked with certified dp tails
L = rep.basis[0]
cert = relations.certify_vanishing(L, 6, 5, 30)
for n, r in enumerate(cert.residuals):
    print(f"n={n}  |L X_n| = {float(r):.1e}")
print("budget", f"{float(cert.bound):.1e}", "ok" if cert.ok else "FAILED")

# lower-weight relations lift into higher weights; d_k counts both kinds
print("k   plain  d_k")
for k in range(2, 11):
    r = relations.kernel(k)
    print(f"{k:<3} {r.nullity:>5} {r.d_k:>4}")
