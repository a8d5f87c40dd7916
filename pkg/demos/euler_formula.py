"""
Euler's series for zeta(2) and its weight-4 cousin
==================================================

Diagonal tails zeta(w)_{n,n} shrink like 4^-n, and telescoping them gives
central-binomial series.  For w = 01 the recurrence is

    zeta(2)_{n-1,n-1} = zeta(2)_{n,n} + 3 n^-2 / C(2n, n)

so zeta(2) = 3 * sum n^-2 / C(2n, n).
"""
import math
from fractions import Fraction

from doubletails import dp, relations, series, to_decimal

# partial sums in exact arithmetic, next to the dp run with the same N
for N in (3, 5, 10, 20):
    euler = 3 * sum(Fraction(1, m * m * math.comb(2 * m, m)) for m in range(1, N + 1))
    u0 = dp.run(dp.make_plan(["01"], N=N, exact=True))["01"]
    print(f"N={N:>2}  3*sum = {float(euler):.15f}  dp u_0 = {float(u0):.15f}  bound {float(dp.error_bound(N)):.1e}")

# certified to 50 digits
ev = series.zeta_series((2,), 50)
print("zeta(2) =", to_decimal(ev.value, 50, ev.error))

# weight 4: the row vector (4, -2, 1) kills every column of A but the last
br = relations.bridge(4)
print("bridge", br.L, "c =", br.c)

# with zeta(3,1) = zeta(4)/4 and zeta(2,2) = 3 zeta(4)/4 that reads zeta(4) = 36/17 * sum n^-4/C(2n,n)
tail_sum = sum(Fraction(1, n**4 * math.comb(2 * n, n)) for n in range(1, 80))
z4 = series.zeta_series((4,), 40)
print("36/17 * sum   =", f"{float(tail_sum * 36 / 17):.15f}")
print("zeta(4)       =", to_decimal(z4.value, 40, z4.error))
