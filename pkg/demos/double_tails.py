"""
Double tails zeta(w)_{m,n}
==========================

Three ways to the same numbers: the defining nested series (slow, simple),
the rectangular recurrence, and the binomial series that generalizes the
one-value algorithm.
"""
import time
from fractions import Fraction

from doubletails import series, tails
from doubletails.words import composition_of_word

w, m, n = "0011", 2, 1
oracle = tails.tail_value(w, m, n, Fraction(1, 10**15))
ev = series.general_tail_series(w, m, n, 30)
print(f"zeta({w})_{{{m},{n}}}")
print(f"  nested series  {float(oracle.value):.16f}  ({oracle.terms} terms, err {float(oracle.error):.0e})")
print(f"  binomial series {float(ev.value):.16f}  ({ev.steps} terms, err {float(ev.error):.0e})")

# duality swaps the indices: zeta(w)_{m,n} = zeta(dual w)_{n,m}
other = series.general_tail_series("0011", n, m, 30)
print("  swapped indices of the self-dual word:", f"{float(other.value):.16f}")

# one step of the rectangular recurrence
d = tails.decompose(w)
cells = {u: tails.tail_value(u, m, n, Fraction(1, 10**15)).value for u in {w, d.init, d.fin, d.mid}}
stepped = tails.step_rect(w, m, n, cells)
ref = tails.tail_value(w, m - 1, n - 1, Fraction(1, 10**12))
print(f"step to ({m - 1},{n - 1}): {float(stepped):.12f} vs {float(ref.value):.12f}")

# n-tails decay like n^(r-k) / ((a1-1)(a1+a2-2)...)
for word in ("01", "0011", "0101"):
    c = composition_of_word(word)
    for N in (10, 100, 10_000):
        t = tails.tail_value(word, 0, N, Fraction(1, 10**14))
        print(f"{str(c):>7} n={N:<6} ratio to leading term {float(t.value / tails.ntail_asymptotic(c, N)):.5f}")

# the binomial series needs about half the terms of the polylog route
for digits in (50, 100, 200):
    t0 = time.perf_counter()
    s = series.zeta_series((2, 1, 3, 2), digits)
    ts = time.perf_counter() - t0
    t0 = time.perf_counter()
    b = series.baseline_chasles((2, 1, 3, 2), digits)
    tb = time.perf_counter() - t0
    print(f"d={digits:<4} steps {s.steps}/{b.steps} = {s.steps / b.steps:.3f}   time {ts * 1e3:.1f}/{tb * 1e3:.1f} ms")
