"""Central-binomial series for MZVs and their double tails.

    zeta(w)_{m,n} = sum_{M >= 1} C(m+n+2M, m+M)^-1 psi_M,
    psi_M = sum_i phi_{m,m+M}(b_i) phi_{n,n+M}(a_i) lambda_{m+M,n+M}(e_i, e_{i+1})

where ``a_i`` is the composition of the suffix ``w[i:]`` and ``b_i`` the one of
``dual(w[:i])``.  At m = n = 0 this is the series for zeta(w) itself.

All phi values come from a single two-generation recurrence in q (see
:func:`phi_generations`); the b side reuses it on the dual word.  The same
phi values also give Li_c(1/2) = sum_q 2^-q phi_{0,q}(c), which is what the
polylogarithm baseline uses.
"""
from __future__ import annotations

import math
import operator
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .fixnum import FixedReal
from .tails import TailValue, base_empty, tail_value
from .words import (
    check_word,
    composition_of_word,
    dual,
    is_admissible_word,
    word_of_composition,
)

_LAMBDA = {("1", "0"): 1, ("0", "0"): 2, ("1", "1"): 2, ("0", "1"): 3}


class Evaluation(NamedTuple):
    value: FixedReal
    error: Fraction
    steps: int


def lam(e: str, e2: str) -> int:
    return _LAMBDA[(e, e2)]


def lam_mn(m: int, n: int, e: str, e2: str) -> Fraction:
    if m < 1 or n < 1:
        raise ValueError("lambda_{m,n} needs m, n >= 1")
    out = Fraction(1)
    if e == "0":
        out += Fraction(m, n)
    if e2 == "1":
        out += Fraction(n, m)
    return out


def _as_word(x: str | Sequence[int]) -> str:
    w = check_word(x) if isinstance(x, str) else word_of_composition(x)
    if not w or not is_admissible_word(w):
        raise ValueError(f"need a non-empty admissible word, got {w!r}")
    return w


# exact interval sums ---------------------------------------------------------


def _interval_tables(c: Sequence[int], p: int, q: int) -> tuple[list[Fraction], list[Fraction]]:
    """phi_{p,x}(c) and zeta_{]p,x]}(c) for x = p..q (phi at x = p is 0)."""
    width = q - p
    Z = [Fraction(1)] * (width + 1)  # empty composition
    phi = [Fraction(0)] * (width + 1)
    for a in reversed(c):
        phi = [Fraction(0)] + [Z[j - 1] / (p + j) ** a for j in range(1, width + 1)]
        Z = list(_cumsum(phi))
    return phi, Z


def _cumsum(xs):
    acc = Fraction(0)
    for x in xs:
        acc += x
        yield acc


def phi_pq(c: Sequence[int], p: int, q: int) -> Fraction:
    """q^-a1 * sum over q > n_2 > ... > n_r > p of n_2^-a2 ... n_r^-ar."""
    if not c:
        raise ValueError("phi needs a non-empty composition")
    if not 0 <= p < q:
        raise ValueError("need 0 <= p < q")
    return _interval_tables(c, p, q)[0][-1]


def zeta_interval(c: Sequence[int], p: int, q: int) -> Fraction:
    """Sum over q >= n_1 > ... > n_r > p; equals 1 for the empty composition."""
    if not 0 <= p <= q:
        raise ValueError("need 0 <= p <= q")
    return _interval_tables(c, p, q)[1][-1]


def phi_direct(c: Sequence[int], m: int) -> Fraction:
    if m < 1:
        raise ValueError("m must be >= 1")
    return phi_pq(c, 0, m)


# the phi recurrence ----------------------------------------------------------


def phi_generations(w: str, p: int, q_max: int, scale: int | None = None) -> Iterator[tuple[int, list]]:
    """Yield ``(q, row)`` for q = p+1..q_max with ``row[i] = phi_{p,q}(a_i)``.

    ``a_i`` is the composition of ``w[i:]`` for 1 <= i <= k-1 (``row[0]`` is
    unused).  Rows are Fractions when ``scale`` is None, otherwise mantissas
    truncated to ``scale`` bits; in that case entries of generation p+M are
    below the true value by at most M+1 ulp.
    """
    k = len(w)
    if scale is None:
        one, zero, div = Fraction(1), Fraction(0), operator.truediv
    else:
        one, zero, div = 1 << scale, 0, operator.floordiv
    prev = [zero] * k  # phi_{p,p} := 0 makes the q = p+1 step come out right
    for q in range(p + 1, q_max + 1):
        cur = [zero] * k
        cur[k - 1] = div(one, q)
        for i in range(k - 2, 0, -1):
            if w[i] == "0":
                cur[i] = div(cur[i + 1], q)
            else:
                cur[i] = div((q - 1) * prev[i] + prev[i + 1], q)
        yield q, cur
        prev = cur


@dataclass(frozen=True)
class PhiTable:
    """phi_m(a_i) and phi_m(b_i) for m = 1..N, i = 1..k-1."""

    word: str
    N: int
    scale: int | None
    rows_a: tuple[tuple, ...]
    rows_b: tuple[tuple, ...]

    def a(self, m: int, i: int):
        return self.rows_a[m - 1][i]

    def b(self, m: int, i: int):
        return self.rows_b[m - 1][i]


def build_phi_table(w: str | Sequence[int], N: int, scale: int | None = None) -> PhiTable:
    w = _as_word(w)
    k = len(w)
    rows_a = tuple(tuple(r) for _, r in phi_generations(w, 0, N, scale))
    rows_d = [r for _, r in phi_generations(dual(w), 0, N, scale)]
    rows_b = tuple(tuple([0] + [r[k - i] for i in range(1, k)]) for r in rows_d)
    return PhiTable(w, N, scale, rows_a, rows_b)


def psi(w: str, m: int, table: PhiTable):
    if m > table.N:
        raise ValueError(f"table only reaches m = {table.N}")
    total = 0
    for i in range(1, len(w)):
        prod = table.a(m, i) * table.b(m, i)
        if table.scale is not None:
            prod >>= table.scale
        total += lam(w[i - 1], w[i]) * prod
    return total


# series evaluation -----------------------------------------------------------


def _lambda_cap(m: int, n: int) -> Fraction:
    """Upper bound of lambda_{m+M,n+M} over all M >= 1."""
    return 3 + Fraction((m - n) ** 2, (m + 1) * (n + 1))


def _tail_lambda(m: int, n: int, N: int) -> Fraction:
    return 3 + abs(m - n) * (Fraction(1, m + N) + Fraction(1, n + N))


def series_truncation_bound(k: int, m: int, n: int, N: int) -> Fraction:
    """Bound for the terms M > N: Lambda (k-1) 2^(1-2N) N."""
    return _tail_lambda(m, n, N) * (k - 1) * Fraction(2 * N, 4**N)


def series_rounding_bound(k: int, m: int, n: int, N: int, scale: int) -> Fraction:
    lam_ = _lambda_cap(m, n)
    ulps = N * (2 * lam_ * (k - 1) + 2) + (k - 1) * (6 * lam_ + 2)
    return ulps / (1 << scale)


def series_partial_sum(w: str | Sequence[int], m: int, n: int, N: int, scale: int | None = None):
    """sum_{M=1}^N of the series terms; a Fraction, or a mantissa at ``scale``."""
    w = _as_word(w)
    k = len(w)
    exact = scale is None
    gen_a = phi_generations(w, n, n + N, scale)
    gen_b = phi_generations(dual(w), m, m + N, scale)
    # C(m+n, m)^-1, then stepped to C(m+n+2M, m+M)^-1
    if exact:
        binom = base_empty(m, n)
    else:
        binom = (1 << scale) // math.comb(m + n, m)
    total = 0
    for M in range(1, N + 1):
        (_, ra), (_, rb) = next(gen_a), next(gen_b)
        s, t = m + n + 2 * M - 2, m + M - 1
        if exact:
            binom = binom * (t + 1) * (s - t + 1) / ((s + 1) * (s + 2))
        else:
            binom = binom * (t + 1) * (s - t + 1) // ((s + 1) * (s + 2))
        mm, nn = m + M, n + M
        ps = 0
        for i in range(1, k):
            prod = rb[k - i] * ra[i]
            if exact:
                ps += prod * lam_mn(mm, nn, w[i - 1], w[i])
                continue
            prod >>= scale
            ps += prod
            if w[i - 1] == "0":
                ps += prod * mm // nn
            if w[i] == "1":
                ps += prod * nn // mm
        total += ps * binom if exact else (ps * binom) >> scale
    return total


def _plan_series(k: int, m: int, n: int, digits: int, N: int | None = None) -> tuple[int, int]:
    half = Fraction(1, 2 * 10**digits)
    if N is None:
        N = max(1, int(digits * math.log2(10) / 2))
        while series_truncation_bound(k, m, n, N) >= half:
            N += 1
    elif N < 1:
        raise ValueError("N must be >= 1")
    scale = math.ceil(digits * math.log2(10)) + 8
    while series_rounding_bound(k, m, n, N, scale) >= half:
        scale += 1
    return N, scale


def general_tail_series(w: str | Sequence[int], m: int, n: int, digits: int, N: int | None = None) -> Evaluation:
    """zeta(w)_{m,n} to ``digits`` certified decimals (truncated from below).

    An explicit ``N`` overrides the term count; the certificate then reflects
    whatever accuracy that N gives.
    """
    w = _as_word(w)
    if m < 0 or n < 0:
        raise ValueError("m, n must be >= 0")
    k = len(w)
    N, scale = _plan_series(k, m, n, digits, N)
    mant = series_partial_sum(w, m, n, N, scale)
    err = series_truncation_bound(k, m, n, N) + series_rounding_bound(k, m, n, N, scale)
    return Evaluation(FixedReal(mant, scale), err, N)


def zeta_series(c: str | Sequence[int], digits: int, N: int | None = None) -> Evaluation:
    """zeta(c) from the central-binomial series; ``steps`` is the number of terms."""
    return general_tail_series(c, 0, 0, digits, N)


# polylogarithm baseline ------------------------------------------------------


def baseline_chasles(c: str | Sequence[int], digits: int) -> Evaluation:
    """zeta(c) = sum_{i=0}^k Li_{a_i}(1/2) Li_{b_i}(1/2), each Li by its series.

    Li_{c}(1/2) = sum_q 2^-q phi_{0,q}(c) and phi <= 1, so cutting at N'
    terms loses at most 2^-N' per factor; ``steps`` counts the q values.
    """
    w = _as_word(c)
    k = len(w)
    target = Fraction(1, 10**digits)
    Np = 1
    while Fraction(k * Np, 2**Np) >= target / 2:
        Np += 1
    scale = math.ceil(digits * math.log2(10)) + 8
    while Fraction(10 * (k + 1), 1 << scale) >= target / 2:
        scale += 1
    li_a = _li_half(w, Np, scale)
    li_d = _li_half(dual(w), Np, scale)
    # i = 0: a_0 is the whole word, b_0 empty; i = k: the reverse
    total = li_a[0] + li_d[0]
    for i in range(1, k):
        total += (li_a[i] * li_d[k - i]) >> scale
    err = Fraction(k * Np, 2**Np) + Fraction(10 * (k + 1), 1 << scale)
    return Evaluation(FixedReal(total, scale), err, Np)


def _li_half(w: str, Np: int, scale: int) -> list[int]:
    """Mantissas of Li_{c_i}(1/2) with c_i the composition of ``w[i:]``, i = 0..k-1.

    Row entry 0 (the full word) uses the same recurrence one level further.
    Accumulation keeps N' extra bits so the shifts by q lose nothing until
    the final truncation.
    """
    k = len(w)
    ext = "1" + w  # suffixes of ext at 1..k are the suffixes of w at 0..k-1
    acc = [0] * (k + 1)
    for q, row in phi_generations(ext, 0, Np, scale):
        sh = Np - q
        for i in range(1, k + 1):
            acc[i] += row[i] << sh
    return [x >> Np for x in acc[1:]]


# finite-N identity -----------------------------------------------------------


class IdentityCheck(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    residual: Fraction
    tolerance: Fraction


def subword_pairs(w: str) -> list[tuple[int, int]]:
    """Pairs (i, j), 0 <= i < j <= k, with w[i:j] admissible and non-empty."""
    k = len(w)
    return [(i, j) for i in range(k) for j in range(i + 2, k + 1) if w[i] == "0" and w[j - 1] == "1"]


def finite_identity_check(w: str | Sequence[int], m: int, n: int, N: int, oracle_error: Fraction | float = Fraction(1, 10**10)) -> IdentityCheck:
    """Both sides of the N-step identity for zeta(w)_{m,n}.

    Tails are taken from the nested-series oracle at ``oracle_error`` each;
    at (m, n) = (0, 0) the left side is zeta(w) from the polylog baseline,
    whose certificate is independent of the oracle.
    """
    w = _as_word(w)
    if N < 1:
        raise ValueError("N must be >= 1")
    oracle_error = Fraction(oracle_error)
    if m == 0 and n == 0:
        digits = max(1, math.ceil(-math.log10(float(oracle_error))))
        ev = baseline_chasles(w, digits)
        left = TailValue(ev.value.to_fraction(), ev.error)
    else:
        left = tail_value(w, m, n, oracle_error)
    rhs = series_partial_sum(w, m, n, N)
    tol = left.error
    for i, j in subword_pairs(w):
        coef = zeta_interval(composition_of_word(dual(w[:i])), m, m + N) * zeta_interval(
            composition_of_word(w[j:]), n, n + N
        )
        tv = tail_value(w[i:j], m + N, n + N, oracle_error)
        rhs += coef * tv.value
        tol += coef * tv.error
    return IdentityCheck(left.value, rhs, left.value - rhs, tol)


def random_samples(seed: int, count: int, max_weight: int = 5, max_index: int = 3, max_N: int = 6):
    """Reproducible (w, m, n, N) samples for identity checks."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(2, max_weight)
        w = "0" + "".join(rng.choice("01") for _ in range(k - 2)) + "1"
        out.append((w, rng.randint(0, max_index), rng.randint(0, max_index), rng.randint(1, max_N)))
    return out


__all__ = [
    "Evaluation",
    "IdentityCheck",
    "PhiTable",
    "baseline_chasles",
    "build_phi_table",
    "finite_identity_check",
    "general_tail_series",
    "lam",
    "lam_mn",
    "phi_direct",
    "phi_generations",
    "phi_pq",
    "psi",
    "series_partial_sum",
    "series_rounding_bound",
    "series_truncation_bound",
    "subword_pairs",
    "zeta_interval",
    "zeta_series",
]
