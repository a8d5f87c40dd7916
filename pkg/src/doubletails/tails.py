"""Double tails zeta(w)_{m,n}: closed forms, the certified series oracle,
single-step recurrences, duality and a priori bounds.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

from .fixnum import FixedReal, from_fraction
from .words import (
    ATOMS,
    EMPTY,
    check_word,
    composition_of_word,
    decompose,
    dual,
    is_admissible,
    is_admissible_word,
)

# certified rational over-estimate of pi^2/6 = 1.64493406684822643...
ZETA2_UPPER = Fraction(16449340668482265, 10**16) + Fraction(1, 10**16)


class TailValue(NamedTuple):
    """A rational approximation with an absolute error certificate."""

    value: Fraction
    error: Fraction
    terms: int = 0


class Rewrite(NamedTuple):
    """``lhs`` equals ``sum(coef * tail(word, m, n) for coef, word, m, n in terms)``."""

    lhs: tuple[str, int, int]
    terms: tuple[tuple[Fraction, str, int, int], ...]


# -- closed forms ---------------------------------------------------------------


def base_empty(m: int, n: int) -> Fraction:
    if m < 0 or n < 0:
        raise ValueError("indices must be nonnegative")
    return Fraction(1, math.comb(m + n, m))


def base_zero(m: int, n: int) -> Fraction:
    if n < 1:
        raise ValueError("zeta(0)_{m,n} needs n >= 1")
    return base_empty(m, n) / n


def base_one(m: int, n: int) -> Fraction:
    if m < 1:
        raise ValueError("zeta(1)_{m,n} needs m >= 1")
    return base_empty(m, n) / m


def atom_value(w: str, m: int, n: int) -> Fraction:
    if w == EMPTY:
        return base_empty(m, n)
    if w == "0":
        return base_zero(m, n)
    if w == "1":
        return base_one(m, n)
    raise ValueError(f"{w!r} is not an atom")


def check_index(w: str, m: int, n: int) -> None:
    """Raise unless zeta(w)_{m,n} is a convergent double tail."""
    check_word(w)
    if m < 0 or n < 0:
        raise ValueError("indices must be nonnegative")
    if w.startswith("1") and m < 1:
        raise ValueError(f"zeta[{w}]_{{m,n}} needs m >= 1 (word starts with 1)")
    if w.endswith("0") and n < 1:
        raise ValueError(f"zeta[{w}]_{{m,n}} needs n >= 1 (word ends with 0)")


def bound_c(m: int, n: int) -> Fraction:
    """max of (1-t)^m t^n on [0, 1], i.e. m^m n^n / (m+n)^(m+n)."""
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 and m + n >= 1")
    return Fraction(m**m * n**n, (m + n) ** (m + n))


def ntail_asymptotic(c: Sequence[int], n: int) -> Fraction:
    """Leading-order equivalent of the n-tail of zeta(c) as n -> infinity."""
    if not c or not is_admissible(c):
        raise ValueError("need a non-empty admissible composition")
    if n < 1:
        raise ValueError("n must be >= 1")
    denom = 1
    partial = 0
    for j, a in enumerate(c, start=1):
        partial += a
        denom *= partial - j
    k, r = sum(c), len(c)
    return Fraction(1, denom * n ** (k - r))


def dual_index(w: str, m: int, n: int) -> tuple[str, tuple[int, int]]:
    check_index(w, m, n)
    return dual(w), (n, m)


# -- recurrences ------------------------------------------------------------------


def recur_append(w: str, bit: str, m: int, n: int) -> Rewrite:
    """Appending one bit on the right (n side).

    bit 0: zeta(w0)_{m,n} = zeta(w)_{m,n} / n
    bit 1: zeta(w1)_{m,n-1} = zeta(w1)_{m,n} + zeta(w)_{m,n} / n
    """
    check_word(w)
    if n < 1:
        raise ValueError("n must be >= 1")
    if bit == "0":
        if not (m >= 1 or not w.startswith("1")):
            raise ValueError("needs m >= 1 when w starts with 1")
        return Rewrite((w + "0", m, n), ((Fraction(1, n), w, m, n),))
    if bit == "1":
        if not (m >= 1 or w.startswith("0")):
            raise ValueError("needs m >= 1 unless w starts with 0")
        return Rewrite((w + "1", m, n - 1), ((Fraction(1), w + "1", m, n), (Fraction(1, n), w, m, n)))
    raise ValueError(f"bad bit {bit!r}")


def recur_prepend(w: str, bit: str, m: int, n: int) -> Rewrite:
    """Prepending one bit on the left (m side), mirror image of :func:`recur_append`.

    bit 1: zeta(1w)_{m,n} = zeta(w)_{m,n} / m
    bit 0: zeta(0w)_{m-1,n} = zeta(0w)_{m,n} + zeta(w)_{m,n} / m
    """
    check_word(w)
    if m < 1:
        raise ValueError("m must be >= 1")
    if bit == "1":
        if not (n >= 1 or not w.endswith("0")):
            raise ValueError("needs n >= 1 when w ends with 0")
        return Rewrite(("1" + w, m, n), ((Fraction(1, m), w, m, n),))
    if bit == "0":
        if not (n >= 1 or w.endswith("1")):
            raise ValueError("needs n >= 1 unless w ends with 1")
        return Rewrite(("0" + w, m - 1, n), ((Fraction(1), "0" + w, m, n), (Fraction(1, m), w, m, n)))
    raise ValueError(f"bad bit {bit!r}")


def reduce_word(w: str, m: int, n: int) -> tuple[Fraction, str]:
    """Write zeta(w)_{m,n} = coef * zeta(core)_{m,n} with core admissible or empty.

    Trailing zeros cost a factor 1/n each and leading ones 1/m each.
    """
    check_index(w, m, n)
    coef = Fraction(1)
    core = w
    while core.endswith("0"):
        coef *= recur_append(core[:-1], "0", m, n).terms[0][0]
        core = core[:-1]
    while core.startswith("1"):
        coef *= recur_prepend(core[1:], "1", m, n).terms[0][0]
        core = core[1:]
    return coef, core


def _lookup(table: Mapping[str, object], word: str, m: int, n: int, like: object):
    if word in ATOMS:
        exact = atom_value(word, m, n)
        if isinstance(like, FixedReal):
            return from_fraction(exact, like.scale)
        return exact
    try:
        return table[word]
    except KeyError:
        raise KeyError(f"missing tail for {word!r} at ({m},{n})") from None


def step_rect(w: str, m: int, n: int, table: Mapping[str, object]):
    """zeta(w)_{m-1,n-1} from the (m,n) tails of w and its init/fin/mid parts.

    ``table`` maps words to their (m,n) values (Fraction or FixedReal); atoms
    are filled in from the closed forms.
    """
    if m < 1 or n < 1:
        raise ValueError("step_rect needs m, n >= 1")
    d = decompose(w)
    cur = _lookup(table, w, m, n, None)
    na, mb = n**d.a, m**d.b
    return (
        cur
        + _lookup(table, d.init, m, n, cur) / na
        + _lookup(table, d.fin, m, n, cur) / mb
        + _lookup(table, d.mid, m, n, cur) / (na * mb)
    )


def step_diag(w: str, n: int, table: Mapping[str, object]):
    """zeta(w)_{n-1,n-1} from (n,n) tails; the m = n case of :func:`step_rect`."""
    return step_rect(w, n, n, table)


# -- series oracle ---------------------------------------------------------------


def _ell_upper(T: int, n: int) -> Fraction:
    # upper bound for the harmonic-type inner sum over n < y < x, at x = T
    raw = math.log(T) + 1.0 if n == 0 else math.log(T / n)
    return Fraction(raw) + Fraction(1, 10**9)


def _remainder_bound(c: Sequence[int], m: int, n: int, T: int) -> Fraction | None:
    """Upper bound for the part of the nested series with n_1 > T.

    Uses C(x+m, m)^-1 <= m!/x^m, an inner-sum bound K * ell(x)^q and an
    integral comparison, valid once x^-s ell(x)^q is decreasing on [T, inf).
    Returns None when that monotonicity cannot be guaranteed at T.
    """
    if T <= n:
        return None
    a1, rest = c[0], c[1:]
    s = a1 + m
    t = s - 1
    ell = _ell_upper(T, n)
    ell_low = (math.log(T) + 1.0 if n == 0 else math.log(T / n)) - 1e-9
    options = []
    ones = sum(1 for a in rest if a == 1)
    K1 = Fraction(1)
    for a in rest:
        if a >= 2:
            K1 *= Fraction(1, (a - 1) * n ** (a - 1)) if n >= 1 else Fraction(a, a - 1)
    options.append((K1, ones))
    if rest:
        options.append((Fraction(1, math.factorial(len(rest))), len(rest)))
    best = None
    for K, q in options:
        if ell_low < q / s:
            continue
        integral = sum(
            Fraction(math.factorial(q), math.factorial(q - j)) * ell ** (q - j) / Fraction(t) ** (j + 1)
            for j in range(q + 1)
        )
        bound = math.factorial(m) * K * integral / Fraction(T) ** t
        if best is None or bound < best:
            best = bound
    return best


def _partial_sum(c: Sequence[int], m: int, n: int, T: int, P: int) -> int:
    """floor-accumulated 2^P * sum over T >= n_1 > ... > n_r > n."""
    r = len(c)
    one = 1 << P
    H = [0] * (r + 2)  # H[j] = sum over n < n_j <= x of the levels j..r
    H[r + 1] = one
    total = 0
    binom = math.comb(n + m, m)  # C(x + m, m) at x = n
    for x in range(n + 1, T + 1):
        binom = binom * (x + m) // x
        inner = H[2] if r > 1 else one
        total += inner // (binom * x ** c[0])
        for j in range(2, r + 1):
            H[j] += H[j + 1] // x ** c[j - 1]
    return total


def tail_series_oracle(
    c: Sequence[int], m: int, n: int, target_error: Fraction | float, max_terms: int = 2_000_000
) -> TailValue:
    """Certified value of zeta(c)_{m,n} from its defining nested series.

    The series over n_1 > ... > n_r > n weighted by 1/C(n_1+m, m) is cut at
    n_1 <= T, with T the smallest cut whose remainder bound is at most half
    of ``target_error``.  The partial sum is accumulated with floor division
    at a precision whose total rounding is below a quarter of the target.
    The returned value under-estimates, by at most ``error``.
    """
    c = tuple(c)
    if not c or not is_admissible(c):
        raise ValueError(f"need a non-empty admissible composition, got {c}")
    if m < 0 or n < 0:
        raise ValueError("indices must be nonnegative")
    target = Fraction(target_error)
    if target <= 0:
        raise ValueError("target_error must be positive")
    half = target / 2

    def ok(T: int) -> bool:
        b = _remainder_bound(c, m, n, T)
        return b is not None and b <= half

    hi = max(n + 1, 16)
    while not ok(hi):
        hi *= 2
        if hi - n > 4 * max_terms:
            raise ValueError(f"target {float(target):.2e} needs more than {max_terms} terms for {c} at ({m},{n})")
    lo = max(n, hi // 2)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    T = hi
    if T - n > max_terms:
        raise ValueError(f"target {float(target):.2e} needs {T - n} terms for {c} at ({m},{n})")
    r = len(c)
    steps = T - n
    need = (4 * (r + 1) * steps * target.denominator + target.numerator - 1) // target.numerator
    P = max(need.bit_length(), 8)
    acc = _partial_sum(c, m, n, T, P)
    err = _remainder_bound(c, m, n, T) + Fraction((r + 1) * steps, 1 << P)
    return TailValue(Fraction(acc, 1 << P), err, steps)


def tail_value(w: str, m: int, n: int, target_error: Fraction | float, max_terms: int = 2_000_000) -> TailValue:
    """Certified zeta(w)_{m,n} for any valid word and index pair.

    Non-admissible words are reduced with the one-bit recurrences, atoms use
    their closed forms, and of the two equal series for (w, m, n) and
    (dual w, n, m) the faster converging one is summed.
    """
    coef, core = reduce_word(w, m, n)
    if core == EMPTY:
        return TailValue(coef * base_empty(m, n), Fraction(0), 0)
    target = Fraction(target_error) / coef
    lead = len(core) - len(core.lstrip("0")) + 1
    lead_dual = len(core) - len(core.rstrip("1")) + 1
    if n + lead_dual > m + lead:
        res = tail_series_oracle(composition_of_word(dual(core)), n, m, target, max_terms)
    else:
        res = tail_series_oracle(composition_of_word(core), m, n, target, max_terms)
    return TailValue(coef * res.value, coef * res.error, res.terms)


def tail_oracle_word(w: str, m: int, n: int, target_error, max_terms: int = 2_000_000) -> TailValue:
    """Direct series for an admissible word, without the duality shortcut."""
    if not w or not is_admissible_word(w):
        raise ValueError(f"need a non-empty admissible word, got {w!r}")
    return tail_series_oracle(composition_of_word(w), m, n, target_error, max_terms)
