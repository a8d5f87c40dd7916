"""Simultaneous evaluation of many MZVs by the descending diagonal recurrence.

Every word v of a closed set V is given the value u_N(v) = 0, then for
n = N, ..., 1

    u_{n-1}(v) = u_n(v) + u_n(init)/n^a + u_n(fin)/n^b + u_n(mid)/n^(a+b)

with atoms replaced by their exact diagonal tails.  u_0(v) approximates
zeta(v) within :func:`error_bound`.
"""
from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .fixnum import FixedReal, PrecisionPlan, binom_recip_table
from .tails import ZETA2_UPPER
from .words import EMPTY, canonical_rep, closure, decompose

_ATOM_ZERO, _ATOM_ONE, _ATOM_EMPTY = -1, -2, -3


def error_bound(N: int, step_alpha: Fraction | int = 0) -> Fraction:
    """Total error bound 4^-N (N+1)^2 pi^2/6 + N(N+1)(2N+1)/6 * alpha."""
    if N < 0:
        raise ValueError("N must be >= 0")
    theory = Fraction((N + 1) ** 2, 4**N) * ZETA2_UPPER
    return theory + Fraction(N * (N + 1) * (2 * N + 1), 6) * Fraction(step_alpha)


def partial_error_bound(n: int, N: int, step_alpha: Fraction | int = 0) -> Fraction:
    """Bound on |zeta(v)_{n,n} - u_n(v)| at an intermediate generation n."""
    if not 0 <= n <= N:
        raise ValueError("need 0 <= n <= N")
    alpha_part = Fraction(step_alpha) * sum(j * j for j in range(n + 1, N + 1))
    return (Fraction((N + 1) ** 2, 4**N) * ZETA2_UPPER + alpha_part) / (n + 1) ** 2


def choose_N(digits: int, step_alpha: Fraction | int = 0) -> int:
    """Smallest N with ``error_bound(N, step_alpha) < 10**-digits``."""
    if digits < 0:
        raise ValueError("digits must be >= 0")
    target = Fraction(1, 10**digits)
    alpha = Fraction(step_alpha)
    # 4^-N >= 10^-d below d*log_4(10), so no smaller N can work
    N = max(0, int(digits * math.log(10) / math.log(4)) - 2)
    while True:
        if error_bound(N, alpha) < target:
            return N
        if Fraction(N * (N + 1) * (2 * N + 1), 6) * alpha >= target:
            raise ValueError("step_alpha too large for the requested digits")
        N += 1


def plan_precision(digits: int) -> tuple[int, PrecisionPlan]:
    """Iteration count and working precision for ``digits`` certified decimals."""
    N = choose_N(digits)
    while True:
        prec = PrecisionPlan.for_digits(digits, N)
        N2 = choose_N(digits, prec.step_alpha)
        if N2 <= N:
            return N, prec
        N = N2


@dataclass(frozen=True)
class DpPlan:
    """Closed word set, iteration count and precision (``None`` = exact rationals).

    With ``fold_duality`` words are replaced by their duality representatives;
    diagonal tails of a word and its dual coincide, so this halves the table.
    """

    words: tuple[str, ...]
    N: int
    precision: PrecisionPlan | None = None
    fold_duality: bool = False
    _meta: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        index = {w: i for i, w in enumerate(self.words)}
        meta = []
        for w in self.words:
            d = decompose(w)
            refs = []
            for part in (d.init, d.fin, d.mid):
                refs.append(_ref(part, index, self.fold_duality, w))
            meta.append((d.a, d.b, *refs))
        object.__setattr__(self, "_meta", tuple(meta))

    @property
    def step_alpha(self) -> Fraction:
        return Fraction(0) if self.precision is None else self.precision.step_alpha


def _ref(part: str, index: dict[str, int], fold: bool, owner: str) -> int:
    if part == "0":
        return _ATOM_ZERO
    if part == "1":
        return _ATOM_ONE
    if part == EMPTY:
        return _ATOM_EMPTY
    key = canonical_rep(part) if fold else part
    try:
        return index[key]
    except KeyError:
        raise ValueError(f"word set not closed: {owner!r} needs {key!r}") from None


def make_plan(
    targets: Iterable[str],
    digits: int | None = None,
    N: int | None = None,
    exact: bool = False,
    fold_duality: bool = False,
) -> DpPlan:
    """Plan for the closure of ``targets``.

    Either ``digits`` (N and precision are derived) or an explicit ``N``
    must be given; ``exact`` runs in rational arithmetic.
    """
    words = closure(targets)
    if fold_duality:
        words = sorted({canonical_rep(w) for w in words}, key=lambda u: (len(u), u))
    if exact:
        if N is None:
            if digits is None:
                raise ValueError("need digits or N")
            N = choose_N(digits)
        return DpPlan(tuple(words), N, None, fold_duality)
    if digits is None:
        raise ValueError("fixed-point runs need digits")
    N_auto, prec = plan_precision(digits)
    if N is None:
        N = N_auto
    else:
        prec = PrecisionPlan.for_digits(digits, N)
    return DpPlan(tuple(words), N, prec, fold_duality)


@dataclass(frozen=True)
class DpResult:
    plan: DpPlan
    values: dict  # word -> FixedReal or Fraction (u_0)
    theoretical_error: Fraction
    rounding_error: Fraction
    snapshots: dict = field(default_factory=dict)  # n -> {word: u_n(word)}

    @property
    def error(self) -> Fraction:
        return self.theoretical_error + self.rounding_error

    def __getitem__(self, w: str):
        if self.plan.fold_duality:
            w = canonical_rep(w)
        return self.values[w]


def run(plan: DpPlan, record: Iterable[int] = ()) -> DpResult:
    """Iterate the recurrence from n = N down to 0.

    ``record`` lists generations n whose full table u_n is kept in
    ``snapshots`` (used for vanishing certificates).
    """
    N, words, meta = plan.N, plan.words, plan._meta
    record = set(record)
    exact = plan.precision is None
    if exact:
        binom = [Fraction(1, math.comb(2 * n, n)) for n in range(N + 1)]
        zero = Fraction(0)
    else:
        F = plan.precision.scale
        binom = binom_recip_table(N, F)
        zero = 0
    u = [zero] * len(words)
    snapshots = {}
    if N in record:
        snapshots[N] = _wrap(words, u, plan)
    div = operator.truediv if exact else operator.floordiv
    for n in range(N, 0, -1):
        c = binom[n]
        nxt = []
        for cur, (a, b, i_init, i_fin, i_mid) in zip(u, meta):
            na, nb = n**a, n**b
            # an atomic init is "0", fin is "1", mid is empty; their tails are
            # c/n, c/n, c and get divided in one step (<= 2.5 ulp each)
            x_init = div(u[i_init], na) if i_init >= 0 else div(c, n * na)
            x_fin = div(u[i_fin], nb) if i_fin >= 0 else div(c, n * nb)
            x_mid = div(u[i_mid], na * nb) if i_mid >= 0 else div(c, na * nb)
            nxt.append(cur + x_init + x_fin + x_mid)
        u = nxt
        if n - 1 in record:
            snapshots[n - 1] = _wrap(words, u, plan)
    alpha = plan.step_alpha
    theory = error_bound(N, 0)
    rounding = Fraction(N * (N + 1) * (2 * N + 1), 6) * alpha
    return DpResult(plan, _wrap(words, u, plan), theory, rounding, snapshots)


def _wrap(words, u, plan: DpPlan) -> dict:
    if plan.precision is None:
        return dict(zip(words, u))
    F = plan.precision.scale
    return {w: FixedReal(x, F) for w, x in zip(words, u)}


def zeta_table(max_weight: int, digits: int) -> DpResult:
    """u_0 for every admissible word of weight <= max_weight in one run."""
    from .words import enumerate_admissible

    return run(make_plan(enumerate_admissible(max_weight), digits=digits))


__all__ = [
    "DpPlan",
    "DpResult",
    "choose_N",
    "error_bound",
    "make_plan",
    "partial_error_bound",
    "plan_precision",
    "run",
    "zeta_table",
]
