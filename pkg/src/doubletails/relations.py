"""Integer recurrence matrices for diagonal tails of a fixed weight.

For weight k, the vector X_n of diagonal tails zeta(w)_{n,n} over duality
representatives w satisfies X_{n-1} = X_n + A Y_n, where Y_n lists
n^(k_b - k) zeta(b)_{n,n} for representatives b of lower weight and finally
n^-k zeta(empty)_{n,n}.  A row vector L with L A = 0 makes L X_n constant,
hence zero for every n.

Relations of lower weight feed upward: if L A only touches the columns of a
weight-j block along a weight-j relation, the extra terms vanish as well.
:func:`kernel` reports both the plain left kernel of A and the larger space
of relations found this way.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import NamedTuple, Sequence

from . import dp
from .words import ATOMS, EMPTY, canonical_rep, composition_of_word, decompose, format_composition, representatives

Matrix = list[list[int]]


# exact linear algebra --------------------------------------------------------


def echelon(M: Matrix) -> tuple[Matrix, list[int]]:
    """Fraction-free Gauss-Jordan reduction.

    Returns the reduced integer matrix and its pivot columns.  Every division
    by the previous pivot is exact (entries stay minors of ``M``).
    """
    E = [list(r) for r in M]
    rows = len(E)
    cols = len(E[0]) if rows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if E[i][c] != 0), None)
        if p is None:
            continue
        E[r], E[p] = E[p], E[r]
        piv = E[r][c]
        for i in range(rows):
            if i == r:
                continue
            f = E[i][c]
            Ei, Er = E[i], E[r]
            for j in range(cols):
                num = piv * Ei[j] - f * Er[j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("inexact fraction-free division")
                Ei[j] = q
        prev = piv
        pivots.append(c)
        r += 1
    return E, pivots


def rank(M: Matrix) -> int:
    return len(echelon(M)[1]) if M else 0


def primitive(v: Sequence[Fraction | int]) -> list[int]:
    """Scale a rational vector to coprime integers with a positive leading entry."""
    den = reduce(math.lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(math.gcd, ints, 0)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return [-x for x in ints] if lead < 0 else ints


def nullspace(M: Matrix, ncols: int | None = None) -> list[list[int]]:
    """Primitive integer basis of {x : M x = 0}."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    E, pivots = echelon(M)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, c in enumerate(pivots):
            x[c] = Fraction(-E[i][f], E[i][c])
        basis.append(primitive(x))
    return basis


def transpose(M: Matrix, ncols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def left_kernel(A: Matrix) -> list[list[int]]:
    """Primitive integer basis of {L : L A = 0}."""
    return nullspace(transpose(A), len(A))


def vecmat(L: Sequence[int], A: Matrix) -> list[int]:
    ncols = len(A[0]) if A else 0
    return [sum(L[i] * A[i][j] for i in range(len(A))) for j in range(ncols)]


# the tail matrix -------------------------------------------------------------


def _label(w: str) -> str:
    return format_composition(composition_of_word(w))


@dataclass(frozen=True)
class TailMatrix:
    k: int
    rows: tuple[str, ...]  # representative words of weight k
    cols: tuple[str, ...]  # lower-weight representatives, then EMPTY
    entries: tuple[tuple[int, ...], ...]

    @property
    def A(self) -> Matrix:
        return [list(r) for r in self.entries]

    @property
    def row_labels(self) -> list[str]:
        return [_label(w) for w in self.rows]

    @property
    def col_labels(self) -> list[str]:
        return [_label(w) for w in self.cols]

    def col_exponent(self, j: int) -> int:
        """Power of n carried by column j of Y_n."""
        return len(self.cols[j]) - self.k

    def to_json(self) -> str:
        return json.dumps(
            {"k": self.k, "rows": self.row_labels, "cols": self.col_labels, "entries": self.A}
        )

    @classmethod
    def from_json(cls, text: str) -> TailMatrix:
        from .words import parse_composition, word_of_composition

        obj = json.loads(text)
        words = lambda labels: tuple(word_of_composition(parse_composition(s)) for s in labels)
        return cls(obj["k"], words(obj["rows"]), words(obj["cols"]), tuple(tuple(r) for r in obj["entries"]))

    def to_text(self) -> str:
        width = max([len(s) for s in self.row_labels] + [1])
        cells = [[str(x) for x in r] for r in self.entries]
        cw = max([len(c) for r in cells for c in r] + [1])
        lines = [f"weight {self.k}: {len(self.rows)} x {len(self.cols)}"]
        lines.append("columns: " + " ".join(f"n^{self.col_exponent(j)} z{lab}" for j, lab in enumerate(self.col_labels)))
        for lab, r in zip(self.row_labels, cells):
            lines.append(f"{lab:>{width}} | " + " ".join(c.rjust(cw) for c in r))
        return "\n".join(lines)


@lru_cache(maxsize=None)
def build_matrix(k: int) -> TailMatrix:
    """Rows: weight-k representatives in lexicographic order.  Columns: weight
    k-1 down to 2, each block lexicographic, then the empty word.

    Terms landing on a non-representative go to its dual; atoms 0 and 1 have
    the same diagonal tail n^-1 zeta(empty)_{n,n} and fold into the last column.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    rows = representatives(k)
    cols = [r for j in range(k - 1, 1, -1) for r in representatives(j)] + [EMPTY]
    index = {c: j for j, c in enumerate(cols)}
    entries = []
    for w in rows:
        d = decompose(w)
        row = [0] * len(cols)
        for part in (d.init, d.fin, d.mid):
            row[index[EMPTY if part in ATOMS else canonical_rep(part)]] += 1
        entries.append(tuple(row))
    return TailMatrix(k, tuple(rows), tuple(cols), tuple(entries))


# kernels ---------------------------------------------------------------------


@dataclass(frozen=True)
class KernelReport:
    """``basis`` spans {L : L A = 0} (``nullity`` = rows - rank).

    ``relations`` spans the larger space of L for which L A is a combination
    of lower-weight relations placed in their column blocks; ``d_k`` is its
    dimension.  Every such L gives L X_n = 0 for all n.
    """

    k: int
    rank: int
    nullity: int
    basis: tuple[tuple[int, ...], ...]
    d_k: int
    relations: tuple[tuple[int, ...], ...]


def _embedded_relations(k: int, cols: Sequence[str]) -> Matrix:
    index = {c: j for j, c in enumerate(cols)}
    out = []
    for j in range(2, k):
        sub = kernel(j)
        sub_rows = build_matrix(j).rows
        for vec in sub.relations:
            row = [0] * len(cols)
            for w, x in zip(sub_rows, vec):
                row[index[w]] = x
            out.append(row)
    return out


@lru_cache(maxsize=None)
def kernel(k: int) -> KernelReport:
    tm = build_matrix(k)
    A = tm.A
    nrows = len(A)
    rk = rank(A)
    basis = left_kernel(A)
    B = _embedded_relations(k, tm.cols)
    if not B:
        relations = basis
    else:
        joint = nullspace(transpose(A + B), nrows + len(B))
        # the lower-weight relations are independent, so projecting onto the
        # first nrows coordinates is injective on this kernel
        proj = [v[:nrows] for v in joint]
        relations = [primitive(v) for v in _independent_span(proj)]
    return KernelReport(
        k=k,
        rank=rk,
        nullity=nrows - rk,
        basis=tuple(tuple(v) for v in basis),
        d_k=len(relations),
        relations=tuple(tuple(v) for v in relations),
    )


def _independent_span(vectors: list[list[int]]) -> list[list[int]]:
    """Echelon basis of the row span (used to tidy projected kernels)."""
    if not vectors:
        return []
    E, pivots = echelon(vectors)
    return [E[i] for i in range(len(pivots))]


# bridge vectors --------------------------------------------------------------


class BridgeResult(NamedTuple):
    k: int
    L: tuple[int, ...]
    c: int


def bridge(k: int) -> BridgeResult | None:
    """Integer L with L A = c e_last and c > 0, or None when the last column
    of A lies in the span of the others."""
    A = build_matrix(k).A
    head = [r[:-1] for r in A]
    last = [r[-1] for r in A]
    basis = nullspace(transpose(head, len(A)), len(A)) if head and head[0] else [
        [int(i == j) for j in range(len(A))] for i in range(len(A))
    ]
    vals = [sum(x * y for x, y in zip(v, last)) for v in basis]
    if not any(vals):
        return None
    # extended gcd over the values picks the smallest reachable c
    coeffs, g = _xgcd_many(vals)
    L = [sum(cf * v[i] for cf, v in zip(coeffs, basis)) for i in range(len(A))]
    if g < 0:
        L, g = [-x for x in L], -g
    return BridgeResult(k, tuple(L), g)


def _xgcd_many(vals: list[int]) -> tuple[list[int], int]:
    coeffs = [0] * len(vals)
    g = 0
    for i, v in enumerate(vals):
        if v == 0:
            continue
        if g == 0:
            coeffs[i], g = 1, v
            continue
        x, y, g2 = _xgcd(g, v)
        coeffs = [c * x for c in coeffs]
        coeffs[i] = y
        g = g2
    return coeffs, g


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0, a


# numerical certification -----------------------------------------------------


class Certificate(NamedTuple):
    max_residual: Fraction
    bound: Fraction
    residuals: tuple[Fraction, ...]

    @property
    def ok(self) -> bool:
        return self.max_residual <= self.bound


def tail_snapshots(k: int, n_max: int, digits: int | None = None, N: int | None = None, exact: bool = False) -> dp.DpResult:
    """One dp run over the weight-k representatives keeping u_n for n <= n_max."""
    plan = dp.make_plan(representatives(k), digits=digits, N=N, exact=exact, fold_duality=True)
    if n_max > plan.N:
        raise ValueError(f"n_max {n_max} exceeds N = {plan.N}")
    return dp.run(plan, record=range(n_max + 1))


def combination(L: Sequence[int], k: int, table: dict) -> Fraction:
    """L . X for one snapshot ``table`` (word -> tail)."""
    total = Fraction(0)
    for x, w in zip(L, build_matrix(k).rows):
        v = table[w]
        total += x * (v if isinstance(v, Fraction) else v.to_fraction())
    return total


def certify_vanishing(L: Sequence[int], k: int, n_max: int, digits: int) -> Certificate:
    """max_{n <= n_max} |L . X_n| from dp tails, with its error budget."""
    if len(L) != len(build_matrix(k).rows):
        raise ValueError("L has the wrong length for this weight")
    res = tail_snapshots(k, n_max, digits=digits)
    plan = res.plan
    residuals = []
    bound = Fraction(0)
    weight = sum(abs(x) for x in L)
    for n in range(n_max + 1):
        residuals.append(abs(combination(L, k, res.snapshots[n])))
        bound = max(bound, weight * dp.partial_error_bound(n, plan.N, plan.step_alpha))
    return Certificate(max(residuals), bound, tuple(residuals))


__all__ = [
    "BridgeResult",
    "Certificate",
    "KernelReport",
    "TailMatrix",
    "bridge",
    "build_matrix",
    "certify_vanishing",
    "combination",
    "echelon",
    "kernel",
    "left_kernel",
    "nullspace",
    "primitive",
    "rank",
    "tail_snapshots",
    "vecmat",
]
