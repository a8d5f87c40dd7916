import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from doubletails import dp, relations as rel
from doubletails.words import representatives

from reference import REF_ERROR, frac, BINOM_SUM_4, zeta

A4 = [[1, 0, 2], [2, 1, 0], [0, 2, 1]]
A6 = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 2],
    [1, 1, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 1, 0, 0, 1, 0, 0],
    [0, 2, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 1, 1, 0],
    [0, 0, 2, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 2, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 2, 0, 1],
]
L6 = [2, -2, 4, 1, 1, -2, -1, -2, 1, -2]
D_K = {2: 0, 3: 0, 4: 0, 5: 0, 6: 1, 7: 0, 8: 4, 9: 2}

matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=1, max_size=5)
)


@given(matrices)
def test_nullspace_and_rank(M):
    ncols = len(M[0])
    basis = rel.nullspace(M, ncols)
    assert rel.rank(M) + len(basis) == ncols
    for v in basis:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in M)
        assert math.gcd(*v) == 1


@given(matrices)
def test_left_kernel(M):
    for L in rel.left_kernel(M):
        assert not any(rel.vecmat(L, M))


def test_echelon_small():
    E, piv = rel.echelon([[2, 4], [1, 3]])
    assert piv == [0, 1]
    assert rel.rank([[1, 2], [2, 4]]) == 1
    assert rel.rank([]) == 0


def test_primitive():
    assert rel.primitive([Fraction(-1, 2), Fraction(1, 3), 0]) == [3, -2, 0]
    assert rel.primitive([0, 0]) == [0, 0]


def test_weight4_matrix():
    tm = rel.build_matrix(4)
    assert tm.A == A4
    assert tm.row_labels == ["(4)", "(3,1)", "(2,2)"]
    assert tm.col_labels == ["(3)", "(2)", "()"]
    assert [tm.col_exponent(j) for j in range(3)] == [-1, -2, -4]
    assert rel.vecmat([4, -2, 1], tm.A) == [0, 0, 9]


def test_weight6_matrix():
    tm = rel.build_matrix(6)
    assert tm.A == A6
    assert tm.row_labels == [
        "(6)", "(5,1)", "(4,2)", "(4,1,1)", "(3,3)", "(3,2,1)", "(3,1,2)", "(2,4)", "(2,2,2)", "(2,1,3)",
    ]
    assert tm.col_labels == ["(5)", "(4,1)", "(3,2)", "(2,3)", "(4)", "(3,1)", "(2,2)", "(3)", "(2)", "()"]
    assert rel.rank(tm.A) == 9


def test_weight6_kernel():
    rep = rel.kernel(6)
    assert rep.nullity == 1 and rep.d_k == 1
    (v,) = rep.basis
    assert list(v) == L6 or [-x for x in v] == L6
    assert not any(rel.vecmat(L6, A6))


@pytest.mark.parametrize("k, d", sorted(D_K.items()))
def test_d_k(k, d):
    assert rel.kernel(k).d_k == d


def test_plain_kernel_is_contained_in_relations():
    rep = rel.kernel(8)
    assert rep.nullity == 3
    span = rel.rank([list(v) for v in rep.relations])
    assert rel.rank([list(v) for v in rep.relations + rep.basis]) == span == 4


@pytest.mark.parametrize("k", range(2, 10))
def test_relations_vanish_exactly_in_dp(k):
    # u_n obeys the same recurrence as X_n, so relations hold exactly for every n
    res = rel.tail_snapshots(k, 10, N=10, exact=True)
    for L in rel.kernel(k).relations:
        for n in range(11):
            assert rel.combination(L, k, res.snapshots[n]) == 0


def test_matrix_json_roundtrip():
    for k in (2, 4, 6, 7):
        tm = rel.build_matrix(k)
        assert rel.TailMatrix.from_json(tm.to_json()) == tm
    text = rel.build_matrix(4).to_text()
    assert "(3,1)" in text and "n^-4" in text


def test_matrix_rows_are_representatives():
    for k in range(2, 9):
        tm = rel.build_matrix(k)
        assert list(tm.rows) == representatives(k)
        assert all(sum(r) == 3 for r in tm.A)


def test_build_matrix_rejects_small_k():
    with pytest.raises(ValueError):
        rel.build_matrix(1)


def test_bridges():
    assert rel.bridge(2) == rel.BridgeResult(2, (1,), 3)
    assert rel.bridge(4) == rel.BridgeResult(4, (4, -2, 1), 9)
    for k in (3, 5, 6):
        assert rel.bridge(k) is None


def test_bridge_identity_weight4():
    # 4 z(4) - 2 z(3,1) + z(2,2) = 9 sum n^-4 / C(2n, n), and the left side is 17/4 z(4)
    res = dp.zeta_table(4, 40)
    lhs = sum(x * res[w].to_fraction() for x, w in zip((4, -2, 1), rel.build_matrix(4).rows))
    assert abs(lhs - 9 * frac(BINOM_SUM_4)) <= 7 * res.error + 9 * REF_ERROR
    assert abs(lhs - Fraction(17, 4) * zeta(4)) <= 7 * res.error + 5 * REF_ERROR


def test_certify_weight6():
    cert = rel.certify_vanishing(L6, 6, 5, 30)
    assert cert.ok and len(cert.residuals) == 6
    assert cert.bound < Fraction(1, 10**28)


def test_certify_weight8_relations():
    for L in rel.kernel(8).relations:
        assert rel.certify_vanishing(L, 8, 5, 30).ok


def test_certify_rejects_non_relation():
    L = [1] + [0] * 9
    cert = rel.certify_vanishing(L, 6, 5, 30)
    assert not cert.ok
    with pytest.raises(ValueError):
        rel.certify_vanishing([1, 2], 6, 5, 30)


def test_snapshot_range_checked():
    with pytest.raises(ValueError):
        rel.tail_snapshots(4, 50, N=10, exact=True)
