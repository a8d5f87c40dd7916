from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from doubletails import dp, series
from doubletails.series import (
    baseline_chasles,
    build_phi_table,
    finite_identity_check,
    general_tail_series,
    lam,
    lam_mn,
    phi_direct,
    phi_pq,
    psi,
    series_partial_sum,
    series_rounding_bound,
    series_truncation_bound,
    subword_pairs,
    zeta_interval,
    zeta_series,
)
from doubletails.tails import tail_value
from doubletails.words import composition_of_word, dual, enumerate_admissible, word_of_composition

from reference import CLOSED_FORMS, REF_ERROR, frac, BINOM_SUM_4, zeta

PAIRS = [("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]
compositions = st.lists(st.integers(1, 4), min_size=1, max_size=6).map(tuple).filter(lambda c: sum(c) <= 6)


def test_lambda_table():
    assert [lam(*p) for p in PAIRS] == [2, 3, 1, 2]
    for n in range(1, 11):
        for p in PAIRS:
            assert lam_mn(n, n, *p) == lam(*p)
    with pytest.raises(ValueError):
        lam_mn(0, 1, "0", "1")


def test_phi_direct_examples():
    for m in range(1, 6):
        assert phi_direct((1,), m) == Fraction(1, m)
        assert phi_direct((3,), m) == Fraction(1, m**3)
    assert phi_direct((2, 1), 2) == Fraction(1, 4)
    assert phi_direct((1, 1), 1) == 0


@given(compositions, st.integers(0, 11), st.integers(1, 12))
def test_interval_identities(c, p, width):
    q = min(p + width, 12)
    if q <= p:
        return
    z = zeta_interval(c, p, q)
    assert z == sum(phi_pq(c, p, x) for x in range(p + 1, q + 1))
    tail = zeta_interval(c[1:], p, q - 1) if len(c) > 1 else 1
    assert phi_pq(c, p, q) == Fraction(1, q ** c[0]) * tail
    assert 0 <= phi_pq(c, p, q) <= 1
    assert 0 <= z <= q - p


def test_interval_edge_cases():
    assert zeta_interval((), 3, 3) == 1
    assert zeta_interval((2,), 3, 3) == 0
    with pytest.raises(ValueError):
        phi_pq((2,), 3, 3)
    with pytest.raises(ValueError):
        phi_pq((), 0, 3)


@pytest.mark.parametrize("k", range(2, 7))
def test_phi_table_matches_direct(k):
    N = 10
    for w in enumerate_admissible(k)[-(2 ** (k - 2)) :]:
        t = build_phi_table(w, N)
        for m in range(1, N + 1):
            for i in range(1, k):
                assert t.a(m, i) == phi_direct(composition_of_word(w[i:]), m)
                assert t.b(m, i) == phi_direct(composition_of_word(dual(w[:i])), m)


def test_phi_table_examples():
    t = build_phi_table("01", 6)
    for m in range(1, 7):
        assert t.a(m, 1) == t.b(m, 1) == Fraction(1, m)
        assert psi("01", m, t) == Fraction(3, m * m)
    t = build_phi_table("0011", 3)
    assert t.a(1, 3) == 1 and t.a(1, 2) == 0


def test_phi_fixed_point_error():
    w, N, F = "0010111", 30, 60
    ex = build_phi_table(w, N)
    fx = build_phi_table(w, N, F)
    for m in range(1, N + 1):
        for i in range(1, len(w)):
            for exact, mant in ((ex.a(m, i), fx.a(m, i)), (ex.b(m, i), fx.b(m, i))):
                assert 0 <= exact - Fraction(mant, 1 << F) <= Fraction(m + 1, 1 << F)


@given(st.sampled_from(enumerate_admissible(7)), st.integers(1, 25))
def test_psi_bound(w, m):
    t = build_phi_table(w, m)
    assert 0 <= psi(w, m, t) <= 3 * (len(w) - 1)


def test_psi_0001_sums_to_zeta4():
    N = 40
    s = series_partial_sum("0001", 0, 0, N)
    assert abs(s - zeta(4)) <= series_truncation_bound(4, 0, 0, N)


def test_truncation_bound_reduces_to_diagonal_case():
    # at m = n = 0 the bound is 3 (k-1) 2N / 4^N
    assert series_truncation_bound(4, 0, 0, 10) == Fraction(3 * 3 * 20, 4**10)


@pytest.mark.parametrize("w, m, n", [("01", 0, 0), ("0011", 2, 1), ("0101", 1, 3), ("00101", 3, 0)])
def test_rounding_certificate(w, m, n):
    N, F = 25, 50
    ex = series_partial_sum(w, m, n, N)
    got = Fraction(series_partial_sum(w, m, n, N, F), 1 << F)
    assert abs(ex - got) <= series_rounding_bound(len(w), m, n, N, F)


@pytest.mark.parametrize("w, m, n, N", [("01", 1, 1, 20), ("0011", 2, 1, 25), ("0101", 0, 2, 20)])
def test_truncation_certificate(w, m, n, N):
    t = tail_value(w, m, n, Fraction(1, 10**12))
    s = series_partial_sum(w, m, n, N)
    assert abs(s - t.value) <= series_truncation_bound(len(w), m, n, N) + t.error


def test_general_tail_examples():
    ev = general_tail_series("01", 0, 0, 30)
    assert abs(ev.value.to_fraction() - zeta(2)) <= ev.error + REF_ERROR
    ev = general_tail_series("01", 1, 1, 20)
    assert abs(ev.value.to_fraction() - (zeta(2) - Fraction(3, 2))) <= ev.error + REF_ERROR
    assert ev.error < Fraction(1, 10**20)
    ev = general_tail_series((3, 1), 2, 1, 15)
    t = tail_value("0011", 2, 1, Fraction(1, 10**16))
    assert abs(ev.value.to_fraction() - t.value) <= ev.error + t.error


def test_zeta_series_examples():
    for w in ("01", "0001", "0011", "0101"):
        ev = zeta_series(w, 30)
        assert ev.error < Fraction(1, 10**30)
        assert abs(ev.value.to_fraction() - CLOSED_FORMS[w]) <= ev.error + REF_ERROR
    ev = zeta_series((4,), 30)
    assert abs(ev.value.to_fraction() * 17 / 36 - frac(BINOM_SUM_4)) <= ev.error + REF_ERROR


def test_zeta_series_matches_dp_weight_8():
    table = dp.zeta_table(8, 30)
    for w in enumerate_admissible(8):
        ev = zeta_series(w, 30)
        assert abs(ev.value.to_fraction() - table[w].to_fraction()) <= ev.error + table.error, w


def test_zeta_series_rejects_non_admissible():
    with pytest.raises(ValueError):
        zeta_series((1, 2), 10)
    with pytest.raises(ValueError):
        zeta_series("", 10)


def test_baseline_examples():
    a = baseline_chasles((2,), 20)
    b = zeta_series((2,), 20)
    assert abs(a.value.to_fraction() - b.value.to_fraction()) <= a.error + b.error
    c = baseline_chasles((3, 1), 20)
    assert abs(c.value.to_fraction() - zeta(4) / 4) <= c.error + REF_ERROR
    assert c.error < Fraction(1, 10**20)


def test_baseline_takes_twice_the_steps():
    s = zeta_series((2, 1, 3, 2), 100)
    b = baseline_chasles((2, 1, 3, 2), 100)
    assert 0.45 <= s.steps / b.steps <= 0.55


def test_subword_pairs():
    assert subword_pairs("01") == [(0, 2)]
    w = "0011"
    assert {w[i:j] for i, j in subword_pairs(w)} == {"0011", "001", "011", "01"}


def test_identity_small_cases():
    chk = finite_identity_check("01", 0, 0, 1)
    assert abs(chk.residual) <= chk.tolerance
    chk = finite_identity_check("0011", 0, 0, 5, Fraction(1, 10**20))
    assert abs(chk.residual) <= chk.tolerance < Fraction(1, 10**18)
    chk = finite_identity_check("0101", 1, 2, 3, Fraction(1, 10**12))
    assert abs(chk.residual) <= chk.tolerance < Fraction(1, 10**10)


def test_identity_fails_when_perturbed():
    chk = finite_identity_check("0011", 1, 1, 3)
    assert abs(chk.residual + Fraction(1, 10**6)) > chk.tolerance


def test_random_samples_reproducible():
    a = series.random_samples(7, 20)
    assert a == series.random_samples(7, 20)
    for w, m, n, N in a:
        assert 2 <= len(w) <= 5 and w[0] == "0" and w[-1] == "1"
        assert 0 <= m <= 3 and 0 <= n <= 3 and 1 <= N <= 6


def test_as_word_accepts_both_forms():
    assert zeta_series(word_of_composition((3,)), 15).value == zeta_series((3,), 15).value
