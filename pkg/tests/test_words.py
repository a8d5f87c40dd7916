import pytest
from hypothesis import given, strategies as st

from doubletails.words import (
    ATOMS,
    admissible_subwords,
    admissible_words,
    canonical_rep,
    closure,
    composition_of_word,
    decompose,
    depth,
    dual,
    dual_composition,
    enumerate_admissible,
    format_composition,
    is_admissible_word,
    parse_composition,
    representatives,
    weight,
    word_of_composition,
)

compositions = st.lists(st.integers(1, 5), max_size=6).map(tuple)
words = st.text(alphabet="01", max_size=12)
admissible = st.text(alphabet="01", max_size=8).map(lambda s: "0" + s + "1")


@pytest.mark.parametrize(
    "c, w", [((2,), "01"), ((), ""), ((3, 1), "0011"), ((4,), "0001"), ((2, 2), "0101")]
)
def test_word_of_composition(c, w):
    assert word_of_composition(c) == w


@pytest.mark.parametrize("w, c", [("011", (2, 1)), ("0101", (2, 2)), ("", ())])
def test_composition_of_word(w, c):
    assert composition_of_word(w) == c


def test_composition_of_word_rejects_trailing_zero():
    with pytest.raises(ValueError):
        composition_of_word("10")
    with pytest.raises(ValueError):
        composition_of_word("012")


@pytest.mark.parametrize("w, d", [("01", "01"), ("001", "011"), ("0011", "0011"), ("0001", "0111")])
def test_dual_examples(w, d):
    assert dual(w) == d


def test_dual_composition():
    assert dual_composition((3,)) == (2, 1)


@pytest.mark.parametrize(
    "w, v, a, b, init, fin, mid",
    [
        ("01", "", 1, 1, "0", "1", ""),
        ("0001", "", 3, 1, "0", "001", ""),
        ("0011", "01", 1, 1, "001", "011", "01"),
        ("0111", "", 1, 3, "011", "1", ""),
        ("010101", "01", 2, 2, "0101", "0101", "01"),
    ],
)
def test_decompose_examples(w, v, a, b, init, fin, mid):
    d = decompose(w)
    assert (d.v, d.a, d.b) == (v, a, b)
    assert (d.init, d.fin, d.mid) == (init, fin, mid)


@pytest.mark.parametrize("w", ["", "10", "0", "1", "010"])
def test_decompose_rejects(w):
    with pytest.raises(ValueError):
        decompose(w)


def test_enumerate_examples():
    assert enumerate_admissible(2) == ["01"]
    assert enumerate_admissible(4) == ["01", "001", "011", "0001", "0011", "0101", "0111"]
    assert len(enumerate_admissible(8)) == 127


@pytest.mark.parametrize("k", range(2, 12))
def test_enumerate_count(k):
    assert len(enumerate_admissible(k)) == 2 ** (k - 1) - 1
    assert len(admissible_words(k)) == 2 ** (k - 2)


def test_admissible_subwords_examples():
    assert admissible_subwords("01") == {"01"}
    assert admissible_subwords("0011") == {"0011", "001", "011", "01"}
    assert admissible_subwords("0101") == {"0101", "01"}


@pytest.mark.parametrize("w, rep", [("01", "01"), ("011", "001"), ("0011", "0011"), ("0111", "0001")])
def test_canonical_rep_examples(w, rep):
    assert canonical_rep(w) == rep


def test_representatives_counts():
    # self-dual words exist only in even weight, 2^{(k-2)/2} of them
    for k in range(2, 11):
        n_self = 2 ** ((k - 2) // 2) if k % 2 == 0 else 0
        assert len(representatives(k)) == (2 ** (k - 2) + n_self) // 2


def test_closure_is_sorted_and_excludes_atoms():
    cl = closure(["0101", "0011"])
    assert cl == sorted(cl, key=lambda u: (len(u), u))
    assert not set(cl) & ATOMS
    assert set(cl) == {"01", "001", "011", "0011", "0101"}


@pytest.mark.parametrize(
    "text, c", [("(3,1)", (3, 1)), ("3,1", (3, 1)), ("()", ()), (" ( 2 , 2 ) ", (2, 2)), ("0011", (3, 1))]
)
def test_parse_composition(text, c):
    assert parse_composition(text) == c


@pytest.mark.parametrize("text", ["(3,-1)", "(a)", "3;1", "(0,2)"])
def test_parse_composition_rejects(text):
    with pytest.raises(ValueError):
        parse_composition(text)


@given(compositions)
def test_composition_roundtrip(c):
    assert composition_of_word(word_of_composition(c)) == c
    assert parse_composition(format_composition(c)) == c


@given(admissible)
def test_decompose_reconstructs(w):
    assert decompose(w).word() == w


def test_decompose_reconstructs_exhaustive():
    for w in enumerate_admissible(10):
        assert decompose(w).word() == w


@given(words)
def test_dual_involution(w):
    assert dual(dual(w)) == w
    assert weight(dual(w)) == weight(w)
    assert depth(dual(w)) == weight(w) - depth(w)


@given(admissible)
def test_dual_preserves_admissibility(w):
    assert is_admissible_word(dual(w))
    assert canonical_rep(w) == canonical_rep(dual(w))
    assert canonical_rep(canonical_rep(w)) == canonical_rep(w)


@pytest.mark.parametrize("k", range(2, 9))
def test_subwords_closed_under_parts(k):
    for w in admissible_words(k):
        sub = admissible_subwords(w)
        assert w in sub
        for u in sub:
            d = decompose(u)
            for part in (d.init, d.fin, d.mid):
                assert part in sub or part in ATOMS


@given(admissible)
def test_closure_within_subwords(w):
    assert set(closure([w])) <= admissible_subwords(w)
