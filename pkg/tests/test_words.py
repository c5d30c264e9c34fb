import pytest
from hypothesis import given
from hypothesis import strategies as st

from heegaard2.errors import DiagramSyntaxError
from heegaard2.words import (
    EMPTY,
    abelianization,
    cyclic_reduce,
    format_word,
    inv,
    is_reduced,
    mul,
    parse_word,
    reduce_word,
    shortlex_key,
    shortlex_rep,
)

letters = st.integers(min_value=-4, max_value=4).filter(lambda a: a != 0)
raw_words = st.lists(letters, max_size=12)


@given(raw_words)
def test_reduce_is_idempotent_and_reduced(raw):
    w = reduce_word(raw)
    assert is_reduced(w)
    assert reduce_word(w) == w
    assert len(w) <= len(raw)


@given(raw_words)
def test_inverse_cancels(raw):
    w = reduce_word(raw)
    assert mul(w, inv(w)) == EMPTY
    assert mul(inv(w), w) == EMPTY


@given(raw_words, raw_words)
def test_mul_matches_reduce_of_concatenation(a, b):
    assert mul(reduce_word(a), reduce_word(b)) == reduce_word(tuple(a) + tuple(b))


@given(raw_words)
def test_cyclic_reduce_conjugacy_invariant_length(raw):
    w = cyclic_reduce(reduce_word(raw))
    assert len(w) <= len(reduce_word(raw))
    if w:
        assert w[0] != -w[-1]


def test_parse_format_roundtrip():
    for text in ("g1", "g1 g2^-1 h1", "h2^-1 h2^-1 g1", "1"):
        w = parse_word(text)
        assert parse_word(format_word(w)) == w


def test_parse_reduces():
    assert parse_word("g1 g1^-1") == EMPTY
    assert parse_word("g1 g2 g2^-1 h1") == (1, 3)


def test_parse_rejects_garbage():
    with pytest.raises(DiagramSyntaxError):
        parse_word("g3")
    with pytest.raises(DiagramSyntaxError):
        parse_word("g1^2")


def test_shortlex_order():
    assert shortlex_key(()) < shortlex_key((1,))
    assert shortlex_key((1,)) < shortlex_key((-1,))
    assert shortlex_key((-1,)) < shortlex_key((2,))
    assert shortlex_key((4,)) < shortlex_key((1, 1))
    assert shortlex_rep((-1,)) == (1,)


def test_abelianization():
    assert abelianization(parse_word("g1 g2^-1 g1 h2")) == (2, -1, 0, 1)
