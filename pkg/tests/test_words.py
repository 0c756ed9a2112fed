"""Tests for the word layer: alphabets, parsing, formatting, shortlex."""

import pytest
from hypothesis import given, strategies as st

from invhull.words import (
    Alphabet,
    WordError,
    free_reduce,
    shortlex_key,
    shortlex_less,
)


AB = Alphabet.of("a b")


def test_of_splits_on_whitespace():
    assert AB.names == ("a", "b")
    assert Alphabet.of(["x", "y", "z"]).names == ("x", "y", "z")
    assert Alphabet.of("gamma delta").names == ("gamma", "delta")


def test_of_rejects_duplicates():
    with pytest.raises(WordError):
        Alphabet.of("a a")


def test_of_rejects_too_many_letters():
    with pytest.raises(WordError):
        Alphabet.of(" ".join(f"g{i}" for i in range(60)))


def test_char_roundtrip():
    for name in AB.names:
        for inverse in (False, True):
            ch = AB.char(name, inverse)
            assert AB.letter_of_char(ch) == (name, inverse)


def test_invert_char_is_involutive():
    ch = AB.char("a")
    assert AB.invert_char(AB.invert_char(ch)) == ch
    assert AB.invert_char(ch) == AB.char("a", inverse=True)


def test_parse_spaced_and_contiguous_agree():
    assert AB.parse("a b b a") == AB.parse("abba")
    assert AB.format(AB.parse("abba")) == "a b^2 a"


def test_parse_powers():
    assert AB.parse("ab^2") == AB.parse("a b b")
    assert AB.parse("a^3") == AB.parse("aaa")


def test_parse_empty_word_spellings():
    assert AB.parse("") == ""
    assert AB.parse("1") == ""
    assert AB.parse("e") == ""
    assert AB.format("") == "1"


def test_parse_e_is_a_letter_when_declared():
    ef = Alphabet.of("e f")
    assert ef.parse("e") == ef.char("e")


def test_negative_powers_need_group_mode():
    w = AB.parse("a^-1 b", group=True)
    assert AB.format(w) == "a^-1 b"
    with pytest.raises(WordError):
        AB.parse("a^-1")


def test_parse_rejects_unknown_letter():
    with pytest.raises(WordError):
        AB.parse("a c")


def test_invert_word_reverses_and_flips():
    w = AB.parse("ab^2", group=True)
    assert AB.format(AB.invert_word(w)) == "b^-2 a^-1"
    assert AB.invert_word(AB.invert_word(w)) == w


def test_as_tuple():
    assert AB.as_tuple(AB.parse("ab")) == ("a", "b")
    assert AB.as_tuple(AB.parse("a^-1", group=True)) == ("a^-1",)


def test_shortlex_orders_by_length_first():
    prec = AB.monoid_chars()
    assert shortlex_less(AB.parse("b"), AB.parse("aa"), prec)
    assert shortlex_less(AB.parse("ab"), AB.parse("ba"), prec)
    assert not shortlex_less(AB.parse("a"), AB.parse("a"), prec)


def test_shortlex_key_is_total_on_small_ball():
    prec = AB.monoid_chars()
    words = [""]
    for _ in range(3):
        words += [w + c for w in list(words) for c in prec]
    keys = sorted(shortlex_key(w, prec) for w in set(words))
    assert keys[0] == (0, ())
    assert len(keys) == len(set(keys))


def test_free_reduce_cancels_adjacent_pairs():
    w = AB.parse("a a^-1 b", group=True)
    assert AB.format(free_reduce(w, AB)) == "b"
    w = AB.parse("a b b^-1 a^-1", group=True)
    assert free_reduce(w, AB) == ""


@given(st.lists(st.sampled_from(["a", "b", "a^-1", "b^-1"]), max_size=12))
def test_format_parse_roundtrip(parts):
    w = AB.parse(" ".join(parts), group=True) if parts else ""
    assert AB.parse(AB.format(w), group=True) == w


@given(st.lists(st.sampled_from(["a", "b", "a^-1", "b^-1"]), max_size=12))
def test_free_reduce_is_idempotent_and_shortens(parts):
    w = AB.parse(" ".join(parts), group=True) if parts else ""
    r = free_reduce(w, AB)
    assert free_reduce(r, AB) == r
    assert len(r) <= len(w)
