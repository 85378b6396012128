import pytest
from hypothesis import given, strategies as st

from twistlab.braid import (
    BracketForm, BraidError, BraidWord, bracket_to_word, closure_components, cyclic_free_reduce,
    exponent_sum, free_reduce, full_twist, parse_bracket, parse_word, permutation, torus_braid,
    word_from_json, word_to_json, word_to_text,
)


def words(max_strands=6, max_len=14):
    return st.integers(2, max_strands).flatmap(
        lambda n: st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=max_len)
        .map(lambda xs: BraidWord(n, tuple(xs))))


def test_parse_and_print():
    w = parse_word("abAB", 3)
    assert w.letters == (1, 2, -1, -2)
    assert word_to_text(w) == "abAB"
    assert parse_word("", 4).letters == ()
    assert parse_word("a b\tC", 4).letters == (1, 2, -3)


@pytest.mark.parametrize("text,strands", [("c", 3), ("a1", 3), ("z", 30)])
def test_parse_rejects(text, strands):
    with pytest.raises(BraidError):
        parse_word(text, strands)


def test_generator_range_checked():
    with pytest.raises(BraidError):
        BraidWord(3, (3,))
    with pytest.raises(BraidError):
        BraidWord(3, (0,))
    with pytest.raises(BraidError):
        BraidWord(0, ())


def test_json_forms():
    w = BraidWord(4, (1, -3))
    assert word_to_json(w) == "aC"
    assert word_from_json("aC", 4) == w
    assert word_from_json([1, -3], 4) == w
    assert word_from_json({"strands": 4, "letters": [1, -3]}) == w
    big = BraidWord(30, (29, -1))
    assert word_to_json(big) == [29, -1]
    assert word_from_json(word_to_json(big), 30) == big


def test_permutation_and_components():
    assert closure_components(torus_braid(3, 4)) == 1
    assert closure_components(torus_braid(3, 3)) == 3
    assert closure_components(torus_braid(2, 4)) == 2
    assert permutation(full_twist(5)) == tuple(range(5))
    assert exponent_sum(full_twist(4, 2)) == 2 * 4 * 3


def test_free_reduction():
    w = BraidWord(3, (1, 2, -2, -1, 1))
    assert free_reduce(w).letters == (1,)
    assert cyclic_free_reduce(BraidWord(3, (-1, 2, 1))).letters == (2,)


def test_bracket_forms():
    b = parse_bracket("[3, 5, 4]")
    assert b == BracketForm((3, 5, 4))
    assert bracket_to_word(b).letters == (1,) * 3 + (2,) + (1,) * 5 + (2,) + (1,) * 4 + (2,)
    with pytest.raises(BraidError):
        parse_bracket("[0, 2]")
    with pytest.raises(BraidError):
        parse_bracket("3,4")


def test_flip_and_shift():
    w = BraidWord(4, (1, -2, 3))
    assert w.flipped().letters == (3, -2, 1)
    assert w.shifted(2).letters == (3, -4, 5)
    assert w.shifted(2).strands == 6


@given(words())
def test_text_roundtrip(w):
    assert parse_word(word_to_text(w), w.strands) == w
    assert word_from_json(word_to_json(w), w.strands) == w


@given(words())
def test_inverse_and_rotation(w):
    assert free_reduce(w * w.inverse()).letters == ()
    assert exponent_sum(w.inverse()) == -exponent_sum(w)
    assert closure_components(w.rotate(3)) == closure_components(w)
    assert closure_components(w.mirror()) == closure_components(w)
