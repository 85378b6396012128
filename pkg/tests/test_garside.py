"""Normal forms against Artin's free-group action, which decides braid equality independently."""

import random

import pytest
from hypothesis import given

from oracles import artin_action
from twistlab.braid import BraidWord, full_twist, parse_word, torus_braid
from twistlab.garside import (
    DISTINCT, EQUAL, delta, equal_closures_upto_conjugacy, equal_in_group, find_conjugator, is_trivial,
    left_weight, normal_form, simple_to_letters,
)
from test_braid import words


def same_by_artin(u, v):
    return artin_action(u.strands, u.letters) == artin_action(v.strands, v.letters)


def test_relations():
    assert equal_in_group(parse_word("aba", 3), parse_word("bab", 3))
    assert equal_in_group(parse_word("ac", 4), parse_word("ca", 4))
    assert not equal_in_group(parse_word("ab", 3), parse_word("ba", 3))
    assert is_trivial(parse_word("abaBAB", 3))
    assert not is_trivial(parse_word("abAB", 3))


def test_delta_is_half_twist():
    for n in range(2, 7):
        d = BraidWord(n, simple_to_letters(delta(n)))
        assert equal_in_group(d * d, full_twist(n))
        nf = normal_form(full_twist(n, 3))
        assert nf.infimum == 6 and nf.factors == ()


def test_nf_of_torus_braid():
    nf = normal_form(torus_braid(3, 7))
    assert nf.infimum == 4 and len(nf.factors) == 1
    assert equal_in_group(nf.to_word(), torus_braid(3, 7))


def test_left_weighted_pairs():
    nf = normal_form(parse_word("abcbaCbaBcab", 4))
    for a, b in zip(nf.factors, nf.factors[1:]):
        assert left_weight(a, b) == (a, b)


@given(words(max_strands=5, max_len=10), words(max_strands=5, max_len=10))
def test_equality_matches_artin(u, v):
    if u.strands != v.strands:
        v = BraidWord(u.strands, tuple(x for x in v.letters if abs(x) < u.strands))
    assert equal_in_group(u, v) == same_by_artin(u, v)


@given(words(max_strands=5, max_len=12))
def test_nf_word_represents_input(w):
    nf = normal_form(w)
    assert same_by_artin(nf.to_word(), w)
    assert normal_form(nf.to_word()) == nf
    assert is_trivial(w * w.inverse())


def test_random_near_equal_pairs_against_artin():
    rng = random.Random(7)
    agree = equal_count = 0
    for _ in range(300):
        n = rng.randint(3, 5)
        u = BraidWord(n, tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 8))))
        # v is u with one local rewrite that may or may not be a relation
        letters = list(u.letters)
        i = rng.randint(1, n - 2) if n > 2 else 1
        pos = rng.randint(0, len(letters))
        letters[pos:pos] = rng.choice([[i, i + 1, i, -(i + 1), -i, -(i + 1)], [i, i + 1, -i, -(i + 1)], [i, -i]])
        v = BraidWord(n, tuple(letters))
        e = equal_in_group(u, v)
        equal_count += e
        agree += e == same_by_artin(u, v)
    assert agree == 300
    assert 0 < equal_count < 300


def test_conjugacy_search():
    w = torus_braid(3, 5)
    c = parse_word("aB", 3)
    conj = c.inverse() * w * c
    res = equal_closures_upto_conjugacy(w, conj)
    assert res.status == EQUAL
    assert res.conjugator is not None
    k = res.conjugator
    assert equal_in_group(k.inverse() * w * k, conj)
    assert find_conjugator(w, conj) is not None
    assert equal_closures_upto_conjugacy(w, torus_braid(3, 4)).status == DISTINCT


@pytest.mark.parametrize("n", [3, 4])
def test_full_twist_central(n):
    ft = full_twist(n)
    for i in range(1, n):
        g = BraidWord(n, (i,))
        assert equal_in_group(ft * g, g * ft)
