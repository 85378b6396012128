"""Seifert-matrix invariants against Burau and closed-form oracles."""

import random
from fractions import Fraction

import pytest
from hypothesis import given

from oracles import burau_alexander, laurent_to_poly, torus_alexander, torus_signature_count
from twistlab.braid import BraidWord, parse_word, torus_braid
from twistlab.exact import bareiss_det, cyclotomic, interpolate
from twistlab.seifert import (
    OnJumpError, alexander_of_word, alexander_poly, is_alexander_root, lt_signature, seifert_matrix,
    sigma_hat, signature_arcs, symmetrized_signature,
)
from test_braid import words


def knot_words(max_strands=4, max_len=10):
    from twistlab.braid import closure_components
    return words(max_strands, max_len).filter(lambda w: len(w) > 0 and closure_components(w) == 1)


def test_bareiss_and_interpolation():
    assert bareiss_det([[2, 1], [7, 4]]) == 1
    assert bareiss_det([[0, 1, 2], [3, 4, 5], [6, 7, 9]]) == -3
    assert bareiss_det([]) == 1
    assert tuple(interpolate([0, 1, 2], [1, 2, 5])) == (1, 0, 1)
    assert tuple(cyclotomic(6)) == (1, -1, 1)


def test_seifert_matrix_shape():
    v = seifert_matrix(torus_braid(3, 4))
    assert v.size == 6  # 2g with g = 3
    skew = [[v.entries[i][j] - v.entries[j][i] for j in range(6)] for i in range(6)]
    assert abs(bareiss_det(skew)) == 1  # V - V^T unimodular for a knot


@pytest.mark.parametrize("p,q", [(2, 3), (2, 7), (3, 4), (3, 5), (3, 7), (4, 5), (2, 9), (5, 6)])
def test_torus_alexander(p, q):
    assert laurent_to_poly(alexander_of_word(torus_braid(p, q))) == torus_alexander(p, q)


def test_figure_eight():
    w = parse_word("aBaB", 3)
    assert str(alexander_of_word(w)) == "t^-1 - 3 + t"
    assert sigma_hat(w) == 0
    assert symmetrized_signature(seifert_matrix(w)) == 0


@given(knot_words())
def test_alexander_matches_burau(w):
    assert laurent_to_poly(alexander_of_word(w)) == burau_alexander(w.strands, w.letters)


@given(knot_words())
def test_alexander_symmetric_and_normalised(w):
    d = alexander_of_word(w)
    assert d.coeffs == tuple(reversed(d.coeffs))
    assert d(1) in (1, -1)
    assert d.coeffs[-1] > 0
    assert d.low == -(len(d.coeffs) - 1) // 2


@given(knot_words(max_len=12))
def test_sigma_hat_even_nonnegative(w):
    h = sigma_hat(w)
    assert h >= 0 and h % 2 == 0
    assert sigma_hat(w.mirror()) == h


def test_sign_convention():
    v = seifert_matrix(torus_braid(2, 3))
    assert lt_signature(v, Fraction(1, 2)).sigma == -2
    assert lt_signature(v, Fraction(1, 2), paper_sign=True).sigma == 2


@pytest.mark.parametrize("p,q", [(2, 5), (3, 4), (3, 5), (2, 11), (4, 5), (3, 8)])
def test_lt_signature_matches_lattice_count(p, q):
    v = seifert_matrix(torus_braid(p, q))
    rng = random.Random(p * 100 + q)
    checked = 0
    while checked < 6:
        x = Fraction(rng.randint(1, 997), 998)
        try:
            expected = torus_signature_count(p, q, x)
        except ValueError:
            continue
        assert lt_signature(v, x, paper_sign=True).sigma == expected
        checked += 1


def test_on_jump_rejected():
    v = seifert_matrix(torus_braid(2, 3))
    assert is_alexander_root(alexander_poly(v), Fraction(1, 6))
    assert not is_alexander_root(alexander_poly(v), Fraction(1, 7))
    with pytest.raises(OnJumpError):
        lt_signature(v, Fraction(1, 6))
    with pytest.raises(ValueError):
        lt_signature(v, Fraction(0))


def test_signature_arcs_cover_half_circle():
    w = torus_braid(3, 5)
    arcs = signature_arcs(w)
    assert arcs[0].s_lo == 0.0 and arcs[-1].s_hi == 0.5
    for a, b in zip(arcs, arcs[1:]):
        assert a.s_hi == b.s_lo
    assert max(abs(a.sigma) for a in arcs) == sigma_hat(w) == 8


def test_unknot_invariants():
    w = BraidWord(3, (1, 2))
    assert alexander_of_word(w).coeffs == (1,)
    assert sigma_hat(w) == 0
