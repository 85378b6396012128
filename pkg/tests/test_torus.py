"""Torus-knot jump formula against the lattice-point count and the Seifert matrix."""

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from oracles import torus_signature_count
from twistlab.braid import torus_braid
from twistlab.seifert import sigma_hat
from twistlab.torus import (
    OnJumpPoint, decompose, first_jump_at_or_after, genus_torus, is_jump, lt_signature_torus, sigma_hat_torus,
    sigma_torus, theorem1_check, torus, torus_jumps,
)

coprime = st.tuples(st.integers(2, 12), st.integers(2, 30)).filter(lambda pq: math.gcd(*pq) == 1 and pq[0] != pq[1])


def test_params_normalised():
    t = torus(7, 3)
    assert (t.p, t.q) == (3, 7)
    with pytest.raises(ValueError):
        torus(4, 6)
    with pytest.raises(ValueError):
        torus(1, 5)


def test_small_signatures():
    # classical values, positive torus knots counted positive
    assert sigma_torus(torus(2, 3)) == 2
    assert sigma_torus(torus(3, 4)) == 6
    assert sigma_torus(torus(3, 5)) == 8
    assert sigma_torus(torus(2, 9)) == 8
    assert genus_torus(torus(3, 4)) == 3


@given(coprime)
def test_jump_count_and_symmetry(pq):
    t = torus(*pq)
    p, q = t.p, t.q
    prof = torus_jumps(t)
    assert len(prof.jumps) == (p - 1) * (q - 1)
    assert prof.cumulative[-1] == 0
    xs = [jp.x for jp in prof.jumps]
    assert xs == sorted(xs)
    assert sorted(1 - x for x in xs) == xs
    for jp in prof.jumps:
        assert jp.j == p * jp.a + q * jp.b and 0 < jp.a < q
        assert jp.delta == (2 if jp.b < 0 else -2)
        assert is_jump(torus(p, q), jp.x)


@given(coprime, st.integers(1, 10 ** 6))
def test_profile_matches_lattice_count(pq, num):
    p, q = pq
    x = Fraction(num, 10 ** 6 + 1)
    t = torus(p, q)
    assume(not is_jump(t, x))
    assert lt_signature_torus(t, x) == torus_signature_count(p, q, x)


@given(coprime)
def test_sigma_hat_nonnegative_even(pq):
    h = sigma_hat_torus(torus(*pq))
    assert h >= 0 and h % 2 == 0
    assert h >= sigma_torus(torus(*pq))
    assert h <= 2 * genus_torus(torus(*pq))


def test_on_jump_raises():
    t = torus(3, 4)
    with pytest.raises(OnJumpPoint):
        lt_signature_torus(t, Fraction(1, 12))


def test_decompose():
    for p, q in [(3, 7), (4, 9), (5, 12)]:
        for j in range(1, p * q):
            a, b = decompose(p, q, j)
            assert p * a + q * b == j and 0 <= a < q


def test_theorem1_small_range():
    for n in [4, 5, 7, 8, 10, 11, 13, 14, 16, 17, 19, 20]:
        rep = theorem1_check(n)
        assert rep.ok, rep.failures
        assert rep.sigma_hat == 2 * math.ceil(2 * n / 3)
        assert rep.seifert_sigma_hat == rep.sigma_hat


@pytest.mark.parametrize("p,q", [(3, 4), (3, 7), (4, 5), (2, 7), (5, 7), (3, 11)])
def test_sigma_hat_matches_seifert(p, q):
    assert sigma_hat(torus_braid(p, q)) == sigma_hat_torus(torus(p, q))


def test_minimal_jump_cases():
    for l in range(0, 11):
        n = 6 * l + 7
        jp = first_jump_at_or_after(torus(3, n), Fraction(1, 2))
        assert jp.x == Fraction(9 * l + 11, 3 * n) and jp.delta == 2
        n = 6 * l + 8
        jp = first_jump_at_or_after(torus(3, n), Fraction(1, 2))
        assert jp.x == Fraction(9 * l + 13, 3 * n) and jp.delta == 2


def test_lower_bounds_for_4_and_6_strands():
    for n in range(5, 50, 2):
        assert sigma_hat_torus(torus(4, n)) == 2 * n
    for n in [5, 7, 11, 13, 17, 19, 23, 25]:
        assert sigma_hat_torus(torus(6, n)) == 3 * n + 1
