from fractions import Fraction

import pytest

from twistlab.braid import BracketForm, bracket_to_word, torus_braid
from twistlab.families import (
    FAMILIES, LIMIT_RATIO, FamilyError, asymptotic_table, bridge_change_script, doubling_script, doubling_twists,
    family_script, fulltwist_insert, lemma1_bracket, lemma4_script, t3_cost, t3_script, t4_script, t6_script,
)
from twistlab.fixtures import FIXTURES, fixture_path, load_fixture, regenerate
from twistlab.garside import equal_closures_upto_conjugacy
from twistlab.moves import YES, verify_script
from twistlab.seifert import sigma_hat
from twistlab.torus import sigma_hat_torus, torus


def check(script, cost=None, bound=None):
    cert = verify_script(script)
    assert cert.verified, cert.failure
    assert cert.unknot == YES
    if cost is not None:
        assert cert.total_cost == cost
    if bound is not None:
        assert cert.total_cost <= bound
    return cert


def test_lemma1_brackets():
    for k in range(4):
        for variant in (9, 12):
            w = bracket_to_word(lemma1_bracket(k, variant))
            assert equal_closures_upto_conjugacy(w, torus_braid(3, 6 * k + variant))
    with pytest.raises(FamilyError):
        lemma1_bracket(0, 10)


def test_fulltwist_insert():
    b = BracketForm((3, 4))
    out = fulltwist_insert(b, 0)
    assert out.exponents == (4, 3, 5)
    assert equal_closures_upto_conjugacy(bracket_to_word(out), torus_braid(3, 3) * bracket_to_word(b))


def test_t3_cost_formula():
    assert [t3_cost(m) for m in (1, 2, 4, 5, 7, 10, 13)] == [0, 1, 3, 4, 5, 7, 9]


@pytest.mark.parametrize("family,cost", [("T3_4", 3), ("T3_7", 5), ("T3_10", 7), ("T3_13", 9)])
def test_sporadic_cases(family, cost):
    s = lemma4_script(0, family)
    check(s, cost)
    assert sigma_hat(s.start) == 2 * cost  # tight against the signature lower bound


@pytest.mark.parametrize("k", range(4))
def test_lemma4_families(k):
    check(lemma4_script(k, "T3_6k16"), 4 * k + 11)
    check(lemma4_script(k, "T3_6k19"), 4 * k + 13)


@pytest.mark.parametrize("m", [2, 4, 5, 8, 11, 14, 20, 23, 25])
def test_general_3_strand(m):
    check(t3_script(m), t3_cost(m))
    assert 2 * t3_cost(m) == sigma_hat_torus(torus(3, m))


@pytest.mark.parametrize("k,cost", [(0, 4), (1, 6), (2, 8)])
def test_bridge_change(k, cost):
    check(bridge_change_script(k), cost)


@pytest.mark.parametrize("n", [5, 7, 9, 11, 13, 15, 17, 19])
def test_t4(n):
    eps = ((n + 5) % 12) - 5
    cert = check(t4_script(n), bound=n + 1)
    if eps in (1, 3):
        assert cert.total_cost == n
    assert sigma_hat_torus(torus(4, n)) == 2 * n


@pytest.mark.parametrize("n", [5, 7, 11, 13])
def test_t6(n):
    check(t6_script(n), bound=(3 * n + 3) // 2)


def test_t6_rejects_bad_n():
    with pytest.raises(FamilyError):
        t6_script(6)


@pytest.mark.parametrize("k,cost", [(1, 11), (2, 41)])
def test_doubling(k, cost):
    cert = check(doubling_script(k), cost)
    assert cert.total_cost == asymptotic_table(k)[-1].total_bound


def test_asymptotics():
    rows = asymptotic_table(12)
    for r in rows:
        assert r.doubling_twists == (4 ** r.k - 1) // 3 == doubling_twists(r.k)
        assert r.ratio > LIMIT_RATIO
        assert r.strands == 3 * 2 ** r.k
    assert [r.doubling_twists for r in rows[:3]] == [1, 5, 21]
    assert rows[9].ratio - LIMIT_RATIO < Fraction(1, 100)
    ratios = [r.ratio for r in rows]
    assert ratios == sorted(ratios, reverse=True)


def test_family_dispatch():
    assert family_script("T3_7").name
    assert family_script("T4", n=5).start == torus_braid(4, 5)
    with pytest.raises(FamilyError):
        family_script("T3_6k16")
    with pytest.raises(FamilyError):
        family_script("nope")
    assert "Doubling" in FAMILIES


def test_fixtures_match_generators(tmp_path):
    """Committed scripts are exactly what the generators produce (no drift)."""
    written = regenerate(tmp_path)
    assert len(written) == len(FIXTURES)
    for p in written:
        assert p.read_text() == fixture_path(p.stem).read_text(), p.stem


def test_fixtures_verify():
    for name in FIXTURES:
        s = load_fixture(name)
        cert = verify_script(s)
        assert cert.verified, (name, cert.failure)
        if s.cost_bound is not None:
            assert cert.total_cost <= s.cost_bound
