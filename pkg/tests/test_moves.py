import json
import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twistlab.braid import BraidWord, closure_components, exponent_sum, parse_word, torus_braid
from twistlab.moves import (
    CATALOG, KINDS, NO, YES, Move, MoveError, MoveScript, ScriptError, TemplateError,
    TemplateTwist, apply_move, is_unknot, register_template, verify_script,
)
from twistlab.seifert import OnJumpError, alexander_of_word, lt_signature, seifert_matrix
from test_braid import words


def w3(s):
    return parse_word(s, 3)


def test_kinds():
    assert set(KINDS) == {"BraidRelation", "Commutation", "FreeInsertReduce", "CyclicRotate", "Conjugate",
                          "Stabilize", "Destabilize", "CrossingChange", "Template"}
    with pytest.raises(ScriptError):
        Move("Flip")


def test_each_isotopy_move():
    w = w3("abaab")
    assert apply_move(w, Move("BraidRelation", 0, {"length": 3, "replacement": "bab"})) == (w3("babab"), 0)
    with pytest.raises(MoveError):
        apply_move(w, Move("BraidRelation", 0, {"length": 3, "replacement": "bba"}))
    w4 = parse_word("acb", 4)
    assert apply_move(w4, Move("Commutation", 0))[0] == parse_word("cab", 4)
    with pytest.raises(MoveError):
        apply_move(w4, Move("Commutation", 1))
    assert apply_move(w, Move("FreeInsertReduce", 1, {"insert": "bB"}))[0] == w3("abBbaab")
    assert apply_move(w3("abBa"), Move("FreeInsertReduce", 1))[0] == w3("aa")
    assert apply_move(w3("aAbBa"), Move("FreeInsertReduce", 0, {"length": 4}))[0] == w3("a")
    with pytest.raises(MoveError):
        apply_move(w, Move("FreeInsertReduce", 0, {"insert": "ab"}))
    assert apply_move(w, Move("CyclicRotate", 2))[0] == w3("aabab")
    assert apply_move(w, Move("Conjugate", 0, {"by": "b"}))[0] == w3("Babaabb")
    s, c = apply_move(w, Move("Stabilize", 0, {"sign": -1}))
    assert s == parse_word("abaabC", 4) and c == 0
    d, c = apply_move(parse_word("abCa", 4), Move("Destabilize", 2))
    assert d == w3("aab") and c == 0
    with pytest.raises(MoveError):
        apply_move(parse_word("cabc", 4), Move("Destabilize", 0))


def test_crossing_change_costs_one():
    out, cost = apply_move(w3("aaa"), Move("CrossingChange", 1))
    assert out == w3("aAa") and cost == 1


def test_summand_conjugation():
    # a^3 . c^3 on 4 strands: b occurs once, so the two segments are connected summands
    w = parse_word("aaabccc", 4)
    out, cost = apply_move(w, Move("Conjugate", 4, {"by": "c", "length": 3}))
    assert out == parse_word("aaabCcccc", 4) and cost == 0
    with pytest.raises(MoveError):
        apply_move(parse_word("aaabcccb", 4), Move("Conjugate", 4, {"by": "c", "length": 3}))


def test_template_application():
    w = w3("ab" * 6 + "a")
    out, cost = apply_move(w, Move("Template", 0, {"id": "T2a"}))
    assert out == w3("bbbbbba") and cost == 2
    back, cost = apply_move(out, Move("Template", 0, {"id": "T2a", "direction": "reverse"}))
    assert back == w and cost == 2
    with pytest.raises(MoveError):
        apply_move(w, Move("Template", 1, {"id": "T2a"}))
    with pytest.raises(MoveError):
        apply_move(w, Move("Template", 0, {"id": "nope"}))
    shifted = BraidWord(5, tuple(x + 2 for x in w3("ab" * 6).letters))
    assert apply_move(shifted, Move("Template", 0, {"id": "T2b", "shift": 2}))[0] == BraidWord(5, (3,) * 6)


def test_catalog_contents():
    for tid in ["T1", "T2a", "T2b", "T3a", "T3b", "T4"] + [f"T5_{n}" for n in range(2, 13)]:
        t = CATALOG[tid]
        assert t.cost >= 1
        assert closure_components(t.lhs) == closure_components(t.rhs) or t.lhs.strands == t.rhs.strands
    assert CATALOG["T2a"].macro and CATALOG["T2b"].macro
    assert CATALOG["T1"].exp_delta == -6
    assert CATALOG["T5_3"].exp_delta == 2 * 3 * 2 * 2 - 6 * 5  # two double twists on 3 vs one on 6


def test_register_template_validation():
    cat = {}
    register_template(CATALOG["T1"], cat)
    with pytest.raises(TemplateError):
        register_template(CATALOG["T1"], cat)
    with pytest.raises(TemplateError):
        register_template(TemplateTwist("bad-perm", 3, w3("a"), w3("b"), 1, "x"), cat)
    with pytest.raises(TemplateError):
        register_template(TemplateTwist("no-cite", 3, w3("aa"), w3("bb"), 1, ""), cat)
    with pytest.raises(TemplateError):
        register_template(TemplateTwist("free", 3, w3("aa"), w3("bb"), 0, "x"), cat)
    d = CATALOG["T2a"].derivation
    with pytest.raises(TemplateError, match="costs 2, declared 1"):
        register_template(replace(CATALOG["T2a"], id="T2a-cheap", cost=1), cat)
    with pytest.raises(TemplateError):
        register_template(replace(CATALOG["T2a"], id="T2a-nod", derivation=None), cat)
    register_template(replace(CATALOG["T2a"], id="T2a-copy"), cat)
    assert d.start == CATALOG["T2a"].lhs


def trefoil_script(bound=None):
    return MoveScript(2, parse_word("aaa", 2), (Move("CrossingChange", 0),), "unknot", bound, "trefoil")


def test_verify_trefoil():
    cert = verify_script(trefoil_script(1))
    assert cert.verified and cert.total_cost == 1 and cert.unknot == YES
    assert [e["cost"] for e in cert.log] == [1]
    bad = verify_script(trefoil_script(0))
    assert not bad.verified and "exceeds" in bad.failure["error"]


def test_verify_reports_failing_step():
    s = MoveScript(3, w3("ab"), (Move("CyclicRotate", 1), Move("Commutation", 0)), "unknot")
    cert = verify_script(s)
    assert not cert.verified and cert.failure["step"] == 1 and cert.failure["kind"] == "Commutation"


def test_verify_word_target():
    s = MoveScript(3, w3("abab"), (Move("BraidRelation", 0, {"length": 3, "replacement": "bab"}),), w3("babb"))
    assert verify_script(s).verified
    s2 = replace(s, target=w3("aaaa"))
    assert not verify_script(s2).verified


def test_verify_is_deterministic():
    from twistlab.fixtures import load_fixture
    s = load_fixture("t3_10")
    a, b = verify_script(s), verify_script(s)
    assert a.dumps() == b.dumps()
    assert a.verified and a.total_cost == 7


def test_component_change_rejected():
    s = MoveScript(3, w3("ab"), (Move("Stabilize", 0, {"sign": 1}), Move("Destabilize", 0)), "unknot")
    cert = verify_script(s)
    assert not cert.verified


def test_script_json_roundtrip_and_errors():
    s = trefoil_script(3)
    assert MoveScript.loads(s.dumps()) == s
    assert json.loads(s.dumps())["claim"] == {"target": "unknot", "cost_bound": 3}
    for bad in ["{", "[]", '{"start": "a"}', '{"strands": 2, "start": "a", "moves": [{"position": 0}]}',
                '{"strands": 2, "start": "b", "moves": []}']:
        with pytest.raises(ScriptError):
            MoveScript.loads(bad)


def test_is_unknot():
    assert is_unknot(BraidWord(1)) == YES
    assert is_unknot(w3("Abaa")) == YES
    assert is_unknot(w3("bbAaaB")) == YES
    assert is_unknot(parse_word("abcd", 5)) == YES
    assert is_unknot(parse_word("ABabcba", 4)) == YES
    assert is_unknot(parse_word("abaBABab", 3)) == YES
    assert is_unknot(torus_braid(2, 3)) == NO
    assert is_unknot(torus_braid(2, 2)) == NO
    assert is_unknot(parse_word("aBaB", 3)) == NO


def _cost0_moves(rng, w):
    n = w.strands
    g = rng.randint(1, n - 1)
    x = rng.choice([g, -g])
    return rng.choice([
        Move("CyclicRotate", rng.randint(0, 5)),
        Move("Conjugate", 0, {"by": [x]}),
        Move("FreeInsertReduce", rng.randint(0, len(w)), {"insert": [x, -x]}),
        Move("Stabilize", 0, {"sign": rng.choice([1, -1])}),
    ])


@given(words(max_strands=4, max_len=8).filter(lambda w: len(w) > 0 and closure_components(w) == 1),
       st.integers(0, 10 ** 6))
def test_cost0_moves_preserve_invariants(w, seed):
    rng = random.Random(seed)
    delta = alexander_of_word(w)
    v0 = seifert_matrix(w)
    u = w
    for _ in range(3):
        u, cost = apply_move(u, _cost0_moves(rng, u))
        assert cost == 0
    assert closure_components(u) == 1
    assert alexander_of_word(u) == delta
    for s in (Fraction(1, 3), Fraction(2, 7), Fraction(1, 2)):
        try:
            expect = lt_signature(v0, s).sigma
        except OnJumpError:
            continue
        assert lt_signature(seifert_matrix(u), s).sigma == expect


@given(words(max_strands=4, max_len=10))
def test_crossing_change_changes_exponent_by_two(w):
    if not w.letters:
        return
    out, cost = apply_move(w, Move("CrossingChange", 0))
    assert cost == 1
    assert exponent_sum(out) - exponent_sum(w) in (2, -2)
