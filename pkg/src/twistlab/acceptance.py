"""
The acceptance criteria as plain functions, shared by the test-suite and `twistlab selftest`.

Each criterion returns a CriterionResult; nothing here raises on a failed check.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .braid import BraidWord, bracket_to_word, closure_components, torus_braid
from .families import (
    LIMIT_RATIO,
    asymptotic_table,
    doubling_script,
    lemma1_bracket,
    t4_script,
    t6_script,
)
from .fixtures import load_fixture
from .garside import equal_closures_upto_conjugacy, normal_form
from .moves import YES, apply_move, Move, verify_script
from .seifert import alexander_of_word, is_alexander_root, lt_signature, seifert_matrix, sigma_hat
from .torus import (
    first_jump_at_or_after,
    is_jump,
    sigma_hat_torus,
    sigma_torus,
    torus,
    torus_jumps,
    lt_signature_torus,
)

SEED = 20240229


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"; first failure: {self.failures[0]}" if self.failures else ""
        notes = f"; findings: {len(self.findings)}" if self.findings else ""
        return f"[{status}] criterion {self.number}: {self.title} ({self.checked} checks{extra}{notes})"


def _result(number: int, title: str, checked: int, failures: list[str], findings=None) -> CriterionResult:
    return CriterionResult(number, title, not failures, checked, failures, list(findings or []))


def criterion_1() -> CriterionResult:
    fails, n_checked = [], 0
    for n in range(4, 201):
        if n % 3 == 0:
            continue
        n_checked += 1
        got = sigma_hat_torus(torus(3, n))
        want = 2 * math.ceil(Fraction(2 * n, 3))
        if got != want:
            fails.append(f"sigma_hat(T(3,{n})) = {got}, expected {want}")
    return _result(1, "sigma_hat(T(3,n)) = 2*ceil(2n/3) for 4 <= n <= 200", n_checked, fails)


def criterion_2() -> CriterionResult:
    fails, n = [], 0
    for q, want in ((4, 6), (5, 8)):
        n += 1
        got = sigma_torus(torus(3, q))
        if got != want:
            fails.append(f"sigma(T(3,{q})) = {got}, expected {want}")
    for l in range(11):
        for q, num in ((6 * l + 7, 9 * l + 11), (6 * l + 8, 9 * l + 13)):
            n += 1
            x = Fraction(num, 3 * q)
            jp = first_jump_at_or_after(torus(3, q), Fraction(1, 2))
            if jp.x != x or jp.delta != 2:
                fails.append(f"T(3,{q}): first jump >= 1/2 at {jp.x} (delta {jp.delta}), expected {x} (+2)")
    return _result(2, "sigma(T(3,4)) = 6, sigma(T(3,5)) = 8, first jumps past 1/2 for l <= 10", n, fails)


def _random_non_jump(rng: random.Random, p: int, q: int) -> Fraction:
    while True:
        s = Fraction(rng.randrange(1, 10 ** 6), 10 ** 6)
        if not is_jump(torus(p, q), s):
            return s


def criterion_3(seed: int = SEED) -> CriterionResult:
    rng = random.Random(seed)
    fails, n = [], 0
    for p in range(2, 41):
        for q in range(p + 1, 41):
            if p * q > 40 or math.gcd(p, q) != 1:
                continue
            v = seifert_matrix(torus_braid(p, q))
            for _ in range(5):
                s = _random_non_jump(rng, p, q)
                n += 1
                seif = lt_signature(v, s, paper_sign=True).sigma
                jump = lt_signature_torus(torus(p, q), s)
                if seif != jump:
                    fails.append(f"T({p},{q}) at s={s}: Seifert {seif}, jump formula {jump}")
    return _result(3, "Seifert-matrix LT signature = jump formula on torus braids, pq <= 40", n, fails)


def criterion_4() -> CriterionResult:
    fails, n = [], 0
    for k in range(9):
        for variant in (9, 12):
            n += 1
            w = bracket_to_word(lemma1_bracket(k, variant))
            cmp = equal_closures_upto_conjugacy(w, torus_braid(3, 6 * k + variant))
            if cmp.status != "equal":
                fails.append(f"k={k}, variant {variant}: {cmp.status} {cmp.detail}")
    return _result(4, "bracket presentations close to (ab)^(6k+9), (ab)^(6k+12), k <= 8", n, fails)


def _torus_start(cert, p: int) -> int:
    start = cert.start
    q, r = divmod(len(start), p - 1)
    if r or start != torus_braid(p, q):
        raise ValueError("certificate does not start at a standard torus braid")
    return q


def criterion_5() -> CriterionResult:
    fails, n = [], 0
    cases = [("t3_7", 5), ("t3_10", 7), ("t3_13", 9)]
    cases += [(f"t3_6k16_k{k}", 4 * k + 11) for k in range(9)]
    cases += [(f"t3_6k19_k{k}", 4 * k + 13) for k in range(9)]
    for name, cost in cases:
        n += 1
        cert = verify_script(load_fixture(name))
        if not cert.verified:
            fails.append(f"{name}: not verified ({cert.failure})")
            continue
        if cert.total_cost != cost:
            fails.append(f"{name}: cost {cert.total_cost}, expected {cost}")
        if cert.unknot != YES:
            fails.append(f"{name}: end word not certified unknotted")
        m = _torus_start(cert, 3)
        if sigma_hat_torus(torus(3, m)) != 2 * cert.total_cost:
            fails.append(f"{name}: sigma_hat/2 = {sigma_hat_torus(torus(3, m)) // 2} != cost {cert.total_cost}")
    return _result(5, "3-strand family scripts verify at exact cost = sigma_hat/2", n, fails)


def criterion_6() -> CriterionResult:
    fails, findings, n = [], [], 0
    for q in range(5, 50, 2):
        n += 1
        cert = verify_script(t4_script(q))
        eps = ((q + 5) % 12) - 5
        if not cert.verified:
            fails.append(f"T(4,{q}): not verified ({cert.failure})")
        elif eps in (1, 3) and cert.total_cost != q:
            fails.append(f"T(4,{q}): cost {cert.total_cost}, expected {q}")
        elif cert.total_cost > q + 1:
            fails.append(f"T(4,{q}): cost {cert.total_cost} > {q + 1}")
        sh = sigma_hat_torus(torus(4, q))
        if sh < 2 * q:
            fails.append(f"sigma_hat(T(4,{q})) = {sh} < {2 * q}")
        elif sh != 2 * q:
            findings.append(f"sigma_hat(T(4,{q})) = {sh} exceeds 2n")
    for q in (5, 7, 11, 13, 17, 19, 23, 25):
        n += 1
        cert = verify_script(t6_script(q))
        if not cert.verified:
            fails.append(f"T(6,{q}): not verified ({cert.failure})")
        elif 2 * cert.total_cost > 3 * q + 3:
            fails.append(f"T(6,{q}): cost {cert.total_cost} > (3n+3)/2")
        sh = sigma_hat_torus(torus(6, q))
        if sh < 3 * q + 1:
            fails.append(f"sigma_hat(T(6,{q})) = {sh} < {3 * q + 1}")
        elif sh != 3 * q + 1:
            findings.append(f"sigma_hat(T(6,{q})) = {sh} exceeds 3n+1")
    return _result(6, "T(4,n) and T(6,n) scripts within n+1 and (3n+3)/2", n, fails, findings)


def criterion_7() -> CriterionResult:
    fails, n = [], 0
    rows = asymptotic_table(12)
    for r in rows:
        n += 1
        if 3 * r.doubling_twists != 4 ** r.k - 1:
            fails.append(f"k={r.k}: doubling twists {r.doubling_twists}")
        if not r.ratio > LIMIT_RATIO:
            fails.append(f"k={r.k}: ratio {r.ratio} <= 14/27")
    if not rows[9].ratio - LIMIT_RATIO < Fraction(1, 100):
        fails.append(f"ratio(10) - 14/27 = {float(rows[9].ratio - LIMIT_RATIO)}")
    if [r.doubling_twists for r in rows[:3]] != [1, 5, 21]:
        fails.append("k = 1, 2, 3 twist counts differ from 1, 5, 21")
    for k in (1, 2):
        n += 1
        cert = verify_script(doubling_script(k))
        if not cert.verified or cert.total_cost != rows[k - 1].total_bound:
            fails.append(f"doubling script k={k}: verified={cert.verified}, cost {cert.total_cost}")
    return _result(7, "doubling recursion (4^k-1)/3 and ratios above and near 14/27", n, fails)


# -- criterion 8: randomized property suites -----------------------------------------------


def _random_word(rng: random.Random, strands: int, length: int) -> BraidWord:
    return BraidWord(strands, tuple(rng.choice((1, -1)) * rng.randrange(1, strands) for _ in range(length)))


def _random_rewrite(rng: random.Random, w: BraidWord) -> BraidWord:
    """One group-preserving rewrite: insert/delete x x^-1, commute, or apply a braid relation."""
    L = list(w.letters)
    n = w.strands
    for _ in range(20):
        kind = rng.randrange(4)
        i = rng.randrange(len(L) + 1)
        if kind == 0:
            x = rng.choice((1, -1)) * rng.randrange(1, n)
            return BraidWord(n, tuple(L[:i] + [x, -x] + L[i:]))
        if i + 1 >= len(L) + 1 or i + 1 > len(L) - 1:
            continue
        x, y = L[i], L[i + 1]
        if kind == 1 and x == -y:
            return BraidWord(n, tuple(L[:i] + L[i + 2:]))
        if kind == 2 and abs(abs(x) - abs(y)) >= 2:
            return BraidWord(n, tuple(L[:i] + [y, x] + L[i + 2:]))
        if kind == 3 and i + 2 < len(L):
            z = L[i + 2]
            if x == z and abs(abs(x) - abs(y)) == 1 and (x > 0) == (y > 0):
                return BraidWord(n, tuple(L[:i] + [y, x, y] + L[i + 3:]))
    return w


def _random_knot(rng: random.Random) -> BraidWord:
    while True:
        n = rng.choice((2, 3, 4))
        w = _random_word(rng, n, rng.randrange(3, 13))
        if closure_components(w) == 1 and {abs(x) for x in w.letters} == set(range(1, n)):
            return w


def _random_cost0(rng: random.Random, w: BraidWord) -> BraidWord:
    n = w.strands
    kind = rng.randrange(4)
    if kind == 0:
        return apply_move(w, Move("CyclicRotate", rng.randrange(len(w))))[0]
    if kind == 1:
        c = _random_word(rng, n, rng.randrange(1, 4))
        return apply_move(w, Move("Conjugate", 0, {"by": list(c.letters)}))[0] if n > 2 else w
    if kind == 2:
        return apply_move(w, Move("Stabilize", 0, {"sign": rng.choice((1, -1))}))[0]
    return _random_rewrite(rng, w)


def _sample_points(rng: random.Random, delta, count: int) -> list[Fraction]:
    out = []
    while len(out) < count:
        s = Fraction(rng.randrange(1, 1000), 1000)
        if not is_alexander_root(delta, s):
            out.append(s)
    return out


def criterion_8(seed: int = SEED) -> CriterionResult:
    rng = random.Random(seed)
    fails, n = [], 0
    # (a) normal form invariance under 10^4 rewrites
    w = _random_word(rng, 4, 10)
    nf = normal_form(w)
    for step in range(10_000):
        if step % 100 == 0:
            w = _random_word(rng, rng.choice((3, 4, 5)), rng.randrange(4, 14))
            nf = normal_form(w)
        w = _random_rewrite(rng, w)
        n += 1
        if len(w) > 40:
            w = BraidWord(w.strands, w.letters[:0])
            nf = normal_form(w)
        if normal_form(w) != nf:
            fails.append(f"normal form changed under a rewrite at step {step}: {w}")
            break
    # (b) cost-0 moves keep Delta and sigma_omega samples; sigma_hat is even and >= 0
    for _ in range(200):
        w = _random_knot(rng)
        v = _random_cost0(rng, w)
        n += 1
        d1, d2 = alexander_of_word(w), alexander_of_word(v)
        if d1 != d2:
            fails.append(f"Delta differs: {w} -> {v}")
            continue
        m1, m2 = seifert_matrix(w), seifert_matrix(v)
        for s in _sample_points(rng, d1, 2):
            if lt_signature(m1, s).sigma != lt_signature(m2, s).sigma:
                fails.append(f"sigma at {s} differs: {w} -> {v}")
        sh = sigma_hat(w)
        if sh < 0 or sh % 2:
            fails.append(f"sigma_hat({w}) = {sh}")
    # (c) jump count (p-1)(q-1), pq <= 144
    for p in range(2, 145):
        for q in range(p + 1, 145):
            if p * q > 144 or math.gcd(p, q) != 1:
                continue
            n += 1
            if len(torus_jumps(torus(p, q)).jumps) != (p - 1) * (q - 1):
                fails.append(f"T({p},{q}) jump count")
    return _result(8, "seeded property suites (normal form, cost-0 invariance, sigma_hat parity, jump counts)", n, fails)


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8)


def run_all(echo=print) -> list[CriterionResult]:
    results = []
    for crit in CRITERIA:
        r = crit()
        echo(r.line())
        for f in r.findings:
            echo(f"    finding: {f}")
        results.append(r)
    return results
