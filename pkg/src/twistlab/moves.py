"""
Moves on closed braids and replayable untwisting certificates.

A script is a start word plus a list of moves.  Isotopy moves (relations,
free cancellation, rotation, conjugation, Markov moves) cost nothing; a
crossing change costs one twist; a template twist costs whatever its catalog
entry says.  Templates are the only axioms: each is a literal word
replacement justified by a citation, or a macro that the engine re-derives
from earlier templates when it is registered.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Mapping

from .braid import (
    BraidError,
    BraidWord,
    closure_components,
    cyclic_free_reduce,
    exponent_sum,
    free_reduce,
    full_twist,
    generator_word,
    parse_word,
    permutation,
    word_from_json,
    word_to_json,
)
from .garside import equal_in_group, normal_form

ISOTOPY_KINDS = (
    "BraidRelation",
    "FreeInsertReduce",
    "Commutation",
    "CyclicRotate",
    "Conjugate",
    "Stabilize",
    "Destabilize",
)
KINDS = ISOTOPY_KINDS + ("CrossingChange", "Template")

YES, NO, UNKNOWN = "yes", "no", "unknown"


class MoveError(ValueError):
    def __init__(self, message: str, expected: str | None = None, actual: str | None = None):
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class TemplateError(ValueError):
    pass


class ScriptError(ValueError):
    """Malformed script data."""


@dataclass(frozen=True)
class Move:
    kind: str
    position: int = 0
    params: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ScriptError(f"unknown move kind {self.kind!r}")

    def to_json(self) -> dict:
        out = {"kind": self.kind, "position": self.position}
        if self.params:
            out["params"] = dict(self.params)
        return out

    @classmethod
    def from_json(cls, obj) -> "Move":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ScriptError(f"bad move entry: {obj!r}")
        pos = obj.get("position", 0)
        if not isinstance(pos, int):
            raise ScriptError(f"move position must be an integer: {obj!r}")
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise ScriptError(f"move params must be an object: {obj!r}")
        return cls(obj["kind"], pos, params)


@dataclass(frozen=True)
class TemplateTwist:
    id: str
    strands: int
    lhs: BraidWord
    rhs: BraidWord
    cost: int
    citation: str
    macro: bool = False
    derivation: "MoveScript | None" = field(default=None, compare=False, repr=False)

    @property
    def exp_delta(self) -> int:
        """exponent_sum(rhs) - exponent_sum(lhs)."""
        return exponent_sum(self.rhs) - exponent_sum(self.lhs)


@dataclass(frozen=True)
class MoveScript:
    strands: int
    start: BraidWord
    moves: tuple[Move, ...]
    target: str | BraidWord = "unknot"
    cost_bound: int | None = None
    name: str = ""

    def to_json(self) -> dict:
        claim: dict = {"target": "unknot" if self.target == "unknot" else word_to_json(self.target)}
        if not isinstance(self.target, str):
            claim["strands"] = self.target.strands
        if self.cost_bound is not None:
            claim["cost_bound"] = self.cost_bound
        out = {}
        if self.name:
            out["name"] = self.name
        out.update(
            {
                "strands": self.strands,
                "start": word_to_json(self.start),
                "moves": [m.to_json() for m in self.moves],
                "claim": claim,
            }
        )
        return out

    def dumps(self) -> str:
        """JSON text with one move per line, so diffs of scripts stay readable."""
        obj = self.to_json()
        lines = []
        for key, val in obj.items():
            if key == "moves":
                body = ",\n".join("  " + json.dumps(m) for m in val)
                lines.append(f' "moves": [\n{body}\n ]' if val else ' "moves": []')
            else:
                lines.append(f" {json.dumps(key)}: {json.dumps(val)}")
        return "{\n" + ",\n".join(lines) + "\n}\n"

    @classmethod
    def from_json(cls, obj) -> "MoveScript":
        if not isinstance(obj, dict):
            raise ScriptError("script must be a JSON object")
        try:
            n = int(obj["strands"])
            start = word_from_json(obj["start"], n)
            moves = tuple(Move.from_json(m) for m in obj.get("moves", []))
            claim = obj.get("claim", {"target": "unknot"})
            tgt = claim.get("target", "unknot")
            target = "unknot" if tgt == "unknot" else word_from_json(tgt, int(claim.get("strands", n)))
            bound = claim.get("cost_bound")
            bound = None if bound is None else int(bound)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ScriptError):
                raise
            raise ScriptError(f"malformed script: {exc}") from exc
        return cls(n, start, moves, target, bound, obj.get("name", ""))

    @classmethod
    def loads(cls, text: str) -> "MoveScript":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScriptError(f"invalid JSON: {exc}") from exc
        return cls.from_json(obj)


@dataclass
class Certificate:
    start: BraidWord
    end: BraidWord
    total_cost: int
    verified: bool
    log: list[dict]
    claim: dict
    unknot: str | None = None
    failure: dict | None = None
    name: str = ""

    def to_json(self) -> dict:
        out = {}
        if self.name:
            out["name"] = self.name
        out.update(
            {
                "start": word_to_json(self.start),
                "start_strands": self.start.strands,
                "end": word_to_json(self.end),
                "end_strands": self.end.strands,
                "claim": self.claim,
                "total_cost": self.total_cost,
                "verified": self.verified,
                "unknot": self.unknot,
                "failure": self.failure,
                "log": self.log,
            }
        )
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"


# -- move application -------------------------------------------------------------


def _param_word(params: Mapping, key: str, strands: int) -> BraidWord:
    if key not in params:
        raise MoveError(f"missing parameter {key!r}")
    try:
        return word_from_json(params[key], strands)
    except BraidError as exc:
        raise MoveError(f"bad word in parameter {key!r}: {exc}") from exc


def _segment(w: BraidWord, pos: int, length: int) -> tuple[BraidWord, BraidWord]:
    """Split the cyclic word into (segment starting at pos, rest following it)."""
    n = len(w)
    if length < 0 or length > n:
        raise MoveError(f"segment length {length} out of range for a word of length {n}")
    if n == 0:
        return w, w
    r = w.rotate(pos)
    return BraidWord(w.strands, r.letters[:length]), BraidWord(w.strands, r.letters[length:])


def _splice(w: BraidWord, pos: int, length: int, repl: BraidWord) -> BraidWord:
    n = len(w)
    if n == 0:
        return repl
    pos %= n
    if pos + length <= n:
        return BraidWord(w.strands, w.letters[:pos] + repl.letters + w.letters[pos + length:])
    # wraps around: the result is a rotation, which closes up to the same link
    _, rest = _segment(w, pos, length)
    return BraidWord(w.strands, repl.letters + rest.letters)


def _check_pos(w: BraidWord, pos: int) -> int:
    if not w.letters:
        raise MoveError("move needs a nonempty word")
    return pos % len(w)


def apply_move(w: BraidWord, m: Move, catalog: Mapping[str, TemplateTwist] | None = None) -> tuple[BraidWord, int]:
    catalog = CATALOG if catalog is None else catalog
    k, pos, prm = m.kind, m.position, m.params
    n = w.strands

    if k == "BraidRelation":
        length = int(prm.get("length", len(w)))
        repl = _param_word(prm, "replacement", n)
        seg, _ = _segment(w, pos, length) if w.letters else (w, w)
        if not equal_in_group(seg, repl):
            raise MoveError("replacement is not equal in the braid group", str(seg), str(repl))
        return _splice(w, pos, length, repl), 0

    if k == "Commutation":
        pos = _check_pos(w, pos)
        if pos + 1 >= len(w):
            raise MoveError("commutation needs two letters starting at position")
        x, y = w.letters[pos], w.letters[pos + 1]
        if abs(abs(x) - abs(y)) < 2:
            raise MoveError(f"letters {x}, {y} do not commute")
        return _splice(w, pos, 2, BraidWord(n, (y, x))), 0

    if k == "FreeInsertReduce":
        if "insert" in prm:
            ins = _param_word(prm, "insert", n)
            if free_reduce(ins).letters:
                raise MoveError("inserted word is not freely trivial", "", str(ins))
            pos = pos % (len(w) + 1) if w.letters else 0
            return BraidWord(n, w.letters[:pos] + ins.letters + w.letters[pos:]), 0
        if "length" in prm:
            length = int(prm["length"])
            if pos < 0 or pos + length > len(w):
                raise MoveError("free reduction range out of bounds")
            seg = BraidWord(n, w.letters[pos:pos + length])
            return _splice(w, pos, length, free_reduce(seg)), 0
        pos = _check_pos(w, pos)
        if pos + 1 >= len(w) or w.letters[pos] != -w.letters[pos + 1]:
            raise MoveError("no inverse pair at position")
        return _splice(w, pos, 2, BraidWord(n)), 0

    if k == "CyclicRotate":
        return w.rotate(pos), 0

    if k == "Conjugate":
        c = _param_word(prm, "by", n)
        if "length" not in prm:
            return c.inverse() * w * c, 0
        return _conjugate_summand(w, pos, int(prm["length"]), c), 0

    if k == "Stabilize":
        sign = int(prm.get("sign", 1))
        if sign not in (1, -1):
            raise MoveError("stabilization sign must be +1 or -1")
        return BraidWord(n + 1, w.letters + (sign * n,)), 0

    if k == "Destabilize":
        pos = _check_pos(w, pos)
        top = n - 1
        if abs(w.letters[pos]) != top:
            raise MoveError(f"letter at {pos} is not sigma_{top}^(+-1)")
        if sum(1 for x in w.letters if abs(x) == top) != 1:
            raise MoveError(f"sigma_{top} occurs more than once")
        return BraidWord(n - 1, w.letters[pos + 1:] + w.letters[:pos]), 0

    if k == "CrossingChange":
        pos = _check_pos(w, pos)
        letters = list(w.letters)
        letters[pos] = -letters[pos]
        return BraidWord(n, tuple(letters)), 1

    if k == "Template":
        tid = prm.get("id")
        if tid not in catalog:
            raise MoveError(f"unknown template {tid!r}")
        t = catalog[tid]
        direction = prm.get("direction", "forward")
        if direction not in ("forward", "reverse"):
            raise MoveError(f"bad template direction {direction!r}")
        shift = int(prm.get("shift", 0))
        if shift < 0 or shift + t.strands > n:
            raise MoveError(f"template {tid} on {t.strands} strands does not fit at shift {shift} in B_{n}")
        src, dst = (t.lhs, t.rhs) if direction == "forward" else (t.rhs, t.lhs)
        src = src.shifted(shift, n)
        dst = dst.shifted(shift, n)
        seg, _ = _segment(w, pos, len(src))
        if seg.letters != src.letters:
            raise MoveError(f"template {tid} does not match at position {pos}", str(src), str(seg))
        out = _splice(w, pos, len(src), dst)
        delta = exponent_sum(out) - exponent_sum(w)
        if delta != (t.exp_delta if direction == "forward" else -t.exp_delta):
            raise MoveError(f"exponent-sum change {delta} disagrees with template {tid}")
        return out, t.cost

    raise MoveError(f"unhandled move kind {k}")


def _conjugate_summand(w: BraidWord, pos: int, length: int, c: BraidWord) -> BraidWord:
    """Conjugate the segment w[pos:pos+length] when its closure is a connected summand.

    The segment and c use generators in [lo, hi].  Every other letter must either commute
    with all of them or be sigma_{lo-1} / sigma_{hi+1} occurring exactly once in w.  Splitting
    at those unique letters exhibits the closure as K_low # closure(segment) # K_high, and
    conjugating the segment inside its own braid group does not change its closure.
    """
    if pos < 0 or length < 1 or pos + length > len(w):
        raise MoveError("summand segment out of range")
    seg = BraidWord(w.strands, w.letters[pos:pos + length])
    gens = {abs(x) for x in seg.letters} | {abs(x) for x in c.letters}
    lo, hi = min(gens), max(gens)
    if closure_components(w) != 1:
        raise MoveError("summand conjugation needs a knot")
    counts: dict[int, int] = {}
    for x in w.letters:
        counts[abs(x)] = counts.get(abs(x), 0) + 1
    outside = w.letters[:pos] + w.letters[pos + length:]
    for x in outside:
        g = abs(x)
        if lo - 1 <= g <= hi + 1 and not (g in (lo - 1, hi + 1) and counts[g] == 1):
            raise MoveError(f"segment is not a connected summand: sigma_{g} outside it interacts")
    return _splice(w, pos, length, c.inverse() * seg * c)


# -- replay -------------------------------------------------------------------------


def verify_script(s: MoveScript, catalog: Mapping[str, TemplateTwist] | None = None, unknot_depth: int = 8) -> Certificate:
    catalog = CATALOG if catalog is None else catalog
    w = s.start
    total = 0
    log: list[dict] = []
    claim = s.to_json()["claim"]
    failure = None
    for idx, m in enumerate(s.moves):
        before_components = closure_components(w)
        try:
            nw, cost = apply_move(w, m, catalog)
        except (MoveError, BraidError) as exc:
            failure = {"step": idx, "kind": m.kind, "position": m.position, "error": str(exc)}
            if isinstance(exc, MoveError):
                failure["expected"] = exc.expected
                failure["actual"] = exc.actual
            break
        if closure_components(nw) != before_components:
            failure = {"step": idx, "kind": m.kind, "position": m.position, "error": "component count changed"}
            break
        total += cost
        w = nw
        log.append({"step": idx, "kind": m.kind, "position": m.position, "cost": cost,
                    "total": total, "strands": w.strands, "word": word_to_json(w)})

    unknot = None
    verified = failure is None
    if verified:
        if s.target == "unknot":
            unknot = is_unknot(w, unknot_depth)
            if unknot != YES:
                verified = False
                failure = {"step": None, "error": f"end word is not certified as unknot ({unknot})"}
        else:
            tgt = s.target
            if tgt.strands != w.strands or not equal_in_group(w, tgt):
                from .garside import equal_closures_upto_conjugacy

                ok = tgt.strands == w.strands and bool(equal_closures_upto_conjugacy(w, tgt))
                if not ok:
                    verified = False
                    failure = {"step": None, "error": "end word does not match target",
                               "expected": str(tgt), "actual": str(w)}
    if verified and s.cost_bound is not None and total > s.cost_bound:
        verified = False
        failure = {"step": None, "error": f"total cost {total} exceeds bound {s.cost_bound}"}
    return Certificate(s.start, w, total, verified, log, claim, unknot, failure, s.name)


# -- template catalog -------------------------------------------------------------------


def register_template(t: TemplateTwist, catalog: dict[str, TemplateTwist] | None = None) -> TemplateTwist:
    catalog = CATALOG if catalog is None else catalog
    if t.id in catalog:
        raise TemplateError(f"template {t.id} already registered")
    if t.lhs.strands != t.strands or t.rhs.strands != t.strands:
        raise TemplateError(f"template {t.id}: sides must live in B_{t.strands}")
    if permutation(t.lhs) != permutation(t.rhs):
        raise TemplateError(f"template {t.id}: sides induce different permutations")
    if t.cost < 1:
        raise TemplateError(f"template {t.id}: cost must be positive")
    if t.macro:
        if t.derivation is None:
            raise TemplateError(f"macro template {t.id} needs a derivation")
        d = t.derivation
        if d.start != t.lhs:
            raise TemplateError(f"macro template {t.id}: derivation starts at {d.start}, not {t.lhs}")
        cert = verify_script(d, catalog)
        if not cert.verified:
            raise TemplateError(f"macro template {t.id}: derivation fails: {cert.failure}")
        if not equal_in_group(cert.end, t.rhs):
            raise TemplateError(f"macro template {t.id}: derivation ends at {cert.end}, not {t.rhs}")
        if cert.total_cost != t.cost:
            raise TemplateError(f"macro template {t.id}: derivation costs {cert.total_cost}, declared {t.cost}")
    elif not t.citation:
        raise TemplateError(f"primitive template {t.id} needs a citation")
    catalog[t.id] = t
    return t


def block_full_twist_pair(n: int) -> tuple[BraidWord, BraidWord]:
    """Full twist on 2n strands and the two parallel double full twists on n-strand blocks."""
    big = full_twist(2 * n, 1)
    low = full_twist(n, 2).shifted(0, 2 * n) if n >= 2 else BraidWord(2 * n)
    high = full_twist(n, 2).shifted(n, 2 * n) if n >= 2 else BraidWord(2 * n)
    return big, low * high


def _default_catalog() -> dict[str, TemplateTwist]:
    cat: dict[str, TemplateTwist] = {}
    b3 = lambda s: parse_word(s, 3)
    register_template(TemplateTwist(
        "T1", 3, b3("abbaabba"), b3("bb"), 2,
        "two-twist sequence: a twist on four strands, then a crossing change"), cat)

    # (ab)^6 = abbaabba.bbbb, then T1 on the first eight letters
    d2a = MoveScript(3, b3("ab" * 6), (
        Move("BraidRelation", 0, {"length": 12, "replacement": "abbaabbabbbb"}),
        Move("Template", 0, {"id": "T1"}),
    ), b3("bbbbbb"), 2, "T2a derivation")
    register_template(TemplateTwist(
        "T2a", 3, b3("ab" * 6), b3("b" * 6), 2,
        "double full twist to b^6 via T1", macro=True, derivation=d2a), cat)

    # (ab)^6 = Delta.abbaabba.b^4.Delta^-1 (conjugating by Delta swaps a and b)
    d2b = MoveScript(3, b3("ab" * 6), (
        Move("BraidRelation", 0, {"length": 12, "replacement": "abaabbaabbabbbbABA"}),
        Move("Template", 3, {"id": "T1"}),
        Move("BraidRelation", 0, {"length": 12, "replacement": "aaaaaa"}),
    ), b3("aaaaaa"), 2, "T2b derivation")
    register_template(TemplateTwist(
        "T2b", 3, b3("ab" * 6), b3("a" * 6), 2,
        "double full twist to a^6 via T1", macro=True, derivation=d2b), cat)

    b4 = lambda s: parse_word(s, 4)
    register_template(TemplateTwist(
        "T3a", 4, b4("abc" * 12), b4("bc" * 12), 4,
        "four-twist sequence: three full twists on four strands to four full twists on three"), cat)
    register_template(TemplateTwist(
        "T3b", 4, b4("abc" * 12), b4("ab" * 12), 4,
        "four-twist sequence, mirrored: (abc)^12 to (ab)^12"), cat)

    b6 = lambda s: parse_word(s, 6)
    register_template(TemplateTwist(
        "T4", 6, b6("abcde" * 6), b6("ab" * 6 + "de" * 6), 1,
        "full twist on six strands split into two double full twists on three"), cat)

    for n in range(2, 13):
        big, split = block_full_twist_pair(n)
        register_template(TemplateTwist(
            f"T5_{n}", 2 * n, big, split, 1,
            f"block untwisting: one twist turns a full twist on {2 * n} strands into double full twists on two blocks of {n}"), cat)
    return cat


CATALOG: dict[str, TemplateTwist] = {}
CATALOG.update(_default_catalog())


# -- unknot recognition -------------------------------------------------------------


def _commuting_cyclic_reduce(w: BraidWord) -> BraidWord:
    """Cancel x ... x^-1 whenever every letter in between commutes with x (cyclically)."""
    letters = list(cyclic_free_reduce(w).letters)
    changed = True
    while changed and letters:
        changed = False
        L = len(letters)
        for i in range(L):
            x = letters[i]
            for step in range(1, L):
                j = (i + step) % L
                y = letters[j]
                if y == -x:
                    keep = [letters[k] for k in range(L) if k not in (i, j)]
                    letters = list(cyclic_free_reduce(BraidWord(w.strands, tuple(keep))).letters)
                    changed = True
                    break
                if abs(abs(y) - abs(x)) < 2:
                    break
            if changed:
                break
    return BraidWord(w.strands, tuple(letters))


def _split_once(w: BraidWord):
    """If some sigma_i occurs exactly once, the closure is a connected sum of the two sides."""
    counts: dict[int, int] = {}
    for x in w.letters:
        counts[abs(x)] = counts.get(abs(x), 0) + 1
    for i in range(w.strands - 1, 0, -1):
        if counts.get(i, 0) == 1:
            k = next(p for p, x in enumerate(w.letters) if abs(x) == i)
            rest = w.letters[k + 1:] + w.letters[:k]
            low = tuple(x for x in rest if abs(x) < i)
            high = tuple((x - i) if x > 0 else (x + i) for x in rest if abs(x) > i)
            return BraidWord(i, low), BraidWord(w.strands - i, high)
    return None


@lru_cache(maxsize=None)
def _short_equalities(max_len: int = 4) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """All words of length <= max_len on {1, 2} grouped by group element (pattern for adjacent pairs)."""
    groups: dict = {}
    for length in range(0, max_len + 1):
        for letters in product((1, 2, -1, -2), repeat=length):
            w = BraidWord(3, letters)
            if free_reduce(w).letters != letters:
                continue
            groups.setdefault(normal_form(w), []).append(letters)
    table: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for words in groups.values():
        for u in words:
            table[u] = [v for v in words if v != u and len(v) <= len(u)]
    return table


def _rewrites(w: BraidWord):
    table = _short_equalities()
    L = w.letters
    n = len(L)
    for i in range(n):
        for length in (3, 4, 2):
            if i + length > n:
                continue
            seg = L[i:i + length]
            gens = sorted({abs(x) for x in seg})
            if len(gens) != 2 or gens[1] - gens[0] != 1:
                continue
            base = gens[0] - 1
            local = tuple(x - base if x > 0 else x + base for x in seg)
            for v in table.get(local, ()):
                glob = tuple(x + base if x > 0 else x - base for x in v)
                yield BraidWord(w.strands, L[:i] + glob + L[i + length:])
    for i in range(n - 1):
        if abs(abs(L[i]) - abs(L[i + 1])) >= 2:
            yield BraidWord(w.strands, L[:i] + (L[i + 1], L[i]) + L[i + 2:])
    if n:
        yield w.rotate(1)


def _reduces(w: BraidWord, depth: int, budget: list[int]) -> bool:
    w = _commuting_cyclic_reduce(w)
    if w.strands == 1:
        return True
    if not w.letters:
        return False  # split unlink, not a knot
    parts = _split_once(w)
    if parts is not None:
        return all(_reduces(p, depth, budget) for p in parts)
    if depth <= 0:
        return False
    seen = {w.letters}
    frontier = deque([(w, 0)])
    while frontier and budget[0] > 0:
        cur, d = frontier.popleft()
        if d >= depth:
            continue
        for nxt in _rewrites(cur):
            budget[0] -= 1
            red = _commuting_cyclic_reduce(nxt)
            if red.letters in seen:
                continue
            seen.add(red.letters)
            if len(red) < len(w) or _split_once(red) is not None:
                return _reduces(red, depth - 1, budget)
            frontier.append((red, d + 1))
    return False


def is_unknot(w: BraidWord, depth: int = 8, search_budget: int = 50000) -> str:
    """"yes" if cost-0 moves reach the trivial braid on one strand, "no" if an invariant obstructs."""
    if closure_components(w) != 1:
        return NO
    if _reduces(w, depth, [search_budget]):
        return YES
    from .seifert import alexander_of_word, sigma_hat

    try:
        delta = alexander_of_word(w)
    except BraidError:
        return UNKNOWN
    if delta.coeffs != (1,):
        return NO
    if sigma_hat(w) != 0:
        return NO
    return UNKNOWN


def stabilized_generator_word(n: int) -> BraidWord:
    """sigma_1 ... sigma_{n-1}: its closure is the unknot."""
    return generator_word(n)
