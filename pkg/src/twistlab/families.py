"""
Generators for the untwisting scripts of the torus-knot families.

Every generator drives a ScriptBuilder, which applies each move as it is
recorded, so a script that is produced at all replays correctly.  3-strand
sub-scripts run inside "blocks": a contiguous stretch of the global word
whose letters live in a copy of B_3 embedded by a generator shift and,
optionally, the flip sigma_i -> sigma_{m-i}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .braid import (
    BracketForm,
    BraidWord,
    bracket_to_word,
    free_reduce,
    full_twist,
    parse_word,
    torus_braid,
)
from .garside import equal_closures_upto_conjugacy, equal_in_group, find_conjugator
from .moves import CATALOG, Move, MoveScript, apply_move

FAMILIES = ("T3_4", "T3_7", "T3_10", "T3_13", "T3_6k16", "T3_6k19", "T3_bridge_change", "T4_eps", "T6_split", "Doubling")


class FamilyError(ValueError):
    pass


# -- brackets -----------------------------------------------------------------------


def lemma1_bracket(k: int, variant: int) -> BracketForm:
    """Bracket presentation of T(3, 6k+variant) for variant 9 or 12."""
    if k < 0:
        raise FamilyError("k must be >= 0")
    if variant == 9:
        return BracketForm((3,) + (5,) * k + (4, 3) + (5,) * k + (4,))
    if variant == 12:
        return BracketForm((3,) + (5,) * (k + 1) + (3, 4) + (5,) * k + (4,))
    raise FamilyError("variant must be 9 or 12")


def fulltwist_insert(b: BracketForm, pos: int) -> BracketForm:
    """Replace the cyclically adjacent pair (x, y) at pos by (x+1, 3, y+1): one more full twist."""
    e = list(b.exponents)
    if not e:
        raise FamilyError("empty bracket")
    n = len(e)
    pos %= n
    if n == 1:
        out = [e[0] + 2, 3]  # the pair (x, x) of a one-term cyclic bracket
    elif pos == n - 1:
        out = [e[0] + 1] + e[1:-1] + [e[-1] + 1, 3]
    else:
        out = e[:pos] + [e[pos] + 1, 3, e[pos + 1] + 1] + e[pos + 2:]
    res = BracketForm(tuple(out))
    check = equal_closures_upto_conjugacy(bracket_to_word(res), full_twist(3, 1) * bracket_to_word(b))
    if not check:
        raise FamilyError(f"inserting a full twist into {b} did not add a full twist ({check.status})")
    return res


# -- script builder -----------------------------------------------------------------


class ScriptBuilder:
    def __init__(self, start: BraidWord, name: str = ""):
        self.start = start
        self.word = start
        self.moves: list[Move] = []
        self.cost = 0
        self.name = name

    def add(self, move: Move) -> None:
        self.word, c = apply_move(self.word, move, CATALOG)
        self.cost += c
        self.moves.append(move)

    def rewrite(self, pos: int, length: int, repl: BraidWord) -> None:
        if self.word.letters[pos:pos + length] == repl.letters:
            return
        self.add(Move("BraidRelation", pos, {"length": length, "replacement": _txt(repl)}))

    def set(self, repl: BraidWord) -> None:
        self.rewrite(0, len(self.word), repl)

    def root(self) -> "Block":
        return Block(self, None, 0, len(self.word), self.word.strands, 0, False)

    def build(self, target="unknot", cost_bound: int | None = None) -> MoveScript:
        bound = self.cost if cost_bound is None else cost_bound
        return MoveScript(self.start.strands, self.start, tuple(self.moves), target, bound, self.name)


def _txt(w: BraidWord):
    from .braid import word_to_json

    return word_to_json(w)


class Block:
    """A contiguous range of the builder's word viewed in local coordinates."""

    def __init__(self, b: ScriptBuilder, parent, offset: int, length: int, strands: int, shift: int, flip: bool):
        self.b, self.parent = b, parent
        self.offset, self.length = offset, length
        self.strands, self.shift, self.flip = strands, shift, flip

    # generator maps
    def _gen(self, i: int) -> int:
        j = self.strands - i if self.flip else i
        j += self.shift
        return self.parent._gen(j) if self.parent else j

    def _letter(self, x: int) -> int:
        return self._gen(abs(x)) * (1 if x > 0 else -1)

    def to_global(self, w: BraidWord) -> BraidWord:
        return BraidWord(self.b.word.strands, tuple(self._letter(x) for x in w.letters))

    def _unletter(self) -> dict[int, int]:
        return {self._gen(i): i for i in range(1, self.strands)}

    @property
    def word(self) -> BraidWord:
        inv = self._unletter()
        seg = self.b.word.letters[self.offset:self.offset + self.length]
        return BraidWord(self.strands, tuple(inv[abs(x)] * (1 if x > 0 else -1) for x in seg))

    def _resize(self, delta: int) -> None:
        blk = self
        while blk is not None:
            blk.length += delta
            blk = blk.parent

    def _track(self, fn) -> None:
        before = len(self.b.word)
        fn()
        self._resize(len(self.b.word) - before)

    def sub(self, pos: int, length: int, strands: int, shift: int = 0, flip: bool = False) -> "Block":
        return Block(self.b, self, self.offset + pos, length, strands, shift, flip)

    # operations in local coordinates
    def rewrite(self, pos: int, length: int, repl: BraidWord) -> None:
        self._track(lambda: self.b.rewrite(self.offset + pos, length, self.to_global(repl)))

    def set(self, repl: BraidWord) -> None:
        self.rewrite(0, self.length, repl)

    def cross(self, pos: int) -> None:
        self.b.add(Move("CrossingChange", self.offset + pos))

    def reduce(self) -> None:
        w = self.word
        if free_reduce(w).letters == w.letters:
            return
        self._track(lambda: self.b.add(Move("FreeInsertReduce", self.offset, {"length": self.length})))

    def _monotone(self, t_strands: int, base: int) -> tuple[bool, int]:
        imgs = [self._gen(base + i) for i in range(1, t_strands)]
        if all(imgs[i + 1] == imgs[i] + 1 for i in range(len(imgs) - 1)):
            return True, imgs[0] - 1
        return False, imgs[-1] - 1

    def template(self, pos: int, tid: str, base: int = 0) -> None:
        """Apply template tid, living on local generators base+1.., at local position pos."""
        t = CATALOG[tid]
        increasing, gshift = self._monotone(t.strands, base)
        g = self.offset + pos
        if increasing:
            self._track(lambda: self.b.add(Move("Template", g, {"id": tid, "shift": gshift})))
            return
        # A flipped embedding: the image of the template is the mirror-indexed word.  Realize it
        # with a catalog template whose sides are group-equal to the flipped sides.
        lhs_img = self.to_global(t.lhs.shifted(base, self.strands))
        rhs_img = self.to_global(t.rhs.shifted(base, self.strands))
        for alt in CATALOG.values():
            if alt.strands != t.strands or alt.cost != t.cost:
                continue
            a_lhs = alt.lhs.shifted(gshift, self.b.word.strands)
            a_rhs = alt.rhs.shifted(gshift, self.b.word.strands)
            if equal_in_group(a_lhs, lhs_img) and equal_in_group(a_rhs, rhs_img):
                def run():
                    self.b.rewrite(g, len(lhs_img), a_lhs)
                    self.b.add(Move("Template", g, {"id": alt.id, "shift": gshift}))
                    self.b.rewrite(g, len(a_rhs), rhs_img)
                self._track(run)
                return
        raise FamilyError(f"no catalog template realizes flipped {tid}")


# -- 3-strand scripts -------------------------------------------------------------------


def _w(text: str) -> BraidWord:
    return parse_word(text, 3)


def _ab(m: int) -> BraidWord:
    return _w("ab" * m)


def t3_cost(m: int) -> int:
    """Cost of the generated script for T(3, m): ceil(2m/3) = sigma_hat/2 (m >= 4), 0 for m = 1."""
    if m == 1:
        return 0
    if m == 2:
        return 1
    return -(-2 * m // 3)


def _t3_4(blk: Block) -> None:
    for i in (0, 1, 2):
        blk.cross(i)
    blk.set(_w("ab"))


def _t3_7(blk: Block) -> None:
    blk.template(0, "T2b")          # (ab)^7 -> a^7 b
    for _ in range(3):
        blk.cross(0)
        blk.reduce()                # a^7b -> a^5b -> a^3b -> ab


def _t3_10(blk: Block) -> None:
    blk.set(_w("AB" + "ab" * 12 + "AA"))
    blk.template(2, "T2a")
    blk.template(8, "T2b")
    blk.reduce()                    # Ab^5a^4
    blk.cross(1)
    blk.reduce()                    # Ab^3a^4
    blk.cross(1)
    blk.reduce()                    # Aba^4
    blk.cross(2)
    blk.reduce()                    # Aba^2


def _t3_13(blk: Block) -> None:
    # (ab)^13 = (ab)^18 (BA)^5 and (BA)^5 = B^3AB^3AB^2
    blk.set(_w("BBB" + "ab" * 12 + "ABBB" + "ab" * 6 + "ABB"))
    blk.template(31, "T2a")
    blk.template(15, "T2b")
    blk.template(3, "T2a")
    blk.reduce()                    # b^3 a^5 b^3 A B^2
    blk.cross(3)
    blk.reduce()
    blk.cross(3)
    blk.reduce()                    # b^3 a b^3 A B^2
    blk.cross(4)
    blk.reduce()                    # b^3 a b A B^2
    blk.set(_w("bbaB"))


def _powers_with_twists(powers: list[tuple[int, int]]) -> tuple[BraidWord, list[int]]:
    """ab . prod((ab)^6 A^e B^f): the word and the positions of the inserted (ab)^6."""
    text = "ab"
    positions = []
    for e, f in powers:
        text += "A" * e
        positions.append(len(text))
        text += "ab" * 6 + "B" * f
    return _w(text), positions


def _t3_family(blk: Block, a_powers: list[int], slid: str, middle_pos: int, middle: str, middle_eq: str,
               crossings: tuple[int, ...], m: int) -> None:
    word, positions = _powers_with_twists([(e, 1) for e in a_powers])
    if not equal_in_group(word, _ab(m)):
        raise FamilyError("internal: bad (BA)-power expansion")
    blk.set(word)
    for p in reversed(positions):
        blk.template(p, "T2b")
    blk.reduce()
    blk.set(_w(slid))
    if middle_eq != middle:
        blk.rewrite(middle_pos, len(middle), _w(middle_eq))
    for c in crossings:
        blk.cross(middle_pos + c)
    blk.reduce()


def _t3_6k16(blk: Block, k: int) -> None:
    m = 6 * k + 16
    powers = [3] + [5] * k + [4, 3] + [5] * k + [4]
    slid = "bbA" + "bA" * k + "bbabaBaaaB" + "aB" * k + "aaB"
    mid = 3 + 2 * k
    # b^2abaBa^3B = b^3a^4B; three crossing changes on b, a, a empty it
    _t3_family(blk, powers, slid, mid, "bbabaBaaaB", "bbbaaaaB", (0, 3, 4), m)


def _t3_6k19(blk: Block, k: int) -> None:
    m = 6 * k + 19
    powers = [3] + [5] * (k + 1) + [3, 4] + [5] * k + [4]
    slid = "bbA" + "bA" * (k + 1) + "bbbAbbab" + "aB" + "aB" * k + "aaB"
    mid = 3 + 2 * (k + 1)
    _t3_family(blk, powers, slid, mid, "bbbAbbab", "bbbAbbab", (0, 1, 4), m)


def t3_run(blk: Block, m: int) -> None:
    """Untwist the block holding (ab)^m (local coordinates) at cost t3_cost(m)."""
    if m % 3 == 0 or m < 1:
        raise FamilyError(f"T(3,{m}) is not a knot")
    if m == 1:
        return
    if m == 2:
        blk.cross(0)
        blk.set(_w("ba"))
        return
    if m % 3 == 2:
        bridge_run(blk, m)
        return
    if m == 4:
        _t3_4(blk)
    elif m == 7:
        _t3_7(blk)
    elif m == 10:
        _t3_10(blk)
    elif m == 13:
        _t3_13(blk)
    elif (m - 16) % 6 == 0:
        _t3_6k16(blk, (m - 16) // 6)
    else:
        _t3_6k19(blk, (m - 19) // 6)


def bridge_run(blk: Block, m: int) -> None:
    """(ab)^m -> (ab)^{m-1}aB by one crossing change; that equals (ba)^{m-1}, a flipped (ab)^{m-1}."""
    blk.cross(2 * m - 1)
    blk.set(_w("ba" * (m - 1)))
    t3_run(blk.sub(0, blk.length, 3, 0, flip=True), m - 1)


def lemma4_script(k: int, family: str) -> MoveScript:
    """Untwisting script for T(3, m); the sporadic families ignore k."""
    if k < 0:
        raise FamilyError("k must be >= 0")
    m = {"T3_4": 4, "T3_7": 7, "T3_10": 10, "T3_13": 13,
         "T3_6k16": 6 * k + 16, "T3_6k19": 6 * k + 19}.get(family)
    if m is None:
        raise FamilyError(f"not a 3-strand family: {family}")
    return t3_script(m, name=f"{family}" + (f" k={k}" if family.endswith(("16", "19")) else ""))


def t3_script(m: int, name: str | None = None) -> MoveScript:
    b = ScriptBuilder(_ab(m), name or f"T(3,{m})")
    t3_run(b.root(), m)
    return b.build()


def bridge_change_script(k: int) -> MoveScript:
    """T(3,3k+5): one crossing change down to T(3,3k+4), then the 3-strand family script."""
    if k < 0:
        raise FamilyError("k must be >= 0")
    m = 3 * k + 5
    b = ScriptBuilder(_ab(m), f"T3_bridge_change k={k}")
    bridge_run(b.root(), m)
    return b.build()


# -- four strands -------------------------------------------------------------------------


def _eps_split(n: int) -> tuple[int, int]:
    eps = {1: 1, 3: 3, 5: 5, 7: -5, 9: -3, 11: -1}[n % 12]
    return (n - eps) // 12, eps


def _to_ab_power(b: ScriptBuilder, m: int) -> None:
    """Turn the current 3-strand word into (ab)^m literally, conjugating if needed."""
    target = _ab(m)
    if not equal_in_group(b.word, target):
        c = find_conjugator(b.word, target)
        if c is None:
            raise FamilyError(f"internal: {b.word} is not a conjugate of (ab)^{m}")
        b.add(Move("Conjugate", 0, {"by": _txt(c)}))
    b.set(target)


def t4_script(n: int) -> MoveScript:
    if n < 3 or n % 2 == 0:
        raise FamilyError("T(4,n) is a knot only for odd n; need n >= 3")
    k, eps = _eps_split(n)
    b = ScriptBuilder(parse_word("abc" * n, 4), f"T4_eps n={n}")
    w4 = lambda s: parse_word(s, 4)
    if eps == -5:
        k, eps = k - 1, 7  # n = 12k' + 7: split off (abc)^7
    if eps < 0:
        b.set(w4("abc" * (12 * k) + "CBA" * (-eps)))
    for i in range(k):
        b.add(Move("Template", 24 * i, {"id": "T3b"}))
    base = 24 * k
    if eps in (5, 7):
        b.add(Move("Template", base, {"id": "T5_2"}))      # (abc)^4 -> a^4 c^4
        for p in (base,) * 4:  # a^4 c^4 -> a^2 c^4 -> c^4 -> c^2 -> empty
            b.add(Move("CrossingChange", p))
            b.add(Move("FreeInsertReduce", 0, {"length": len(b.word)}))
        eps -= 4
    # now (ab)^{12k} (abc)^eps with eps in {1, 3, -1, -3}
    if eps == 1:
        b.add(Move("Destabilize", base + 2))
        m = 12 * k + 1
    elif eps == -1:
        b.add(Move("Destabilize", base))
        m = 12 * k - 1
    elif eps == 3:
        b.rewrite(base, 9, w4("abaabcbab"))   # (abc)^3 with a single c
        b.add(Move("Destabilize", base + 5))
        m = 12 * k + 4
    else:
        b.rewrite(base, 9, w4("ABCABAABA"))   # (CBA)^3 with a single C
        b.add(Move("Destabilize", base + 2))
        m = 12 * k - 4
    _to_ab_power(b, m)
    t3_run(b.root(), m)
    return b.build()


# -- six strands and doubling ---------------------------------------------------------------


def t6_script(n: int) -> MoveScript:
    if n < 5 or math.gcd(n, 6) != 1:
        raise FamilyError("T(6,n) needs n >= 5 coprime to 6")
    k = (n + 1) // 6
    plus = n % 6 == 1
    m = n
    w6 = lambda s: parse_word(s, 6)
    b = ScriptBuilder(w6("abcde" * n), f"T6_split n={n}")
    if not plus:
        b.set(w6("abcde" * (6 * k) + "EDCBA"))
    for i in range(k):
        b.add(Move("Template", 24 * i, {"id": "T4"}))
    tail = "abcde" if plus else "EDCBA"
    b.set(w6("ab" * (6 * k) + "de" * (6 * k) + tail))
    if plus:
        # (ab)^{6k}(de)^{6k} ab c de: rotate the last de to the front, it commutes with (ab)^*
        b.add(Move("CyclicRotate", len(b.word) - 2))
        b.set(w6("ab" * m + "de" * m + "c"))
    else:
        # (ab)^{6k}(de)^{6k} ED C BA: rotate BA to the front
        b.add(Move("CyclicRotate", len(b.word) - 2))
        b.set(w6("ab" * m + "de" * m + "C"))
    root = b.root()
    t3_run(root.sub(0, 2 * m, 3, 0), m)
    lo_len = len(b.word) - 2 * m - 1
    t3_run(root.sub(lo_len, 2 * m, 3, 3), m)
    return b.build()


def doubling_twists(k: int) -> int:
    return (4 ** k - 1) // 3


def doubling_script(k: int) -> MoveScript:
    """T(3*2^k, 3*2^k+1) -> 2^k copies of T(3, 3*2^k+1) by (4^k-1)/3 twists, then the 3-strand scripts."""
    if not 1 <= k <= 3:
        raise FamilyError("doubling scripts are generated for 1 <= k <= 3")
    N = 3 * 2 ** k
    power = N + 1
    b = ScriptBuilder(torus_braid(N, power), f"Doubling k={k}")
    # the word is a sequence of separators ("sep", g) and blocks ("blk", lo, size) holding
    # (sigma_{lo+1} ... sigma_{lo+size-1})^power
    layout: list[tuple] = [("blk", 0, N)]
    size = N
    while size > 3:
        for idx in reversed(range(len(layout))):
            if layout[idx][0] == "blk":
                layout[idx:idx + 1] = _split_block(b, _offset(layout, idx, power), layout[idx][1], size, N, power)
        size //= 2
    root = b.root()
    for idx in reversed(range(len(layout))):
        if layout[idx][0] == "blk":
            lo = layout[idx][1]
            t3_run(root.sub(_offset(layout, idx, power), 2 * power, 3, lo), power)
    return b.build()


def _offset(layout: list[tuple], idx: int, power: int) -> int:
    return sum(1 if e[0] == "sep" else (e[2] - 1) * power for e in layout[:idx])


def _split_block(b: ScriptBuilder, pos: int, lo: int, size: int, N: int, power: int) -> list[tuple]:
    """(gen)^power = gen . (full twist)^(N/size): twist each full twist into two double full twists
    on the halves, then conjugate the summand to sigma_mid . L^power . H^power."""
    half = size // 2
    n = b.word.strands
    low = [lo + j for j in range(1, half)]
    high = [lo + half + j for j in range(1, half)]
    mid = lo + half
    ft = N // size
    for f in reversed(range(ft)):
        b.add(Move("Template", pos + (size - 1) * (1 + f * size), {"id": f"T5_{half}", "shift": lo}))
    length = (size - 1) + ft * 2 * (half - 1) * size
    b.rewrite(pos, length, BraidWord(n, tuple(low + [mid] + low * N + high * power)))
    b.add(Move("Conjugate", pos, {"by": _txt(BraidWord(n, tuple(low))), "length": length}))
    b.rewrite(pos, length + 2 * len(low), BraidWord(n, tuple([mid] + low * power + high * power)))
    return [("sep", mid), ("blk", lo, half), ("blk", lo + half, half)]


# -- asymptotics ----------------------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticRow:
    k: int
    strands: int
    doubling_twists: int
    t3_bound: int
    copies: int
    total_bound: int
    genus: int
    ratio: Fraction

    def to_json(self) -> dict:
        return {
            "k": self.k, "strands": self.strands, "doubling_twists": self.doubling_twists,
            "per_copy_bound": self.t3_bound, "copies": self.copies, "total_bound": self.total_bound,
            "genus": self.genus, "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
        }


def asymptotic_table(k_max: int) -> list[AsymptoticRow]:
    if k_max < 1:
        raise FamilyError("k_max must be >= 1")
    rows = []
    d = 0
    for k in range(1, k_max + 1):
        d = 1 + 4 * d
        n = 3 * 2 ** k
        t3 = -(-2 * (n + 1) // 3)
        copies = 2 ** k
        total = d + copies * t3
        genus = (n - 1) * n // 2
        rows.append(AsymptoticRow(k, n, d, t3, copies, total, genus, Fraction(total, genus)))
    return rows


LIMIT_RATIO = Fraction(14, 27)


# -- dispatch -------------------------------------------------------------------------------


def family_script(family: str, k: int | None = None, n: int | None = None) -> MoveScript:
    if family in ("T3_4", "T3_7", "T3_10", "T3_13"):
        return lemma4_script(0, family)
    if family in ("T3_6k16", "T3_6k19"):
        return lemma4_script(_need(k, "k"), family)
    if family == "T3_bridge_change":
        return bridge_change_script(_need(k, "k"))
    if family in ("T4_eps", "T4"):
        return t4_script(_need(n, "n"))
    if family in ("T6_split", "T6"):
        return t6_script(_need(n, "n"))
    if family == "Doubling":
        return doubling_script(_need(k, "k"))
    if family == "T3":
        return t3_script(_need(n, "n"))
    raise FamilyError(f"unknown family {family!r}")


def _need(v, name):
    if v is None:
        raise FamilyError(f"family needs --{name}")
    return v
