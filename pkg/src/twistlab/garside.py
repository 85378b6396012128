"""
Garside left normal form in B_n.

A positive permutation braid ("simple element") is stored as a permutation
tuple ``p`` with ``p[j]`` the final position of the strand starting at
position ``j`` (0-based).  Every braid is written uniquely as
Delta^inf * x_1 * ... * x_k with each x_i simple, neither trivial nor Delta,
and every adjacent pair left-weighted: S(x_{i+1}) is contained in F(x_i).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _all_perms

from .braid import BraidWord, closure_components, exponent_sum

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def delta(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


def generator(n: int, i: int) -> Perm:
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def starting_set(p: Perm) -> frozenset[int]:
    """Generators i with p = sigma_i * (simple)."""
    return frozenset(i for i in range(1, len(p)) if p[i - 1] > p[i])


def finishing_set(p: Perm) -> frozenset[int]:
    """Generators i with p = (simple) * sigma_i."""
    inv = [0] * len(p)
    for j, x in enumerate(p):
        inv[x] = j
    return frozenset(i for i in range(1, len(p)) if inv[i - 1] > inv[i])


def tau(p: Perm) -> Perm:
    """Conjugation by Delta: sigma_i -> sigma_{n-i}."""
    n = len(p)
    return tuple(n - 1 - p[n - 1 - j] for j in range(n))


def _times_gen(p: Perm, i: int) -> Perm:
    q = list(p)
    for j, x in enumerate(q):
        if x == i - 1:
            q[j] = i
        elif x == i:
            q[j] = i - 1
    return tuple(q)


def _strip_gen(p: Perm, i: int) -> Perm:
    q = list(p)
    q[i - 1], q[i] = q[i], q[i - 1]
    return tuple(q)


def complement_of_inverse(n: int, i: int) -> Perm:
    """The simple element Delta * sigma_i^{-1}."""
    return _times_gen(delta(n), i)


@lru_cache(maxsize=1 << 16)
def left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    """Move generators from the front of ``b`` to the back of ``a`` until (a, b) is left-weighted."""
    while True:
        extra = starting_set(b) - finishing_set(a)
        if not extra:
            return a, b
        i = min(extra)
        a = _times_gen(a, i)
        b = _strip_gen(b, i)


def simple_to_letters(p: Perm) -> tuple[int, ...]:
    out = []
    while True:
        s = starting_set(p)
        if not s:
            return tuple(out)
        i = min(s)
        out.append(i)
        p = _strip_gen(p, i)


@dataclass(frozen=True)
class GarsideNF:
    strands: int
    infimum: int
    factors: tuple[Perm, ...]

    @property
    def supremum(self) -> int:
        return self.infimum + len(self.factors)

    def to_word(self) -> BraidWord:
        n = self.strands
        d = simple_to_letters(delta(n))
        letters: list[int] = []
        if self.infimum >= 0:
            letters.extend(d * self.infimum)
        else:
            inv = tuple(-x for x in reversed(d))
            letters.extend(inv * (-self.infimum))
        for f in self.factors:
            letters.extend(simple_to_letters(f))
        return BraidWord(n, tuple(letters))

    def to_json(self) -> dict:
        return {
            "strands": self.strands,
            "infimum": self.infimum,
            "factors": [list(f) for f in self.factors],
        }


class _NFBuilder:
    def __init__(self, n: int):
        self.n = n
        self.inf = 0
        self.factors: list[Perm] = []
        self.delta = delta(n)
        self.ident = identity(n)

    def times_simple(self, x: Perm) -> None:
        f = self.factors
        f.append(x)
        for j in range(len(f) - 2, -1, -1):
            a, b = left_weight(f[j], f[j + 1])
            if a == f[j]:
                f[j + 1] = b
                break
            f[j], f[j + 1] = a, b
        while f and f[0] == self.delta:
            f.pop(0)
            self.inf += 1
        while f and f[-1] == self.ident:
            f.pop()

    def times_letter(self, x: int) -> None:
        if x > 0:
            self.times_simple(generator(self.n, x))
        else:
            # w sigma_i^{-1} = w Delta^{-1} (Delta sigma_i^{-1}) = Delta^{-1} tau(w) (Delta sigma_i^{-1})
            self.inf -= 1
            self.factors = [tau(f) for f in self.factors]
            self.times_simple(complement_of_inverse(self.n, -x))

    def result(self) -> GarsideNF:
        return GarsideNF(self.n, self.inf, tuple(self.factors))


def normal_form(w: BraidWord) -> GarsideNF:
    b = _NFBuilder(w.strands)
    for x in w.letters:
        b.times_letter(x)
    return b.result()


def equal_in_group(u: BraidWord, v: BraidWord) -> bool:
    if u.strands != v.strands:
        return False
    return normal_form(u) == normal_form(v)


def is_trivial(w: BraidWord) -> bool:
    nf = normal_form(w)
    return nf.infimum == 0 and not nf.factors


# -- closures up to conjugacy -------------------------------------------------

EQUAL = "equal"
DISTINCT = "distinct-by-invariant"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class ClosureComparison:
    status: str
    relation: str | None = None  # "identical" (same group element) or "conjugate"
    conjugator: BraidWord | None = None  # c with c^-1 * w1 * c == w2 in B_n
    detail: str = ""

    def __bool__(self) -> bool:
        return self.status == EQUAL


def _conjugators(n: int) -> list[BraidWord]:
    if n <= 4:
        simples = [p for p in _all_perms(range(n)) if p != identity(n)]
    else:
        simples = [generator(n, i) for i in range(1, n)] + [delta(n)]
    out = []
    for p in simples:
        w = BraidWord(n, simple_to_letters(p))
        out.append(w)
        out.append(w.inverse())
    return out


def find_conjugator(w1: BraidWord, w2: BraidWord, depth: int = 3) -> BraidWord | None:
    """Breadth-first search for c with c^-1 w1 c = w2.

    Starts from all cyclic rotations of ``w1`` and extends by simple elements
    (and their inverses) up to ``depth`` steps.  Incomplete by design.
    """
    n = w1.strands
    target = normal_form(w2)
    start = BraidWord(n)
    frontier = deque()
    seen = set()
    for k in range(max(1, len(w1))):
        c = BraidWord(n, w1.letters[:k])
        conj = c.inverse() * w1 * c
        nf = normal_form(conj)
        if nf == target:
            return c
        if nf not in seen:
            seen.add(nf)
            frontier.append((nf.to_word(), c, 0))
    del start
    steps = _conjugators(n)
    while frontier:
        cur, c, d = frontier.popleft()
        if d >= depth:
            continue
        for s in steps:
            nf = normal_form(s.inverse() * cur * s)
            if nf in seen:
                continue
            seen.add(nf)
            if nf == target:
                return c * s
            frontier.append((nf.to_word(), c * s, d + 1))
    return None


def equal_closures_upto_conjugacy(w1: BraidWord, w2: BraidWord, depth: int = 3) -> ClosureComparison:
    """Decide whether the closures agree, as far as cheap means allow.

    ``equal`` is sound (the braids are conjugate, so the closures are
    isotopic).  ``distinct-by-invariant`` is backed by a differing invariant.
    Anything else is ``unknown``.
    """
    if w1.strands != w2.strands:
        raise ValueError("words must have the same strand count")
    if normal_form(w1) == normal_form(w2):
        return ClosureComparison(EQUAL, "identical", BraidWord(w1.strands))
    c1, c2 = closure_components(w1), closure_components(w2)
    if c1 != c2:
        return ClosureComparison(DISTINCT, detail=f"components {c1} != {c2}")
    e1, e2 = exponent_sum(w1), exponent_sum(w2)
    if e1 != e2:
        # exponent sum is a conjugacy invariant of B_n
        return ClosureComparison(DISTINCT, detail=f"exponent sums {e1} != {e2}")
    if c1 == 1:
        from .seifert import alexander_of_word

        d1, d2 = alexander_of_word(w1), alexander_of_word(w2)
        if d1 != d2:
            return ClosureComparison(DISTINCT, detail=f"Alexander polynomials {d1} != {d2}")
    c = find_conjugator(w1, w2, depth)
    if c is not None:
        return ClosureComparison(EQUAL, "conjugate", c)
    return ClosureComparison(UNKNOWN, detail=f"no conjugator found within depth {depth}")
