"""
Braid words in the Artin generators.

A word on ``n`` strands is a tuple of nonzero integers: ``i`` stands for the
positive generator sigma_i and ``-i`` for its inverse, with ``1 <= i < n``.
The text form uses ``a..y`` for sigma_1..sigma_25 and upper case letters for
inverses, so ``"abAB"`` is the commutator of the two generators of B_3.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import Iterable, Sequence

LETTERS = string.ascii_lowercase[:25]
MAX_TEXT_GENERATOR = len(LETTERS)

_BRACKET_RE = re.compile(r"^\s*\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]\s*$")


class BraidError(ValueError):
    """Malformed braid data (bad letters, indices out of range, ...)."""


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError(f"strand count must be positive, got {self.strands}")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) >= self.strands:
                raise BraidError(f"generator {x} out of range for B_{self.strands}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        _check_same(self, other)
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.strands, self.letters * k)

    def __str__(self) -> str:
        return word_to_text(self)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def rotate(self, k: int) -> "BraidWord":
        """Cyclic rotation: the closure is unchanged."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.strands, self.letters[k:] + self.letters[:k])

    def shifted(self, shift: int, strands: int | None = None) -> "BraidWord":
        """Relabel sigma_i as sigma_{i+shift} inside a braid group with more strands."""
        strands = self.strands + shift if strands is None else strands
        return BraidWord(strands, tuple(x + shift if x > 0 else x - shift for x in self.letters))

    def flipped(self) -> "BraidWord":
        """Image under sigma_i -> sigma_{n-i}, i.e. conjugation by the half twist."""
        n = self.strands
        return BraidWord(n, tuple((n - x) if x > 0 else -(n + x) for x in self.letters))

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in self.letters))

    def to_json(self) -> dict:
        return {"strands": self.strands, "letters": list(self.letters)}


def _check_same(u: BraidWord, v: BraidWord) -> None:
    if u.strands != v.strands:
        raise BraidError(f"strand mismatch: {u.strands} vs {v.strands}")


def word(strands: int, letters: Iterable[int] = ()) -> BraidWord:
    return BraidWord(strands, tuple(letters))


def parse_word(text: str, strands: int) -> BraidWord:
    """Parse ``text`` such as ``"abAB"`` into a word on ``strands`` strands.

    Whitespace is ignored.  No reduction is performed.
    """
    letters = []
    for ch in text:
        if ch.isspace():
            continue
        low = ch.lower()
        if low not in LETTERS:
            raise BraidError(f"unknown character {ch!r} in braid word")
        idx = LETTERS.index(low) + 1
        if idx >= strands:
            raise BraidError(f"letter {ch!r} (generator {idx}) needs more than {strands} strands")
        letters.append(idx if ch.islower() else -idx)
    return BraidWord(strands, tuple(letters))


def word_to_text(w: BraidWord) -> str:
    if w.strands - 1 > MAX_TEXT_GENERATOR:
        raise BraidError(f"text form supports at most {MAX_TEXT_GENERATOR} generators")
    return "".join(LETTERS[x - 1] if x > 0 else LETTERS[-x - 1].upper() for x in w.letters)


def word_from_json(obj, strands: int | None = None) -> BraidWord:
    """Accept ``{"strands": n, "letters": [...]}``, or a text word or letter list (needs ``strands``)."""
    if isinstance(obj, str):
        if strands is None:
            raise BraidError("text word needs an explicit strand count")
        return parse_word(obj, strands)
    if isinstance(obj, (list, tuple)):
        if strands is None:
            raise BraidError("numeric word needs an explicit strand count")
        return BraidWord(strands, tuple(int(x) for x in obj))
    if isinstance(obj, dict):
        n = obj.get("strands", strands)
        letters = obj.get("letters")
        if n is None or letters is None:
            raise BraidError("JSON word needs 'strands' and 'letters'")
        if isinstance(letters, str):
            return parse_word(letters, int(n))
        return BraidWord(int(n), tuple(int(x) for x in letters))
    raise BraidError(f"cannot read a braid word from {type(obj).__name__}")


def word_to_json(w: BraidWord):
    """Text form when it fits, numeric form otherwise."""
    if w.strands - 1 <= MAX_TEXT_GENERATOR:
        return word_to_text(w)
    return list(w.letters)


@dataclass(frozen=True)
class BracketForm:
    """The positive 3-braid a^{k_1} b a^{k_2} b ... a^{k_n} b."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(k) for k in self.exponents)
        if not exps:
            raise BraidError("bracket form needs at least one exponent")
        if any(k < 1 for k in exps):
            raise BraidError(f"bracket exponents must be positive: {list(exps)}")
        object.__setattr__(self, "exponents", exps)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.exponents)) + "]"


def parse_bracket(text: str) -> BracketForm:
    m = _BRACKET_RE.match(text)
    if not m:
        raise BraidError(f"not a bracket form: {text!r}")
    return BracketForm(tuple(int(x) for x in m.group(1).split(",")))


def bracket_to_word(b: BracketForm) -> BraidWord:
    letters: list[int] = []
    for k in b.exponents:
        letters.extend([1] * k)
        letters.append(2)
    return BraidWord(3, tuple(letters))


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent inverse pairs (not cyclically)."""
    out: list[int] = []
    for x in w.letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return BraidWord(w.strands, tuple(out))


def cyclic_free_reduce(w: BraidWord) -> BraidWord:
    """Free reduction on the cyclic word; the result is a conjugate of ``w``."""
    letters = list(free_reduce(w).letters)
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    return BraidWord(w.strands, tuple(letters[i:j + 1]))


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in w.letters)


def permutation(w: BraidWord) -> tuple[int, ...]:
    """Where the strand starting at position j ends, 0-based."""
    pos = list(range(w.strands))  # pos[p] = strand currently at position p
    for x in w.letters:
        i = abs(x) - 1
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    end = [0] * w.strands
    for p, strand in enumerate(pos):
        end[strand] = p
    return tuple(end)


def cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        out.append(tuple(cyc))
    return out


def closure_components(w: BraidWord) -> int:
    return len(cycles(permutation(w)))


def generator_word(strands: int) -> BraidWord:
    """sigma_1 sigma_2 ... sigma_{n-1}."""
    return BraidWord(strands, tuple(range(1, strands)))


def full_twist(strands: int, count: int = 1) -> BraidWord:
    if strands < 2:
        raise BraidError("full twist needs at least two strands")
    if count < 0:
        raise BraidError("count must be nonnegative")
    return generator_word(strands) ** (strands * count)


def torus_braid(p: int, q: int) -> BraidWord:
    """(sigma_1 ... sigma_{p-1})^q, whose closure is T(p, q)."""
    return generator_word(p) ** q
