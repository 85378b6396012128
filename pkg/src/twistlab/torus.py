"""
Levine-Tristram signatures of torus knots from their jump points.

For T(p, q) the signature function s -> sigma_{exp(2 pi i s)} jumps exactly
at x = j/(pq) with p and q not dividing j.  Writing j = p*a + q*b with
0 < a < q, the jump is +2 when b < 0 and -2 when b > 0.  Everything here
uses that sign, under which positive torus knots have positive signature.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class OnJumpPoint(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TorusParams:
    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p < 2 or q < 2:
            raise ValueError(f"torus parameters must be >= 2, got ({p}, {q})")
        if math.gcd(p, q) != 1:
            raise ValueError(f"T({p},{q}) is a link, not a knot")
        if p > q:
            p, q = q, p
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __str__(self) -> str:
        return f"T({self.p},{self.q})"


def torus(p: int, q: int) -> TorusParams:
    return TorusParams(p, q)


@dataclass(frozen=True)
class JumpPoint:
    j: int
    x: Fraction
    a: int
    b: int
    delta: int


@dataclass(frozen=True)
class SignatureProfile:
    params: TorusParams
    jumps: tuple[JumpPoint, ...]
    cumulative: tuple[int, ...]  # cumulative[k]: value just after the k-th jump

    def value_at(self, s) -> int:
        s = Fraction(s)
        xs = [jp.x for jp in self.jumps]
        k = bisect_left(xs, s)
        if k < len(xs) and xs[k] == s:
            raise OnJumpPoint(f"{s} is a jump point of {self.params}")
        return self.cumulative[k - 1] if k else 0

    def steps(self) -> list[tuple[Fraction, Fraction, int]]:
        """(s_lo, s_hi, sigma) for each open interval of constancy."""
        edges = [Fraction(0)] + [jp.x for jp in self.jumps] + [Fraction(1)]
        values = [0] + list(self.cumulative)
        return [(edges[k], edges[k + 1], values[k]) for k in range(len(values))]


def decompose(p: int, q: int, j: int) -> tuple[int, int]:
    """(a, b) with j = p*a + q*b and 0 < a < q."""
    a = (j * pow(p, -1, q)) % q
    b = (j - p * a) // q
    return a, b


@lru_cache(maxsize=1024)
def torus_jumps(t: TorusParams) -> SignatureProfile:
    p, q = t.p, t.q
    jumps = []
    total = 0
    cum = []
    for j in range(1, p * q):
        if j % p == 0 or j % q == 0:
            continue
        a, b = decompose(p, q, j)
        delta = 2 if b < 0 else -2
        jumps.append(JumpPoint(j, Fraction(j, p * q), a, b, delta))
        total += delta
        cum.append(total)
    return SignatureProfile(t, tuple(jumps), tuple(cum))


def lt_signature_torus(t: TorusParams, s) -> int:
    return torus_jumps(t).value_at(s)


def is_jump(t: TorusParams, x) -> bool:
    x = Fraction(x)
    pq = t.p * t.q
    return (pq * x).denominator == 1 and (t.p * x).denominator != 1 and (t.q * x).denominator != 1


@dataclass(frozen=True)
class OrdinarySignature:
    value: int
    flagged: bool = False  # 1/2 was a jump point; value is the left limit
    right_limit: int | None = None


def sigma_torus_detail(t: TorusParams) -> OrdinarySignature:
    half = Fraction(1, 2)
    if not is_jump(t, half):
        return OrdinarySignature(lt_signature_torus(t, half))
    # never reached for coprime p, q: one of them is even, so p/2 or q/2 is an integer
    prof = torus_jumps(t)
    eps = Fraction(1, 2 * t.p * t.q)
    return OrdinarySignature(prof.value_at(half - eps), True, prof.value_at(half + eps))


def sigma_torus(t: TorusParams) -> int:
    return sigma_torus_detail(t).value


def sigma_hat_torus(t: TorusParams) -> int:
    return max(abs(v) for v in torus_jumps(t).cumulative)


def genus_torus(t: TorusParams) -> int:
    return (t.p - 1) * (t.q - 1) // 2


def first_jump_at_or_after(t: TorusParams, x) -> JumpPoint:
    x = Fraction(x)
    for jp in torus_jumps(t).jumps:
        if jp.x >= x:
            return jp
    raise ValueError(f"no jump of {t} at or after {x}")


@dataclass
class Theorem1Report:
    n: int
    sigma_hat: int
    expected: int  # 2 * ceil(2n/3)
    seifert_sigma_hat: int | None = None
    ok: bool = True
    failures: list[str] | None = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sigma_hat": self.sigma_hat,
            "expected": self.expected,
            "seifert_sigma_hat": self.seifert_sigma_hat,
            "ok": self.ok,
            "failures": self.failures or [],
        }


def theorem1_check(n: int, seifert_cap: int = 20) -> Theorem1Report:
    """Check sigma_hat(T(3,n)) = 2*ceil(2n/3), cross-checked on the braid (ab)^n for n <= seifert_cap."""
    if n < 4 or n % 3 == 0:
        raise ValueError("need n >= 4 not divisible by 3")
    sh = sigma_hat_torus(torus(3, n))
    expected = 2 * (-(-2 * n // 3))
    failures = []
    if sh != expected:
        failures.append(f"jump formula gives {sh}, expected {expected}")
    seif = None
    if n <= seifert_cap:
        from .braid import torus_braid
        from .seifert import sigma_hat

        seif = sigma_hat(torus_braid(3, n))
        if seif != sh:
            failures.append(f"Seifert matrix gives {seif}, jump formula {sh}")
    return Theorem1Report(n, sh, expected, seif, not failures, failures)
