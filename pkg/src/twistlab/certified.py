"""
Certified inertia of real symmetric pencils S0 + g*S1 with integer S0, S1.

Strategy: take approximate eigenvectors Q of the floating-point matrix and
look at the congruent matrix M = Q^T S Q.  By Sylvester's law the inertia of
M equals that of S as long as Q is nonsingular.  If every Gershgorin disc of
M, widened by a rigorous bound on the rounding error of the computation,
excludes zero, then M is nonsingular (hence so is Q) and the signs of the
diagonal give the inertia.  Otherwise retry in mpmath at higher precision.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

DEFAULT_PRECISION_CAP = 1024  # bits


class UncertifiedError(ArithmeticError):
    """Inertia could not be certified below the precision cap."""


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    bits: int  # working precision that produced the certificate

    @property
    def signature(self) -> int:
        return self.positive - self.negative


def precision_cap() -> int:
    raw = os.environ.get("TWISTLAB_PRECISION_CAP")
    if not raw:
        return DEFAULT_PRECISION_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"TWISTLAB_PRECISION_CAP must be an integer number of bits, got {raw!r}") from None
    return max(cap, 53)


def _gamma(k: int, u: float) -> float:
    ku = k * u
    if ku >= 0.5:
        return float("inf")
    return ku / (1 - ku)


def _decide(diag, offsum, err, n: int, u: float) -> tuple[int, int] | None:
    pos = neg = 0
    slack = 1 + 4 * n * u
    for i in range(n):
        c = abs(diag[i])
        if not c > (offsum[i] + err[i]) * slack:
            return None
        if diag[i] > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg


def _float_attempt(s0: np.ndarray, s1: np.ndarray, g: float, g_err: float):
    n = s0.shape[0]
    u = 2.0 ** -53
    s = s0 + g * s1
    _, q = np.linalg.eigh(s)
    aq = np.abs(q)
    m0 = q.T @ (s0 @ q)
    m1 = q.T @ (s1 @ q)
    # |fl(Q^T fl(X Q)) - Q^T X Q| <= ~2 gamma_n |Q|^T |X| |Q|; doubled for the bound's own rounding
    g_n = _gamma(n + 2, u)
    b0 = aq.T @ (np.abs(s0) @ aq)
    b1 = aq.T @ (np.abs(s1) @ aq)
    e0 = 4 * g_n * b0
    e1 = 4 * g_n * b1
    m = m0 + g * m1
    err = e0 + abs(g) * e1 + g_err * (np.abs(m1) + e1) + 4 * u * (np.abs(m0) + abs(g) * np.abs(m1))
    diag = np.diag(m)
    off = np.abs(m).sum(axis=1) - np.abs(diag)
    return _decide(diag, off, err.sum(axis=1), n, u)


def _mp_attempt(s0, s1, g, bits: int):
    n = len(s0)
    with mpmath.workprec(bits):
        u = mpmath.mpf(2) ** (1 - bits)
        gm = mpmath.mpf(g)
        s = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                s[i, j] = s0[i][j] + gm * s1[i][j]
        _, q = mpmath.eigsy(s)
        qt = q.T
        m = qt * s * q
        aq = mpmath.matrix(n, n)
        abs_s = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                aq[i, j] = abs(q[i, j])
                abs_s[i, j] = abs(s[i, j])
        bound = aq.T * abs_s * aq
        g_n = (n + 3) * u / (1 - (n + 3) * u)
        # the rounding of s itself is folded into the extra +1 in the dimension factor
        diag, off, err = [], [], []
        for i in range(n):
            diag.append(m[i, i])
            off.append(sum(abs(m[i, j]) for j in range(n) if j != i))
            err.append(sum(8 * g_n * bound[i, j] for j in range(n)))
        return _decide(diag, off, err, n, u)


def symmetric_pencil_inertia(s0, s1, g_exact, cap: int | None = None) -> Inertia:
    """Inertia of S0 + g*S1 where ``g_exact`` evaluates g at a given working precision.

    ``g_exact(bits)`` must return an mpf accurate to the working precision.
    """
    cap = precision_cap() if cap is None else cap
    n = len(s0)
    if n == 0:
        return Inertia(0, 0, 53)
    a0 = np.array(s0, dtype=float)
    a1 = np.array(s1, dtype=float)
    with mpmath.workprec(120):
        gv = g_exact(120)
        g = float(gv)
        g_err = float(abs(gv - mpmath.mpf(g))) + 2.0 ** -100 * abs(g)
    res = _float_attempt(a0, a1, g, g_err)
    if res is not None:
        return Inertia(res[0], res[1], 53)
    bits = 128
    while bits <= cap:
        with mpmath.workprec(bits + 32):
            gv = g_exact(bits + 32)
        res = _mp_attempt(s0, s1, gv, bits)
        if res is not None:
            return Inertia(res[0], res[1], bits)
        bits *= 2
    raise UncertifiedError(f"inertia not certified up to {cap} bits")


def cot_pi(s: Fraction):
    """Return g(bits) = cot(pi*s) evaluated at the requested precision."""

    def g(bits: int):
        with mpmath.workprec(bits):
            x = mpmath.mpf(s.numerator) / s.denominator
            return mpmath.cot(mpmath.pi * x)

    return g
