"""Exact integer linear algebra and integer polynomials (coefficient lists, low degree first)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = list[int]


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Gaussian elimination."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def interpolate(xs: Sequence[int], ys: Sequence[int]) -> Poly:
    """Integer coefficients of the polynomial through the points; raises if they are not integral."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Newton form -> monomial basis
    out = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # out = out * (x - xs[i]) + coef[i]
        shifted = [Fraction(0)] + out[:-1]
        out = [shifted[k] - xs[i] * out[k] for k in range(n)]
        out[0] += coef[i]
    res = []
    for c in out:
        if c.denominator != 1:
            raise ArithmeticError("interpolated polynomial is not integral")
        res.append(int(c))
    return trim(res)


def trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(p: Sequence[int], q: Sequence[int]) -> Poly:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def poly_divmod(p: Sequence[int], d: Sequence[int]) -> tuple[Poly, Poly]:
    """Division by a monic (or unit-leading) integer polynomial."""
    p, d = trim(p), trim(d)
    if not d:
        raise ZeroDivisionError("division by zero polynomial")
    lead = d[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have leading coefficient +-1")
    rem = list(p)
    quot = [0] * max(0, len(p) - len(d) + 1)
    for k in range(len(p) - len(d), -1, -1):
        c = rem[k + len(d) - 1] * lead
        quot[k] = c
        if c:
            for j, b in enumerate(d):
                rem[k + j] -= c * b
    return trim(quot), trim(rem)


def cyclotomic(m: int) -> Poly:
    """The m-th cyclotomic polynomial."""
    p: Poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p, r = poly_divmod(p, cyclotomic(d))
            assert not r
    return p


def chebyshev_like(k: int) -> Poly:
    """P_k with t^k + t^-k = P_k(t + 1/t)."""
    p0: Poly = [2]
    p1: Poly = [0, 1]
    if k == 0:
        return p0
    for _ in range(k - 1):
        nxt = [0] + p1
        for i, c in enumerate(p0):
            nxt[i] -= c
        p0, p1 = p1, trim(nxt)
    return p1


def symmetric_to_trace_poly(coeffs: Sequence[int]) -> Poly:
    """For palindromic c_0..c_{2d}, return g with t^-d * sum c_k t^k = g(t + 1/t)."""
    if len(coeffs) % 2 == 0:
        raise ValueError("need an odd number of coefficients")
    d = len(coeffs) // 2
    g = [coeffs[d]]
    for k in range(1, d + 1):
        pk = chebyshev_like(k)
        g = g + [0] * (len(pk) - len(g))
        for i, c in enumerate(pk):
            g[i] += coeffs[d + k] * c
    return trim(g)
