"""
Seifert matrices of braid closures and the invariants read off them.

The surface is the usual one for a closed braid: one disc per strand and a
half-twisted band per letter.  For each generator sigma_i with occurrences
at word positions p_1 < ... < p_m there are m-1 basis loops, the k-th
running through the bands at p_k and p_{k+1}.  Basis order: generator
index first, then occurrence order.

Sign convention: positive braids get negative signatures (the trefoil
``aaa`` has signature -2).  Pass ``paper_sign=True`` where the opposite
convention is wanted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import sympy
from sympy import totient

from .braid import BraidError, BraidWord, closure_components
from .certified import UncertifiedError, cot_pi, symmetric_pencil_inertia
from .exact import bareiss_det, cyclotomic, interpolate, poly_divmod, symmetric_to_trace_poly


class OnJumpError(ValueError):
    """The sample point is a root of the Alexander polynomial."""


@dataclass(frozen=True)
class SeifertMatrix:
    entries: tuple[tuple[int, ...], ...]
    source: BraidWord | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.entries)

    def transpose(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.entries)) if self.entries else ()

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class LaurentPoly:
    """sum coeffs[k] * t^(low + k)."""

    coeffs: tuple[int, ...]
    low: int = 0

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.low + k
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    def __call__(self, t):
        return sum(c * t ** (self.low + k) for k, c in enumerate(self.coeffs))


@dataclass(frozen=True)
class LTValue:
    s: Fraction
    sigma: int
    certified: bool


def _loops(w: BraidWord):
    occ: dict[int, list[int]] = {}
    for pos, x in enumerate(w.letters):
        occ.setdefault(abs(x), []).append(pos)
    missing = [i for i in range(1, w.strands) if i not in occ]
    if missing:
        raise BraidError(f"generators {missing} do not occur; destabilize first")
    loops = []
    for i in range(1, w.strands):
        o = occ[i]
        for k in range(len(o) - 1):
            loops.append((i, o[k], o[k + 1], k))
    return loops


def seifert_matrix(w: BraidWord) -> SeifertMatrix:
    if w.strands == 1:
        return SeifertMatrix((), w)
    loops = _loops(w)
    sign = [1 if x > 0 else -1 for x in w.letters]
    r = len(loops)
    v = [[0] * r for _ in range(r)]
    index = {(i, k): a for a, (i, _, _, k) in enumerate(loops)}
    for a, (i, p, q, k) in enumerate(loops):
        v[a][a] = -(sign[p] + sign[q]) // 2
        b = index.get((i, k + 1))
        if b is not None:
            e = sign[q]
            v[a][b] = (1 + e) // 2
            v[b][a] = (e - 1) // 2
    for a, (i, p, q, _) in enumerate(loops):
        for b, (j, r0, s0, _) in enumerate(loops):
            if j != i + 1:
                continue
            if p < r0 < q < s0:
                v[a][b] = 1
            elif r0 < p < s0 < q:
                v[a][b] = -1
    return SeifertMatrix(tuple(tuple(row) for row in v), w)


@lru_cache(maxsize=4096)
def _alexander_coeffs(entries: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    r = len(entries)
    if r == 0:
        return (1,)
    vt = tuple(zip(*entries))
    xs = list(range(r + 1))
    ys = []
    for t in xs:
        ys.append(bareiss_det([[entries[i][j] - t * vt[i][j] for j in range(r)] for i in range(r)]))
    c = interpolate(xs, ys)
    if not c:
        return (0,)
    while c[0] == 0:
        c.pop(0)
    if c[-1] < 0:
        c = [-x for x in c]
    return tuple(c)


def alexander_poly(v: SeifertMatrix) -> LaurentPoly:
    """det(V - tV^T), normalized symmetric with positive leading coefficient."""
    c = _alexander_coeffs(v.entries)
    return LaurentPoly(c, -((len(c) - 1) // 2))


def alexander_of_word(w: BraidWord) -> LaurentPoly:
    return alexander_poly(seifert_matrix(w))


def is_alexander_root(delta: LaurentPoly, s: Fraction) -> bool:
    """Exact test whether exp(2 pi i s) is a root, via the cyclotomic polynomial of the order."""
    s = Fraction(s)
    m = s.denominator
    if totient(m) > len(delta.coeffs) - 1:
        return False  # Phi_m has degree phi(m) and cannot divide Delta
    _, rem = poly_divmod(list(delta.coeffs), cyclotomic(m))
    return not rem


def _pencil(v: SeifertMatrix):
    # (1-w)V + (1-w^bar)V^T = (1-cos) * [A + i*cot(pi s)*K] with A = V+V^T, K = V^T-V.
    # Real form of the Hermitian matrix A + i g K: [[A, -gK], [gK, A]], twice the inertia.
    r = v.size
    vt = v.transpose()
    a = [[v.entries[i][j] + vt[i][j] for j in range(r)] for i in range(r)]
    k = [[vt[i][j] - v.entries[i][j] for j in range(r)] for i in range(r)]
    s0 = [[0] * (2 * r) for _ in range(2 * r)]
    s1 = [[0] * (2 * r) for _ in range(2 * r)]
    for i in range(r):
        for j in range(r):
            s0[i][j] = s0[r + i][r + j] = a[i][j]
            s1[i][r + j] = -k[i][j]
            s1[r + i][j] = k[i][j]
    return s0, s1


def lt_signature(v: SeifertMatrix, s, *, paper_sign: bool = False, check_root: bool = True) -> LTValue:
    """Levine-Tristram signature at omega = exp(2 pi i s), 0 < s < 1."""
    s = Fraction(s)
    if not 0 < s < 1:
        raise ValueError(f"s must lie in (0, 1), got {s}")
    if v.size == 0:
        return LTValue(s, 0, True)
    if check_root and is_alexander_root(alexander_poly(v), s):
        raise OnJumpError(f"on-jump: exp(2 pi i * {s}) is a root of the Alexander polynomial")
    s0, s1 = _pencil(v)
    inertia = symmetric_pencil_inertia(s0, s1, cot_pi(s))
    sigma = inertia.signature // 2
    return LTValue(s, -sigma if paper_sign else sigma, True)


def symmetrized_signature(v: SeifertMatrix) -> int:
    """Signature of V + V^T, computed exactly by rational LDL with pivot search."""
    r = v.size
    vt = v.transpose()
    m = [[Fraction(v.entries[i][j] + vt[i][j]) for j in range(r)] for i in range(r)]
    return _rational_signature(m)


def _rational_signature(m) -> int:
    m = [row[:] for row in m]
    sig = 0
    while m:
        n = len(m)
        piv = next((i for i in range(n) if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if m[i][j] != 0), None)
            if pair is None:
                return sig
            i, j = pair
            # replace row/col i by row/col i + j: diagonal becomes 2 m_ij != 0
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        d = m[piv][piv]
        sig += 1 if d > 0 else -1
        rest = [k for k in range(n) if k != piv]
        m = [[m[a][b] - m[a][piv] * m[piv][b] / d for b in rest] for a in rest]
    return sig


@dataclass(frozen=True)
class Arc:
    s_lo: float  # arc ends are roots of Delta; reported to double precision
    s_hi: float
    sample: Fraction
    sigma: int


def _s_float(x: Fraction) -> float:
    return float(mpmath.acos(mpmath.mpf(x.numerator) / x.denominator / 2) / (2 * mpmath.pi))


def unit_circle_root_intervals(delta: LaurentPoly, refine_to: Fraction | None = None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals in (-2, 2) for the real roots of g, Delta(t) = t^d g(t + 1/t)."""
    coeffs = list(delta.coeffs)
    g = symmetric_to_trace_poly(coeffs)
    if len(g) <= 1:
        return []
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(g)), x)
    frac = lambda r: Fraction(int(r.p), int(r.q))
    ivs = sorted((frac(lo), frac(hi)) for (lo, hi), _ in poly.intervals())

    def refine(k):
        lo, hi = ivs[k]
        nlo, nhi = poly.refine_root(lo, hi, eps=(hi - lo) / 4)
        ivs[k] = (frac(nlo), frac(nhi))

    while True:
        # intervals must be pairwise separated and keep +-2 outside their interiors and ends
        bad = set()
        for k, (lo, hi) in enumerate(ivs):
            if lo < hi and (lo <= -2 < hi or lo < 2 <= hi):
                bad.add(k)
            if k + 1 < len(ivs) and hi >= ivs[k + 1][0]:
                bad.update(j for j in (k, k + 1) if ivs[j][0] < ivs[j][1])
        if not bad:
            break
        for k in bad:
            refine(k)
    out = [(lo, hi) for lo, hi in ivs if -2 < lo and hi < 2]
    if refine_to is not None:
        for k, (lo, hi) in enumerate(out):
            if lo < hi:
                nlo, nhi = poly.refine_root(lo, hi, eps=refine_to)
                out[k] = (frac(nlo), frac(nhi))
    return sorted(out)


def _s_of_x(x: Fraction, gap_lo: Fraction, gap_hi: Fraction) -> Fraction:
    """A rational s in (0, 1/2] with 2cos(2 pi s) strictly inside (gap_lo, gap_hi)."""
    with mpmath.workprec(200):
        target = mpmath.acos(mpmath.mpf(x.numerator) / x.denominator / 2) / (2 * mpmath.pi)
        den = 1000
        while True:
            s = Fraction(round(target * den), den)
            if 0 < s <= Fraction(1, 2):
                val = 2 * mpmath.cos(2 * mpmath.pi * mpmath.mpf(s.numerator) / s.denominator)
                lo = mpmath.mpf(gap_lo.numerator) / gap_lo.denominator
                hi = mpmath.mpf(gap_hi.numerator) / gap_hi.denominator
                margin = mpmath.mpf(2) ** -150
                if lo + margin < val < hi - margin:
                    return s
            den *= 10
            if den > 10 ** 40:
                raise UncertifiedError("could not place a sample point inside an arc")


def signature_arcs(w: BraidWord, v: SeifertMatrix | None = None) -> list[Arc]:
    """One certified sample per arc of the upper half circle between roots of Delta."""
    v = seifert_matrix(w) if v is None else v
    delta = alexander_poly(v)
    roots = unit_circle_root_intervals(delta, refine_to=Fraction(1, 10 ** 18))
    # x = 2cos(2 pi s) decreases in s on (0, 1/2): walk the x-gaps from +2 downwards
    edges = [Fraction(2)]
    for lo, hi in reversed(roots):
        edges.extend([hi, lo])
    edges.append(Fraction(-2))
    arcs = []
    for k in range(0, len(edges), 2):
        gap_hi, gap_lo = edges[k], edges[k + 1]
        if gap_lo == -2:
            sample = Fraction(1, 2)
        else:
            sample = _s_of_x((gap_lo + gap_hi) / 2, gap_lo, gap_hi)
        val = lt_signature(v, sample, check_root=False)
        s_lo = 0.0 if k == 0 else _s_float((edges[k - 1] + edges[k]) / 2)
        s_hi = 0.5 if gap_lo == -2 else _s_float((edges[k + 1] + edges[k + 2]) / 2)
        arcs.append(Arc(s_lo, s_hi, sample, val.sigma))
    return arcs


def sigma_hat(w: BraidWord) -> int:
    """max |sigma_omega| over omega on the circle away from the roots of Delta."""
    if closure_components(w) != 1:
        raise ValueError("sigma_hat is defined here for knots only")
    w = _ensure_all_generators(w)
    if w.strands == 1:
        return 0
    return max(abs(a.sigma) for a in signature_arcs(w))


def _ensure_all_generators(w: BraidWord) -> BraidWord:
    # a knot closure always uses every generator
    present = {abs(x) for x in w.letters}
    if any(i not in present for i in range(1, w.strands)):
        raise BraidError("closure is not connected")
    return w
