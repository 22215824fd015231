"""
Brute-force Okounkov bodies on P^3 and its blow-ups at coordinate points.

A divisor ``alpha*phi*H - beta1*E1 - beta2*E2`` has as sections the degree
``N = m*alpha`` forms on P^3 with multiplicity at least ``m*beta_i`` at
``p1 = [1:0:0:0]`` and ``p2 = [0:1:0:0]``.  Both conditions are monomial, so
the section space is spanned by monomials ``x0^a x1^b x2^c x3^k``.

The flag is ``E1 ⊃ {u1 = 0} ⊃ (1:0)`` in the exceptional plane over ``p1``,
with local coordinates ``u_i = x_i/x0``.  A monomial has leading form itself,
so its valuation is ``(b + c + k - m*beta1, b, k)``.  The valuation of a
polynomial is the lexicographic minimum over its monomials, and distinct
monomials have distinct valuations, so the image of all sections is exactly
the set of monomial valuations.  :func:`section_count` cross-checks the size
of that set against an inclusion–exclusion count.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .errors import DomainError, ModelInconsistent
from .geometry import Polytope3, convex_hull_3d, q, vec

KINDS = ("projective-3-space", "blowup-1pt", "blowup-2pts")


@dataclass(frozen=True)
class OracleModel:
    kind: str = "blowup-2pts"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown oracle kind {self.kind!r}; known: {', '.join(KINDS)}")

    @property
    def centers(self) -> int:
        return KINDS.index(self.kind)


@dataclass(frozen=True)
class ValuationSet:
    m: int
    vectors: frozenset


def _twists(om: OracleModel, D, m: int):
    """Degree and multiplicity thresholds for ``m*D``."""
    D = vec(D)
    if len(D) != 3:
        raise DomainError("oracle divisors have coordinates (phiH, E1, E2)")
    alpha, b1, b2 = q(D[0]), -q(D[1]), -q(D[2])
    if om.centers < 2 and b2 != 0:
        raise DomainError(f"{om.kind} has no second exceptional divisor")
    if om.centers < 1 and b1 != 0:
        raise DomainError(f"{om.kind} has no exceptional divisor")
    mD = [m * alpha, m * b1, m * b2]
    if any(x.denominator != 1 for x in mD):
        raise DomainError(f"m*D is not integral for m={m}")
    if alpha < 0:
        raise DomainError("alpha must be non-negative")
    return int(mD[0]), int(mD[1]), int(mD[2])


def monomial_valuation(b: int, c: int, k: int) -> tuple:
    """Raw valuation of ``x0^a x1^b x2^c x3^k`` (no twist by ``E1``)."""
    return (b + c + k, b, k)


def enumerate_valuations(om: OracleModel, D, m: int) -> ValuationSet:
    if m < 1:
        raise DomainError("m must be positive")
    N, r1, r2 = _twists(om, D, m)
    out = set()
    for a in range(N + 1):
        if r1 > 0 and N - a < r1:
            continue
        for b in range(N - a + 1):
            if r2 > 0 and N - b < r2:
                continue
            for c in range(N - a - b + 1):
                k = N - a - b - c
                v1, v2, v3 = monomial_valuation(b, c, k)
                out.add((v1 - r1, v2, v3))
    vs = ValuationSet(m, frozenset(out))
    expected = section_count(om, D, m)
    if len(vs.vectors) != expected:
        raise ModelInconsistent(
            f"valuation count {len(vs.vectors)} differs from h0 = {expected} at m={m}")
    return vs


def section_count(om: OracleModel, D, m: int) -> int:
    """``h^0(m*D)`` by inclusion–exclusion over the two multiplicity conditions."""
    N, r1, r2 = _twists(om, D, m)

    def tail(excess):  # degree-N monomials with a chosen exponent sum >= excess
        return comb(N - excess + 3, 3) if excess <= N else 0

    A = N - r1 + 1 if r1 > 0 else None  # a >= A violates mult at p1
    B = N - r2 + 1 if r2 > 0 else None
    total = comb(N + 3, 3)
    if A is not None:
        total -= tail(A)
    if B is not None:
        total -= tail(B)
    if A is not None and B is not None:
        total += tail(A + B)
    return total


@dataclass(frozen=True)
class OracleHull:
    polytope: Optional[Polytope3]
    affine_dim: int
    volume: Fraction
    m_max: int


def oracle_hull(om: OracleModel, D, m_max: int = 8, threads: int = 1) -> OracleHull:
    """Convex hull of ``(1/m) * Gamma(mD)_m`` over ``1 <= m <= m_max``.

    Levels with ``m*D`` non-integral are skipped.
    """
    if m_max < 1:
        raise DomainError("m_max must be at least 1")
    ms = []
    for m in range(1, m_max + 1):
        try:
            _twists(om, D, m)
        except DomainError as exc:
            if "not integral" in str(exc):
                continue
            raise
        ms.append(m)

    def level(m):
        vs = enumerate_valuations(om, D, m).vectors
        if not vs:
            return ()
        pts = [tuple(Fraction(x, m) for x in v) for v in vs]
        return convex_hull_3d(pts).vertices

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            levels = list(ex.map(level, ms))
    else:
        levels = [level(m) for m in ms]
    pts = [p for lv in levels for p in lv]
    if not pts:
        return OracleHull(None, -1, Fraction(0), m_max)
    P = convex_hull_3d(pts)
    return OracleHull(P, P.affine_dim, P.volume, m_max)
