"""
Zariski decompositions and Okounkov polygons on surfaces.

A surface is described numerically: an intersection form on a fixed basis of
the Néron–Severi space, a finite list of candidate negative curves, and the
effective and nef cones.  The engine never discovers curves; if the list is
incomplete the decomposition audits raise :class:`ModelInconsistent`.

Along a segment ``D - t*C`` the negative part is affine in ``t`` inside each
Zariski chamber.  :func:`chamber_walk` follows the segment chamber by
chamber, deciding the support just to the right of the current point by
comparing (value, slope) pairs lexicographically, so walls are located by
solving exact linear equations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional, Sequence
import warnings

from .errors import AdmissibilityError, DomainError, FlagWarning, ModelInconsistent
from .geometry import (
    INFINITY, PiecewiseLinear, Polygon2, PolyhedralCone, add, convex_hull_2d,
    det, dot, fmt_vec, inverse, matvec, q, ray_exit, scale, solve_linear, sub, vec,
)


@dataclass(frozen=True)
class SurfaceModel:
    basis_labels: tuple
    intersection_form: tuple
    negative_curves: tuple  # ((label, class), ...)
    eff_cone: PolyhedralCone
    nef_cone: PolyhedralCone
    name: str = ""

    @classmethod
    def build(cls, basis_labels, form, negative_curves, eff_generators, nef_generators,
              name="") -> "SurfaceModel":
        n = len(basis_labels)
        return cls(tuple(basis_labels),
                   tuple(vec(r) for r in form),
                   tuple((lab, vec(c)) for lab, c in negative_curves),
                   PolyhedralCone.from_generators(eff_generators, n),
                   PolyhedralCone.from_generators(nef_generators, n),
                   name)

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    def dot(self, u: Sequence, v: Sequence) -> Fraction:
        return dot(u, matvec(self.intersection_form, v))

    def curve(self, label: str):
        for lab, c in self.negative_curves:
            if lab == label:
                return c
        raise KeyError(f"unknown curve {label!r}")

    def curve_label_of(self, cls) -> Optional[str]:
        cls = vec(cls)
        for lab, c in self.negative_curves:
            if c == cls:
                return lab
        return None

    def is_big(self, D: Sequence) -> bool:
        return self.eff_cone.interior_contains(vec(D))

    def validate(self) -> None:
        M = self.intersection_form
        n = self.rank
        if len(M) != n or any(len(r) != n for r in M):
            raise ModelInconsistent(f"{self.name}: intersection form is not {n}x{n}")
        if any(M[i][j] != M[j][i] for i in range(n) for j in range(n)):
            raise ModelInconsistent(f"{self.name}: intersection form not symmetric")
        for lab, c in self.negative_curves:
            if self.dot(c, c) >= 0:
                raise ModelInconsistent(f"{self.name}: curve {lab} has non-negative self-intersection")
            if not self.eff_cone.contains(c):
                raise ModelInconsistent(f"{self.name}: curve {lab} not in the effective cone")
        for nv in self.nef_cone.rays:
            for ev in self.eff_cone.rays:
                if self.dot(nv, ev) < 0:
                    raise ModelInconsistent(
                        f"{self.name}: nef generator {nv} pairs negatively with effective {ev}")


@dataclass(frozen=True)
class SurfaceFlag:
    """Flag ``S ⊃ C ⊃ {x}``: the class of ``C`` and local intersection
    multiplicities at ``x`` of the negative curves with ``C``."""

    curve_class: tuple
    curve_selfint: Fraction
    point_data: tuple = ()  # ((label, multiplicity), ...)

    @classmethod
    def build(cls, curve_class, curve_selfint, point_data: Mapping = None) -> "SurfaceFlag":
        pd = tuple(sorted((k, int(v)) for k, v in (point_data or {}).items()))
        return cls(vec(curve_class), q(curve_selfint), pd)

    def mult(self, label: str) -> int:
        return dict(self.point_data).get(label, 0)

    def validate(self, model: SurfaceModel) -> None:
        if model.dot(self.curve_class, self.curve_class) != self.curve_selfint:
            raise ModelInconsistent("flag curve self-intersection disagrees with the form")
        for lab, m in self.point_data:
            c = model.curve(lab)
            if m < 0 or (model.curve_label_of(self.curve_class) != lab
                         and m > model.dot(c, self.curve_class)):
                raise ModelInconsistent(f"point multiplicity of {lab} out of range")


@dataclass(frozen=True)
class ZariskiDecomposition:
    positive: tuple
    negative_coeffs: tuple  # ((label, coefficient), ...) sorted, positive only
    support: frozenset

    def coeff(self, label: str) -> Fraction:
        return dict(self.negative_coeffs).get(label, Fraction(0))

    def negative(self, model: SurfaceModel) -> tuple:
        out = tuple(Fraction(0) for _ in range(model.rank))
        for lab, c in self.negative_coeffs:
            out = add(out, scale(c, model.curve(lab)))
        return out


# ---------------------------------------------------------------------------
# Zariski decomposition
# ---------------------------------------------------------------------------

def _sign(v, s=Fraction(0)) -> int:
    x = v if v != 0 else s
    return (x > 0) - (x < 0)


def _gram(model: SurfaceModel, labels) -> list:
    cs = [model.curve(l) for l in labels]
    return [[model.dot(a, b) for b in cs] for a in cs]


def is_negative_definite(G) -> bool:
    """Leading principal minors alternate in sign, starting negative."""
    n = len(G)
    for k in range(1, n + 1):
        d = det([row[:k] for row in G[:k]])
        if d == 0 or (d > 0) != (k % 2 == 0):
            return False
    return True


def _walk(model: SurfaceModel, D0: tuple, D1: tuple):
    """Support and affine negative part of ``D0 + eps*D1`` for small ``eps > 0``.

    Returns ``(support, coeffs, P0, P1)`` with ``coeffs[label] = (value, slope)``.
    """
    curves = model.negative_curves
    support = [lab for lab, c in curves
               if _sign(model.dot(D0, c), model.dot(D1, c)) < 0]
    while True:
        coeffs = {}
        if support:
            G = _gram(model, support)
            cs = [model.curve(l) for l in support]
            x0 = solve_linear(G, [model.dot(D0, c) for c in cs])
            x1 = solve_linear(G, [model.dot(D1, c) for c in cs])
            if x0 is None or x1 is None:
                raise ModelInconsistent(
                    "model inconsistent: candidate curve set incomplete or not "
                    f"irreducible-negative (singular Gram matrix on {support})")
            for lab, a, b in zip(support, x0, x1):
                if _sign(a, b) < 0:
                    raise ModelInconsistent(
                        "model inconsistent: candidate curve set incomplete or not "
                        f"irreducible-negative (coefficient of {lab} negative)")
                coeffs[lab] = (a, b)
        P0, P1 = D0, D1
        for lab, (a, b) in coeffs.items():
            c = model.curve(lab)
            P0 = sub(P0, scale(a, c))
            P1 = sub(P1, scale(b, c))
        new = [lab for lab, c in curves if lab not in coeffs
               and _sign(model.dot(P0, c), model.dot(P1, c)) < 0]
        if not new:
            break
        support = support + new
    coeffs = {k: v for k, v in coeffs.items() if v != (0, 0)}
    return tuple(sorted(coeffs)), coeffs, P0, P1


def check_decomposition(model: SurfaceModel, D, Z: ZariskiDecomposition) -> None:
    """Assert the Zariski axioms; raises ModelInconsistent on failure."""
    if add(Z.positive, Z.negative(model)) != vec(D):
        raise ModelInconsistent("decomposition does not sum to D")
    if any(c < 0 for _, c in Z.negative_coeffs):
        raise ModelInconsistent("negative coefficient in negative part")
    if not model.nef_cone.contains(Z.positive) or any(
            model.dot(Z.positive, c) < 0 for _, c in model.negative_curves):
        raise ModelInconsistent(
            "model inconsistent: candidate curve set incomplete or not "
            "irreducible-negative (positive part not nef)")
    for lab in Z.support:
        if model.dot(Z.positive, model.curve(lab)) != 0:
            raise ModelInconsistent(f"positive part not orthogonal to {lab}")
    if Z.support and not is_negative_definite(_gram(model, sorted(Z.support))):
        raise ModelInconsistent("Gram matrix of the support is not negative definite")


def zariski_decompose(model: SurfaceModel, D) -> ZariskiDecomposition:
    """Zariski decomposition ``D = P + N`` of a pseudo-effective class."""
    D = vec(D)
    if not model.eff_cone.contains(D):
        raise DomainError(f"not pseudo-effective: ({fmt_vec(D)})")
    zero = tuple(Fraction(0) for _ in D)
    support, coeffs, P0, _ = _walk(model, D, zero)
    Z = ZariskiDecomposition(P0, tuple(sorted((k, v[0]) for k, v in coeffs.items())),
                             frozenset(support))
    check_decomposition(model, D, Z)
    return Z


def asymptotic_valuation_surface(model: SurfaceModel, D, curve_label: str) -> Fraction:
    model.curve(curve_label)
    return zariski_decompose(model, D).coeff(curve_label)


def mu_surface(model: SurfaceModel, D, curve_class) -> Fraction:
    """Largest ``s`` with ``D - s*C`` pseudo-effective."""
    mu = ray_exit(model.eff_cone, vec(D), vec(curve_class))
    if mu == INFINITY:
        raise ModelInconsistent("effective cone is not pointed along the flag curve")
    return mu


def flag_order(model: SurfaceModel, D, curve_class) -> Fraction:
    """Asymptotic order of ``D`` along the flag curve (0 unless it is a listed curve)."""
    lab = model.curve_label_of(curve_class)
    if lab is None:
        return Fraction(0)
    return zariski_decompose(model, D).coeff(lab)


# ---------------------------------------------------------------------------
# chamber walk
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WalkPiece:
    """Closed interval ``[lo, hi]`` of the segment on which the support is
    constant.  Coefficients and the positive part are stored as affine
    functions of the absolute parameter ``t``: ``(slope, intercept)``."""

    lo: Fraction
    hi: Fraction
    support: tuple
    coeffs: tuple  # ((label, (slope, intercept)), ...)
    positive: tuple  # (slope vector, intercept vector)

    def coeff_at(self, label, t) -> Fraction:
        s, c = dict(self.coeffs).get(label, (0, 0))
        return s * t + c

    def positive_at(self, t) -> tuple:
        s, c = self.positive
        return add(scale(t, s), c)


def chamber_walk(model: SurfaceModel, D, C, lo, hi) -> list:
    """Pieces of constant negative support along ``D - t*C`` for ``t`` in ``[lo, hi]``."""
    D, C = vec(D), vec(C)
    lo, hi = q(lo), q(hi)
    minus_c = scale(-1, C)
    pieces = []
    t = lo
    while True:
        Dt = sub(D, scale(t, C))
        slope = minus_c if t < hi else tuple(Fraction(0) for _ in C)
        support, coeffs, P0, P1 = _walk(model, Dt, slope)
        nxt = hi
        if t < hi:
            for lab, (v, s) in coeffs.items():
                if s < 0:
                    nxt = min(nxt, t - v / s)
            for lab, c in model.negative_curves:
                if lab in coeffs:
                    continue
                v, s = model.dot(P0, c), model.dot(P1, c)
                if s < 0:
                    nxt = min(nxt, t - v / s)
        aff = tuple(sorted((lab, (s, v - s * t)) for lab, (v, s) in coeffs.items()))
        pieces.append(WalkPiece(t, nxt, support, aff, (P1, sub(P0, scale(t, P1)))))
        if nxt >= hi:
            break
        t = nxt
    return pieces


def negative_part_breakpoints(model: SurfaceModel, D, curve_class) -> list:
    """Parameters where the negative support of ``D - t*C`` changes, with endpoints."""
    D = vec(D)
    if not model.is_big(D):
        raise DomainError("segment must start in the big cone")
    lo = flag_order(model, D, curve_class)
    hi = mu_surface(model, D, curve_class)
    pieces = chamber_walk(model, D, curve_class, lo, hi)
    pts = [pieces[0].lo] + [p.hi for p in pieces]
    out = []
    for x in pts:
        if not out or out[-1] != x:
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# Okounkov polygons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceOkounkovPolygon:
    polygon: Polygon2
    t_breakpoints: tuple
    alpha: PiecewiseLinear
    beta: PiecewiseLinear
    neg_support_per_piece: tuple
    limiting: bool = False


def okounkov_curve(d) -> tuple:
    """Body of a degree ``d`` divisor on a curve: the interval ``[0, d]``."""
    d = q(d)
    if d < 0:
        raise DomainError("not effective")
    return (Fraction(0), d)


def _warn_if_null(model: SurfaceModel, flag: SurfaceFlag, D, lo) -> None:
    # Admissibility is tested as "C outside the negative support", which misses
    # curves of the null locus of P (P.C = 0, only possible when C^2 < 0).
    C = flag.curve_class
    if flag.curve_selfint >= 0 or not model.is_big(D):
        return
    P = zariski_decompose(model, sub(D, scale(lo, C))).positive
    if model.dot(P, C) == 0:
        warnings.warn(f"flag curve ({fmt_vec(C)}) has P.C = 0 and may lie in B+(D); "
                      "admissibility was checked on the negative support only", FlagWarning,
                      stacklevel=3)


def okounkov_polygon(model: SurfaceModel, flag: SurfaceFlag, D) -> SurfaceOkounkovPolygon:
    """Okounkov polygon of ``D`` for the flag ``(C, x)``.

    For ``t`` between the asymptotic order of ``D`` along ``C`` and the
    pseudo-effective threshold, the vertical slice is
    ``[alpha(t), alpha(t) + C.P_t]`` with ``alpha(t) = ord_x(N_t|C)``.
    Non-big classes get the limiting polygon from the same formulas.
    """
    D = vec(D)
    if not model.eff_cone.contains(D):
        raise DomainError(f"not pseudo-effective: ({fmt_vec(D)})")
    C = flag.curve_class
    lo = flag_order(model, D, C)
    hi = mu_surface(model, D, C)
    flag_label = model.curve_label_of(C)
    pieces = chamber_walk(model, D, C, lo, hi)
    _warn_if_null(model, flag, D, lo)

    bps = [pieces[0].lo]
    a_pieces, b_pieces, supports = [], [], []
    for p in pieces:
        if flag_label is not None and flag_label in p.support:
            raise AdmissibilityError(
                f"inadmissible flag curve: {flag_label} lies in the negative part "
                f"on [{p.lo}, {p.hi}]")
        a_s = sum((s * flag.mult(lab) for lab, (s, _) in p.coeffs), Fraction(0))
        a_c = sum((c * flag.mult(lab) for lab, (_, c) in p.coeffs), Fraction(0))
        ps, pc = p.positive
        b_s = a_s + model.dot(C, ps)
        b_c = a_c + model.dot(C, pc)
        a_pieces.append((a_s, a_c))
        b_pieces.append((b_s, b_c))
        supports.append(frozenset(p.support))
        bps.append(p.hi)
    alpha = PiecewiseLinear(tuple(bps), tuple(a_pieces))
    beta = PiecewiseLinear(tuple(bps), tuple(b_pieces))
    pts = []
    for t in bps:
        a, b = alpha(t), beta(t)
        if b < a:
            raise ModelInconsistent(f"alpha exceeds beta at t={t}")
        pts += [(t, a), (t, b)]
    poly = convex_hull_2d(pts)
    return SurfaceOkounkovPolygon(poly, tuple(bps), alpha, beta, tuple(supports),
                                  limiting=not model.is_big(D))


# ---------------------------------------------------------------------------
# walls in a two-parameter family
# ---------------------------------------------------------------------------

def _functionals(model: SurfaceModel, max_curves: int = 12) -> list:
    """Linear functionals whose zero sets contain every Zariski wall and every
    face of the effective cone."""
    out = [tuple(Fraction(x) for x in n) for n in model.eff_cone.normals]
    curves = list(model.negative_curves)[:max_curves]
    M = model.intersection_form
    Mc = {lab: matvec(M, c) for lab, c in curves}
    for k in range(0, len(curves) + 1):
        for T in combinations(curves, k):
            labels = [lab for lab, _ in T]
            if labels:
                G = _gram(model, labels)
                if not is_negative_definite(G):
                    continue
                Ginv = inverse(G)
                fs = []
                for j in range(len(labels)):
                    f = tuple(Fraction(0) for _ in range(model.rank))
                    for kk, lab in enumerate(labels):
                        f = add(f, scale(Ginv[j][kk], Mc[lab]))
                    fs.append(f)
                out += fs
            else:
                fs = []
            for lab2, c2 in curves:
                if lab2 in labels:
                    continue
                g = Mc[lab2]
                for j, lab in enumerate(labels):
                    g = sub(g, scale(model.dot(model.curve(lab), c2), fs[j]))
                out.append(g)
    return out


def wall_candidates(model: SurfaceModel, flag: SurfaceFlag, A0, A1, lo, hi) -> list:
    """Parameters ``t`` in ``(lo, hi)`` where the polygon of ``A0 + t*A1`` may
    stop varying affinely.

    Every wall of the decomposition of ``B(t, s) = A0 + t*A1 - s*C`` lies on
    a line ``f(B) = 0`` for one of finitely many functionals ``f``; the
    polygon's vertices move affinely in ``t`` away from the ``t``-coordinates
    of pairwise intersections of these lines.  The result is a superset of
    the true breakpoints.
    """
    A0, A1, C = vec(A0), vec(A1), flag.curve_class
    lo, hi = q(lo), q(hi)
    lines = {(Fraction(0), Fraction(0), Fraction(1))}  # s = 0
    for f in _functionals(model):
        line = (dot(f, A0), dot(f, A1), -dot(f, C))
        if line[1] == 0 and line[2] == 0:
            continue
        lines.add(line)
    ts = set()
    lines = sorted(lines)
    for c0, ct, cs in lines:
        if cs == 0:
            ts.add(-c0 / ct)
    for (a0, at, as_), (b0, bt, bs) in combinations(lines, 2):
        d = at * bs - as_ * bt
        if d == 0:
            continue
        ts.add((-a0 * bs + as_ * b0) / d)
    return sorted(t for t in ts if lo < t < hi)
