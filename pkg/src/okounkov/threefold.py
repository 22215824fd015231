"""
Okounkov bodies of divisors on Mori dream threefolds.

The input is numerical: Mori chambers with linear maps ``D -> P_D`` and
``D -> N_D``, a flag surface ``S`` together with a restriction map to its
Néron–Severi space, and a surface flag on ``S``.  The body is assembled
slice by slice: for ``t`` in ``[ord_S(||D||), mu]`` the slice ``{x1 = t}`` is
the Okounkov polygon of ``P_{D - tS}|_S`` translated by the chamber's shift
``l(t)``.  Slices move affinely between consecutive walls, so the body is
the convex hull of the slices at the walls.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Optional, Sequence

from .errors import AdmissibilityError, DomainError, ModelInconsistent
from .geometry import (
    PiecewiseLinear, Polygon2, PolyhedralCone, Polytope3, add, convex_hull_2d,
    convex_hull_3d, dot, fmt_vec, identity, mat, matvec, q, rank, ray_exit, scale, solve_linear,
    sub, vec,
)
from .surface import (
    SurfaceFlag, SurfaceModel, SurfaceOkounkovPolygon, chamber_walk,
    okounkov_polygon, wall_candidates,
)


@dataclass(frozen=True)
class FlagSurfaceData:
    """The flag surface ``S``, the curve/point flag on it, and the linear map
    ``N^1(X) -> N^1(S)`` (rows indexed by the surface basis)."""

    surface: SurfaceModel
    flag: SurfaceFlag
    restriction_map: tuple

    def restrict(self, D) -> tuple:
        return matvec(self.restriction_map, D)


@dataclass(frozen=True)
class MoriChamber:
    """A chamber of the effective cone with its positive and negative part maps.

    ``n_generator_shifts`` maps an effective generator label to the
    contribution of one copy of that generator to the slice translation.
    ``flag_data`` overrides the model's flag surface on this chamber, for
    chambers whose modification changes the strict transform of ``S``.
    """

    name: str
    cone: PolyhedralCone
    p_map: tuple
    n_map: tuple
    identity_sqm: bool = True
    n_generator_shifts: tuple = ()  # ((label, (l1, l2)), ...)
    flag_disjoint: bool = False
    flag_data: Optional[FlagSurfaceData] = None

    @property
    def admissible(self) -> bool:
        return self.identity_sqm or self.flag_disjoint

    def P(self, D) -> tuple:
        return matvec(self.p_map, D)

    def N(self, D) -> tuple:
        return matvec(self.n_map, D)

    def shift_of(self, label: str) -> tuple:
        return dict(self.n_generator_shifts).get(label, (Fraction(0), Fraction(0)))


@dataclass(frozen=True, eq=False)
class ThreefoldModel:
    name: str
    basis_labels: tuple
    eff_generators: tuple  # ((label, class), ...)
    chambers: tuple
    flag_surface_class: tuple
    flag_data: FlagSurfaceData
    flag_surface_label: Optional[str] = None
    trilinear_form: Optional[tuple] = None  # (((i, j, k), value), ...) with i <= j <= k
    nef_cone: Optional[PolyhedralCone] = None

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    @cached_property
    def eff_cone(self) -> PolyhedralCone:
        return PolyhedralCone.from_generators([g for _, g in self.eff_generators], self.rank)

    def chamber(self, name: str) -> MoriChamber:
        for ch in self.chambers:
            if ch.name == name:
                return ch
        raise KeyError(f"unknown chamber {name!r}")

    def generator(self, label: str) -> tuple:
        for lab, g in self.eff_generators:
            if lab == label:
                return g
        raise KeyError(f"unknown effective generator {label!r}")

    def flag_for(self, chamber: MoriChamber) -> FlagSurfaceData:
        return chamber.flag_data or self.flag_data

    def eff_coordinates(self, D) -> tuple:
        """Coordinates of ``D`` in the effective generators (simplicial Eff only)."""
        gens = [g for _, g in self.eff_generators]
        if len(gens) != self.rank:
            raise ModelInconsistent("effective cone is not simplicial: generator "
                                    "coordinates are not unique")
        A = [[g[i] for g in gens] for i in range(self.rank)]
        x = solve_linear(A, vec(D))
        if x is None:
            raise ModelInconsistent("effective generators are linearly dependent")
        return x

    def cube(self, D) -> Fraction:
        """``D^3`` under the trilinear form."""
        if self.trilinear_form is None:
            raise ModelInconsistent("no trilinear form")
        T = dict(self.trilinear_form)
        D = vec(D)
        total = Fraction(0)
        for i, j, k in product(range(self.rank), repeat=3):
            total += T.get(tuple(sorted((i, j, k))), 0) * D[i] * D[j] * D[k]
        return total

    def is_big(self, D) -> bool:
        return self.eff_cone.interior_contains(vec(D))

    # -- audits ------------------------------------------------------------

    def validate(self) -> None:
        n = self.rank
        eff = self.eff_cone
        if not eff.is_full_dimensional():
            raise ModelInconsistent(f"{self.name}: effective cone not full dimensional")
        for lab, g in self.eff_generators:
            if len(g) != n:
                raise ModelInconsistent(f"{self.name}: generator {lab} has wrong length")
        names = [c.name for c in self.chambers]
        if len(set(names)) != len(names):
            raise ModelInconsistent(f"{self.name}: duplicate chamber names")
        I = identity(n)
        for ch in self.chambers:
            if any(add(ch.p_map[i], ch.n_map[i]) != I[i] for i in range(n)):
                raise ModelInconsistent(f"chamber {ch.name}: p_map + n_map is not the identity")
            for r in ch.cone.rays:
                if not eff.contains(r):
                    raise ModelInconsistent(
                        f"chamber {ch.name}: generator {r} not pseudo-effective")
                if len(self.eff_generators) == n:
                    if any(a < 0 for a in self.eff_coordinates(ch.N(r))):
                        raise ModelInconsistent(
                            f"chamber {ch.name}: n_map output not effective at {r}")
                if ch.identity_sqm and self.nef_cone is not None \
                        and not self.nef_cone.contains(ch.P(r)):
                    raise ModelInconsistent(
                        f"chamber {ch.name}: p_map image of {r} is not nef")
            for lab, _ in ch.n_generator_shifts:
                self.generator(lab)
            fd = self.flag_for(ch)
            if ch.admissible and ch.identity_sqm:
                for r in ch.cone.rays:
                    P = ch.P(r)
                    if self.nef_cone is not None and self.nef_cone.contains(r):
                        if not fd.surface.nef_cone.contains(fd.restrict(P)):
                            raise ModelInconsistent(
                                f"chamber {ch.name}: restriction of nef {r} not nef on S")
        for fd in {id(self.flag_for(ch)): self.flag_for(ch) for ch in self.chambers}.values():
            fd.surface.validate()
            fd.flag.validate(fd.surface)
            if len(fd.restriction_map) != fd.surface.rank or any(
                    len(r) != n for r in fd.restriction_map):
                raise ModelInconsistent(f"{self.name}: restriction map has wrong shape")
        self._coverage_audit()

    def _coverage_audit(self, depth: int = 2) -> None:
        rays = list(self.eff_cone.rays)
        for coeffs in product(range(depth + 1), repeat=len(rays)):
            if not any(coeffs):
                continue
            D = tuple(sum((Fraction(c) * r[i] for c, r in zip(coeffs, rays)), Fraction(0))
                      for i in range(self.rank))
            inside = [ch.name for ch in self.chambers if ch.cone.contains(D)]
            if not inside:
                raise ModelInconsistent(f"chamber data incomplete: no chamber contains ({fmt_vec(D)})")
            interior = [ch.name for ch in self.chambers if ch.cone.interior_contains(D)]
            if len(interior) > 1:
                raise ModelInconsistent(
                    f"chambers {interior} overlap in their interiors at {D}")
            # compatibility on walls: all containing chambers agree
            ref = self.chamber(inside[0])
            for name in inside[1:]:
                ch = self.chamber(name)
                if ch.P(D) != ref.P(D):
                    raise ModelInconsistent(
                        f"chambers {ref.name} and {name} disagree on P at {D}")


# ---------------------------------------------------------------------------
# chambers and decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChamberMembership:
    primary: str
    all: tuple

    @property
    def on_wall(self) -> bool:
        return len(self.all) > 1


def _check_eff(model: ThreefoldModel, D) -> tuple:
    D = vec(D)
    if len(D) != model.rank:
        raise DomainError(f"divisor needs {model.rank} coordinates, got {len(D)}")
    if not model.eff_cone.contains(D):
        raise DomainError(f"not pseudo-effective: ({fmt_vec(D)})")
    return D


def chamber_of(model: ThreefoldModel, D) -> ChamberMembership:
    D = _check_eff(model, D)
    names = sorted(ch.name for ch in model.chambers if ch.cone.contains(D))
    if not names:
        raise ModelInconsistent(f"chamber data incomplete: no chamber contains ({fmt_vec(D)})")
    return ChamberMembership(names[0], tuple(names))


def zariski_mds(model: ThreefoldModel, D):
    """``(P, N, support)`` from the primary chamber containing ``D``."""
    D = _check_eff(model, D)
    ch = model.chamber(chamber_of(model, D).primary)
    N = ch.N(D)
    coords = model.eff_coordinates(N) if len(model.eff_generators) == model.rank else None
    if coords is not None:
        support = tuple(lab for (lab, _), a in zip(model.eff_generators, coords) if a != 0)
    else:
        support = ()
    return ch.P(D), N, support


def asymptotic_valuation_3(model: ThreefoldModel, D, label: str) -> Fraction:
    model.generator(label)
    _, N, _ = zariski_mds(model, D)
    coords = model.eff_coordinates(N)
    idx = [lab for lab, _ in model.eff_generators].index(label)
    return coords[idx]


def ord_S(model: ThreefoldModel, D) -> Fraction:
    """Asymptotic order of ``D`` along the flag surface."""
    if model.flag_surface_label is not None:
        return asymptotic_valuation_3(model, D, model.flag_surface_label)
    _, N, _ = zariski_mds(model, D)
    if not any(N):
        return Fraction(0)
    # N is supported on fixed prime generators; a surface of another class is
    # not among them, so its order is zero
    S = model.flag_surface_class
    for (lab, g), a in zip(model.eff_generators, model.eff_coordinates(N)):
        if a > 0 and rank([g, S]) == 1:
            raise DomainError(
                f"flag surface has the class of fixed generator {lab}; label it to compute ord_S")
    return Fraction(0)


def mu_threefold(model: ThreefoldModel, D) -> Fraction:
    D = _check_eff(model, D)
    mu = ray_exit(model.eff_cone, D, model.flag_surface_class)
    if not isinstance(mu, Fraction):
        raise ModelInconsistent("effective cone unbounded along the flag surface")
    return mu


def chamber_intervals(model: ThreefoldModel, D) -> list:
    """Every chamber met by ``D - tS`` on ``[ord, mu]`` with its closed interval."""
    D = _check_eff(model, D)
    S = model.flag_surface_class
    lo, hi = ord_S(model, D), mu_threefold(model, D)
    out = []
    for ch in model.chambers:
        a, b = lo, hi
        for n in ch.cone.normals:
            v, s = dot(n, D), dot(n, S)
            # v - t*s >= 0
            if s > 0:
                b = min(b, v / s)
            elif s < 0:
                a = max(a, v / s)
            elif v < 0:
                a, b = Fraction(1), Fraction(0)
        if a <= b:
            out.append((ch.name, (a, b)))
    out.sort(key=lambda x: (x[1], x[0]))
    return out


def _primary(model, names) -> Optional[str]:
    adm = sorted(n for n in names if model.chamber(n).admissible)
    if adm:
        return adm[0]
    return min(names) if names else None


def _sample_points(ivs, lo, hi) -> list:
    """Breakpoints and gap midpoints of a family of intervals, in order."""
    pts = sorted({lo, hi} | {x for _, (a, b) in ivs for x in (a, b)})
    out = []
    for i, p in enumerate(pts):
        out.append(("point", p, p, p))
        if i + 1 < len(pts):
            out.append(("gap", (p + pts[i + 1]) / 2, p, pts[i + 1]))
    return out


def t_partition(model: ThreefoldModel, D) -> list:
    """Contiguous cover of ``[ord, mu]`` by ``(chamber, (lo, hi))`` pieces.

    Each point and each open gap between chamber endpoints is assigned the
    first admissible chamber (by name) containing it; neighbouring pieces
    with the same chamber are merged.  Single-point pieces are kept.
    """
    ivs = chamber_intervals(model, D)
    lo, hi = ord_S(model, D), mu_threefold(model, D)
    out = []
    for kind, x, a, b in _sample_points(ivs, lo, hi):
        names = [n for n, (u, v) in ivs if u <= x <= v]
        name = _primary(model, names)
        if name is None:
            raise ModelInconsistent(f"chamber data incomplete near t={x}")
        if out and out[-1][0] == name:
            out[-1] = (name, (out[-1][1][0], b))
        else:
            out.append((name, (a, b)))
    return out


def shift_l(model: ThreefoldModel, chamber: MoriChamber, D, t) -> tuple:
    """Slice translation ``l(t)`` contributed by ``N_{D - tS}``."""
    Dt = sub(vec(D), scale(q(t), model.flag_surface_class))
    N = chamber.N(Dt)
    if not any(N):
        return (Fraction(0), Fraction(0))
    coords = model.eff_coordinates(N)
    if any(a < 0 for a in coords):
        raise ModelInconsistent(
            f"n_map output not effective: model inconsistent (chamber {chamber.name}, t={t})")
    l1 = l2 = Fraction(0)
    for (lab, _), a in zip(model.eff_generators, coords):
        s1, s2 = chamber.shift_of(lab)
        l1 += a * s1
        l2 += a * s2
    return (l1, l2)


# ---------------------------------------------------------------------------
# slices and bodies
# ---------------------------------------------------------------------------

def _chamber_slice(model, ch: MoriChamber, D, t) -> Polygon2:
    Dt = sub(D, scale(t, model.flag_surface_class))
    fd = model.flag_for(ch)
    A = fd.restrict(ch.P(Dt))
    try:
        poly = okounkov_polygon(fd.surface, fd.flag, A).polygon
    except DomainError as exc:
        raise ModelInconsistent(
            f"chamber {ch.name}: restriction of P at t={t} is not pseudo-effective on S") from exc
    return poly.translate(shift_l(model, ch, D, t))


def slice_at(model: ThreefoldModel, D, t) -> Polygon2:
    D = _check_eff(model, D)
    t = q(t)
    lo, hi = ord_S(model, D), mu_threefold(model, D)
    if not lo <= t <= hi:
        raise DomainError(f"empty slice: t={t} outside [{lo}, {hi}]")
    Dt = sub(D, scale(t, model.flag_surface_class))
    names = sorted(ch.name for ch in model.chambers if ch.cone.contains(Dt))
    if not names:
        raise ModelInconsistent(f"chamber data incomplete: no chamber contains ({fmt_vec(Dt)})")
    adm = [n for n in names if model.chamber(n).admissible]
    if not adm:
        raise AdmissibilityError(
            "flag meets SQM indeterminacy: slice formula not valid "
            f"(chamber {', '.join(names)} at t={t})", names)
    polys = [_chamber_slice(model, model.chamber(n), D, t) for n in adm]
    for n, p in zip(adm[1:], polys[1:]):
        if p != polys[0]:
            raise ModelInconsistent(
                f"wall disagreement at t={t}: chambers {adm[0]} and {n} give different slices")
    return polys[0]


@dataclass(frozen=True)
class SliceProfile:
    intervals: tuple  # ((chamber, (lo, hi), refined breakpoints), ...)
    l1: PiecewiseLinear
    l2: PiecewiseLinear
    slices: tuple  # ((t, Polygon2), ...)

    @property
    def breakpoints(self) -> tuple:
        return tuple(t for t, _ in self.slices)


@dataclass(frozen=True)
class OkounkovBody3:
    polytope: Polytope3
    profile: SliceProfile
    limiting: bool
    affine_dim: int

    @property
    def vertices(self) -> tuple:
        return self.polytope.vertices

    @property
    def volume(self) -> Fraction:
        return self.polytope.volume


def _threads(threads: Optional[int]) -> int:
    if threads is None:
        env = os.environ.get("OKOUNKOV_THREADS")
        threads = int(env) if env and env.isdigit() else 1
    return max(1, threads)


def _refine(model, D, part) -> list:
    """Partition pieces with the surface-side walls added."""
    S = model.flag_surface_class
    out = []
    for name, (a, b) in part:
        ch = model.chamber(name)
        fd = model.flag_for(ch)
        pts = {a, b}
        if a < b:
            A0 = fd.restrict(ch.P(D))
            A1 = scale(-1, fd.restrict(ch.P(S)))
            pts.update(wall_candidates(fd.surface, fd.flag, A0, A1, a, b))
        out.append((name, (a, b), tuple(sorted(pts))))
    return out


def _assemble(model: ThreefoldModel, D, limiting: bool, threads=None) -> OkounkovBody3:
    D = _check_eff(model, D)
    report = check_flag_admissibility(model, D)
    if not report.passed:
        raise AdmissibilityError(
            "flag meets SQM indeterminacy: slice formula not valid "
            f"(chamber {', '.join(report.failing)})", report.failing)
    part = t_partition(model, D)
    refined = _refine(model, D, part)
    ts = sorted({t for _, _, pts in refined for t in pts})
    n = _threads(threads)
    if n > 1 and len(ts) > 1:
        with ThreadPoolExecutor(max_workers=n) as ex:
            polys = list(ex.map(lambda t: slice_at(model, D, t), ts))
    else:
        polys = [slice_at(model, D, t) for t in ts]
    pts = [(t,) + v for t, p in zip(ts, polys) for v in p.vertices]
    hull = convex_hull_3d(pts)
    for a, b in zip(ts, ts[1:]):
        mid = (a + b) / 2
        if hull.section(mid) != slice_at(model, D, mid):
            raise ModelInconsistent(
                f"non-convex slice family: model data inconsistent (t={mid})")

    bps = [refined[0][1][0]] + [b for _, (_, b), _ in refined]
    l1p, l2p = [], []
    for name, (a, b), _ in refined:
        ch = model.chamber(name)
        la, lb = shift_l(model, ch, D, a), shift_l(model, ch, D, b)
        for k, acc in ((0, l1p), (1, l2p)):
            slope = (lb[k] - la[k]) / (b - a) if b > a else Fraction(0)
            acc.append((slope, la[k] - slope * a))
    try:
        l1 = PiecewiseLinear(tuple(bps), tuple(l1p))
        l2 = PiecewiseLinear(tuple(bps), tuple(l2p))
    except ValueError as exc:
        raise ModelInconsistent(f"shift function discontinuous across a wall: {exc}") from exc
    profile = SliceProfile(tuple(refined), l1, l2, tuple(zip(ts, polys)))
    return OkounkovBody3(hull, profile, limiting, hull.affine_dim)


def okounkov_body(model: ThreefoldModel, D, threads=None) -> OkounkovBody3:
    D = _check_eff(model, D)
    if not model.is_big(D):
        raise DomainError(f"not big: ({fmt_vec(D)}) (use the limiting body)")
    return _assemble(model, D, False, threads)


def limiting_body(model: ThreefoldModel, D, threads=None) -> OkounkovBody3:
    D = _check_eff(model, D)
    return _assemble(model, D, not model.is_big(D), threads)


def body_translation_vector(model: ThreefoldModel, D) -> tuple:
    """Translation ``a`` with ``Delta(D) = Delta(P_D) + a``, verified exactly."""
    D = _check_eff(model, D)
    if not model.is_big(D):
        raise DomainError(f"not big: ({fmt_vec(D)})")
    ch = model.chamber(chamber_of(model, D).primary)
    if not ch.admissible:
        raise AdmissibilityError(f"chamber {ch.name} is not admissible for the flag", [ch.name])
    P, N = ch.P(D), ch.N(D)
    a1 = Fraction(0)
    l1 = l2 = Fraction(0)
    if any(N):
        coords = model.eff_coordinates(N)
        for (lab, _), c in zip(model.eff_generators, coords):
            if lab == model.flag_surface_label:
                a1 += c
            else:
                s1, s2 = ch.shift_of(lab)
                l1 += c * s1
                l2 += c * s2
    a = (a1, l1, l2)
    body = okounkov_body(model, D).polytope
    base = (okounkov_body(model, P) if model.is_big(P) else limiting_body(model, P)).polytope
    if body != base.translate(a):
        raise ModelInconsistent("translation law violated: model data inconsistent")
    return a


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibilityReport:
    passed: bool
    chambers_met: tuple
    failing: tuple
    uncovered: tuple  # t-values covered only by inadmissible chambers


def check_flag_admissibility(model: ThreefoldModel, D) -> AdmissibilityReport:
    """Test whether the slice formula applies along the whole segment.

    A parameter ``t`` is covered when some admissible chamber contains
    ``D - tS``; walls shared with an inadmissible chamber are harmless.
    """
    ivs = chamber_intervals(model, D)
    lo, hi = ord_S(model, D), mu_threefold(model, D)
    met = tuple(sorted({n for n, _ in ivs}))
    failing, bad_t = set(), []
    for _, x, _, _ in _sample_points(ivs, lo, hi):
        names = [n for n, (u, v) in ivs if u <= x <= v]
        if not names:
            raise ModelInconsistent(f"chamber data incomplete near t={x}")
        if not any(model.chamber(n).admissible for n in names):
            failing.update(names)
            bad_t.append(x)
    return AdmissibilityReport(not failing, met, tuple(sorted(failing)), tuple(bad_t))


@dataclass(frozen=True)
class PolyhedralityReport:
    mori_intervals: int
    surface_pieces: int
    mu_pieces: int
    surface_picard_rank: int
    verdict: str
    vertices: tuple
    notes: tuple = ()


def _mu_t_pieces(model, D, part) -> int:
    """Number of maximal affine pieces of ``t -> mu(P_{D_t}|_S)``."""
    S = model.flag_surface_class
    samples = []
    for name, (a, b) in part:
        ch = model.chamber(name)
        fd = model.flag_for(ch)
        for t in (a, (a + b) / 2, b):
            A = fd.restrict(ch.P(sub(D, scale(t, S))))
            mu = ray_exit(fd.surface.eff_cone, A, fd.flag.curve_class)
            samples.append((t, mu))
    pieces = 0
    slope = None
    for (t0, m0), (t1, m1) in zip(samples, samples[1:]):
        if t1 == t0:
            continue
        s = (m1 - m0) / (t1 - t0)
        if s != slope:
            pieces += 1
            slope = s
    return max(pieces, 1)


def polyhedrality_report(model: ThreefoldModel, D) -> PolyhedralityReport:
    D = _check_eff(model, D)
    part = t_partition(model, D)
    rank = model.flag_data.surface.rank
    notes = []
    if rank == 1:
        notes.append("flag surface has Picard rank 1: every surface slice is a "
                     "triangle scaled linearly in t, so the body is polyhedral")
    adm = check_flag_admissibility(model, D)
    if not adm.passed:
        return PolyhedralityReport(len(part), 0, 0, rank, "undetermined", (),
                                   tuple(notes) + (f"inadmissible chambers: {adm.failing}",))
    S = model.flag_surface_class
    supports = set()
    for name, (a, b) in part:
        ch = model.chamber(name)
        fd = model.flag_for(ch)
        for t in (a, b) if a == b else (a, (a + b) / 2, b):
            A = fd.restrict(ch.P(sub(D, scale(t, S))))
            lo = Fraction(0)
            hi = ray_exit(fd.surface.eff_cone, A, fd.flag.curve_class)
            for p in chamber_walk(fd.surface, A, fd.flag.curve_class, lo, hi):
                supports.add((name, p.support))
    body = limiting_body(model, D)
    return PolyhedralityReport(len(part), len(supports), _mu_t_pieces(model, D, part), rank,
                               "rational polyhedral", body.vertices, tuple(notes))


@dataclass(frozen=True)
class Unavailable:
    reason: str

    def __bool__(self):
        return False


def divisor_volume(model: ThreefoldModel, D):
    """``P_D^3`` when some chamber containing ``D`` is an honest Zariski chamber."""
    D = _check_eff(model, D)
    if model.trilinear_form is None:
        return Unavailable("model has no trilinear form")
    members = [model.chamber(n) for n in chamber_of(model, D).all]
    honest = [c for c in members if c.identity_sqm]
    ch = honest[0] if honest else members[0]
    if not ch.identity_sqm:
        return Unavailable(f"chamber {ch.name} is a small modification; "
                           "the form on X does not compute the volume")
    return model.cube(ch.P(D))
