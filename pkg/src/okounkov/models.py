"""
Built-in surface and threefold models.

Every model is generated from its parameters.  Intersection numbers are
derived in the comments next to the code that uses them.
"""
from __future__ import annotations

import inspect
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError
from .geometry import PolyhedralCone, identity, q, vec
from .surface import SurfaceFlag, SurfaceModel
from .threefold import FlagSurfaceData, MoriChamber, ThreefoldModel


@dataclass(frozen=True)
class ModelRecipe:
    name: str
    parameters: tuple = ()  # ((key, value), ...)

    @classmethod
    def of(cls, name: str, **params) -> "ModelRecipe":
        return cls(name, tuple(sorted(params.items())))

    def build(self):
        return builtin_model(self.name, **dict(self.parameters))


def _int(params, key, default=None, lo=None):
    v = params.pop(key, default)
    if v is None:
        raise DomainError(f"missing parameter {key}")
    f = q(v)
    if f.denominator != 1:
        raise DomainError(f"parameter {key} must be an integer, got {v}")
    if lo is not None and f < lo:
        raise DomainError(f"parameter {key} must be >= {lo}, got {f}")
    return int(f)


def _rational(params, key, default=None, lo=None):
    v = params.pop(key, default)
    if v is None:
        raise DomainError(f"missing parameter {key}")
    f = q(v)
    if lo is not None and f < lo:
        raise DomainError(f"parameter {key} must be >= {lo}, got {f}")
    return f


def _chamber(name, gens, p_map, identity_sqm=True, **kw) -> MoriChamber:
    n = len(p_map)
    P = tuple(vec(r) for r in p_map)
    I = identity(n)
    N = tuple(tuple(I[i][j] - P[i][j] for j in range(n)) for i in range(n))
    return MoriChamber(name, PolyhedralCone.from_generators(gens, n), P, N,
                       identity_sqm=identity_sqm, **kw)


def _form(entries) -> tuple:
    return tuple(sorted((tuple(sorted(k)), q(v)) for k, v in entries.items() if v != 0))


# ---------------------------------------------------------------------------
# surfaces
# ---------------------------------------------------------------------------

def p2_surface() -> SurfaceModel:
    return SurfaceModel.build(("L",), [[1]], [], [(1,)], [(1,)], "p2")


def blowup_p2_surface(labels=("H", "E")) -> SurfaceModel:
    """Blow-up of P^2 at a point: H^2 = 1, E^2 = -1, H.E = 0."""
    H, E = labels
    return SurfaceModel.build(labels, [[1, 0], [0, -1]], [(E, (0, 1))],
                              [(0, 1), (1, -1)], [(1, 0), (1, -1)], "blowup-p2")


def ruled_surface(gamma=0) -> SurfaceModel:
    """Ruled surface with a section of square ``gamma >= 0`` and fibre ``F``.

    With ``C0^2 >= 0`` the effective and nef cones coincide and are bounded
    by ``F`` and the isotropic class ``C0 - (gamma/2) F``; this cone is an
    input assumption of the model.
    """
    g = q(gamma)
    if g < 0:
        raise DomainError("ruled surface needs C0^2 >= 0")
    edge = (Fraction(1), -g / 2)
    return SurfaceModel.build(("C0", "F"), [[g, 1], [1, 0]], [],
                              [(0, 1), edge], [(0, 1), edge], "ruled")


def default_surface_flag(model: SurfaceModel) -> SurfaceFlag:
    """A general fibre-type flag curve for each built-in surface."""
    curve = {"p2": (1,), "blowup-p2": (1, -1), "ruled": (0, 1)}.get(model.name)
    if curve is None:
        raise DomainError(f"no default flag for surface {model.name!r}")
    return SurfaceFlag.build(curve, model.dot(curve, curve))


# ---------------------------------------------------------------------------
# blow-up of P^3 at two points
# ---------------------------------------------------------------------------

PHI_H, E1, E2 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
H1, H2, H12 = (1, -1, 0), (1, 0, -1), (1, -1, -1)


def blowup_p3_2pts(d=1, flip="stub") -> ThreefoldModel:
    """Blow-up of P^3 at two points, basis ``(phi*H, E1, E2)``, flag ``S = E1``.

    Chamber maps (``N = id - P`` throughout):

    * ``c1 = <phi*H, E1, E2>``: ``P = a phi*H``, both exceptional divisors fixed.
    * ``c2 = <phi*H, H1, E2>``: ``P`` keeps the ``phi*H`` and ``E1`` parts.
    * ``c2m = <phi*H, H2, E1>``: the mirror of ``c2``.
    * ``nef = <phi*H, H1, H2>``: ``P = id``.
    * ``flip = <H1, H2, H12>``: nef on the flip of the line through the two
      points.  That line meets ``E1``, so with ``flip="stub"`` the chamber is
      inadmissible.  With ``flip="resolved"`` it carries the strict transform
      of ``E1``, a blow-up of P^2 in the point where the line meets it.

    Restriction to ``E1 = P^2``: ``phi*H|E1 = 0``, ``E1|E1 = -L``, ``E2|E1 = 0``.
    Triple products: ``(phi*H)^3 = 1``; ``E_i^3 = (E_i|E_i)^2 = (-L)^2 = 1``;
    mixed products vanish since ``phi*H|E_i = 0`` and ``E1 . E2 = 0``.
    """
    d = _int({"d": d}, "d", lo=1)
    if flip not in ("stub", "resolved"):
        raise DomainError(f"flip must be 'stub' or 'resolved', got {flip!r}")
    surface = p2_surface()
    flag = SurfaceFlag.build((d,), d * d)
    fd = FlagSurfaceData(surface, flag, (vec((0, -1, 0)),))

    flip_kw = {}
    if flip == "resolved":
        # strict transform F = Bl_p P^2 with exceptional curve e = the flipped line;
        # D|F = (-y) L + (x + y + z) e since D.line = -(x + y + z) changes sign
        fs = blowup_p2_surface(("L", "e"))
        ff = SurfaceFlag.build((d, 0), d * d, {"e": 0})
        flip_kw = dict(flag_disjoint=True,
                       flag_data=FlagSurfaceData(fs, ff, (vec((0, -1, 0)), vec((1, 1, 1)))))
    chambers = (
        _chamber("c1", [PHI_H, E1, E2], [[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
        _chamber("c2", [PHI_H, H1, E2], [[1, 0, 0], [0, 1, 0], [0, 0, 0]]),
        _chamber("c2m", [PHI_H, H2, E1], [[1, 0, 0], [0, 0, 0], [0, 0, 1]]),
        _chamber("nef", [PHI_H, H1, H2], identity(3)),
        _chamber("flip", [H1, H2, H12], identity(3), identity_sqm=False, **flip_kw),
    )
    trilinear = _form({(0, 0, 0): 1, (1, 1, 1): 1, (2, 2, 2): 1})
    name = "blowup-p3-2pts" if flip == "stub" else "blowup-p3-2pts-resolved"
    return ThreefoldModel(
        name, ("phiH", "E1", "E2"),
        (("E1", vec(E1)), ("E2", vec(E2)), ("H12", vec(H12))),
        chambers, vec(E1), fd, "E1", trilinear,
        PolyhedralCone.from_generators([PHI_H, H1, H2], 3))


# ---------------------------------------------------------------------------
# hypersurfaces
# ---------------------------------------------------------------------------

def hypersurface_p2xp2(a=1, b=1) -> ThreefoldModel:
    """Hypersurface of bidegree ``(a, b)`` in P^2 x P^2, flag ``S in |H1|``.

    Triple products by push-pull to P^2 x P^2 where only ``H1^2 H2^2 = 1``:
    ``H1^3 = 0``, ``H1^2 H2 = b``, ``H1 H2^2 = a``, ``H2^3 = 0``.
    On ``S``: ``h1^2 = H1^3 = 0``, ``h1.h2 = b``, ``h2^2 = a``; both boundary
    rays ``h1`` and ``-a h1 + 2b h2`` of the positive cone are isotropic.
    The flag curve is ``C = h2``.
    """
    a = _int({"a": a}, "a", lo=1)
    b = _int({"b": b}, "b", lo=1)
    surface = SurfaceModel.build(("h1", "h2"), [[0, b], [b, a]], [],
                                 [(1, 0), (-a, 2 * b)], [(1, 0), (-a, 2 * b)],
                                 "hypersurface-section")
    flag = SurfaceFlag.build((0, 1), a)
    fd = FlagSurfaceData(surface, flag, identity(2))
    chambers = (_chamber("nef", [(1, 0), (0, 1)], identity(2)),)
    trilinear = _form({(0, 0, 1): b, (0, 1, 1): a})
    return ThreefoldModel(
        "hypersurface-p2xp2", ("H1", "H2"),
        (("H1", vec((1, 0))), ("H2", vec((0, 1)))),
        chambers, vec((1, 0)), fd, "H1", trilinear,
        PolyhedralCone.from_generators([(1, 0), (0, 1)], 2))


def hypersurface_p1xp3(d=1, e=2, gamma=0, s1=1, s2=1, disjoint=0) -> ThreefoldModel:
    """General hypersurface of bidegree ``(d, e)`` in P^1 x P^3, basis ``(H1, H2)``.

    * ``d = 3`` or ``e = 1``: one chamber, flag ``S`` a fibre of the first
      projection (a degree ``e`` surface, ``H1|S = 0``, ``H2|S = h`` with
      ``h^2 = e``), curve ``C = h``.
    * ``d = 1``, ``e >= 2``: ``X`` is the blow-up of P^3 along the curve
      ``f0 = f1 = 0`` with exceptional divisor ``E = e H2 - H1``.  Chambers
      ``c1 = <E, H2>`` (``P_D = (e x + y) H2``) and ``nef = <H1, H2>``.  The
      flag surface is ``E``, a ruled surface over a curve of degree ``e^2``:
      ``H1|E = C0`` and ``H2|E = e^2 F``; ``C = s1 C0 + s2 F``.  The form is
      only given for ``gamma = 0``, where ``E = P^1 x C0'``:
      ``H1 H2^2 = e``, ``H2^3 = 1``, other products vanish.
    * ``d = 2``, ``e >= 2``: chambers ``nef = <H1, H2>`` and
      ``flip = <H2, e H2 - H1>``; the flip is admissible only when the flag
      surface (a general member of ``|H2|``) is declared disjoint from its
      indeterminacy locus.  ``H1 H2^2 = e``, ``H2^3 = 2``.
    """
    d = _int({"d": d}, "d", lo=1)
    e = _int({"e": e}, "e", lo=1)
    s1 = _int({"s1": s1}, "s1", lo=0)
    s2 = _int({"s2": s2}, "s2", lo=0)
    disjoint = bool(_int({"disjoint": disjoint}, "disjoint", lo=0))
    gamma = _rational({"gamma": gamma}, "gamma", lo=0)
    nef = PolyhedralCone.from_generators([(1, 0), (0, 1)], 2)

    if d == 3 or e == 1:
        surface = SurfaceModel.build(("h",), [[e]], [], [(1,)], [(1,)], "fibre")
        fd = FlagSurfaceData(surface, SurfaceFlag.build((1,), e), (vec((0, 1)),))
        chambers = (_chamber("nef", [(1, 0), (0, 1)], identity(2)),)
        return ThreefoldModel(
            "hypersurface-p1xp3", ("H1", "H2"),
            (("H1", vec((1, 0))), ("H2", vec((0, 1)))),
            chambers, vec((1, 0)), fd, "H1", None, nef)

    if e < 2 or d not in (1, 2):
        raise DomainError(f"unsupported bidegree ({d}, {e}): need d <= 3")

    if d == 1:
        E = (-1, e)
        if s1 == 0 and s2 == 0:
            raise DomainError("flag curve class must be nonzero")
        surface = ruled_surface(gamma)
        C = (s1, s2)
        flag = SurfaceFlag.build(C, s1 * s1 * gamma + 2 * s1 * s2)
        fd = FlagSurfaceData(surface, flag, (vec((1, 0)), vec((0, e * e))))
        chambers = (
            _chamber("c1", [E, (0, 1)], [[0, 0], [e, 1]]),
            _chamber("nef", [(1, 0), (0, 1)], identity(2)),
        )
        trilinear = _form({(0, 1, 1): e, (1, 1, 1): 1}) if gamma == 0 else None
        return ThreefoldModel(
            "hypersurface-p1xp3", ("H1", "H2"),
            (("H1", vec((1, 0))), ("E", vec(E))),
            chambers, vec(E), fd, "E", trilinear, nef)

    # d == 2
    surface = SurfaceModel.build(("h1", "h2"), [[0, e], [e, 2]], [],
                                 [(1, 0), (-1, e)], [(1, 0), (-1, e)], "hyperplane-section")
    flag = SurfaceFlag.build((0, 1), 2)
    fd = FlagSurfaceData(surface, flag, identity(2))
    chambers = (
        _chamber("nef", [(1, 0), (0, 1)], identity(2)),
        _chamber("flip", [(0, 1), (-1, e)], identity(2), identity_sqm=False,
                 flag_disjoint=disjoint),
    )
    trilinear = _form({(0, 1, 1): e, (1, 1, 1): 2})
    return ThreefoldModel(
        "hypersurface-p1xp3", ("H1", "H2"),
        (("H1", vec((1, 0))), ("EH2-H1", vec((-1, e)))),
        chambers, vec((0, 1)), fd, None, trilinear, nef)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

SURFACES = {"p2": p2_surface, "blowup-p2": blowup_p2_surface, "ruled": ruled_surface}
THREEFOLDS = {
    "blowup-p3-2pts": blowup_p3_2pts,
    "hypersurface-p2xp2": hypersurface_p2xp2,
    "hypersurface-p1xp3": hypersurface_p1xp3,
}


def builtin_model(recipe: Union[str, ModelRecipe], **params):
    """Construct a built-in model from a name (or recipe) and parameters."""
    if isinstance(recipe, ModelRecipe):
        params = {**dict(recipe.parameters), **params}
        recipe = recipe.name
    ctor = SURFACES.get(recipe) or THREEFOLDS.get(recipe)
    if ctor is None:
        raise DomainError(f"unknown model {recipe!r}; known: "
                          f"{', '.join(sorted(SURFACES) + sorted(THREEFOLDS))}")
    allowed = set(inspect.signature(ctor).parameters)
    unknown = set(params) - allowed
    if recipe == "blowup-p2":
        allowed = set()
        unknown = set(params)
    if unknown:
        raise DomainError(f"unknown parameter(s) for {recipe}: {', '.join(sorted(unknown))}")
    return ctor(**params)


def builtin_names() -> list:
    return sorted(SURFACES) + sorted(THREEFOLDS)
