"""
JSON serialization of surface and threefold models.

Rationals are written as integers when integral and as ``"p/q"`` strings
otherwise; both forms are accepted on input.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Union

from .errors import DomainError, ModelInconsistent
from .geometry import PolyhedralCone, fmt_vec, q, vec
from .surface import SurfaceFlag, SurfaceModel
from .threefold import FlagSurfaceData, MoriChamber, ThreefoldModel


def _num(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vec_out(v) -> list:
    return [_num(x) for x in v]


def _mat_out(M) -> list:
    return [_vec_out(r) for r in M]


def _vec_in(v, what: str) -> tuple:
    try:
        return vec(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ModelInconsistent(f"bad rational in {what}: {v!r}") from exc


def _cone_out(cone: PolyhedralCone) -> dict:
    out = {}
    if cone.generators is not None:
        out["generators"] = _mat_out(cone.generators)
    if cone.facets is not None:
        out["facets"] = _mat_out(cone.facets)
    return out


def _cone_in(d: dict, dim: int, what: str) -> PolyhedralCone:
    if not isinstance(d, dict) or not ({"generators", "facets"} & set(d)):
        raise ModelInconsistent(f"{what} needs generators or facets")
    gens = tuple(_vec_in(g, what) for g in d["generators"]) if "generators" in d else None
    facets = tuple(_vec_in(f, what) for f in d["facets"]) if "facets" in d else None
    cone = PolyhedralCone(dim, gens, facets)
    if gens is not None and facets is not None:
        for g in gens:
            if not cone.contains(g):
                raise ModelInconsistent(f"{what}: generator ({fmt_vec(g)}) violates a facet")
    return cone


# ---------------------------------------------------------------------------
# surfaces
# ---------------------------------------------------------------------------

def surface_to_dict(model: SurfaceModel, flag: SurfaceFlag = None) -> dict:
    out = {
        "kind": "surface",
        "name": model.name,
        "basis": list(model.basis_labels),
        "intersection_form": _mat_out(model.intersection_form),
        "eff_cone": _cone_out(model.eff_cone),
        "nef_cone": _cone_out(model.nef_cone),
        "negative_curves": [{"label": lab, "class": _vec_out(c)}
                            for lab, c in model.negative_curves],
    }
    if flag is not None:
        out["flag"] = flag_to_dict(flag)
    return out


def flag_to_dict(flag: SurfaceFlag) -> dict:
    return {"curve_class": _vec_out(flag.curve_class),
            "curve_selfint": _num(flag.curve_selfint),
            "point_data": {k: v for k, v in flag.point_data}}


def surface_from_dict(d: dict):
    """Returns ``(SurfaceModel, SurfaceFlag or None)``."""
    try:
        basis = tuple(d["basis"])
        n = len(basis)
        model = SurfaceModel(
            basis,
            tuple(_vec_in(r, "intersection_form") for r in d["intersection_form"]),
            tuple((c["label"], _vec_in(c["class"], "negative_curves"))
                  for c in d.get("negative_curves", [])),
            _cone_in(d["eff_cone"], n, "eff_cone"),
            _cone_in(d["nef_cone"], n, "nef_cone"),
            d.get("name", ""),
        )
        flag = flag_from_dict(d["flag"]) if "flag" in d else None
    except KeyError as exc:
        raise ModelInconsistent(f"model file missing key {exc}") from exc
    return model, flag


def flag_from_dict(d: dict) -> SurfaceFlag:
    return SurfaceFlag.build(_vec_in(d["curve_class"], "flag"), q(d["curve_selfint"]),
                             d.get("point_data", {}))


# ---------------------------------------------------------------------------
# threefolds
# ---------------------------------------------------------------------------

def _flag_surface_out(fd: FlagSurfaceData) -> dict:
    out = flag_to_dict(fd.flag)
    out["restriction_map"] = _mat_out(fd.restriction_map)
    out["surface"] = surface_to_dict(fd.surface)
    return out


def _flag_surface_in(d: dict) -> FlagSurfaceData:
    surface, _ = surface_from_dict(d["surface"])
    return FlagSurfaceData(surface, flag_from_dict(d),
                           tuple(_vec_in(r, "restriction_map") for r in d["restriction_map"]))


def threefold_to_dict(model: ThreefoldModel) -> dict:
    chambers = []
    for ch in model.chambers:
        c = {
            "name": ch.name,
            "generators": _mat_out(ch.cone.generators if ch.cone.generators is not None
                                   else ch.cone.rays),
            "p_map": _mat_out(ch.p_map),
            "n_map": _mat_out(ch.n_map),
            "identity_sqm": ch.identity_sqm,
            "n_generator_shifts": {lab: _vec_out(s) for lab, s in ch.n_generator_shifts},
        }
        if ch.flag_disjoint:
            c["flag_disjoint"] = True
        if ch.flag_data is not None:
            c["flag"] = _flag_surface_out(ch.flag_data)
        chambers.append(c)
    flag = _flag_surface_out(model.flag_data)
    flag["surface_class"] = _vec_out(model.flag_surface_class)
    if model.flag_surface_label is not None:
        flag["surface_label"] = model.flag_surface_label
    out = {
        "kind": "threefold",
        "name": model.name,
        "basis": list(model.basis_labels),
        "eff_cone": {"generators": [_vec_out(g) for _, g in model.eff_generators],
                     "labels": [lab for lab, _ in model.eff_generators]},
        "chambers": chambers,
        "flag": flag,
    }
    if model.nef_cone is not None:
        out["nef_cone"] = _cone_out(model.nef_cone)
    if model.trilinear_form is not None:
        out["trilinear_form"] = [list(k) + [_num(v)] for k, v in model.trilinear_form]
    return out


def threefold_from_dict(d: dict) -> ThreefoldModel:
    try:
        basis = tuple(d["basis"])
        n = len(basis)
        eff = d["eff_cone"]
        gens = [_vec_in(g, "eff_cone") for g in eff["generators"]]
        labels = eff.get("labels") or [f"G{i + 1}" for i in range(len(gens))]
        if len(labels) != len(gens):
            raise ModelInconsistent("eff_cone labels and generators differ in length")
        chambers = []
        for c in d["chambers"]:
            chambers.append(MoriChamber(
                c["name"],
                PolyhedralCone.from_generators([_vec_in(g, c["name"]) for g in c["generators"]], n),
                tuple(_vec_in(r, "p_map") for r in c["p_map"]),
                tuple(_vec_in(r, "n_map") for r in c["n_map"]),
                bool(c.get("identity_sqm", True)),
                tuple(sorted((lab, tuple(_vec_in(s, "n_generator_shifts")))
                             for lab, s in c.get("n_generator_shifts", {}).items())),
                bool(c.get("flag_disjoint", False)),
                _flag_surface_in(c["flag"]) if "flag" in c else None,
            ))
        f = d["flag"]
        trilinear = None
        if d.get("trilinear_form") is not None:
            trilinear = tuple(sorted((tuple(sorted(int(i) for i in e[:3])), q(e[3]))
                                     for e in d["trilinear_form"]))
        return ThreefoldModel(
            d.get("name", ""), basis, tuple(zip(labels, gens)), tuple(chambers),
            _vec_in(f["surface_class"], "flag"), _flag_surface_in(f),
            f.get("surface_label"), trilinear,
            _cone_in(d["nef_cone"], n, "nef_cone") if "nef_cone" in d else None,
        )
    except KeyError as exc:
        raise ModelInconsistent(f"model file missing key {exc}") from exc


# ---------------------------------------------------------------------------

def model_to_dict(model, flag: SurfaceFlag = None) -> dict:
    if isinstance(model, ThreefoldModel):
        return threefold_to_dict(model)
    return surface_to_dict(model, flag)


def model_from_dict(d: dict):
    kind = d.get("kind")
    if kind == "threefold":
        return threefold_from_dict(d)
    if kind == "surface":
        return surface_from_dict(d)
    raise ModelInconsistent(f"model file kind must be 'surface' or 'threefold', got {kind!r}")


def dumps(model, flag: SurfaceFlag = None) -> str:
    return json.dumps(model_to_dict(model, flag), indent=2, sort_keys=True) + "\n"


def load(path: str):
    """Read a model file; surfaces come back as ``(model, flag)``."""
    try:
        with open(path, encoding="utf-8") as fh:
            d = json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read model file {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ModelInconsistent(f"model file {path} is not valid JSON: {exc}") from exc
    return model_from_dict(d)
