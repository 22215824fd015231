"""
Command line front end.

Exit codes: 0 success, 2 validation or domain error, 3 admissibility
failure, 4 usage error.  Output depends only on the arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import re
import sys
from fractions import Fraction
from typing import Optional

from . import modelfile
from .errors import AdmissibilityError, DomainError, OkounkovError
from .geometry import (
    Polygon2, Polytope3, convex_hull_2d, dot, fmt, polygon_inequalities, q, vec,
)
from .models import builtin_model, builtin_names, default_surface_flag
from .oracle import KINDS, OracleModel, oracle_hull
from .surface import (
    SurfaceFlag, SurfaceModel, chamber_walk, flag_order, mu_surface,
    okounkov_polygon, zariski_decompose,
)
from .threefold import (
    ThreefoldModel, chamber_of, check_flag_admissibility, divisor_volume,
    limiting_body, mu_threefold, okounkov_body, ord_S, polyhedrality_report,
    slice_at, t_partition, zariski_mds,
)

EXIT_OK, EXIT_DOMAIN, EXIT_ADMISSIBILITY, EXIT_USAGE = 0, 2, 3, 4

COMMANDS = ("body", "limiting-body", "slice", "zariski", "mu", "ord", "partition",
            "chambers", "admissibility", "polyhedrality", "oracle", "validate", "export",
            "volume")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def _v(v) -> str:
    return ",".join(fmt(Fraction(x)) for x in v)


def _ineq(n, b) -> str:
    return f"{_v(n)} >= {fmt(b)}"


def polytope_text(P) -> str:
    if isinstance(P, Polygon2):
        verts = sorted(P.vertices)
        facets = polygon_inequalities(P)
    else:
        verts = list(P.vertices)
        facets = P.facets
    lines = [f"vertices {len(verts)}"] + [_v(v) for v in verts]
    lines.append(f"facets {len(facets)}")
    lines += [_ineq(n, b) for n, b in facets]
    return "\n".join(lines) + "\n"


def _g(x) -> str:
    return "%.12g" % float(x)


def _facet_rings(P: Polytope3) -> list:
    """Vertex index rings of each facet, counterclockwise seen from outside."""
    rings = []
    for n, b in P.facets:
        on = [i for i, v in enumerate(P.vertices) if dot(n, v) == b]
        if len(on) < 3:
            continue
        k = max(range(3), key=lambda j: abs(n[j]))
        keep = [j for j in range(3) if j != k]
        proj = {(P.vertices[i][keep[0]], P.vertices[i][keep[1]]): i for i in on}
        ring = [proj[p] for p in convex_hull_2d(proj).vertices]
        a, bb, c = (P.vertices[i] for i in ring[:3])
        u = [bb[j] - a[j] for j in range(3)]
        w = [c[j] - a[j] for j in range(3)]
        cross = (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])
        if dot(cross, n) > 0:  # inward normal: outside-CCW means cross . n < 0
            ring.reverse()
        s = ring.index(min(ring))
        rings.append(ring[s:] + ring[:s])
    return sorted(rings)


def polytope_off(P) -> str:
    if isinstance(P, Polygon2):
        verts = [tuple(v) + (Fraction(0),) for v in P.vertices]
        rings = [list(range(len(verts)))] if len(verts) >= 3 else []
    else:
        verts = list(P.vertices)
        if P.affine_dim == 3:
            rings = _facet_rings(P)
        elif P.affine_dim == 2:
            rings = _planar_ring(P)
        else:
            rings = []
    faces = []
    for ring in rings:
        for i in range(1, len(ring) - 1):
            faces.append((ring[0], ring[i], ring[i + 1]))
    out = ["OFF", f"{len(verts)} {len(faces)} 0"]
    out += [" ".join(_g(x) for x in v) for v in verts]
    out += ["3 " + " ".join(str(i) for i in f) for f in faces]
    return "\n".join(out) + "\n"


def _planar_ring(P: Polytope3) -> list:
    vs = P.vertices
    for keep in ((1, 2), (0, 2), (0, 1)):
        proj = {(v[keep[0]], v[keep[1]]): i for i, v in enumerate(vs)}
        if len(proj) == len(vs) and len(convex_hull_2d(proj).vertices) == len(vs):
            ring = [proj[p] for p in convex_hull_2d(proj).vertices]
            s = ring.index(min(ring))
            return [ring[s:] + ring[:s]]
    return []


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _points(poly: Polygon2) -> str:
    return ";".join(":".join(fmt(x) for x in v) for v in poly.vertices)


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

_HELP = {
    "body": "Okounkov body of a big divisor",
    "limiting-body": "limiting body of a pseudo-effective divisor",
    "slice": "slice of the body at first coordinate t",
    "zariski": "Zariski decomposition P + N",
    "mu": "largest t with D - tS pseudo-effective",
    "ord": "asymptotic order along the flag surface or curve",
    "partition": "Mori chamber intervals along D - tS",
    "chambers": "chambers containing D",
    "admissibility": "check the flag against flipped chambers (exit 3 on failure)",
    "polyhedrality": "polyhedrality report",
    "oracle": "hull of monomial valuation vectors up to level --mmax",
    "validate": "run the model audits",
    "export": "write the model as JSON",
    "volume": "3! vol of the body next to the top self-intersection of P",
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_mutually_exclusive_group()
    g.add_argument("--model", help=f"built-in model: {', '.join(builtin_names())}")
    g.add_argument("--model-file", help="JSON model file")
    common.add_argument("--param", action="append", default=[], metavar="K=V",
                        help="built-in model parameter (repeatable)")
    d = common.add_mutually_exclusive_group()
    d.add_argument("--divisor", help='coordinates in the model basis, e.g. "1,0,1/2"')
    d.add_argument("--divisor-expr", help='label expression, e.g. "1*phiH+2*E2"')
    common.add_argument("--flag-curve", help="surface models: flag curve class (point off all curves)")
    common.add_argument("--format", choices=("text", "csv", "off"), default="text")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $OKOUNKOV_THREADS or 1)")

    p = _Parser(prog="okounkov", description="Exact Okounkov bodies from numerical model data.")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=_HELP[name])
        if name == "slice":
            sp.add_argument("--t", required=True, help="first coordinate, e.g. 1/2")
        if name == "oracle":
            sp.add_argument("--mmax", type=int, default=8)
            sp.add_argument("--oracle-kind", choices=KINDS, default="blowup-2pts")
    return p


def _parse_params(items) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"--param expects k=v, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _load_model(args):
    """Returns ``(model, flag)``; ``flag`` is only set for surfaces."""
    if args.model_file:
        if args.param:
            raise UsageError("--param only applies to built-in models")
        loaded = modelfile.load(args.model_file)
        if isinstance(loaded, tuple):
            model, flag = loaded
        else:
            model, flag = loaded, None
    elif args.model:
        model = builtin_model(args.model, **_parse_params(args.param))
        flag = default_surface_flag(model) if isinstance(model, SurfaceModel) else None
    else:
        raise UsageError("one of --model or --model-file is required")
    if isinstance(model, SurfaceModel) and args.flag_curve:
        c = _parse_vec(args.flag_curve, model.rank)
        flag = SurfaceFlag.build(c, model.dot(c, c))
    return model, flag


def _parse_vec(text: str, n: Optional[int] = None) -> tuple:
    try:
        v = vec(x.strip() for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse rational vector {text!r}")
    if n is not None and len(v) != n:
        raise UsageError(f"expected {n} coordinates, got {len(v)}")
    return v


_TERM = re.compile(r"\s*([+-]?)\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*?\s*)?([A-Za-z_][A-Za-z0-9_]*)\s*")


def parse_divisor_expr(text: str, labels: dict) -> tuple:
    """Evaluate ``"2*E2 - 1/2*phiH"`` against ``labels`` (name -> class)."""
    n = len(next(iter(labels.values())))
    total = [Fraction(0)] * n
    pos = 0
    text = text.strip()
    if not text:
        raise UsageError("empty divisor expression")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse divisor expression at {text[pos:]!r}")
        sign, coef, name = m.groups()
        if pos > 0 and not sign:
            raise UsageError(f"missing operator before {name!r}")
        if name not in labels:
            raise UsageError(f"unknown label {name!r}; known: {', '.join(sorted(labels))}")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        total = [a + c * b for a, b in zip(total, labels[name])]
        pos = m.end()
    return tuple(total)


def _labels(model) -> dict:
    n = model.rank
    out = {lab: tuple(Fraction(int(i == j)) for j in range(n))
           for i, lab in enumerate(model.basis_labels)}
    if isinstance(model, ThreefoldModel):
        for lab, g in model.eff_generators:
            out.setdefault(lab, g)
    else:
        for lab, c in model.negative_curves:
            out.setdefault(lab, c)
    return out


def _divisor(args, model, required=True):
    n = model.rank if model is not None else 3
    if args.divisor:
        return _parse_vec(args.divisor, n)
    if args.divisor_expr:
        if model is None:
            labels = {"phiH": (1, 0, 0), "E1": (0, 1, 0), "E2": (0, 0, 1)}
            labels = {k: vec(v) for k, v in labels.items()}
        else:
            labels = _labels(model)
        return parse_divisor_expr(args.divisor_expr, labels)
    if required:
        raise UsageError("--divisor or --divisor-expr is required")
    return None


def _threads(args) -> int:
    if args.threads is not None:
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        return args.threads
    env = os.environ.get("OKOUNKOV_THREADS", "")
    return int(env) if env.isdigit() and int(env) > 0 else 1


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _emit_body_3(body, fmt_: str) -> str:
    if fmt_ == "off":
        return polytope_off(body.polytope)
    if fmt_ == "csv":
        rows = [(fmt(t), _points(p)) for t, p in body.profile.slices]
        return _csv(rows, ("t", "vertices"))
    text = polytope_text(body.polytope)
    return text + f"affine_dim {body.affine_dim}\nvolume {fmt(body.volume)}\n"


def _emit_polygon_2(res, fmt_: str) -> str:
    P = res.polygon
    if fmt_ == "off":
        return polytope_off(P)
    if fmt_ == "csv":
        rows = [(fmt(t), fmt(res.alpha(t)), fmt(res.beta(t))) for t in res.t_breakpoints]
        return _csv(rows, ("t", "alpha", "beta"))
    return polytope_text(P) + f"affine_dim {P.affine_dim}\narea {fmt(P.area)}\n"


def _cmd_body(args, model, flag, limiting: bool) -> str:
    D = _divisor(args, model)
    if isinstance(model, SurfaceModel):
        if not limiting and not model.is_big(D):
            raise DomainError(f"not big: {_v(D)} (use limiting-body)")
        return _emit_polygon_2(okounkov_polygon(model, _need_flag(flag), D), args.format)
    fn = limiting_body if limiting else okounkov_body
    return _emit_body_3(fn(model, D, threads=_threads(args)), args.format)


def _need_flag(flag):
    if flag is None:
        raise UsageError("surface model has no flag; pass --flag-curve")
    return flag


def _cmd_slice(args, model, flag) -> str:
    D = _divisor(args, model)
    try:
        t = q(args.t)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --t {args.t!r}")
    if isinstance(model, SurfaceModel):
        res = okounkov_polygon(model, _need_flag(flag), D)
        lo, hi = res.t_breakpoints[0], res.t_breakpoints[-1]
        if not lo <= t <= hi:
            raise DomainError(f"empty slice: t={fmt(t)} outside [{fmt(lo)}, {fmt(hi)}]")
        return f"interval {fmt(res.alpha(t))} {fmt(res.beta(t))}\n"
    poly = slice_at(model, D, t)
    if args.format == "csv":
        return _csv([(fmt(t), _points(poly))], ("t", "vertices"))
    if args.format == "off":
        return polytope_off(poly)
    return polytope_text(poly) + f"area {fmt(poly.area)}\n"


def _cmd_zariski(args, model, flag) -> str:
    D = _divisor(args, model)
    if isinstance(model, SurfaceModel):
        Z = zariski_decompose(model, D)
        neg = " ".join(f"{lab}={fmt(c)}" for lab, c in Z.negative_coeffs) or "0"
        return (f"positive {_v(Z.positive)}\nnegative {neg}\n"
                f"support {','.join(sorted(Z.support)) or '-'}\n")
    P, N, support = zariski_mds(model, D)
    ch = chamber_of(model, D)
    return (f"chamber {ch.primary}\npositive {_v(P)}\nnegative {_v(N)}\n"
            f"support {','.join(support) or '-'}\n")


def _cmd_mu(args, model, flag) -> str:
    D = _divisor(args, model)
    if isinstance(model, SurfaceModel):
        return fmt(mu_surface(model, D, _need_flag(flag).curve_class)) + "\n"
    return fmt(mu_threefold(model, D)) + "\n"


def _cmd_ord(args, model, flag) -> str:
    D = _divisor(args, model)
    if isinstance(model, SurfaceModel):
        return fmt(flag_order(model, D, _need_flag(flag).curve_class)) + "\n"
    return fmt(ord_S(model, D)) + "\n"


def _cmd_partition(args, model, flag) -> str:
    D = _divisor(args, model)
    if isinstance(model, SurfaceModel):
        C = _need_flag(flag).curve_class
        if not model.eff_cone.contains(D):
            raise DomainError(f"not pseudo-effective: {_v(D)}")
        lo, hi = flag_order(model, D, C), mu_surface(model, D, C)
        rows = [(fmt(p.lo), fmt(p.hi), ",".join(p.support) or "-")
                for p in chamber_walk(model, D, C, lo, hi)]
        header = ("lo", "hi", "support")
    else:
        rows = [(name, fmt(a), fmt(b)) for name, (a, b) in t_partition(model, D)]
        header = ("chamber", "lo", "hi")
    if args.format == "csv":
        return _csv(rows, header)
    return "".join(" ".join(r) + "\n" for r in rows)


def _cmd_chambers(args, model, flag) -> str:
    if isinstance(model, SurfaceModel):
        raise UsageError("chambers applies to threefold models")
    D = _divisor(args, model, required=False)
    if D is not None:
        m = chamber_of(model, D)
        return f"primary {m.primary}\nall {','.join(m.all)}\n"
    lines = []
    for ch in sorted(model.chambers, key=lambda c: c.name):
        flags = "admissible" if ch.admissible else "inadmissible"
        rays = " ".join(f"({_v(r)})" for r in ch.cone.rays)
        lines.append(f"{ch.name} {flags} {rays}")
    return "\n".join(lines) + "\n"


def _cmd_admissibility(args, model, flag):
    if isinstance(model, SurfaceModel):
        raise UsageError("admissibility applies to threefold models")
    D = _divisor(args, model)
    r = check_flag_admissibility(model, D)
    out = (f"{'pass' if r.passed else 'fail'}\n"
           f"chambers_met {','.join(r.chambers_met)}\n"
           f"failing {','.join(r.failing) or '-'}\n")
    if r.uncovered:
        out += f"uncovered_t {' '.join(fmt(t) for t in r.uncovered)}\n"
    return out, (EXIT_OK if r.passed else EXIT_ADMISSIBILITY)


def _cmd_polyhedrality(args, model, flag) -> str:
    if isinstance(model, SurfaceModel):
        raise UsageError("polyhedrality applies to threefold models")
    D = _divisor(args, model)
    r = polyhedrality_report(model, D)
    lines = [f"verdict {r.verdict}",
             f"mori_intervals {r.mori_intervals}",
             f"surface_pieces {r.surface_pieces}",
             f"mu_pieces {r.mu_pieces}",
             f"surface_picard_rank {r.surface_picard_rank}"]
    lines += [f"note {n}" for n in r.notes]
    lines.append(f"vertices {len(r.vertices)}")
    lines += [_v(v) for v in r.vertices]
    return "\n".join(lines) + "\n"


def _cmd_volume(args, model, flag) -> str:
    D = _divisor(args, model)
    if isinstance(model, SurfaceModel):
        Z = zariski_decompose(model, D)
        return f"volume {fmt(model.dot(Z.positive, Z.positive))}\n"
    vol = divisor_volume(model, D)
    body = okounkov_body(model, D, threads=_threads(args))
    out = f"body_volume_x6 {fmt(6 * body.volume)}\n"
    out += f"volume {fmt(vol)}\n" if vol else f"volume unavailable ({vol.reason})\n"
    return out


def _cmd_oracle(args) -> str:
    D = _divisor(args, None)
    h = oracle_hull(OracleModel(args.oracle_kind), D, args.mmax, threads=_threads(args))
    if h.polytope is None:
        return "vertices 0\nfacets 0\naffine_dim -1\nvolume 0\n"
    if args.format == "off":
        return polytope_off(h.polytope)
    return polytope_text(h.polytope) + f"affine_dim {h.affine_dim}\nvolume {fmt(h.volume)}\n"


def _cmd_validate(args, model, flag) -> str:
    model.validate()
    if flag is not None:
        flag.validate(model)
    return f"valid {model.name or 'model'}\n"


def _cmd_export(args, model, flag) -> str:
    return modelfile.dumps(model, flag)


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "oracle":
            if args.model or args.model_file:
                raise UsageError("oracle takes no model; use --oracle-kind")
            out.write(_cmd_oracle(args))
            return EXIT_OK
        model, flag = _load_model(args)
        handlers = {
            "body": lambda: _cmd_body(args, model, flag, False),
            "limiting-body": lambda: _cmd_body(args, model, flag, True),
            "slice": lambda: _cmd_slice(args, model, flag),
            "zariski": lambda: _cmd_zariski(args, model, flag),
            "mu": lambda: _cmd_mu(args, model, flag),
            "ord": lambda: _cmd_ord(args, model, flag),
            "partition": lambda: _cmd_partition(args, model, flag),
            "chambers": lambda: _cmd_chambers(args, model, flag),
            "admissibility": lambda: _cmd_admissibility(args, model, flag),
            "polyhedrality": lambda: _cmd_polyhedrality(args, model, flag),
            "validate": lambda: _cmd_validate(args, model, flag),
            "export": lambda: _cmd_export(args, model, flag),
            "volume": lambda: _cmd_volume(args, model, flag),
        }
        res = handlers[args.command]()
        code = EXIT_OK
        if isinstance(res, tuple):
            res, code = res
        out.write(res)
        return code
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except AdmissibilityError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ADMISSIBILITY
    except OkounkovError as exc:
        err.write(f"error: {exc}\n")
        return exc.exit_code
    except KeyError as exc:
        err.write(f"error: {exc.args[0]}\n")
        return EXIT_DOMAIN


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
