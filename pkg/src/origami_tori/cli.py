"""Command-line interface.

Exit status: 0 on success, 1 when a construction or check fails, 2 on a
usage error.
"""
import argparse
import math
import sys

from . import kernels
from .annulus import AnnulusParams, build_annulus, classify_twist, cut_annulus, develop_annulus, projection_foot
from .crease import annulus_crease_pattern, torus_crease_pattern
from .errors import OrigamiError
from .export import (
    AtlasGrid,
    atlas_csv,
    atlas_rows,
    atomic_write,
    export_crease_pattern,
    export_mesh,
    json_text,
    limit_curves_csv,
    limit_curves_svg,
    read_obj,
)
from .geometry import Tolerances, vertex_angle_sums
from .moduli import modulus_from_development, torus_modulus
from .solver import SolveRequest, solve_modulus
from .torus import DoubleSpec, TorusMesh, TorusParams, assemble_torus, double_torus, enumerate_pairs, verify_embedding

# lower-half doubles of two grid tori; angles quoted as multiples of pi
# are read as twists k/16
HALF_DOUBLES = ((8, -3, 4 / 16), (8, -2, 4 / 16))
HALF_DOUBLES_NOTE = (
    "half-doubles preset: (rho, sigma) read as twists (4/16, -2/16) and (4/16, 0), "
    "n=8, h=1, a=1/2, lower half doubled"
)


class UsageError(Exception):
    pass


def _emit(args, report, text=None):
    if args.json:
        sys.stdout.write(json_text(report))
    else:
        sys.stdout.write((text if text is not None else _plain_text(report)) + "\n")


def _plain_text(report, indent=""):
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_plain_text(v, indent + "  "))
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def _tol(args):
    return Tolerances(geom=args.tol) if args.tol else None


def _write_mesh_or_svg(args, mesh, crease):
    if not args.out:
        return None
    fmt = args.format or "obj"
    if fmt == "svg":
        export_crease_pattern(crease(), args.out, scale=args.scale, overlay=getattr(args, "overlay", False))
    else:
        export_mesh(mesh, fmt, args.out)
    return args.out


def _modulus_dict(z):
    return {"re": z.real, "im": z.imag}


def cmd_annulus(args):
    p = AnnulusParams(args.n, args.rho, args.h)
    cls = classify_twist(p.n, p.rho, _tol(args))
    ann = build_annulus(p)
    dev = develop_annulus(p)
    report = {
        "n": p.n,
        "rho": p.rho,
        "h": p.h,
        "class": cls,
        "vertices": ann.mesh.n_vertices,
        "faces": ann.mesh.n_faces,
        "development": {"width": dev.width, "height": dev.height, "top_offset": dev.top_offset},
        "projection_foot": projection_foot(p),
    }
    mesh = ann.mesh
    if args.cut is not None:
        (lo, lo_dev), (hi, hi_dev) = cut_annulus(p, args.cut)
        report["cut"] = {"a": args.cut, "lower_height": lo_dev.height, "upper_height": hi_dev.height}
        mesh = lo if args.half == "lower" else hi
    written = _write_mesh_or_svg(args, mesh, lambda: annulus_crease_pattern(p, _tol(args)))
    if written:
        report["written"] = written
    _emit(args, report)
    return 0


def _torus_report(t, tol):
    rep = verify_embedding(t, tol)
    sums = vertex_angle_sums(t.mesh)
    flat = bool(abs(sums - 2 * math.pi).max() <= 1e-9)
    m = t.mesh
    return {
        "vertices": m.n_vertices,
        "edges": m.n_edges,
        "faces": m.n_faces,
        "euler": m.euler_characteristic(),
        "closed": rep.closed,
        "flat": flat,
        "embedded": rep.ok,
        "nested": rep.nested,
        "violating_pairs": len(rep.violating_pairs),
    }


def _params(args):
    return TorusParams(args.n, args.l, args.rho, args.h)


def cmd_torus(args):
    p = _params(args)
    t = assemble_torus(p, _tol(args))
    report = {"n": p.n, "ell": p.ell, "rho": p.rho, "sigma": p.sigma, "h": p.h}
    report.update(_torus_report(t, _tol(args)))
    report["modulus"] = _modulus_dict(torus_modulus(p).value)
    written = _write_mesh_or_svg(args, t.mesh, lambda: torus_crease_pattern(t, _tol(args), getattr(args, "overlay", False)))
    if written:
        report["written"] = written
    _emit(args, report)
    return 0 if report["embedded"] and report["flat"] else 1


def cmd_enumerate(args):
    pairs = enumerate_pairs(args.n, args.den)
    data = [
        {"rho": str(r), "sigma": str(s), "ell": int((s - r) * args.n), "rho_value": float(r), "sigma_value": float(s)}
        for r, s in pairs
    ]
    if args.out:
        atomic_write(args.out, json_text(data))
    if args.json:
        sys.stdout.write(json_text(data))
    else:
        for d in data:
            print(f"{d['rho']:>8} {d['sigma']:>8}  ell={d['ell']}")
        print(f"{len(data)} pairs")
    return 0


def cmd_modulus(args):
    p = _params(args)
    m = torus_modulus(p)
    report = {
        "n": p.n, "ell": p.ell, "rho": p.rho, "h": p.h,
        "modulus": _modulus_dict(m.value),
        "normalized": _modulus_dict(m.normalized),
        "transform": [list(s) for s in m.transform_chain],
    }
    if args.develop:
        z = modulus_from_development(assemble_torus(p, _tol(args)), _tol(args))
        report["development"] = _modulus_dict(z)
        report["difference"] = abs(z - m.value)
    _emit(args, report)
    return 0


def cmd_solve(args):
    req = SolveRequest(complex(args.re, args.im), n_max=args.nmax, tol=args.solve_tol,
                       allow_reduction=args.reduce, n_min=args.nmin)
    res = solve_modulus(req)
    report = res.as_dict()
    report.update(_torus_report(res.torus, _tol(args)))
    written = _write_mesh_or_svg(args, res.torus.mesh, lambda: torus_crease_pattern(res.torus, _tol(args)))
    if written:
        report["written"] = written
    _emit(args, report)
    return 0 if report["embedded"] and report["flat"] else 1


def _double_report(spec, tol):
    d = double_torus(spec, tol)
    z = modulus_from_development(d, tol)
    rep = {"n": spec.base.n, "ell": spec.base.ell, "rho": spec.base.rho, "sigma": spec.base.sigma,
           "h": spec.base.h, "a": spec.a, "half": spec.half}
    rep.update(_torus_report(d, tol))
    rep["modulus"] = _modulus_dict(z)
    return d, rep


def cmd_double(args):
    tol = _tol(args)
    if args.preset == "half-doubles":
        sys.stderr.write(HALF_DOUBLES_NOTE + "\n")
        reports = []
        for k, (n, ell, rho) in enumerate(HALF_DOUBLES):
            d, rep = _double_report(DoubleSpec(TorusParams(n, ell, rho, 1.0), 0.5, "lower"), tol)
            if args.out:
                stem, dot, ext = args.out.rpartition(".")
                path = f"{stem}-{k}.{ext}" if dot else f"{args.out}-{k}"
                fmt = args.format or "obj"
                if fmt == "svg":
                    export_crease_pattern(torus_crease_pattern(d, tol), path, scale=args.scale)
                else:
                    export_mesh(d.mesh, fmt, path)
                rep["written"] = path
            reports.append(rep)
        report = {"interpretation": HALF_DOUBLES_NOTE, "doubles": reports}
        ok = all(r["embedded"] and r["flat"] for r in reports)
        _emit(args, report)
        return 0 if ok else 1
    if args.n is None or args.l is None or args.rho is None or args.a is None:
        raise UsageError("double needs --n --l --rho --a (or --preset half-doubles)")
    spec = DoubleSpec(_params(args), args.a, args.half)
    d, report = _double_report(spec, tol)
    written = _write_mesh_or_svg(args, d.mesh, lambda: torus_crease_pattern(d, tol))
    if written:
        report["written"] = written
    _emit(args, report)
    return 0 if report["embedded"] and report["flat"] else 1


def cmd_atlas(args):
    grid = AtlasGrid(
        ns=tuple(args.n),
        hs=tuple(args.h or [1.0]),
        den=args.den or 0,
        rhos=tuple(args.rhos or ()),
        ells=tuple(args.ells) if args.ells else None,
    )
    rows, skipped = atlas_rows(grid)
    text = atlas_csv(rows)
    if args.out:
        atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    summary = {"rows": len(rows), "skipped": skipped}
    if args.out:
        summary["written"] = args.out
    stream = sys.stdout if args.out else sys.stderr
    stream.write(json_text(summary) if args.json else f"{len(rows)} rows, {skipped} skipped\n")
    return 0


def _parse_params(text):
    out = {}
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"bad --params item {item!r} (expected key=value)")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    try:
        kw = dict(n=int(out["n"]), ell=int(out.get("l", out.get("ell"))), rho=float(out["rho"]),
                  h=float(out.get("h", 1.0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"--params needs n, l, rho (and optional h, a): {exc}") from exc
    a = float(out["a"]) if "a" in out else None
    return kw, a, out.get("half", "lower")


def cmd_verify(args):
    tol = _tol(args)
    if args.obj:
        mesh = read_obj(args.obj)
        torus = TorusMesh(mesh, None, "mesh")
        report = _torus_report(torus, tol)
        ok = report["embedded"] and report["flat"]
    else:
        if not args.params:
            raise UsageError("verify needs --params or --obj")
        kw, a, half = _parse_params(args.params)
        p = TorusParams(**kw)
        if a is None:
            torus = assemble_torus(p, tol)
            report = _torus_report(torus, tol)
            z = modulus_from_development(torus, tol)
            report["modulus_difference"] = abs(z - torus_modulus(p).value)
            ok = report["embedded"] and report["flat"] and report["modulus_difference"] <= 1e-9
        else:
            torus, report = _double_report(DoubleSpec(p, a, half), tol)
            ok = report["embedded"] and report["flat"]
    report["ok"] = ok
    report["backend"] = kernels.BACKEND_NAME
    text = None
    if not args.json:
        text = ", ".join(
            [("closed" if report["closed"] else "open"),
             ("flat" if report["flat"] else "not flat"),
             ("embedded" if report["embedded"] else "not embedded")]
        )
    _emit(args, report, text)
    return 0 if ok else 1


def cmd_limit_curves(args):
    fmt = args.format or "csv"
    if fmt == "csv":
        text = limit_curves_csv(args.samples)
    elif fmt == "svg":
        text = limit_curves_svg(args.samples)
    else:
        raise UsageError(f"limit-curves format must be csv or svg, not {fmt!r}")
    if args.out:
        atomic_write(args.out, text)
        _emit(args, {"written": args.out, "samples": args.samples})
    else:
        sys.stdout.write(text)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="geometric tolerance")
    common.add_argument("--out", default=None, help="output file")
    common.add_argument("--format", default=None, choices=("obj", "stl", "svg", "csv"))
    common.add_argument("--json", action="store_true", help="machine-readable report")

    parser = argparse.ArgumentParser(prog="origami-tori", description="Origami embeddings of flat tori.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def torus_args(p, required=True):
        p.add_argument("--n", type=int, required=required)
        p.add_argument("--l", type=int, required=required, help="signed ell")
        p.add_argument("--rho", type=float, required=required)
        p.add_argument("--h", type=float, default=1.0)

    p = sub.add_parser("annulus", parents=[common], help="build one band")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--cut", type=float, default=None, help="cut height a")
    p.add_argument("--half", choices=("lower", "upper"), default="lower")
    p.add_argument("--scale", type=float, default=20.0, help="svg mm per unit")
    p.set_defaults(func=cmd_annulus)

    p = sub.add_parser("torus", parents=[common], help="assemble a torus")
    torus_args(p)
    p.add_argument("--scale", type=float, default=20.0)
    p.add_argument("--overlay", action="store_true", help="draw the period parallelogram")
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("enumerate-pairs", parents=[common], help="valid grid pairs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--den", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("modulus", parents=[common], help="modulus of a torus")
    torus_args(p)
    p.add_argument("--develop", action="store_true", help="also unfold the mesh")
    p.set_defaults(func=cmd_modulus)

    p = sub.add_parser("solve", parents=[common], help="parameters for a target modulus")
    p.add_argument("--re", type=float, required=True)
    p.add_argument("--im", type=float, required=True)
    p.add_argument("--nmax", type=int, default=400)
    p.add_argument("--nmin", type=int, default=5)
    p.add_argument("--solve-tol", type=float, default=1e-9)
    p.add_argument("--reduce", action="store_true", help="reduce the target first")
    p.add_argument("--scale", type=float, default=20.0)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("double", parents=[common], help="double of a cut torus")
    torus_args(p, required=False)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--half", choices=("lower", "upper"), default="lower")
    p.add_argument("--preset", choices=("half-doubles",), default=None)
    p.add_argument("--scale", type=float, default=20.0)
    p.set_defaults(func=cmd_double)

    p = sub.add_parser("atlas", parents=[common], help="CSV of moduli over a grid")
    p.add_argument("--n", type=int, action="append", required=True)
    p.add_argument("--den", type=int, default=None)
    p.add_argument("--rhos", type=float, nargs="+", default=None)
    p.add_argument("--ells", type=int, nargs="+", default=None)
    p.add_argument("--h", type=float, action="append", default=None)
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("verify", parents=[common], help="closed / flat / embedded checks")
    p.add_argument("--params", default=None, help="n=8,l=2,rho=-0.375,h=1[,a=0.5]")
    p.add_argument("--obj", default=None, help="check an OBJ file instead")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("limit-curves", parents=[common], help="boundary cycloids")
    p.add_argument("--samples", type=int, default=4096)
    p.set_defaults(func=cmd_limit_curves)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"origami-tori: error: {exc}\n")
        return 2
    except OrigamiError as exc:
        sys.stderr.write(f"origami-tori: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
