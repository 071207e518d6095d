"""File output: OBJ / STL meshes, SVG crease patterns, CSV atlases, JSON.

Every write goes to a temporary file in the target directory and is then
renamed over the destination.
"""
import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import OrigamiError
from .geometry import TriMesh
from .moduli import (
    cycloid_cusp,
    cycloid_large,
    cycloid_small,
    axis_segment,
    modulus_value,
    reduce_modulus,
)
from .torus import TorusParams


def atomic_write(path, data):
    """Write text or bytes to ``path`` atomically."""
    path = os.fspath(path)
    mode = "wb" if isinstance(data, (bytes, bytearray)) else "w"
    d = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=d)
        try:
            with os.fdopen(fd, mode, **({} if mode == "wb" else {"newline": "", "encoding": "utf-8"})) as fh:
                fh.write(data)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise OrigamiError("io-error", str(exc)) from exc


# meshes ---------------------------------------------------------------------


def obj_text(mesh):
    out = io.StringIO()
    out.write(f"# {mesh.n_vertices} vertices, {mesh.n_faces} faces\n")
    for x, y, z in mesh.vertices.tolist():
        out.write(f"v {x:.12g} {y:.12g} {z:.12g}\n")
    for a, b, c in mesh.faces.tolist():
        out.write(f"f {a + 1} {b + 1} {c + 1}\n")
    return out.getvalue()


def read_obj(path):
    verts, faces = [], []
    try:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                parts = line.split()
                if not parts:
                    continue
                if parts[0] == "v":
                    verts.append([float(t) for t in parts[1:4]])
                elif parts[0] == "f":
                    faces.append([int(t.split("/")[0]) - 1 for t in parts[1:4]])
    except OSError as exc:
        raise OrigamiError("io-error", str(exc)) from exc
    return TriMesh(np.array(verts), np.array(faces, dtype=np.int64))


STL_DTYPE = np.dtype(
    [("normal", "<f4", 3), ("v0", "<f4", 3), ("v1", "<f4", 3), ("v2", "<f4", 3), ("attr", "<u2")]
)


def stl_bytes(mesh, name=b"origami-tori"):
    tri = mesh.vertices[mesh.faces]
    rec = np.zeros(mesh.n_faces, dtype=STL_DTYPE)
    rec["normal"] = mesh.face_normals()
    rec["v0"], rec["v1"], rec["v2"] = tri[:, 0], tri[:, 1], tri[:, 2]
    header = name.ljust(80, b"\0")[:80]
    return header + np.uint32(mesh.n_faces).tobytes() + rec.tobytes()


def read_stl(path):
    """Triangles of a binary STL as an (F, 3, 3) array plus the stored normals."""
    with open(path, "rb") as fh:
        data = fh.read()
    count = int(np.frombuffer(data[80:84], dtype="<u4")[0])
    rec = np.frombuffer(data[84:], dtype=STL_DTYPE, count=count)
    tri = np.stack([rec["v0"], rec["v1"], rec["v2"]], axis=1).astype(float)
    return tri, rec["normal"].astype(float)


def export_mesh(mesh, fmt, path):
    if fmt == "obj":
        atomic_write(path, obj_text(mesh))
    elif fmt == "stl":
        atomic_write(path, stl_bytes(mesh))
    else:
        raise OrigamiError("bad-format", f"mesh format {fmt!r} (obj or stl)")


# crease patterns --------------------------------------------------------------

COLORS = {"mountain": "#d62728", "valley": "#1f77b4", "flat": "#999999"}


def svg_text(cp, scale=20.0, margin=5.0, overlay=False):
    """SVG 1.1 document in millimetres; ``scale`` is mm per model unit."""
    pts = [z for seg in cp.outline for z in seg] + [z for f in cp.folds for z in (f.start, f.end)]
    pts += list(cp.overlay) if overlay else []
    xs = [z.real for z in pts]
    ys = [z.imag for z in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w = (x1 - x0) * scale + 2 * margin
    h = (y1 - y0) * scale + 2 * margin

    def xy(z):
        return (z.real - x0) * scale + margin, (y1 - z.imag) * scale + margin

    def line(a, b, color, width, dash=None):
        (ax, ay), (bx, by) = xy(a), xy(b)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        return (
            f'<line x1="{ax:.4f}" y1="{ay:.4f}" x2="{bx:.4f}" y2="{by:.4f}" '
            f'stroke="{color}" stroke-width="{width}"{extra}/>'
        )

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.4f}mm" height="{h:.4f}mm" '
        f'viewBox="0 0 {w:.4f} {h:.4f}">',
        f"<desc>scale {scale!r} mm per unit</desc>",
        '<g id="folds" fill="none">',
    ]
    for f in cp.folds:
        dash = "1,1" if f.kind == "flat" else ("3,1" if f.kind == "valley" else None)
        out.append(line(f.start, f.end, COLORS[f.kind], 0.3, dash))
    out.append("</g>")
    out.append('<g id="outline" fill="none">')
    for a, b in cp.outline:
        out.append(line(a, b, "#000000", 0.5))
    out.append("</g>")
    if overlay and cp.overlay:
        pts = " ".join("{:.4f},{:.4f}".format(*xy(z)) for z in cp.overlay)
        out.append(f'<polygon id="fundamental-domain" points="{pts}" fill="none" stroke="#ff0000" stroke-width="0.4"/>')
    out.append('<g id="labels" font-size="2.5" font-family="sans-serif">')
    for z, text in cp.labels:
        x, y = xy(z)
        out.append(f'<text x="{x:.4f}" y="{y:.4f}">{text}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export_crease_pattern(cp, path, scale=20.0, overlay=False):
    atomic_write(path, svg_text(cp, scale=scale, overlay=overlay))


# atlas ----------------------------------------------------------------------

ATLAS_FIELDS = ("n", "ell", "rho", "h", "re", "im", "norm_re", "norm_im")


@dataclass(frozen=True)
class AtlasRow:
    n: int
    ell: int
    rho: float
    h: float
    re: float
    im: float
    norm_re: float
    norm_im: float


@dataclass(frozen=True)
class AtlasGrid:
    """Parameter grid; ``rhos`` wins over ``den`` when both are given.

    ``ells=None`` means every signed ell with 2 <= |ell| <= n - 3.
    """

    ns: tuple
    hs: tuple = (1.0,)
    den: int = 0
    rhos: tuple = ()
    ells: tuple = None

    def twists(self):
        if self.rhos:
            return sorted(float(r) for r in self.rhos)
        if self.den <= 0:
            raise OrigamiError("empty-grid", "need den or rhos")
        return [float(Fraction(k, self.den)) for k in range(-(self.den // 2), (self.den + 1) // 2)]


def atlas_rows(grid):
    """Rows for every valid tuple, plus the number of skipped tuples."""
    rows, skipped = [], 0
    for n in sorted(grid.ns):
        ells = grid.ells if grid.ells is not None else [e for k in range(2, n - 2) for e in (k, -k)]
        for rho in grid.twists():
            for ell in sorted(ells):
                for h in sorted(grid.hs):
                    try:
                        p = TorusParams(n, ell, rho, h)
                    except Exception:
                        skipped += 1
                        continue
                    if not p.valid:
                        skipped += 1
                        continue
                    z = modulus_value(n, ell, p.rho, h)
                    w = reduce_modulus(z).normalized
                    rows.append(AtlasRow(n, ell, p.rho, h, z.real, z.imag, w.real, w.imag))
    return rows, skipped


def atlas_csv(rows):
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\r\n")
    w.writerow(ATLAS_FIELDS)
    for r in rows:
        w.writerow([r.n, r.ell] + [repr(float(getattr(r, f))) for f in ATLAS_FIELDS[2:]])
    return out.getvalue()


def emit_atlas(grid, path):
    rows, skipped = atlas_rows(grid)
    atomic_write(path, atlas_csv(rows))
    return {"rows": len(rows), "skipped": skipped, "path": os.fspath(path)}


# limit curves ----------------------------------------------------------------

CURVES = {
    "cycloid_small": (cycloid_small, 0.0, 0.5),
    "cycloid_cusp": (cycloid_cusp, 0.0, 1.0),
    "cycloid_large": (cycloid_large, 0.0, -0.5),
    "axis_segment": (axis_segment, -0.5, 0.0),
}


def limit_curve_samples(samples=4096):
    out = {}
    for name, (curve, t0, t1) in CURVES.items():
        ts = np.linspace(t0, t1, samples)
        out[name] = [(float(t), curve(float(t))) for t in ts]
    return out


def limit_curves_csv(samples=4096):
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\r\n")
    w.writerow(("curve", "t", "re", "im"))
    for name, pts in limit_curve_samples(samples).items():
        for t, z in pts:
            w.writerow((name, repr(t), repr(z.real), repr(z.imag)))
    return out.getvalue()


def limit_curves_svg(samples=1024, scale=100.0, margin=5.0):
    curves = limit_curve_samples(samples)
    x0, x1, y0, y1 = -0.05, 1.05, -0.05, 2 / math.pi + 0.05
    w, h = (x1 - x0) * scale + 2 * margin, (y1 - y0) * scale + 2 * margin

    def xy(z):
        return (z.real - x0) * scale + margin, (y1 - z.imag) * scale + margin

    colors = {"cycloid_small": "#d62728", "cycloid_cusp": "#2ca02c", "cycloid_large": "#1f77b4", "axis_segment": "#000000"}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.3f}mm" height="{h:.3f}mm" viewBox="0 0 {w:.3f} {h:.3f}">',
    ]
    for name, pts in curves.items():
        d = " ".join("{:.4f},{:.4f}".format(*xy(z)) for _, z in pts)
        out.append(f'<polyline id="{name}" points="{d}" fill="none" stroke="{colors[name]}" stroke-width="0.4"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# json -----------------------------------------------------------------------


def _plain(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def json_text(obj):
    """JSON with shortest round-trip float formatting."""
    return json.dumps(_plain(obj), indent=2, allow_nan=False) + "\n"


def write_json(obj, path):
    atomic_write(path, json_text(obj))
