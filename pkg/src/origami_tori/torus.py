"""Closed tori made of two coaxial twisted bands, and their doubles.

The inner band has twist ``rho`` and the outer band ``sigma = rho + ell/n``.
Both share the bottom n-gon ``P_k`` and, because sigma - rho is a multiple
of 1/n, also the top n-gon: ``Q^sigma_k = Q^rho_{k + ell}``.

Vertex layout of an assembled torus: ``P_k`` at ``k`` and ``Q^rho_k`` at
``n + k``.  Faces ``0 .. 2n-1`` belong to the inner band (same order as a
single band, winding reversed), faces ``2n .. 4n-1`` to the outer band.
With this winding every face normal points out of the solid torus.

Sign convention: ``ell > 0`` gives a modulus with positive real part.
"""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .annulus import (
    AnnulusParams,
    annulus_faces,
    annulus_vertices,
    build_annulus,
    canonical_twist,
    slab_pieces,
)
from .errors import OrigamiError
from .geometry import TOL, Tolerances, TriMesh, weld


@dataclass(frozen=True)
class TorusParams:
    n: int
    ell: int
    rho: float
    h: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 5:
            raise OrigamiError("n-too-small", f"n={self.n} (tori need n >= 5)")
        if int(self.ell) != self.ell:
            raise OrigamiError("invalid-pairing", f"ell={self.ell} is not an integer")
        if not self.h > 0:
            raise OrigamiError("height-not-positive", f"h={self.h}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "ell", int(self.ell))
        object.__setattr__(self, "rho", canonical_twist(float(self.rho)))

    @property
    def sigma(self):
        return self.rho + self.ell / self.n

    @property
    def valid(self):
        return ell_condition(self.n, self.ell, self.rho)

    def replace(self, **kw):
        d = dict(n=self.n, ell=self.ell, rho=self.rho, h=self.h)
        d.update(kw)
        return TorusParams(**d)


def ell_range_ok(n, ell):
    return 2 <= abs(ell) <= n - 3


def rho_interval(n, ell):
    """Open interval of admissible inner twists for a given signed ell."""
    if ell > 0:
        return -0.5, -ell / (2 * n) - 1.0 / n
    return -ell / (2 * n), 0.5 - 1.0 / n


def ell_condition(n, ell, rho, margin=0.0):
    if not ell_range_ok(n, ell):
        return False
    lo, hi = rho_interval(n, ell)
    return lo + margin < rho < hi - margin


def _bullet_condition(n, rho, sigma, margin=0.0):
    """Edge-position comparison of the two bands, band by band.

    For each band, the edge nearest the axis is P_0 Q_0 when the twist is at
    most -1/(2n) and P_0 Q_1 otherwise; the outer band's near edge must stay
    farther out than the inner band's far edge.
    """
    lo, up, mid = -0.5, 0.5 - 1.0 / n, -0.5 / n
    if not (lo + margin < rho < up - margin and lo + margin < sigma < up - margin):
        return False
    inner = abs(rho + 1.0 / n) if rho <= mid else abs(rho)
    outer = abs(sigma) if sigma <= mid else sigma + 1.0 / n
    return outer < inner - margin


@dataclass(frozen=True)
class Pairing:
    valid: bool
    reason: str
    ell: int = 0

    def __bool__(self):
        return self.valid


def pairing_valid(n, rho, sigma, tol=None):
    """Whether bands with twists rho (inner) and sigma (outer) form an embedded torus.

    Both the summarized ell-condition and the band-by-band edge comparison
    are evaluated; a disagreement raises ``pairing-forms-disagree``.
    Parameters within ``tol.geom`` of an interval endpoint count as invalid.
    """
    tol = tol or TOL
    if n < 5:
        raise OrigamiError("n-too-small", f"n={n}")
    rho, sigma = canonical_twist(rho), canonical_twist(sigma)
    d = (sigma - rho) * n
    ell = int(round(d))
    if abs(d - ell) > tol.geom * n:
        return Pairing(False, "twist difference is not a multiple of 1/n")
    summarized = ell_condition(n, ell, rho, tol.geom)
    bullets = _bullet_condition(n, rho, sigma, tol.geom)
    if summarized != bullets:
        raise OrigamiError(
            "pairing-forms-disagree", f"n={n} rho={rho!r} sigma={sigma!r}"
        )
    if not ell_range_ok(n, ell):
        return Pairing(False, f"ell={ell} outside 2..{n - 3}", ell)
    if not summarized:
        lo, hi = rho_interval(n, ell)
        return Pairing(False, f"rho={rho!r} outside ({lo!r}, {hi!r}) for ell={ell}", ell)
    return Pairing(True, "ok", ell)


def enumerate_pairs(n, d):
    """All grid pairs (rho, sigma) in {k/d} passing pairing_valid, sorted.

    Pairs are returned as Fractions so the output is exact.
    """
    if n < 5:
        raise OrigamiError("n-too-small", f"n={n}")
    if d < n:
        raise OrigamiError("grid-too-coarse", f"d={d} < n={n}")
    grid = [Fraction(k, d) for k in range(-(d // 2), (d + 1) // 2)]
    grid = [g for g in grid if -Fraction(1, 2) <= g < Fraction(1, 2)]
    out = []
    for r in grid:
        for s in grid:
            if ((s - r) * n).denominator != 1:
                continue
            if pairing_valid(n, float(r), float(s)):
                out.append((r, s))
    return sorted(out)


@dataclass(frozen=True, eq=False)
class TorusMesh:
    """A closed mesh plus what the development oracle needs.

    ``cut_edges`` turn the surface into a disc; ``anchors`` give the two
    period vectors as differences of vertex images, each as
    ``(face_a, vertex_a, face_b, vertex_b, shift)`` meaning
    ``img_b - img_a - shift * w1``.  ``frame`` is (face, v0, v1, v_up).
    Doubles have no anchors; their periods come from the lattice.
    """

    mesh: TriMesh
    params: object
    kind: str = "torus"
    cut_edges: tuple = ()
    anchors: dict = field(default_factory=dict)
    frame: tuple = ()

    @property
    def tags(self):
        return self.mesh.tags


def _torus_faces(n, ell):
    P = list(range(n))
    Qr = [n + k for k in range(n)]
    Qs = [n + (k + ell) % n for k in range(n)]
    inner = [f[::-1] for f in annulus_faces(n, P, Qr)]
    outer = annulus_faces(n, P, Qs)
    tags = tuple(("inner", k, t) for k in range(n) for t in (1, 2))
    tags += tuple(("outer", k, t) for k in range(n) for t in (1, 2))
    return inner + outer, tags


def assemble_torus(params, tol=None, check=True):
    tol = tol or TOL
    if not isinstance(params, TorusParams):
        params = TorusParams(*params)
    n, ell = params.n, params.ell
    if check and not params.valid:
        lo, hi = rho_interval(n, ell)
        raise OrigamiError(
            "invalid-pairing",
            f"n={n} ell={ell} rho={params.rho!r} (need 2<=|ell|<={n - 3}, rho in ({lo!r}, {hi!r}))",
        )
    inner = build_annulus(AnnulusParams(n, params.rho, params.h))
    outer = build_annulus(AnnulusParams(n, params.sigma, params.h))
    # the structural identification must agree with a coordinate weld
    merged, index = weld(np.vstack([inner.mesh.vertices, outer.mesh.vertices]), tol)
    expected = list(range(2 * n)) + list(range(n)) + [n + (k + ell) % n for k in range(n)]
    if len(merged) != 2 * n or index.tolist() != expected:
        raise OrigamiError("weld-failed", "band boundaries do not coincide")
    faces, tags = _torus_faces(n, ell)
    mesh = TriMesh(inner.mesh.vertices, faces, tags)
    lp = ell % n
    cuts = tuple((n + k, n + (k + 1) % n) for k in range(n)) + ((0, n), (0, n + lp))
    anchors = {
        "w1": (0, 0, 2 * (n - 1), 0, 0),
        "w2": (2 * n + 1, n + lp, 2 * lp + 1, n + lp, 1 if ell < 0 else 0),
    }
    return TorusMesh(mesh, params, "torus", cuts, anchors, (0, 0, 1, n + 1))


def glue_annuli(n, rho, sigma, h=1.0, tol=None):
    """Union of the bands for (rho, sigma), welded by coordinates only.

    No pairing check: this is the input of the brute-force oracle.  Inner
    faces are reversed so a genuine torus comes out consistently oriented.
    """
    tol = tol or TOL
    va = annulus_vertices(n, rho, h)
    vb = annulus_vertices(n, sigma, h)
    merged, index = weld(np.vstack([va, vb]), tol)
    idx_a, idx_b = index[: 2 * n].tolist(), index[2 * n:].tolist()
    fa = annulus_faces(n, idx_a[:n], idx_a[n:])
    fb = annulus_faces(n, idx_b[:n], idx_b[n:])
    faces = [f[::-1] for f in fa] + fb
    tags = tuple(("inner", k, t) for k in range(n) for t in (1, 2))
    tags += tuple(("outer", k, t) for k in range(n) for t in (1, 2))
    return TriMesh(merged, faces, tags)


@dataclass(frozen=True)
class EmbeddingReport:
    ok: bool
    closed: bool
    manifold: bool
    oriented: bool
    nested: bool
    violating_pairs: tuple = ()

    def as_dict(self):
        return {
            "ok": self.ok,
            "closed": self.closed,
            "manifold": self.manifold,
            "oriented": self.oriented,
            "nested": self.nested,
            "violating_pairs": [list(p) for p in self.violating_pairs],
        }


def _section(mesh, faces, z):
    """Segments cut from the given faces by the plane at height z."""
    segs = []
    V = mesh.vertices
    for f in faces:
        tri = V[mesh.faces[f]]
        pts = []
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            da, db = a[2] - z, b[2] - z
            if (da < 0) != (db < 0):
                t = da / (da - db)
                pts.append(a[:2] + t * (b[:2] - a[:2]))
        if len(pts) == 2:
            segs.append((pts[0], pts[1]))
    return segs


def _polygon(segs):
    """Weld segment endpoints so shared polygon vertices are identical."""
    ends = np.array([p for s in segs for p in s])
    nodes, index = weld(np.column_stack([ends, np.zeros(len(ends))]), Tolerances(weld=1e-12))
    nodes = nodes[:, :2]
    return nodes[index[0::2]], nodes[index[1::2]]


def _inside(point, polygon):
    """Even-odd ray test against a welded segment polygon."""
    a, b = polygon
    x, y = point
    cross = (a[:, 1] > y) != (b[:, 1] > y)
    a, b = a[cross], b[cross]
    xc = a[:, 0] + (y - a[:, 1]) * (b[:, 0] - a[:, 0]) / (b[:, 1] - a[:, 1])
    return bool(np.count_nonzero(xc > x) % 2)


def nested_correctly(mesh, z=None):
    """The inner-tagged band lies inside the outer-tagged band.

    Checked on a horizontal cross-section; meshes without inner/outer
    tags count as nested.
    """
    tags = mesh.tags
    if not tags:
        return True
    inner = [i for i, t in enumerate(tags) if t[0] == "inner"]
    outer = [i for i, t in enumerate(tags) if t[0] == "outer"]
    if not inner or not outer:
        return True
    if z is None:
        lo, hi = mesh.vertices[:, 2].min(), mesh.vertices[:, 2].max()
        z = lo + 0.37 * (hi - lo)
    si = _section(mesh, inner, z)
    so = _section(mesh, outer, z)
    if not si or not so:
        return False
    poly = _polygon(so)
    return all(_inside(p, poly) for s in si for p in s)


def verify_embedding(torus, tol=None):
    """Brute-force check that a closed mesh is embedded and correctly nested."""
    tol = tol or TOL
    mesh = torus.mesh if isinstance(torus, TorusMesh) else torus
    if mesh.boundary_edges():
        raise OrigamiError("not-closed", f"{len(mesh.boundary_edges())} boundary edges")
    manifold = not mesh.nonmanifold_edges()
    oriented = mesh.is_consistently_oriented()
    bad = tuple(kernels.scan_pairs(mesh.vertices, mesh.faces, tol.geom))
    nested = nested_correctly(mesh)
    ok = manifold and oriented and not bad and nested
    return EmbeddingReport(ok, True, manifold, oriented, nested, bad)


def brute_force_embedded(n, rho, sigma, h=1.0, tol=None):
    """Oracle: glue the bands and test the result directly.

    Returns False for anything that is not an embedded, correctly nested,
    closed surface (including non-manifold gluings).
    """
    mesh = glue_annuli(n, rho, sigma, h, tol)
    if mesh.boundary_edges():
        return False
    if mesh.nonmanifold_edges():
        return False
    return verify_embedding(mesh, tol).ok


def mirror_params(params):
    """Parameters of the mirror image (y -> -y) of a torus."""
    return TorusParams(params.n, -params.ell, -params.rho - 1.0 / params.n, params.h)


@dataclass(frozen=True)
class DoubleSpec:
    base: TorusParams
    a: float
    half: str = "lower"

    def __post_init__(self):
        if not 0 < self.a < self.base.h:
            raise OrigamiError("cut-out-of-range", f"a={self.a} not in (0, {self.base.h})")
        if self.half not in ("lower", "upper"):
            raise OrigamiError("bad-half", f"half={self.half!r}")

    @property
    def fraction(self):
        """Fraction of the band height kept before doubling."""
        f = self.a / self.base.h
        return f if self.half == "lower" else 1.0 - f


def double_torus(spec, tol=None):
    """Cut both bands at z = a, keep one slab and glue it to its mirror image
    across the plane z = a.  The result is a closed torus of 6n vertices."""
    tol = tol or TOL
    base = spec.base
    if not base.valid:
        raise OrigamiError("invalid-pairing", f"{base}")
    t = assemble_torus(base, tol)
    n, ell = base.n, base.ell
    V = t.mesh.vertices
    P = list(range(n))
    Qr = [n + k for k in range(n)]
    Qs = [n + (k + ell) % n for k in range(n)]
    frac = spec.a / base.h
    new_r, low_r, up_r, _, _ = slab_pieces(n, P, Qr, V, frac)
    pts = np.vstack([V, new_r])
    new_s, low_s, up_s, _, _ = slab_pieces(n, P, Qs, pts, frac)
    pts = np.vstack([pts, new_s])
    if spec.half == "lower":
        pieces_r, pieces_s, ring = low_r, low_s, P
    else:
        pieces_r, pieces_s, ring = up_r, up_s, Qr

    faces, tags = [], []
    for f, tg in pieces_r:
        faces.append(f[::-1])
        tags.append(("inner", spec.half) + tg)
    for f, tg in pieces_s:
        faces.append(f)
        tags.append(("outer", spec.half) + tg)

    # mirror across z = a; cut points are fixed, the kept ring is copied
    used = sorted({v for f in faces for v in f})
    remap = {v: i for i, v in enumerate(used)}
    verts = [pts[v] for v in used]
    mirror = {}
    for v in ring:
        p = pts[v].copy()
        p[2] = 2 * spec.a - p[2]
        mirror[remap[v]] = len(verts)
        verts.append(p)
    kept = [tuple(remap[v] for v in f) for f in faces]
    faces = kept + [tuple(mirror.get(v, v) for v in f[::-1]) for f in kept]
    tags = tags + [(tg[0], "mirror") + tg[2:] for tg in tags]
    mesh = TriMesh(np.array(verts), faces, tuple(tags))
    r0, r1 = remap[ring[0]], remap[ring[1]]
    root = next(
        i for i, f in enumerate(kept) if r0 in f and r1 in f and tags[i][0] == "inner"
    )
    up = [v for v in kept[root] if v not in (r0, r1)][0]
    return TorusMesh(mesh, spec, "double", (), {}, (root, r0, r1, up))
