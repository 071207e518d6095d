"""The twisted antiprism band A(n, rho, h) and its development.

The bottom polygon ``P_k`` is the regular unit n-gon at z = 0, the top
polygon ``Q_k`` is the same n-gon rotated by ``2*pi*rho`` and lifted to
z = h.  Faces come in pairs per k::

    2k     (P_k, P_{k+1}, Q_{k+1})
    2k+1   (Q_{k+1}, Q_k, P_k)

Mesh vertex ``k`` is ``P_k`` and vertex ``n + k`` is ``Q_k``.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import OrigamiError
from .geometry import TOL, TriMesh


def canonical_twist(rho):
    """Representative of ``rho`` modulo 1 in [-1/2, 1/2)."""
    r = math.fmod(rho + 0.5, 1.0)
    if r < 0:
        r += 1.0
    return r - 0.5


@dataclass(frozen=True)
class AnnulusParams:
    n: int
    rho: float
    h: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise OrigamiError("n-too-small", f"n={self.n} (need n >= 3)")
        if not self.h > 0:
            raise OrigamiError("height-not-positive", f"h={self.h}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "rho", canonical_twist(float(self.rho)))

    @property
    def embeddable(self):
        return twist_in_range(self.n, self.rho, TOL.geom)


def twist_in_range(n, rho, margin=0.0):
    rho = canonical_twist(rho)
    return -0.5 + margin < rho < 0.5 - 1.0 / n - margin


def classify_twist(n, rho, tol=None):
    """One of ``embeddable``, ``prism``, ``antiprism``, ``degenerate-lower``,
    ``degenerate-upper``."""
    tol = tol or TOL
    if n < 3:
        raise OrigamiError("n-too-small", f"n={n}")
    r = canonical_twist(rho)
    if r <= -0.5 + tol.geom:
        return "degenerate-lower"
    if r >= 0.5 - 1.0 / n - tol.geom:
        return "degenerate-upper"
    if abs(r) <= tol.geom or abs(r + 1.0 / n) <= tol.geom:
        return "prism"
    if abs(r + 0.5 / n) <= tol.geom:
        return "antiprism"
    return "embeddable"


def ring(n, angle0=0.0, z=0.0):
    k = np.arange(n)
    a = angle0 + 2 * np.pi * k / n
    return np.column_stack([np.cos(a), np.sin(a), np.full(n, float(z))])


def annulus_faces(n, bottom, top):
    """Face list for a band between index sequences ``bottom`` and ``top``."""
    faces = []
    for k in range(n):
        k1 = (k + 1) % n
        faces.append((bottom[k], bottom[k1], top[k1]))
        faces.append((top[k1], top[k], bottom[k]))
    return faces


def annulus_vertices(n, rho, h):
    """P_0..P_{n-1} followed by Q_0..Q_{n-1}; no range checks."""
    return np.vstack([ring(n), ring(n, 2 * np.pi * rho, h)])


@dataclass(frozen=True, eq=False)
class AnnulusMesh:
    params: AnnulusParams
    mesh: TriMesh

    @property
    def bottom(self):
        return self.mesh.vertices[: self.params.n]

    @property
    def top(self):
        return self.mesh.vertices[self.params.n:]


def build_annulus(params):
    if not isinstance(params, AnnulusParams):
        params = AnnulusParams(*params)
    if not params.embeddable:
        raise OrigamiError(
            "twist-out-of-range",
            f"rho={params.rho} not in (-1/2, 1/2 - 1/{params.n})",
        )
    n = params.n
    verts = annulus_vertices(n, params.rho, params.h)
    faces = annulus_faces(n, range(n), range(n, 2 * n))
    tags = tuple(("annulus", k, t) for k in range(n) for t in (1, 2))
    return AnnulusMesh(params, TriMesh(verts, faces, tags))


def projection_foot(params):
    """Signed length P_0 X_1: foot of Q_1 on the line P_0 P_1, measured from P_0."""
    n, rho = params.n, params.rho
    return math.sin(2 * math.pi * rho + math.pi / n) + math.sin(math.pi / n)


def strip_height(n, rho, h):
    """Height of triangle P_0 P_1 Q_1 over its base P_0 P_1."""
    c = math.cos(2 * math.pi * rho + math.pi / n) - math.cos(math.pi / n)
    return math.hypot(h, c)


def strip_height_flat(n, rho):
    """The same height in the h -> 0 limit."""
    return abs(math.cos(2 * math.pi * rho + math.pi / n) - math.cos(math.pi / n))


@dataclass(frozen=True)
class DevelopmentStrip:
    """Planar parallelogram of an annulus (or of a horizontal slab of one).

    ``bottom`` and ``top`` are complex images of the n + 1 boundary vertices
    (index n repeats index 0 one period to the right).
    """

    n: int
    width: float
    height: float
    top_offset: float
    base_offset: float = 0.0
    base_level: float = 0.0

    @property
    def bottom(self):
        s = math.sin(math.pi / self.n)
        return np.array([self.base_offset + 2 * k * s + 1j * self.base_level for k in range(self.n + 1)])

    @property
    def top(self):
        s = math.sin(math.pi / self.n)
        return np.array(
            [
                self.base_offset + self.top_offset + 2 * k * s + 1j * (self.base_level + self.height)
                for k in range(self.n + 1)
            ]
        )

    def face_images(self):
        """Planar triangles in the mesh face order (2 per k)."""
        b, t = self.bottom, self.top
        out = []
        for k in range(self.n):
            out.append((b[k], b[k + 1], t[k + 1]))
            out.append((t[k + 1], t[k], b[k]))
        return out


def develop_annulus(params):
    if not isinstance(params, AnnulusParams):
        params = AnnulusParams(*params)
    if not params.embeddable:
        raise OrigamiError("twist-out-of-range", f"rho={params.rho}")
    n = params.n
    s = math.sin(math.pi / n)
    return DevelopmentStrip(
        n=n,
        width=2 * n * s,
        height=strip_height(n, params.rho, params.h),
        top_offset=math.sin(2 * math.pi * params.rho + math.pi / n) - s,
    )


def _cut_point(mesh_vertices, i, j, t):
    return (1 - t) * mesh_vertices[i] + t * mesh_vertices[j]


def _trapezoid(a, b, c, d, pts, index):
    """Split quad (a, b, c, d) (cyclic) along its shorter diagonal.

    Ties go to the diagonal through the lowest vertex index.
    """
    ac = np.linalg.norm(pts[a] - pts[c])
    bd = np.linalg.norm(pts[b] - pts[d])
    if abs(ac - bd) <= 1e-12 * max(ac, bd):
        use_ac = min(index[a], index[c]) <= min(index[b], index[d])
    else:
        use_ac = ac < bd
    if use_ac:
        return [(a, b, c), (a, c, d)]
    return [(a, b, d), (b, c, d)]


def slab_pieces(n, bottom, top, vertices, a_frac):
    """Cut the band with bottom/top index lists at fraction ``a_frac`` of its height.

    Returns ``(new_points, lower_faces, upper_faces, cut_side, cut_diag)``.
    New points are appended after ``vertices``: ``C_k`` on edge P_k Q_k
    at index ``len(vertices) + 2k`` and ``D_k`` on P_k Q_{k+1} at
    ``len(vertices) + 2k + 1``.  Face tags are (k, role).
    """
    base = len(vertices)
    new = []
    for k in range(n):
        k1 = (k + 1) % n
        new.append(_cut_point(vertices, bottom[k], top[k], a_frac))
        new.append(_cut_point(vertices, bottom[k], top[k1], a_frac))
    pts = np.vstack([vertices, np.array(new)])
    C = [base + 2 * k for k in range(n)]
    D = [base + 2 * k + 1 for k in range(n)]
    order = {v: i for i, v in enumerate(list(bottom) + list(top) + C + D)}
    lower, upper = [], []
    for k in range(n):
        k1 = (k + 1) % n
        P, P1, Q, Q1 = bottom[k], bottom[k1], top[k], top[k1]
        for f in _trapezoid(P, P1, C[k1], D[k], pts, order):
            lower.append((f, (k, "quad")))
        lower.append(((D[k], C[k], P), (k, "tri")))
        upper.append(((D[k], C[k1], Q1), (k, "tri")))
        for f in _trapezoid(Q1, Q, C[k], D[k], pts, order):
            upper.append((f, (k, "quad")))
    return pts[base:], lower, upper, C, D


def _compact(points, faces):
    used = sorted({v for f in faces for v in f})
    remap = {v: i for i, v in enumerate(used)}
    return points[used], [tuple(remap[v] for v in f) for f in faces]


def cut_annulus(params, a):
    """Slabs z in [0, a] and z in [a, h] with their development strips."""
    if not isinstance(params, AnnulusParams):
        params = AnnulusParams(*params)
    if not 0 < a < params.h:
        raise OrigamiError("cut-out-of-range", f"a={a} not in (0, {params.h})")
    full = build_annulus(params)
    n = params.n
    frac = a / params.h
    new, lower, upper, _, _ = slab_pieces(n, list(range(n)), list(range(n, 2 * n)), full.mesh.vertices, frac)
    pts = np.vstack([full.mesh.vertices, new])
    lv, lf = _compact(pts, [f for f, _ in lower])
    uv, uf = _compact(pts, [f for f, _ in upper])
    lower_mesh = TriMesh(lv, lf, tuple(("lower",) + t for _, t in lower))
    upper_mesh = TriMesh(uv, uf, tuple(("upper",) + t for _, t in upper))
    strip = develop_annulus(params)
    lo = DevelopmentStrip(n, strip.width, frac * strip.height, frac * strip.top_offset)
    hi = DevelopmentStrip(
        n,
        strip.width,
        (1 - frac) * strip.height,
        (1 - frac) * strip.top_offset,
        base_offset=frac * strip.top_offset,
        base_level=frac * strip.height,
    )
    return (lower_mesh, lo), (upper_mesh, hi)
