"""Shared geometric primitives: tolerances, triangle meshes and predicates."""
import math
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .errors import OrigamiError


@dataclass(frozen=True)
class Tolerances:
    weld: float = 1e-9
    geom: float = 1e-9
    solver: float = 1e-12
    area: float = 1e-12

    def __post_init__(self):
        for name in ("weld", "geom", "solver", "area"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name} must be positive")


def default_tolerances():
    """Defaults, with ``ORIGAMI_TORI_TOL`` overriding the geometric tolerance."""
    env = os.environ.get("ORIGAMI_TORI_TOL")
    if env:
        return Tolerances(geom=float(env))
    return Tolerances()


TOL = default_tolerances()


def _as_tri(t):
    a = np.asarray(t, dtype=float)
    if a.shape != (3, 3) or not np.all(np.isfinite(a)):
        raise OrigamiError("degenerate-triangle", "expected three finite 3-d points")
    return a


def triangle_area(t):
    a = np.asarray(t, dtype=float)
    return 0.5 * float(np.linalg.norm(np.cross(a[1] - a[0], a[2] - a[0])))


def _check_nondegenerate(t, tol):
    if triangle_area(t) <= tol.area:
        raise OrigamiError("degenerate-triangle")


def triangle_congruent(t1, t2, tol=None):
    """True iff the sorted edge-length triples agree within ``tol.geom``."""
    tol = tol or TOL
    a, b = _as_tri(t1), _as_tri(t2)
    _check_nondegenerate(a, tol)
    _check_nondegenerate(b, tol)
    la = np.sort(np.linalg.norm(a - np.roll(a, 1, axis=0), axis=1))
    lb = np.sort(np.linalg.norm(b - np.roll(b, 1, axis=0), axis=1))
    return bool(np.all(np.abs(la - lb) <= tol.geom))


def triangles_interior_disjoint(t1, t2, tol=None):
    """Whether two triangles meet only in a common vertex or a common full edge.

    Shared vertices are detected by coordinate coincidence within ``tol.weld``.
    """
    tol = tol or TOL
    a, b = _as_tri(t1), _as_tri(t2)
    _check_nondegenerate(a, tol)
    _check_nondegenerate(b, tol)
    shared = [
        (i, j)
        for i in range(3)
        for j in range(3)
        if np.linalg.norm(a[i] - b[j]) <= tol.weld
    ]
    return not kernels.tri_tri_intersect(
        [tuple(p) for p in a.tolist()], [tuple(p) for p in b.tolist()], shared, tol.geom
    )


def weld(points, tol=None):
    """Merge points closer than ``tol.weld``.

    Returns ``(unique_points, index_map)`` where ``index_map[i]`` is the new
    index of ``points[i]``.  Order of first occurrence is preserved.
    """
    tol = tol or TOL
    pts = np.asarray(points, dtype=float)
    index_map = np.empty(len(pts), dtype=np.int64)
    keep = []
    for i, p in enumerate(pts):
        hit = -1
        if keep:
            d = np.linalg.norm(pts[keep] - p, axis=1)
            k = int(np.argmin(d))
            if d[k] <= tol.weld:
                hit = k
        if hit < 0:
            keep.append(i)
            hit = len(keep) - 1
        index_map[i] = hit
    return pts[keep].copy(), index_map


@dataclass(frozen=True, eq=False)
class TriMesh:
    """Indexed triangle mesh in 3-space."""

    vertices: np.ndarray
    faces: np.ndarray
    tags: tuple = field(default=())

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        f = np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)
        if not np.all(np.isfinite(v)):
            raise OrigamiError("non-finite-vertex")
        if len(f) and (f.min() < 0 or f.max() >= len(v)):
            raise OrigamiError("bad-face-index")
        for a, b, c in f:
            if a == b or b == c or a == c:
                raise OrigamiError("degenerate-triangle", f"repeated index in face {a, b, c}")
        v.setflags(write=False)
        f.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "faces", f)

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_faces(self):
        return len(self.faces)

    @cached_property
    def edges(self):
        """Map from sorted vertex pair to the list of incident face indices."""
        table = {}
        for fi, (a, b, c) in enumerate(self.faces.tolist()):
            for u, v in ((a, b), (b, c), (c, a)):
                table.setdefault((min(u, v), max(u, v)), []).append(fi)
        return table

    @property
    def n_edges(self):
        return len(self.edges)

    def euler_characteristic(self):
        used = len(np.unique(self.faces))
        return used - self.n_edges + self.n_faces

    def boundary_edges(self):
        return [e for e, fs in self.edges.items() if len(fs) == 1]

    def nonmanifold_edges(self):
        return [e for e, fs in self.edges.items() if len(fs) > 2]

    def is_closed(self):
        return all(len(fs) == 2 for fs in self.edges.values())

    def is_consistently_oriented(self):
        seen = set()
        for a, b, c in self.faces.tolist():
            for u, v in ((a, b), (b, c), (c, a)):
                if (u, v) in seen:
                    return False
                seen.add((u, v))
        return True

    def triangle(self, fi):
        return self.vertices[self.faces[fi]]

    def face_normals(self):
        t = self.vertices[self.faces]
        n = np.cross(t[:, 1] - t[:, 0], t[:, 2] - t[:, 0])
        return n / np.linalg.norm(n, axis=1)[:, None]

    def check_faces(self, tol=None):
        tol = tol or TOL
        t = self.vertices[self.faces]
        area = 0.5 * np.linalg.norm(np.cross(t[:, 1] - t[:, 0], t[:, 2] - t[:, 0]), axis=1)
        bad = np.nonzero(area <= tol.area)[0]
        if len(bad):
            raise OrigamiError("degenerate-triangle", f"face {int(bad[0])}")

    def flipped(self):
        return TriMesh(self.vertices, self.faces[:, ::-1], self.tags)

    def transformed(self, matrix, offset=(0.0, 0.0, 0.0)):
        m = np.asarray(matrix, dtype=float)
        v = self.vertices @ m.T + np.asarray(offset, dtype=float)
        faces = self.faces if np.linalg.det(m) > 0 else self.faces[:, ::-1]
        return TriMesh(v, faces, self.tags)


def rotation_z(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


MIRROR_Y = np.diag([1.0, -1.0, 1.0])


def interior_angle(p, a, b):
    """Angle at ``p`` of the triangle (p, a, b), via atan2 for accuracy."""
    u = np.asarray(a, dtype=float) - p
    v = np.asarray(b, dtype=float) - p
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(np.dot(u, v)))


def angle_at_vertex(mesh, vertex):
    """Sum of interior angles at ``vertex`` over all incident faces."""
    total = 0.0
    used = False
    for face in mesh.faces.tolist():
        if vertex in face:
            used = True
            k = face.index(vertex)
            p = mesh.vertices[vertex]
            total += interior_angle(p, mesh.vertices[face[(k + 1) % 3]], mesh.vertices[face[(k + 2) % 3]])
    if not used:
        raise OrigamiError("unused-vertex", f"vertex {vertex}")
    return total


def vertex_angle_sums(mesh):
    """Angle sums for every vertex, as an array (NaN for unused vertices)."""
    t = mesh.vertices[mesh.faces]
    sums = np.zeros(mesh.n_vertices)
    for k in range(3):
        u = t[:, (k + 1) % 3] - t[:, k]
        v = t[:, (k + 2) % 3] - t[:, k]
        ang = np.arctan2(np.linalg.norm(np.cross(u, v), axis=1), np.einsum("ij,ij->i", u, v))
        np.add.at(sums, mesh.faces[:, k], ang)
    unused = np.ones(mesh.n_vertices, dtype=bool)
    unused[mesh.faces.ravel()] = False
    sums[unused] = np.nan
    return sums


def intersecting_face_pairs(mesh, tol=None):
    """All face pairs of a welded mesh whose interiors meet (brute force)."""
    tol = tol or TOL
    return kernels.scan_pairs(mesh.vertices, mesh.faces, tol.geom)


def same_point_set(a, b, tol):
    """True if two point clouds coincide as sets within ``tol``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        return False
    d = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
    return bool(np.all(d.min(axis=1) <= tol) and np.all(d.min(axis=0) <= tol))


def same_face_set(m1, m2, tol):
    """True if two meshes have the same triangles as point sets, within ``tol``."""
    if m1.n_faces != m2.n_faces:
        return False
    c1 = m1.vertices[m1.faces]
    c2 = m2.vertices[m2.faces]
    cent1 = c1.mean(axis=1)
    cent2 = c2.mean(axis=1)
    d = np.linalg.norm(cent1[:, None, :] - cent2[None, :, :], axis=2)
    match = d.argmin(axis=1)
    if len(set(match.tolist())) != len(match):
        return False
    for i, j in enumerate(match.tolist()):
        if not same_point_set(c1[i], c2[j], tol):
            return False
    return True
