"""Face-by-face unfolding of flat triangle meshes into the plane.

This is deliberately independent of the closed-form strip geometry: every
planar triangle is rebuilt from its 3-space edge lengths and attached to a
neighbour across a shared edge.  Images are complex numbers.
"""
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import OrigamiError
from .geometry import TOL, vertex_angle_sums


@dataclass(frozen=True, eq=False)
class Unfolding:
    """Planar images per face corner plus the edge holonomy.

    ``images[f, i]`` is the image of corner ``i`` of face ``f``.
    ``translations`` maps each undirected edge to the offset between its
    two face images (zero for edges interior to the development).
    """

    images: np.ndarray
    translations: dict
    tree_edges: frozenset

    def image(self, face, vertex, mesh):
        row = mesh.faces[face].tolist()
        return complex(self.images[face, row.index(vertex)])


def _third_point(a, b, la, lb):
    """Point c left of the directed segment a->b with |c-a| = la, |c-b| = lb."""
    ab = b - a
    d = abs(ab)
    x = (la * la - lb * lb + d * d) / (2 * d)
    y = math.sqrt(max(la * la - x * x, 0.0))
    u = ab / d
    return a + u * complex(x, y)


def _place_face(mesh, face, fixed):
    """Images of the 3 corners of ``face`` given images of two of its vertices.

    The face is placed so that its corner order is counter-clockwise.
    """
    row = mesh.faces[face].tolist()
    V = mesh.vertices
    known = [i for i in range(3) if row[i] in fixed]
    i = [k for k in range(3) if k not in known][0]
    # corners (i+1, i+2) run along the known edge; ccw puts i on the left
    j, k = (i + 1) % 3, (i + 2) % 3
    a, b = fixed[row[j]], fixed[row[k]]
    la = float(np.linalg.norm(V[row[i]] - V[row[j]]))
    lb = float(np.linalg.norm(V[row[i]] - V[row[k]]))
    out = [0j, 0j, 0j]
    out[j], out[k] = a, b
    out[i] = _third_point(a, b, la, lb)
    return out


def unfold(mesh, root_face, root_vertex, cut_edges=None, tol=None):
    """Develop a flat, consistently oriented mesh by breadth-first unfolding.

    ``root_vertex`` goes to the origin and the next corner of ``root_face``
    goes onto the positive real axis.  Edges in ``cut_edges`` (pairs of
    vertex indices) are never crossed and every other edge must be interior
    to the development.  With ``cut_edges=None`` the unfolding follows a
    breadth-first spanning tree and any non-tree edge may carry a period.
    Raises ``not-developable`` when an angle sum is off 2*pi, when an
    interior edge disagrees, or when an edge is glued by anything other
    than a translation.
    """
    tol = tol or TOL
    if not mesh.is_closed() or not mesh.is_consistently_oriented():
        raise OrigamiError("not-developable", "mesh must be closed and consistently oriented")
    sums = vertex_angle_sums(mesh)
    bad = np.nonzero(np.abs(sums - 2 * np.pi) > max(tol.geom, 1e-9))[0]
    if len(bad):
        v = int(bad[0])
        raise OrigamiError("not-developable", f"angle sum {sums[v]!r} at vertex {v}")
    free = cut_edges is None
    cuts = {(min(a, b), max(a, b)) for a, b in (cut_edges or ())}
    faces = mesh.faces.tolist()
    V = mesh.vertices
    F = len(faces)
    images = np.full((F, 3), np.nan + 0j, dtype=complex)

    row = faces[root_face]
    i0 = row.index(root_vertex)
    a, b = row[i0], row[(i0 + 1) % 3]
    fixed = {a: 0j, b: complex(float(np.linalg.norm(V[b] - V[a])), 0.0)}
    images[root_face] = _place_face(mesh, root_face, fixed)

    neighbours = [[] for _ in range(F)]
    for e, fs in mesh.edges.items():
        if e in cuts:
            continue
        f, g = fs
        neighbours[f].append((g, e))
        neighbours[g].append((f, e))
    tree = set()
    seen = np.zeros(F, dtype=bool)
    seen[root_face] = True
    queue = deque([root_face])
    while queue:
        f = queue.popleft()
        for g, e in neighbours[f]:
            if seen[g]:
                continue
            rf = faces[f]
            pos = {rf[k]: images[f, k] for k in range(3)}
            images[g] = _place_face(mesh, g, {e[0]: pos[e[0]], e[1]: pos[e[1]]})
            seen[g] = True
            tree.add(e)
            queue.append(g)
    if not seen.all():
        raise OrigamiError("not-developable", "cut edges disconnect the surface")

    scale = max(1.0, float(np.abs(images).max()))
    eps = max(tol.geom, 1e-9) * scale
    translations = {}
    for e, (f, g) in mesh.edges.items():
        rf, rg = faces[f], faces[g]
        d0 = images[g, rg.index(e[0])] - images[f, rf.index(e[0])]
        d1 = images[g, rg.index(e[1])] - images[f, rf.index(e[1])]
        if abs(d0 - d1) > eps:
            raise OrigamiError("not-developable", f"edge {e} glued by a non-translation")
        t = 0.5 * (d0 + d1)
        if not free and e not in cuts and abs(t) > eps:
            raise OrigamiError("not-developable", f"edge {e} images disagree")
        translations[e] = complex(t)
    return Unfolding(images, translations, frozenset(tree))


def reduce_period(w2, w1):
    """Shift ``w2`` by an integer multiple of ``w1`` so w2/w1 has real part in [-1/2, 1/2)."""
    r = (w2 / w1).real
    return w2 - math.floor(r + 0.5) * w1


def lattice_from_translations(translations, tol=1e-9):
    """A basis (w1, w2) of the translation lattice with Im(w2/w1) > 0.

    ``w1`` is the shortest nonzero translation parallel to the real axis and
    ``w2`` the translation of smallest positive height, reduced against w1.
    """
    ts = [t for t in translations.values() if abs(t) > tol]
    ts += [-t for t in ts]
    real = [t for t in ts if abs(t.imag) <= tol and t.real > 0]
    if not real:
        raise OrigamiError("not-developable", "no horizontal period")
    w1 = min(real, key=lambda t: t.real)
    up = [t for t in ts if t.imag > tol]
    if not up:
        raise OrigamiError("not-developable", "no transverse period")
    w2 = min(up, key=lambda t: t.imag)
    return w1, reduce_period(w2, w1)


def normalize_frame(unf, mesh, face, v0, v1, v_up):
    """Rigid motion (possibly a reflection) of the development taking the
    images of ``v0``, ``v1`` in ``face`` to 0 and the positive real axis,
    with ``v_up`` in the upper half-plane."""
    z0 = unf.image(face, v0, mesh)
    u = unf.image(face, v1, mesh) - z0
    rot = abs(u) / u
    images = (unf.images - z0) * rot
    trans = {e: t * rot for e, t in unf.translations.items()}
    row = mesh.faces[face].tolist()
    if images[face, row.index(v_up)].imag < 0:
        images = images.conj()
        trans = {e: t.conjugate() for e, t in trans.items()}
    return Unfolding(images, trans, unf.tree_edges)
