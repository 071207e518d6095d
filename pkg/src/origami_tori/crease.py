"""Crease patterns: developments annotated with mountain / valley folds.

Convention: with face normals pointing out of the enclosed solid (for a
lone band: away from the axis), the dihedral angle of an edge is measured
through the outside.  Below pi the fold is a mountain, above pi a valley,
and within ``tol`` of pi it is flat.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .annulus import AnnulusParams, build_annulus, develop_annulus
from .geometry import TOL
from .moduli import develop_torus, periods


@dataclass(frozen=True)
class Fold:
    start: complex
    end: complex
    kind: str
    edge: tuple


@dataclass(frozen=True, eq=False)
class CreasePattern:
    """``folds`` are interior creases of the development; ``seams`` are mesh
    edges that were cut open (drawn on the outline, each as two segments
    that glue together); ``outline`` also holds free boundary edges."""

    folds: list
    seams: list
    outline: list
    labels: list = field(default_factory=list)
    overlay: tuple = ()

    def count(self, kind):
        return sum(f.kind == kind for f in self.folds)


def outside_dihedral(mesh, edge):
    """Dihedral angle at an interior edge, measured through the outside."""
    f, g = mesh.edges[edge]
    V = mesh.vertices
    normals = mesh.face_normals()
    nf, ng = normals[f], normals[g]
    w = [v for v in mesh.faces[g].tolist() if v not in edge][0]
    turn = math.atan2(float(np.linalg.norm(np.cross(nf, ng))), float(np.dot(nf, ng)))
    # the neighbour bends towards the normal side: concave from outside
    toward = float(np.dot(V[w] - V[edge[0]], nf)) > 0
    return math.pi - turn if toward else math.pi + turn


def fold_kind(mesh, edge, tol=None):
    tol = tol or TOL
    d = outside_dihedral(mesh, edge)
    if abs(d - math.pi) <= tol.geom:
        return "flat"
    return "mountain" if d < math.pi else "valley"


def _segment(mesh, images, face, edge):
    row = mesh.faces[face].tolist()
    return complex(images[face][row.index(edge[0])]), complex(images[face][row.index(edge[1])])


def _build(mesh, images, is_cut, tol):
    folds, seams, outline = [], [], []
    for e, fs in sorted(mesh.edges.items()):
        if len(fs) == 1:
            outline.append(_segment(mesh, images, fs[0], e))
            continue
        kind = fold_kind(mesh, e, tol)
        if is_cut(e):
            for f in fs:
                seg = _segment(mesh, images, f, e)
                seams.append(Fold(seg[0], seg[1], kind, e))
                outline.append(seg)
        else:
            a, b = _segment(mesh, images, fs[0], e)
            folds.append(Fold(a, b, kind, e))
    return folds, seams, outline


def annulus_crease_pattern(params, tol=None):
    """Crease pattern of a single band on its closed-form development strip.

    The strip is cut along P_0 Q_0.
    """
    if not isinstance(params, AnnulusParams):
        params = AnnulusParams(*params)
    n = params.n
    mesh = build_annulus(params).mesh
    images = develop_annulus(params).face_images()
    seam = (0, n)
    folds, seams, outline = _build(mesh, images, lambda e: e == seam, tol)
    labels = [(0.5 * (s.start + s.end), "a") for s in seams]
    return CreasePattern(folds, seams, outline, labels)


def torus_crease_pattern(torus, tol=None, overlay=False):
    """Crease pattern of a torus on its unfolded development.

    Glued outline edges share a text label.  With ``overlay`` the period
    parallelogram is attached.
    """
    unf = develop_torus(torus, tol)
    mesh = torus.mesh
    eps = 1e-9 * max(1.0, float(np.abs(unf.images).max()))

    def is_cut(e):
        return abs(unf.translations[e]) > eps

    folds, seams, outline = _build(mesh, unf.images, is_cut, tol)
    labels = []
    names = {}
    for s in seams:
        name = names.setdefault(s.edge, f"e{len(names)}")
        labels.append((0.5 * (s.start + s.end), name))
    params = torus.params
    ell = getattr(params, "ell", None)
    if ell is None and hasattr(params, "base"):
        ell = params.base.ell
    labels.append((complex(0, -0.4), f"shift l={ell}"))
    box = ()
    if overlay:
        w1, w2 = periods(torus, tol)
        if torus.anchors:
            fa, va = torus.anchors["w2"][:2]
            z0 = unf.image(fa, va, mesh)
        else:
            z0 = min((s.start for s in seams), key=lambda z: (z.imag, z.real))
        box = (z0, z0 + w1, z0 + w1 + w2, z0 + w2)
    return CreasePattern(folds, seams, outline, labels, box)
