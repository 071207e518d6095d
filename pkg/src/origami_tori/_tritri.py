"""Pure-Python triangle/triangle contact test and pairwise mesh scan.

This is the reference implementation of the hot kernel; ``_kernels.pyx``
mirrors it line for line.  ``kernels`` picks whichever is importable.

Contact semantics: two triangles that share ``k`` vertices (by index in a
welded mesh) are allowed to meet exactly in those shared vertices, or in
the full shared edge when ``k == 2``.  Anything else, including touching
at a single point, counts as an intersection.
"""
import math

import numpy as np


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _unit(a):
    n = math.sqrt(_dot(a, a))
    if n == 0.0:
        return a, 0.0
    return (a[0] / n, a[1] / n, a[2] / n), n


def _sign(d, tol):
    if d > tol:
        return 1
    if d < -tol:
        return -1
    return 0


def _interval(P, dist, sgn, D):
    """Parameter interval of the triangle's cut by the other plane along D."""
    lo, hi = math.inf, -math.inf
    for i in range(3):
        if sgn[i] == 0:
            s = _dot(D, P[i])
            lo = min(lo, s)
            hi = max(hi, s)
    for i, k in ((0, 1), (1, 2), (2, 0)):
        if sgn[i] * sgn[k] < 0:
            t = dist[i] / (dist[i] - dist[k])
            x = (
                P[i][0] + t * (P[k][0] - P[i][0]),
                P[i][1] + t * (P[k][1] - P[i][1]),
                P[i][2] + t * (P[k][2] - P[i][2]),
            )
            s = _dot(D, x)
            lo = min(lo, s)
            hi = max(hi, s)
    return lo, hi


def _project(P, axis):
    if axis == 0:
        return [(p[1], p[2]) for p in P]
    if axis == 1:
        return [(p[2], p[0]) for p in P]
    return [(p[0], p[1]) for p in P]


def _cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _separated_2d(A, B, tol):
    for T in (A, B):
        for i in range(3):
            p, q = T[i], T[(i + 1) % 3]
            nx, ny = q[1] - p[1], p[0] - q[0]
            nn = math.hypot(nx, ny)
            if nn == 0.0:
                continue
            nx, ny = nx / nn, ny / nn
            pa = [nx * v[0] + ny * v[1] for v in A]
            pb = [nx * v[0] + ny * v[1] for v in B]
            if max(pa) < min(pb) - tol or max(pb) < min(pa) - tol:
                return True
    return False


def _clip_2d(poly, T, tol):
    """Sutherland-Hodgman clip of ``poly`` by the (ccw-normalised) triangle T."""
    if _cross2(T[0], T[1], T[2]) < 0:
        T = [T[0], T[2], T[1]]
    out = list(poly)
    for i in range(3):
        a, b = T[i], T[(i + 1) % 3]
        ln = math.hypot(b[0] - a[0], b[1] - a[1])
        src, out = out, []
        if not src:
            break
        for j in range(len(src)):
            p, q = src[j], src[(j + 1) % len(src)]
            dp = _cross2(a, b, p) / ln
            dq = _cross2(a, b, q) / ln
            if dp >= -tol:
                out.append(p)
            if (dp >= -tol) != (dq >= -tol):
                t = dp / (dp - dq)
                out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _coplanar(P, Q, shared, n1, tol):
    ax = max(range(3), key=lambda i: abs(n1[i]))
    A, B = _project(P, ax), _project(Q, ax)
    ns = len(shared)
    if ns == 0:
        return not _separated_2d(A, B, tol)
    if ns == 1:
        i, _ = shared[0]
        v = A[i]
        for p in _clip_2d(A, B, tol):
            if math.hypot(p[0] - v[0], p[1] - v[1]) > tol:
                return True
        return False
    # shared edge: overlap iff the free vertices lie on the same side
    si = {i for i, _ in shared}
    sj = {j for _, j in shared}
    (i0, j0), (i1, j1) = shared
    a = next(i for i in range(3) if i not in si)
    b = next(j for j in range(3) if j not in sj)
    u, w = A[i0], A[i1]
    ca = _cross2(u, w, A[a])
    cb = _cross2(u, w, B[b])
    return ca * cb > 0


def tri_tri_intersect(P, Q, shared, tol):
    """True if triangles P and Q meet anywhere other than what ``shared`` allows.

    ``shared`` is a list of ``(i, j)`` pairs meaning ``P[i]`` is the same
    vertex as ``Q[j]``.
    """
    ns = len(shared)
    if ns >= 3:
        return True
    n1, _ = _unit(_cross(_sub(P[1], P[0]), _sub(P[2], P[0])))
    n2, _ = _unit(_cross(_sub(Q[1], Q[0]), _sub(Q[2], Q[0])))
    dq = [_dot(n1, _sub(Q[j], P[0])) for j in range(3)]
    dp = [_dot(n2, _sub(P[i], Q[0])) for i in range(3)]
    for i, j in shared:
        dp[i] = 0.0
        dq[j] = 0.0
    sp = [_sign(d, tol) for d in dp]
    sq = [_sign(d, tol) for d in dq]
    if not any(sp) or not any(sq):
        return _coplanar(P, Q, shared, n1, tol)
    if ns == 2:
        return False
    if (sq[0] == sq[1] == sq[2] != 0) or (sp[0] == sp[1] == sp[2] != 0):
        return False
    if ns == 1:
        i, j = shared[0]
        op = [sp[k] for k in range(3) if k != i]
        oq = [sq[k] for k in range(3) if k != j]
        if op[0] == op[1] != 0 or oq[0] == oq[1] != 0:
            return False
    D, dn = _unit(_cross(n1, n2))
    if dn < 1e-12:
        return _coplanar(P, Q, shared, n1, tol)
    lo1, hi1 = _interval(P, dp, sp, D)
    lo2, hi2 = _interval(Q, dq, sq, D)
    if lo1 > hi1 or lo2 > hi2:
        return False
    overlap = min(hi1, hi2) - max(lo1, lo2)
    if ns == 0:
        return overlap >= -tol
    return overlap > tol


def _shared(fa, fb):
    return [(i, j) for i in range(3) for j in range(3) if fa[i] == fb[j]]


def candidate_pairs(vertices, faces, tol):
    """Face pairs (i < j) whose axis-aligned boxes overlap within ``tol``."""
    tri = vertices[faces]
    lo = tri.min(axis=1) - tol
    hi = tri.max(axis=1) + tol
    ok = np.all(
        (lo[:, None, :] <= hi[None, :, :]) & (lo[None, :, :] <= hi[:, None, :]),
        axis=2,
    )
    i, j = np.nonzero(np.triu(ok, k=1))
    return i, j


def scan_pairs(vertices, faces, tol):
    """List of face index pairs whose interiors meet."""
    vertices = np.ascontiguousarray(vertices, dtype=np.float64)
    faces = np.ascontiguousarray(faces, dtype=np.int64)
    verts = [tuple(v) for v in vertices.tolist()]
    flist = faces.tolist()
    bad = []
    ci, cj = candidate_pairs(vertices, faces, tol)
    for a, b in zip(ci.tolist(), cj.tolist()):
        fa, fb = flist[a], flist[b]
        P = [verts[k] for k in fa]
        Q = [verts[k] for k in fb]
        if tri_tri_intersect(P, Q, _shared(fa, fb), tol):
            bad.append((a, b))
    return bad
