# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled triangle/triangle contact test and pairwise scan.

Same algorithm and contact semantics as ``_tritri.py``.
"""
from libc.math cimport sqrt, fabs, hypot, INFINITY
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline double _dot(const double* a, const double* b) noexcept nogil:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


cdef inline void _sub(const double* a, const double* b, double* out) noexcept nogil:
    out[0] = a[0] - b[0]
    out[1] = a[1] - b[1]
    out[2] = a[2] - b[2]


cdef inline void _cross(const double* a, const double* b, double* out) noexcept nogil:
    out[0] = a[1] * b[2] - a[2] * b[1]
    out[1] = a[2] * b[0] - a[0] * b[2]
    out[2] = a[0] * b[1] - a[1] * b[0]


cdef inline double _unit(double* a) noexcept nogil:
    cdef double n = sqrt(_dot(a, a))
    if n != 0.0:
        a[0] /= n
        a[1] /= n
        a[2] /= n
    return n


cdef inline int _sign(double d, double tol) noexcept nogil:
    if d > tol:
        return 1
    if d < -tol:
        return -1
    return 0


cdef inline double _cross2(const double* o, const double* a, const double* b) noexcept nogil:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


cdef void _interval(double P[3][3], double* dist, int* sgn, double* D,
                    double* lo, double* hi) noexcept nogil:
    cdef int i, k, e
    cdef double s, t
    cdef double x[3]
    cdef int ea[3]
    cdef int eb[3]
    ea[0] = 0; eb[0] = 1
    ea[1] = 1; eb[1] = 2
    ea[2] = 2; eb[2] = 0
    lo[0] = INFINITY
    hi[0] = -INFINITY
    for i in range(3):
        if sgn[i] == 0:
            s = _dot(D, P[i])
            if s < lo[0]:
                lo[0] = s
            if s > hi[0]:
                hi[0] = s
    for e in range(3):
        i = ea[e]
        k = eb[e]
        if sgn[i] * sgn[k] < 0:
            t = dist[i] / (dist[i] - dist[k])
            x[0] = P[i][0] + t * (P[k][0] - P[i][0])
            x[1] = P[i][1] + t * (P[k][1] - P[i][1])
            x[2] = P[i][2] + t * (P[k][2] - P[i][2])
            s = _dot(D, x)
            if s < lo[0]:
                lo[0] = s
            if s > hi[0]:
                hi[0] = s


cdef void _project(double P[3][3], int axis, double out[3][2]) noexcept nogil:
    cdef int i
    for i in range(3):
        if axis == 0:
            out[i][0] = P[i][1]
            out[i][1] = P[i][2]
        elif axis == 1:
            out[i][0] = P[i][2]
            out[i][1] = P[i][0]
        else:
            out[i][0] = P[i][0]
            out[i][1] = P[i][1]


cdef bint _separated_2d(double A[3][2], double B[3][2], double tol) noexcept nogil:
    cdef int t, i, m
    cdef double nx, ny, nn, v, amin, amax, bmin, bmax
    cdef double (*T)[2]
    for t in range(2):
        T = A if t == 0 else B
        for i in range(3):
            nx = T[(i + 1) % 3][1] - T[i][1]
            ny = T[i][0] - T[(i + 1) % 3][0]
            nn = hypot(nx, ny)
            if nn == 0.0:
                continue
            nx /= nn
            ny /= nn
            amin = INFINITY; amax = -INFINITY
            bmin = INFINITY; bmax = -INFINITY
            for m in range(3):
                v = nx * A[m][0] + ny * A[m][1]
                if v < amin: amin = v
                if v > amax: amax = v
                v = nx * B[m][0] + ny * B[m][1]
                if v < bmin: bmin = v
                if v > bmax: bmax = v
            if amax < bmin - tol or bmax < amin - tol:
                return True
    return False


cdef int _clip_2d(double A[3][2], double B[3][2], double tol, double out[12][2]) noexcept nogil:
    # clip triangle A by triangle B; returns number of output vertices
    cdef double T[3][2]
    cdef double src[12][2]
    cdef int i, j, n, m, c
    cdef double ln, dp, dq, t
    cdef const double* a
    cdef const double* b
    cdef const double* p
    cdef const double* q
    for i in range(3):
        T[i][0] = B[i][0]
        T[i][1] = B[i][1]
    if _cross2(B[0], B[1], B[2]) < 0:
        T[1][0] = B[2][0]; T[1][1] = B[2][1]
        T[2][0] = B[1][0]; T[2][1] = B[1][1]
    for i in range(3):
        out[i][0] = A[i][0]
        out[i][1] = A[i][1]
    n = 3
    for i in range(3):
        if n == 0:
            break
        for j in range(n):
            src[j][0] = out[j][0]
            src[j][1] = out[j][1]
        m = n
        n = 0
        a = T[i]
        b = T[(i + 1) % 3]
        ln = hypot(b[0] - a[0], b[1] - a[1])
        for j in range(m):
            p = src[j]
            q = src[(j + 1) % m]
            dp = _cross2(a, b, p) / ln
            dq = _cross2(a, b, q) / ln
            if dp >= -tol:
                out[n][0] = p[0]; out[n][1] = p[1]
                n += 1
            if (dp >= -tol) != (dq >= -tol):
                t = dp / (dp - dq)
                out[n][0] = p[0] + t * (q[0] - p[0])
                out[n][1] = p[1] + t * (q[1] - p[1])
                n += 1
    return n


cdef bint _coplanar(double P[3][3], double Q[3][3], int ns, int* si, int* sj,
                    double* n1, double tol) noexcept nogil:
    cdef int ax = 0, k, a, b, c
    cdef double A[3][2]
    cdef double B[3][2]
    cdef double clipped[12][2]
    cdef double ca, cb
    if fabs(n1[1]) > fabs(n1[ax]):
        ax = 1
    if fabs(n1[2]) > fabs(n1[ax]):
        ax = 2
    _project(P, ax, A)
    _project(Q, ax, B)
    if ns == 0:
        return not _separated_2d(A, B, tol)
    if ns == 1:
        c = _clip_2d(A, B, tol, clipped)
        for k in range(c):
            if hypot(clipped[k][0] - A[si[0]][0], clipped[k][1] - A[si[0]][1]) > tol:
                return True
        return False
    a = 3 - si[0] - si[1]
    b = 3 - sj[0] - sj[1]
    ca = _cross2(A[si[0]], A[si[1]], A[a])
    cb = _cross2(A[si[0]], A[si[1]], B[b])
    return ca * cb > 0


cdef bint _intersect(double P[3][3], double Q[3][3], int ns, int* si, int* sj,
                     double tol) noexcept nogil:
    cdef double e1[3]
    cdef double e2[3]
    cdef double n1[3]
    cdef double n2[3]
    cdef double D[3]
    cdef double w[3]
    cdef double dp[3]
    cdef double dq[3]
    cdef int sp[3]
    cdef int sq[3]
    cdef int i, k, o0, o1, anyp, anyq
    cdef double dn, lo1, hi1, lo2, hi2, overlap
    if ns >= 3:
        return True
    _sub(P[1], P[0], e1)
    _sub(P[2], P[0], e2)
    _cross(e1, e2, n1)
    _unit(n1)
    _sub(Q[1], Q[0], e1)
    _sub(Q[2], Q[0], e2)
    _cross(e1, e2, n2)
    _unit(n2)
    for i in range(3):
        _sub(Q[i], P[0], w)
        dq[i] = _dot(n1, w)
        _sub(P[i], Q[0], w)
        dp[i] = _dot(n2, w)
    for k in range(ns):
        dp[si[k]] = 0.0
        dq[sj[k]] = 0.0
    anyp = 0
    anyq = 0
    for i in range(3):
        sp[i] = _sign(dp[i], tol)
        sq[i] = _sign(dq[i], tol)
        if sp[i] != 0:
            anyp = 1
        if sq[i] != 0:
            anyq = 1
    if not anyp or not anyq:
        return _coplanar(P, Q, ns, si, sj, n1, tol)
    if ns == 2:
        return False
    if (sq[0] == sq[1] and sq[1] == sq[2] and sq[0] != 0) or \
       (sp[0] == sp[1] and sp[1] == sp[2] and sp[0] != 0):
        return False
    if ns == 1:
        o0 = (si[0] + 1) % 3
        o1 = (si[0] + 2) % 3
        if sp[o0] == sp[o1] and sp[o0] != 0:
            return False
        o0 = (sj[0] + 1) % 3
        o1 = (sj[0] + 2) % 3
        if sq[o0] == sq[o1] and sq[o0] != 0:
            return False
    _cross(n1, n2, D)
    dn = _unit(D)
    if dn < 1e-12:
        return _coplanar(P, Q, ns, si, sj, n1, tol)
    _interval(P, dp, sp, D, &lo1, &hi1)
    _interval(Q, dq, sq, D, &lo2, &hi2)
    if lo1 > hi1 or lo2 > hi2:
        return False
    overlap = (hi1 if hi1 < hi2 else hi2) - (lo1 if lo1 > lo2 else lo2)
    if ns == 0:
        return overlap >= -tol
    return overlap > tol


def tri_tri_intersect(P, Q, shared, double tol):
    """True if triangles P and Q meet anywhere other than what ``shared`` allows."""
    cdef double A[3][3]
    cdef double B[3][3]
    cdef int si[3]
    cdef int sj[3]
    cdef int i, k, ns
    for i in range(3):
        for k in range(3):
            A[i][k] = P[i][k]
            B[i][k] = Q[i][k]
    ns = len(shared)
    if ns >= 3:
        return True
    for k in range(ns):
        si[k] = shared[k][0]
        sj[k] = shared[k][1]
    return bool(_intersect(A, B, ns, si, sj, tol))


def scan_pairs(vertices, faces, double tol):
    """List of face index pairs whose interiors meet."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] V = np.ascontiguousarray(vertices, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] F = np.ascontiguousarray(faces, dtype=np.int64)
    cdef Py_ssize_t nf = F.shape[0]
    cdef const double[:, ::1] v = V
    cdef const long long[:, ::1] f = F
    cdef double[:, ::1] lo = np.empty((nf, 3))
    cdef double[:, ::1] hi = np.empty((nf, 3))
    cdef double A[3][3]
    cdef double B[3][3]
    cdef int si[3]
    cdef int sj[3]
    cdef Py_ssize_t a, b, i, j, k
    cdef int ns
    cdef bint overlap
    cdef double x
    bad = []
    for a in range(nf):
        for k in range(3):
            lo[a, k] = INFINITY
            hi[a, k] = -INFINITY
            for i in range(3):
                x = v[f[a, i], k]
                if x < lo[a, k]:
                    lo[a, k] = x
                if x > hi[a, k]:
                    hi[a, k] = x
            lo[a, k] -= tol
            hi[a, k] += tol
    for a in range(nf):
        for b in range(a + 1, nf):
            overlap = True
            for k in range(3):
                if lo[a, k] > hi[b, k] or lo[b, k] > hi[a, k]:
                    overlap = False
                    break
            if not overlap:
                continue
            ns = 0
            for i in range(3):
                for j in range(3):
                    if f[a, i] == f[b, j]:
                        si[ns] = <int>i
                        sj[ns] = <int>j
                        ns += 1
            for i in range(3):
                for k in range(3):
                    A[i][k] = v[f[a, i], k]
                    B[i][k] = v[f[b, i], k]
            if _intersect(A, B, ns, si, sj, tol):
                bad.append((a, b))
    return bad
