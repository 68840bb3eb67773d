# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-sample front kernels.

Same contract as huygens._kernels_py; the inner loops run without the GIL,
which also makes the per-sample data parallelism of the front pipeline cheap
to exploit from threads.
"""

import numpy as np

from libc.math cimport INFINITY, fabs, sqrt

cdef double COLLINEAR_EPS = 1e-14


def offset_points(const double[:, ::1] points, const double[:, ::1] normals, double s):
    """points + s * normals, row by row."""
    cdef Py_ssize_t n = points.shape[0], dim = points.shape[1]
    out = np.empty((n, dim), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, k
    with nogil:
        for i in range(n):
            for k in range(dim):
                o[i, k] = points[i, k] + s * normals[i, k]
    return out


def max_pointwise_deviation(const double[:, ::1] p, const double[:, ::1] q):
    """Largest row-wise Euclidean distance between two matched sample arrays."""
    cdef Py_ssize_t n = p.shape[0], dim = p.shape[1]
    cdef double best = 0.0, acc, d
    cdef Py_ssize_t i, k
    with nogil:
        for i in range(n):
            acc = 0.0
            for k in range(dim):
                d = p[i, k] - q[i, k]
                acc += d * d
            if acc > best:
                best = acc
    return sqrt(best)


def envelope_residuals(const double[:, ::1] base_points,
                       const double[:, ::1] out_points,
                       const double[:, ::1] out_normals,
                       double s):
    """Per-sample residuals of the wavelet-contact identity.

    Returns (distance residual |dist(b_i, c_i) - s|, normalized rejection of
    the front normal from the wavelet's radial direction, orientation dot
    sign c_i relative to b_i along the normal).
    """
    cdef Py_ssize_t n = base_points.shape[0], dim = base_points.shape[1]
    dist_res = np.empty(n, dtype=np.float64)
    par_res = np.empty(n, dtype=np.float64)
    dots = np.empty(n, dtype=np.float64)
    cdef double[::1] dr = dist_res
    cdef double[::1] pr = par_res
    cdef double[::1] dt = dots
    cdef double w[3]
    cdef double what[3]
    cdef double d, dot, acc
    cdef Py_ssize_t i, k
    with nogil:
        for i in range(n):
            d = 0.0
            for k in range(dim):
                w[k] = out_points[i, k] - base_points[i, k]
                d += w[k] * w[k]
            d = sqrt(d)
            dr[i] = fabs(d - s)
            if d <= 0.0:
                pr[i] = 1.0
                dt[i] = 0.0
                continue
            dot = 0.0
            for k in range(dim):
                what[k] = w[k] / d
                dot += what[k] * out_normals[i, k]
            acc = 0.0
            for k in range(dim):
                acc += (what[k] - dot * out_normals[i, k]) ** 2
            pr[i] = sqrt(acc)
            dt[i] = dot
    return dist_res, par_res, dots


def neighbor_distance_residual(const double[:, ::1] base_points,
                               const double[:, ::1] out_points,
                               double s, bint closed):
    """Max |dist(b_i, c_j) - s| over sample pairs (i, j) adjacent in order."""
    cdef Py_ssize_t n = base_points.shape[0], dim = base_points.shape[1]
    cdef double best = 0.0, acc, d, r
    cdef Py_ssize_t i, j, k, step
    if n < 2:
        return best
    with nogil:
        for i in range(n):
            for step in range(2):
                j = i + 1 if step == 0 else i - 1
                if j < 0 or j >= n:
                    if not closed:
                        continue
                    j = (j + n) % n
                acc = 0.0
                for k in range(dim):
                    d = out_points[j, k] - base_points[i, k]
                    acc += d * d
                r = fabs(sqrt(acc) - s)
                if r > best:
                    best = r
    return best


def min_nonadjacent_clearance_chain(const double[:, ::1] points, bint closed):
    """Smallest distance between samples that are not neighbours in the chain.

    For closed chains the wrap pair (0, N-1) counts as adjacent.  Returns
    +inf when no non-adjacent pair exists.
    """
    cdef Py_ssize_t n = points.shape[0], dim = points.shape[1]
    cdef double best = INFINITY, acc, d
    cdef Py_ssize_t i, j, k, jmax
    with nogil:
        for i in range(n - 2):
            jmax = n - 1 if (closed and i == 0) else n
            for j in range(i + 2, jmax):
                acc = 0.0
                for k in range(dim):
                    d = points[j, k] - points[i, k]
                    acc += d * d
                if acc < best:
                    best = acc
    return sqrt(best)


def min_nonadjacent_clearance_grid(const double[:, ::1] points,
                                   int rows, int cols, bint wrap_cols):
    """Grid variant: pairs within Chebyshev index distance 1 count as adjacent.

    Column indices wrap when wrap_cols is set (azimuthally closed grids).
    """
    cdef Py_ssize_t n = rows * cols, dim = points.shape[1]
    cdef double best = INFINITY, acc, d
    cdef Py_ssize_t i, j, k
    cdef int ri, ci, rj, cj, dc
    with nogil:
        for i in range(n - 1):
            ri = <int>(i // cols)
            ci = <int>(i % cols)
            for j in range(i + 1, n):
                rj = <int>(j // cols)
                if rj - ri <= 1:
                    cj = <int>(j % cols)
                    dc = cj - ci
                    if dc < 0:
                        dc = -dc
                    if wrap_cols and cols - dc < dc:
                        dc = cols - dc
                    if dc <= 1:
                        continue
                acc = 0.0
                for k in range(dim):
                    d = points[j, k] - points[i, k]
                    acc += d * d
                if acc < best:
                    best = acc
    return sqrt(best)


cdef double _triple_radius(const double[:, ::1] prev_pts, const double[:, ::1] cur_pts,
                           const double[:, ::1] next_pts, const double[:, ::1] normals,
                           Py_ssize_t ip, Py_ssize_t ic, Py_ssize_t inx, Py_ssize_t inr,
                           Py_ssize_t dim) noexcept nogil:
    cdef double u[3]
    cdef double v[3]
    cdef double q[3]
    cdef double uu = 0.0, vv = 0.0, uv = 0.0
    cdef double det, inv, alpha, beta, r2, dot
    cdef Py_ssize_t k
    for k in range(dim):
        u[k] = prev_pts[ip, k] - cur_pts[ic, k]
        v[k] = next_pts[inx, k] - cur_pts[ic, k]
        uu += u[k] * u[k]
        vv += v[k] * v[k]
        uv += u[k] * v[k]
    det = uu * vv - uv * uv
    if det <= COLLINEAR_EPS * uu * vv:
        return INFINITY
    inv = 0.5 / det
    alpha = vv * (uu - uv) * inv
    beta = uu * (vv - uv) * inv
    r2 = 0.0
    dot = 0.0
    for k in range(dim):
        q[k] = alpha * u[k] + beta * v[k]
        r2 += q[k] * q[k]
        dot += q[k] * normals[inr, k]
    if dot <= 0.0:
        return INFINITY
    return sqrt(r2)


def caustic_radii_chain(const double[:, ::1] points, const double[:, ::1] normals,
                        bint closed):
    """Discrete curvature radii along a sample chain (interior samples only
    when open), filtered to centers of curvature on the positive side."""
    cdef Py_ssize_t n = points.shape[0], dim = points.shape[1]
    cdef Py_ssize_t count = n if closed else n - 2
    out = np.empty(count, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, ip, ic, inx
    with nogil:
        for i in range(count):
            if closed:
                ic = i
                ip = (i - 1 + n) % n
                inx = (i + 1) % n
            else:
                ic = i + 1
                ip = i
                inx = i + 2
            o[i] = _triple_radius(points, points, points, normals, ip, ic, inx, ic, dim)
    return out


def caustic_radii_grid(const double[:, ::1] points, const double[:, ::1] normals,
                       int rows, int cols):
    """Discrete curvature radii along grid columns (meridian triples)."""
    cdef Py_ssize_t dim = points.shape[1]
    cdef Py_ssize_t count = (rows - 2) * cols
    out = np.empty(count, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t r, c, i, ip, ic, inx
    with nogil:
        for r in range(1, rows - 1):
            for c in range(cols):
                i = (r - 1) * cols + c
                ic = r * cols + c
                ip = (r - 1) * cols + c
                inx = (r + 1) * cols + c
                o[i] = _triple_radius(points, points, points, normals, ip, ic, inx, ic, dim)
    return out
