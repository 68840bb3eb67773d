"""Numpy implementations of the per-sample front kernels.

Mirrors the compiled module huygens._kernels function for function; the
backend selector picks whichever is available.  All functions are pure and
operate on C-contiguous float64 arrays of shape (N, dim) with dim 2 or 3.
"""

from __future__ import annotations

import numpy as np

# relative floor for treating a sample triple as collinear (no finite circle)
_COLLINEAR_EPS = 1e-14

_CLEARANCE_BLOCK = 512


def offset_points(points, normals, s):
    """points + s * normals, row by row."""
    return points + s * normals


def max_pointwise_deviation(p, q):
    """Largest row-wise Euclidean distance between two matched sample arrays."""
    d = p - q
    return float(np.sqrt((d * d).sum(axis=1).max()))


def envelope_residuals(base_points, out_points, out_normals, s):
    """Per-sample residuals of the wavelet-contact identity.

    Returns (distance residual |dist(b_i, c_i) - s|, normalized rejection of
    the front normal from the wavelet's radial direction, orientation dot
    sign c_i relative to b_i along the normal).
    """
    w = out_points - base_points
    d = np.sqrt((w * w).sum(axis=1))
    dist_res = np.abs(d - s)
    safe = np.where(d > 0.0, d, 1.0)
    what = w / safe[:, None]
    dots = (what * out_normals).sum(axis=1)
    rej = what - dots[:, None] * out_normals
    par_res = np.sqrt((rej * rej).sum(axis=1))
    par_res = np.where(d > 0.0, par_res, 1.0)
    return dist_res, par_res, dots


def neighbor_distance_residual(base_points, out_points, s, closed):
    """Max |dist(b_i, c_j) - s| over sample pairs (i, j) adjacent in order."""
    best = 0.0
    n = base_points.shape[0]
    if n < 2:
        return best
    d = out_points[1:] - base_points[:-1]
    fwd = np.abs(np.sqrt((d * d).sum(axis=1)) - s)
    d = out_points[:-1] - base_points[1:]
    bwd = np.abs(np.sqrt((d * d).sum(axis=1)) - s)
    best = max(float(fwd.max()), float(bwd.max()))
    if closed:
        w1 = float(np.linalg.norm(out_points[0] - base_points[-1]))
        w2 = float(np.linalg.norm(out_points[-1] - base_points[0]))
        best = max(best, abs(w1 - s), abs(w2 - s))
    return best


def min_nonadjacent_clearance_chain(points, closed):
    """Smallest distance between samples that are not neighbours in the chain.

    For closed chains the wrap pair (0, N-1) counts as adjacent.  Returns
    +inf when no non-adjacent pair exists.
    """
    n = points.shape[0]
    best = np.inf
    for i in range(0, n - 2, _CLEARANCE_BLOCK):
        hi = min(i + _CLEARANCE_BLOCK, n - 2)
        for k in range(i, hi):
            j0 = k + 2
            jmax = n - 1 if (closed and k == 0) else n
            if j0 >= jmax:
                continue
            d = points[j0:jmax] - points[k]
            m = float((d * d).sum(axis=1).min())
            if m < best:
                best = m
    return float(np.sqrt(best)) if np.isfinite(best) else np.inf


def min_nonadjacent_clearance_grid(points, rows, cols, wrap_cols):
    """Grid variant: pairs within Chebyshev index distance 1 count as adjacent.

    Column indices wrap when wrap_cols is set (azimuthally closed grids).
    """
    n = rows * cols
    ri = np.arange(n) // cols
    ci = np.arange(n) % cols
    best = np.inf
    for i in range(n - 1):
        dr = np.abs(ri[i + 1:] - ri[i])
        dc = np.abs(ci[i + 1:] - ci[i])
        if wrap_cols:
            dc = np.minimum(dc, cols - dc)
        mask = (dr > 1) | (dc > 1)
        if not mask.any():
            continue
        d = points[i + 1:][mask] - points[i]
        m = float((d * d).sum(axis=1).min())
        if m < best:
            best = m
    return float(np.sqrt(best)) if np.isfinite(best) else np.inf


def _circumradii(prev_pts, cur_pts, next_pts, normals):
    """Radius of the circle through each sample triple, +inf when the center
    of curvature is not on the positive side or the triple is collinear."""
    u = prev_pts - cur_pts
    v = next_pts - cur_pts
    uu = (u * u).sum(axis=1)
    vv = (v * v).sum(axis=1)
    uv = (u * v).sum(axis=1)
    det = uu * vv - uv * uv
    out = np.full(cur_pts.shape[0], np.inf)
    good = det > _COLLINEAR_EPS * uu * vv
    if not good.any():
        return out
    inv = 0.5 / det[good]
    alpha = vv[good] * (uu[good] - uv[good]) * inv
    beta = uu[good] * (vv[good] - uv[good]) * inv
    q = alpha[:, None] * u[good] + beta[:, None] * v[good]
    r = np.sqrt((q * q).sum(axis=1))
    toward = (q * normals[good]).sum(axis=1) > 0.0
    out[good] = np.where(toward, r, np.inf)
    return out


def caustic_radii_chain(points, normals, closed):
    """Discrete curvature radii along a sample chain (interior samples only
    when open), filtered to centers of curvature on the positive side."""
    if closed:
        prev_pts = np.roll(points, 1, axis=0)
        next_pts = np.roll(points, -1, axis=0)
        return _circumradii(prev_pts, points, next_pts, normals)
    return _circumradii(points[:-2], points[1:-1], points[2:], normals[1:-1])


def caustic_radii_grid(points, normals, rows, cols):
    """Discrete curvature radii along grid columns (meridian triples)."""
    dim = points.shape[1]
    p = points.reshape(rows, cols, dim)
    nrm = normals.reshape(rows, cols, dim)
    prev_pts = p[:-2].reshape(-1, dim)
    cur_pts = p[1:-1].reshape(-1, dim)
    next_pts = p[2:].reshape(-1, dim)
    return _circumradii(prev_pts, cur_pts, next_pts, nrm[1:-1].reshape(-1, dim))
