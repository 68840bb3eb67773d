"""Sampled oriented fronts and their propagation.

A front is an ordered set of samples, each carrying the point and the
oriented contact element of the hypersurface there.  Propagating a front a
distance s moves every sample along its normal and keeps the normal: that is
precisely the statement that the new front's contact element at each moved
point coincides with the wavelet sphere's.  The propagation map is accepted
only while it stays injective; the focusing limit is estimated from discrete
curvature radii and fold-over is detected from the clearance between
non-adjacent output samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .contact import ContactElement
from .errors import (
    BadPrimitive,
    CausticExceeded,
    FrontMismatch,
    NotOnFront,
    TooFewSamples,
)
from .scalars import TAU_DISTINCT, TAU_ON, TAU_PARALLEL, add_len, as_point, ensure_length

# fold-over alarm: smallest allowed non-adjacent clearance, relative to the
# mean input sample spacing
CLEARANCE_FLOOR = 0.25

# marker returned by caustic_limit for fronts that never focus
NO_LIMIT = math.inf

_NORMAL_UNIT_TOL = 1e-9


def _as_sample_array(x, name) -> np.ndarray:
    a = np.asarray(x, dtype=float)
    if a.ndim != 2 or a.shape[1] not in (2, 3):
        raise BadPrimitive(f"{name} must be an (N, 2) or (N, 3) array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise BadPrimitive(f"{name} contains non-finite values")
    return np.ascontiguousarray(a)


@dataclass(eq=False)
class Front:
    """Ordered samples of an oriented hypersurface.

    ``closed`` marks the sample order as cyclic.  Tensor-grid fronts (3D
    sphere patches) carry their (rows, cols) shape in ``grid``; columns wrap
    azimuthally, rows do not.  Normals are unit and vary continuously along
    the order: consecutive normals must keep a positive inner product.
    """

    points: np.ndarray
    normals: np.ndarray
    closed: bool = True
    source: str = "sampled"
    grid: tuple[int, int] | None = None
    _spacing: float = field(init=False, repr=False, default=0.0)

    def __post_init__(self):
        pts = _as_sample_array(self.points, "points")
        nrm = _as_sample_array(self.normals, "normals")
        if pts.shape != nrm.shape:
            raise BadPrimitive(
                f"points and normals disagree in shape: {pts.shape} vs {nrm.shape}"
            )
        n = pts.shape[0]
        if n < 3:
            raise TooFewSamples(f"a front needs at least 3 samples, got {n}")
        if self.grid is not None:
            rows, cols = self.grid
            if rows * cols != n:
                raise BadPrimitive(f"grid {self.grid} does not match {n} samples")
            if rows < 3 or cols < 3:
                raise TooFewSamples(f"grid fronts need at least 3 rows and columns, got {self.grid}")
        lens = np.sqrt((nrm * nrm).sum(axis=1))
        if np.any(lens < TAU_DISTINCT):
            raise BadPrimitive("front has a zero normal")
        if np.any(np.abs(lens - 1.0) > _NORMAL_UNIT_TOL):
            nrm = nrm / lens[:, None]
        self.points = pts
        self.normals = nrm
        self._validate_continuity()
        self._spacing = self._mean_spacing()
        self.points.setflags(write=False)
        self.normals.setflags(write=False)

    def _neighbor_index_pairs(self) -> np.ndarray:
        n = self.n_samples
        if self.grid is None:
            i = np.arange(n - 1)
            pairs = np.stack([i, i + 1], axis=1)
            if self.closed:
                pairs = np.vstack([pairs, [[n - 1, 0]]])
            return pairs
        rows, cols = self.grid
        idx = np.arange(n).reshape(rows, cols)
        row_pairs = np.stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()], axis=1)
        if self.closed:
            row_pairs = np.vstack([row_pairs, np.stack([idx[:, -1], idx[:, 0]], axis=1)])
        col_pairs = np.stack([idx[:-1].ravel(), idx[1:].ravel()], axis=1)
        return np.vstack([row_pairs, col_pairs])

    def _validate_continuity(self):
        # serialized-order transcription of normal continuity plus sample
        # distinctness; grids additionally check their column edges
        pairs = self._neighbor_index_pairs()
        d = self.points[pairs[:, 1]] - self.points[pairs[:, 0]]
        gaps = np.sqrt((d * d).sum(axis=1))
        if np.any(gaps <= TAU_DISTINCT):
            raise BadPrimitive("adjacent front samples are not distinct")
        dots = (self.normals[pairs[:, 1]] * self.normals[pairs[:, 0]]).sum(axis=1)
        if np.any(dots <= 0.0):
            raise BadPrimitive("front normals flip between adjacent samples")

    def _mean_spacing(self) -> float:
        pairs = self._neighbor_index_pairs()
        d = self.points[pairs[:, 1]] - self.points[pairs[:, 0]]
        return float(np.sqrt((d * d).sum(axis=1)).mean())

    @property
    def n_samples(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def spacing(self) -> float:
        """Mean distance between adjacent samples."""
        return self._spacing

    def contact_at(self, i: int) -> ContactElement:
        return ContactElement(self.points[i], self.normals[i])

    @property
    def samples(self):
        """The (point, contact element) pairs in sample order."""
        return [(self.points[i].copy(), self.contact_at(i)) for i in range(self.n_samples)]


@dataclass(eq=False)
class PropagationReport:
    """Outcome of propagating a front.

    ``min_clearance`` is the smallest distance between non-adjacent output
    samples divided by the mean input spacing; the propagation counts as
    injective only while it stays above CLEARANCE_FLOOR and the step stays
    below the caustic bound.  ``front_out`` is None when the propagation was
    rejected (non-strict mode).
    """

    front_in: Front
    front_out: Front | None
    step: float
    injective: bool
    min_clearance: float
    caustic_bound: float


@dataclass(eq=False)
class EnvelopeReport:
    """Per-sample verdicts for the wavelet-envelope identity.

    A sample passes when the propagated point lies on its wavelet sphere and
    the front's contact element there matches the wavelet's outward one
    (parallel normal, consistent orientation).  Because samples are matched
    one-to-one, an all-true report certifies both directions at once: every
    wavelet touches the front, and every front sample is touched by its
    wavelet.
    """

    per_sample_ok: np.ndarray
    distance_residuals: np.ndarray
    parallel_residuals: np.ndarray

    @property
    def all_ok(self) -> bool:
        return bool(self.per_sample_ok.all())

    @property
    def every_wavelet_touches_front(self) -> bool:
        return self.all_ok

    @property
    def every_sample_touched_by_wavelet(self) -> bool:
        return self.all_ok

    @property
    def max_distance_residual(self) -> float:
        return float(self.distance_residuals.max())

    @property
    def max_parallel_residual(self) -> float:
        return float(self.parallel_residuals.max())


def circle_front(center, radius, count, orientation="outward") -> Front:
    return sample_primitive(
        {"type": "circle", "center": center, "radius": radius}, count, orientation
    )


def ellipse_front(center, semi_axes, count, orientation="outward") -> Front:
    return sample_primitive(
        {"type": "ellipse", "center": center, "semi_axes": semi_axes}, count, orientation
    )


def sphere_front(center, radius, count, orientation="outward") -> Front:
    return sample_primitive(
        {"type": "sphere", "center": center, "radius": radius}, count, orientation
    )


def _primitive_center(primitive, dim):
    try:
        center = as_point(primitive["center"])
    except KeyError:
        raise BadPrimitive("primitive is missing its center") from None
    if center.shape[0] != dim:
        raise BadPrimitive(f"center must have {dim} coordinates, got {center.shape[0]}")
    return center


def _primitive_length(primitive, key):
    try:
        return ensure_length(primitive[key], key)
    except KeyError:
        raise BadPrimitive(f"primitive is missing {key!r}") from None
    except ValueError as exc:
        raise BadPrimitive(str(exc)) from None


def sample_primitive(primitive, count: int, orientation: str = "outward") -> Front:
    """Uniform parameter sampling of a primitive with analytic unit normals.

    Supported types: circle and ellipse (2D, closed curves), sphere (3D,
    tensor grid over an equatorial band), and sampled (explicit point/normal
    lists).  Orientation outward keeps the analytic normals, inward negates
    them.
    """
    if orientation not in ("outward", "inward"):
        raise BadPrimitive(f"orientation must be 'outward' or 'inward', got {orientation!r}")
    kind = primitive.get("type")
    count = int(count)
    flip = -1.0 if orientation == "inward" else 1.0

    if kind == "circle":
        if count < 4:
            raise TooFewSamples(f"closed curves need at least 4 samples, got {count}")
        center = _primitive_center(primitive, 2)
        radius = _primitive_length(primitive, "radius")
        theta = 2.0 * np.pi * np.arange(count) / count
        normals = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        points = center + radius * normals
        return Front(points, flip * normals, closed=True, source="circle")

    if kind == "ellipse":
        if count < 4:
            raise TooFewSamples(f"closed curves need at least 4 samples, got {count}")
        center = _primitive_center(primitive, 2)
        axes = primitive.get("semi_axes")
        if axes is None or len(axes) != 2:
            raise BadPrimitive("ellipse needs semi_axes [a, b]")
        a = ensure_length(axes[0], "semi_axes[0]")
        b = ensure_length(axes[1], "semi_axes[1]")
        theta = 2.0 * np.pi * np.arange(count) / count
        points = center + np.stack([a * np.cos(theta), b * np.sin(theta)], axis=1)
        # gradient of the implicit equation: (x - cx)/a^2, (y - cy)/b^2
        grad = np.stack([np.cos(theta) / a, np.sin(theta) / b], axis=1)
        normals = grad / np.sqrt((grad * grad).sum(axis=1))[:, None]
        return Front(points, flip * normals, closed=True, source="ellipse")

    if kind == "sphere":
        if count < 4:
            raise TooFewSamples(f"sphere grids need at least 4 samples per axis, got {count}")
        center = _primitive_center(primitive, 3)
        radius = _primitive_length(primitive, "radius")
        rows = cols = count
        # equatorial band: keeps the tensor grid near-uniform (no polar crowding)
        theta = np.pi / 4 + (np.pi / 2) * np.arange(rows) / (rows - 1)
        phi = 2.0 * np.pi * np.arange(cols) / cols
        st, ct = np.sin(theta)[:, None], np.cos(theta)[:, None]
        cp, sp = np.cos(phi)[None, :], np.sin(phi)[None, :]
        normals = np.stack(
            [(st * cp).ravel(), (st * sp).ravel(), np.broadcast_to(ct, (rows, cols)).ravel()],
            axis=1,
        )
        points = center + radius * normals
        return Front(points, flip * normals, closed=True, source="sphere", grid=(rows, cols))

    if kind == "sampled":
        if "points" not in primitive or "normals" not in primitive:
            raise BadPrimitive("sampled primitive needs explicit points and normals")
        points = _as_sample_array(primitive["points"], "points")
        normals = _as_sample_array(primitive["normals"], "normals")
        return Front(
            points,
            flip * normals,
            closed=bool(primitive.get("closed", True)),
            source="sampled",
        )

    raise BadPrimitive(f"unknown primitive type {kind!r}")


def caustic_limit(front: Front) -> float:
    """Largest safe propagation distance, from discrete curvature radii.

    For each sample, the radius of the circle through it and its two
    neighbours counts when the circle's center lies on the positive side;
    the limit is the smallest such radius.  Returns NO_LIMIT (inf) when no
    sample curves toward the positive side.
    """
    if front.n_samples < 3:
        raise TooFewSamples("caustic estimate needs at least 3 samples")
    if front.grid is not None:
        rows, cols = front.grid
        radii = kernels.caustic_radii_grid(front.points, front.normals, rows, cols)
    else:
        radii = kernels.caustic_radii_chain(front.points, front.normals, front.closed)
    if radii.size == 0:
        return NO_LIMIT
    return float(radii.min())


def _output_clearance(front: Front, out_points: np.ndarray) -> float:
    if front.grid is not None:
        rows, cols = front.grid
        raw = kernels.min_nonadjacent_clearance_grid(out_points, rows, cols, front.closed)
    else:
        raw = kernels.min_nonadjacent_clearance_chain(out_points, front.closed)
    return float(raw) / front.spacing if math.isfinite(raw) else math.inf


def front_propagate(front: Front, s: float, strict: bool = True) -> PropagationReport:
    """Move every sample s units along its normal, keeping the normal.

    The output front's contact element at each moved point is the wavelet
    sphere's own, so the bookkeeping bijection sample -> moved sample is the
    propagation map and its inverse is the foot map.  Raises CausticExceeded
    (or, with strict=False, returns a non-injective report) when s reaches
    the caustic bound or the output samples fold over each other.
    """
    s = ensure_length(s, "s")
    bound = caustic_limit(front)
    out_points = kernels.offset_points(front.points, front.normals, s)
    clearance = _output_clearance(front, out_points)
    injective = s < bound and clearance >= CLEARANCE_FLOOR
    if not injective:
        if strict:
            raise CausticExceeded(
                f"propagation by {s} is not injective "
                f"(caustic bound {bound:.6g}, clearance {clearance:.3g} "
                f"of floor {CLEARANCE_FLOOR})"
            )
        return PropagationReport(front, None, s, False, clearance, bound)
    out = Front(
        out_points,
        front.normals.copy(),
        closed=front.closed,
        source=f"offset[{s:g}] {front.source}",
        grid=front.grid,
    )
    return PropagationReport(front, out, s, True, clearance, bound)


def foot(c, report: PropagationReport) -> np.ndarray:
    """The input sample whose propagation produced the output point c."""
    if report.front_out is None:
        raise NotOnFront("report records a rejected propagation; no feet exist")
    c = as_point(c)
    d = report.front_out.points - c
    d2 = (d * d).sum(axis=1)
    idx = int(np.argmin(d2))
    if math.sqrt(float(d2[idx])) > TAU_DISTINCT:
        raise NotOnFront(f"point {c} is not an output sample of the propagation")
    return report.front_in.points[idx].copy()


def envelope_verify(front: Front, s: float, out: Front) -> EnvelopeReport:
    """Check the wavelet-contact identity sample by sample.

    For each matched pair (b, c): c must lie on the sphere of radius s
    around b, and the output front's contact element at c must equal that
    sphere's outward contact element there.
    """
    s = ensure_length(s, "s")
    if (
        front.n_samples != out.n_samples
        or front.closed != out.closed
        or front.grid != out.grid
    ):
        raise FrontMismatch("fronts disagree in sample count or topology")
    dist_res, par_res, dots = kernels.envelope_residuals(
        front.points, out.points, out.normals, s
    )
    ok = (dist_res <= TAU_ON) & (par_res <= TAU_PARALLEL) & (dots > 0.0)
    return EnvelopeReport(
        per_sample_ok=ok,
        distance_residuals=dist_res,
        parallel_residuals=par_res,
    )


def semigroup_check(front: Front, s: float, t: float) -> float:
    """Max pointwise gap between propagating by s then t and by s + t."""
    total = add_len(s, t)
    if total >= caustic_limit(front):
        raise CausticExceeded(
            f"combined step {total} reaches the caustic bound {caustic_limit(front):.6g}"
        )
    two_leg = front_propagate(front_propagate(front, s).front_out, t)
    one_leg = front_propagate(front, total)
    return float(
        kernels.max_pointwise_deviation(two_leg.front_out.points, one_leg.front_out.points)
    )
