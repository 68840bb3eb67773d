"""Positive lengths and the pre-metric on distinct points.

Lengths are plain strictly-positive floats.  They form an additive semigroup:
there is no zero length, subtraction is defined only when the minuend is
strictly larger, and comparisons use a single relative tolerance so that the
ordering predicates stay mutually consistent.

Points are numpy float64 vectors of dimension 2 or 3.  The distance between
two points is defined only when they are distinct, i.e. separated by more
than ``TAU_DISTINCT``; no triangle inequality is assumed anywhere.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionError, NotDistinct, NotGreater

# Global comparison policy.  All modules share these values; keeping them in
# one place prevents predicates from drifting apart.
TAU_DISTINCT = 1e-9  # absolute separation (scene units) below which points are not distinct
TAU_LEN = 1e-9       # relative tolerance for length comparisons
TAU_PARALLEL = 1e-9  # normalized-rejection bound for parallelism tests
TAU_ON = 1e-6        # absolute sphere-membership tolerance (scene units)


def as_point(p) -> np.ndarray:
    """Coerce to a float64 coordinate vector of dimension 2 or 3."""
    a = np.asarray(p, dtype=float)
    if a.ndim != 1 or a.shape[0] not in (2, 3):
        raise DimensionError(f"point must have 2 or 3 coordinates, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"point has non-finite coordinates: {a}")
    return a


def ensure_length(x, name: str = "length") -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"{name} must be a strictly positive finite number, got {x}")
    return x


def lengths_close(r: float, t: float) -> bool:
    """Equality of lengths under the relative tolerance."""
    return abs(t - r) <= TAU_LEN * max(abs(r), abs(t))


def add_len(r: float, s: float) -> float:
    """Sum of two lengths; commutative and associative."""
    return ensure_length(r, "r") + ensure_length(s, "s")


def less_than(r: float, t: float) -> float:
    """True iff t exceeds r by more than the comparison tolerance."""
    r = ensure_length(r, "r")
    t = ensure_length(t, "t")
    return t - r > TAU_LEN * max(r, t)


def sub_len(t: float, r: float) -> float:
    """The unique length s with r + s = t.  Defined only when r < t."""
    if not less_than(r, t):
        raise NotGreater(f"difference undefined: {t} does not exceed {r}")
    return t - r


def distinct(a, b) -> bool:
    a = as_point(a)
    b = as_point(b)
    if a.shape != b.shape:
        raise DimensionError("points live in different dimensions")
    return float(np.linalg.norm(b - a)) > TAU_DISTINCT


def dist(a, b) -> float:
    """Euclidean distance between two distinct points.

    Symmetric by construction (the norm of the coordinate difference is
    unchanged by negation).  Raises NotDistinct when the points are within
    TAU_DISTINCT of each other, where no distance is defined.
    """
    a = as_point(a)
    b = as_point(b)
    if a.shape != b.shape:
        raise DimensionError("points live in different dimensions")
    d = float(np.linalg.norm(b - a))
    if d <= TAU_DISTINCT:
        raise NotDistinct(f"points {a} and {b} are not distinct (separation {d:.3e})")
    return d
