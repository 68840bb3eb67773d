"""Spheres, the touching relation, and the radial projection maps.

Touching of two non-concentric spheres is decided two ways that must agree:
by the center-distance criterion (distance equals the sum or the difference
of the radii) and by comparing the spheres' monad slices at the candidate
point.  Internal and external touching are mutually exclusive, the touching
point is unique, and the point is constructed by a ray formula rather than
root-finding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import Concentric, NotDistinct, NotOnSphere, NotTouching
from .jets import constraints_equal, sphere_monad_slice
from .scalars import TAU_DISTINCT, TAU_ON, as_point, ensure_length, lengths_close

# Relative band (w.r.t. the larger radius) within which the center distance
# counts as hitting the sum or difference of the radii exactly.
TAU_TOUCH_REL = 1e-9

# Maximum separation of the two analytic sphere-intersection solutions for a
# touching pair to count as having a single touching point.
TANGENCY_SEPARATION = 1e-6


class TouchKind(Enum):
    NONE = "none"
    INTERNAL = "internal"
    EXTERNAL = "external"


@dataclass(frozen=True, eq=False)
class Sphere:
    """The set of points at a fixed positive distance from a center."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "radius", ensure_length(self.radius, "radius"))

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    def contains(self, p) -> bool:
        d = float(np.linalg.norm(as_point(p) - self.center))
        return abs(d - self.radius) <= TAU_ON


@dataclass(frozen=True, eq=False)
class TouchResult:
    kind: TouchKind
    point: np.ndarray | None = None


def _center_gap(s1: Sphere, s2: Sphere) -> float:
    d = float(np.linalg.norm(s2.center - s1.center))
    if d <= TAU_DISTINCT:
        raise Concentric("spheres are concentric; touching is undefined")
    return d


def touch_classify(s1: Sphere, s2: Sphere) -> TouchResult:
    """Classify a non-concentric sphere pair by the center-distance criterion.

    External touching: center distance equals the sum of the radii; the
    touching point sits between the centers.  Internal touching: center
    distance equals the (positive) difference of the radii; the touching
    point lies on the line through the centers beyond the smaller sphere's
    center.  Equal radii admit no internal touching because their difference
    is not a length.
    """
    d = _center_gap(s1, s2)
    r1, r2 = s1.radius, s2.radius
    tau = TAU_TOUCH_REL * max(r1, r2)
    u = (s2.center - s1.center) / d
    if abs(d - (r1 + r2)) <= tau:
        return TouchResult(TouchKind.EXTERNAL, s1.center + r1 * u)
    if not lengths_close(r1, r2) and abs(d - abs(r1 - r2)) <= tau:
        point = s1.center + r1 * u if r1 > r2 else s1.center - r1 * u
        return TouchResult(TouchKind.INTERNAL, point)
    return TouchResult(TouchKind.NONE)


def monadic_touch_check(s1: Sphere, s2: Sphere, c) -> bool:
    """Compare the two spheres' monad slices at a common point c.

    True iff the slices cut out the same hyperplane of displacements, i.e.
    the spheres agree on the entire neighbourhood of c and not merely at c.
    """
    c = as_point(c)
    _center_gap(s1, s2)
    for s in (s1, s2):
        if not s.contains(c):
            raise NotOnSphere(f"point {c} is not on sphere({s.center}, {s.radius})")
    return constraints_equal(sphere_monad_slice(s1, c), sphere_monad_slice(s2, c))


def intersection_separation(s1: Sphere, s2: Sphere) -> float:
    """Separation of the two analytic intersection solutions of a sphere pair.

    Computed from the Heron-style factored form of the tangency discriminant,
    which stays accurate when one factor is near zero.  Zero separation means
    a single (tangential) intersection point.
    """
    d = _center_gap(s1, s2)
    r1, r2 = s1.radius, s2.radius
    # (2 * area of the center-center-intersection triangle / d) is the
    # distance of the intersection points from the center line
    f = (r1 + r2 - d) * (r2 + d - r1) * (d + r1 - r2) * (d + r1 + r2)
    h = math.sqrt(max(f, 0.0)) / (2.0 * d)
    return 2.0 * h


def unique_touch_point(s1: Sphere, s2: Sphere) -> np.ndarray:
    """The single point where a touching pair meets.

    Beyond the distance criterion, certifies uniqueness: the two analytic
    intersection solutions must coincide (tangency discriminant below
    TANGENCY_SEPARATION).
    """
    res = touch_classify(s1, s2)
    if res.kind is TouchKind.NONE:
        raise NotTouching("spheres do not touch")
    sep = intersection_separation(s1, s2)
    if sep > TANGENCY_SEPARATION:
        raise NotTouching(
            f"intersection is not a single point (solution separation {sep:.3e})"
        )
    return res.point


def extrapolate(a, s: float, b) -> np.ndarray:
    """Extrapolation s units from b, directly away from a.

    Equals the touching point of sphere(a, dist(a,b) + s) and sphere(b, s).
    """
    a = as_point(a)
    b = as_point(b)
    s = ensure_length(s, "s")
    d = float(np.linalg.norm(b - a))
    if d <= TAU_DISTINCT:
        raise NotDistinct("extrapolation endpoints are not distinct")
    return b + (s / d) * (b - a)


def radial_project(sphere: Sphere, s: float, b) -> np.ndarray:
    """Map a point b on the sphere to where sphere(b, s) touches the enlarged sphere.

    This is radial projection onto sphere(center, radius + s).
    """
    b = as_point(b)
    if not sphere.contains(b):
        raise NotOnSphere(f"point {b} is not on the sphere")
    return extrapolate(sphere.center, s, b)


def radial_retract(sphere: Sphere, s: float, c) -> np.ndarray:
    """Inverse of radial_project: pull c on sphere(center, radius + s) back.

    Returns the point where sphere(c, s) touches the original sphere: the
    point at distance radius from the center along the ray toward c.
    """
    c = as_point(c)
    s = ensure_length(s, "s")
    outer = Sphere(sphere.center, sphere.radius + s)
    if not outer.contains(c):
        raise NotOnSphere(f"point {c} is not on the enlarged sphere")
    d = float(np.linalg.norm(c - sphere.center))
    return sphere.center + (sphere.radius / d) * (c - sphere.center)
