"""Oriented contact elements and the distance-s propagation of one element.

A contact element is the monad slice of a sphere at a point, stored
presentation-free as a base point plus a unit normal; the sign of the normal
selects which of the two classes of spheres through the base counts as
touching from the inside, and thereby which side is positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotDistinct, NotOnSphere
from .jets import jet_dist_sq, parallel_rejection
from .scalars import (
    TAU_DISTINCT,
    TAU_ON,
    TAU_PARALLEL,
    as_point,
    dist,
    ensure_length,
    lengths_close,
)

UNIT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ContactElement:
    """An oriented monad slice: {base + delta : normal.delta = 0}.

    The positive side lies along +normal.  Two spheres through the base that
    touch each other present the same (unoriented) element.
    """

    base: np.ndarray
    normal: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base))
        n = as_point(self.normal)
        nn = float(np.linalg.norm(n))
        if nn == 0.0:
            raise ValueError("contact element normal must be nonzero")
        if abs(nn - 1.0) > UNIT_TOL:
            n = n / nn
        object.__setattr__(self, "normal", n)

    @property
    def dim(self) -> int:
        return self.base.shape[0]

    def opposite(self) -> "ContactElement":
        """The same slice with the other orientation."""
        return ContactElement(self.base, -self.normal)


def contact_from_sphere(sphere, b, positive_outward: bool = True) -> ContactElement:
    """The contact element a sphere presents at a point b on it.

    With positive_outward the positive side is away from the center;
    otherwise toward it.
    """
    b = as_point(b)
    center = as_point(sphere.center)
    d = float(np.linalg.norm(b - center))
    if d <= TAU_DISTINCT:
        raise NotDistinct("point coincides with the sphere center")
    if abs(d - sphere.radius) > TAU_ON:
        raise NotOnSphere(f"point {b} is not on sphere({center}, {sphere.radius})")
    n = (b - center) / d
    return ContactElement(b, n if positive_outward else -n)


def is_orthogonal(x, p: ContactElement) -> bool:
    """Whether the distance from x is constant across the whole element.

    In jet form: the gradient of the squared distance to x, restricted to the
    element's displacements, must vanish, i.e. (base - x) is parallel to the
    normal.
    """
    x = as_point(x)
    jet = jet_dist_sq(p.base, x)  # raises NotDistinct when x is not distinct from base
    return parallel_rejection(jet.gradient, p.normal) <= TAU_PARALLEL


def side_of(x, p: ContactElement) -> int:
    """+1 if x lies on the positive side of the element, -1 on the negative.

    Undefined (NotDistinct) when x projects onto the element's own hyperplane.
    """
    x = as_point(x)
    h = float(np.dot(x - p.base, p.normal))
    if abs(h) <= TAU_DISTINCT:
        raise NotDistinct("point lies in the contact element's hyperplane; side undefined")
    return 1 if h > 0.0 else -1


def propagate_contact(p: ContactElement, s: float) -> np.ndarray:
    """The unique point orthogonal to p, at distance s, on the positive side."""
    s = ensure_length(s, "s")
    return p.base + s * p.normal


def characteristic_check(c, p: ContactElement, s: float, oriented: bool = False) -> bool:
    """Whether c lies, to first order, on every sphere of radius s centered on p.

    Requires dist(base, c) = s and a squared-distance jet that is constant on
    the element (gradient parallel to the normal).  The mirror point on the
    negative side also satisfies this; pass oriented=True to additionally
    require c on the positive side.
    """
    c = as_point(c)
    s = ensure_length(s, "s")
    d = dist(p.base, c)
    if not lengths_close(d, s):
        return False
    if parallel_rejection(p.base - c, p.normal) > TAU_PARALLEL:
        return False
    if oriented:
        return side_of(c, p) == 1
    return True
