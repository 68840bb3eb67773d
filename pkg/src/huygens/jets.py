"""Exact first-order neighbour algebra.

A displacement attached to a base point is treated as an infinitesimal whose
pairwise coordinate products vanish identically, so every scalar function
restricted to the neighbourhood of a point is represented exactly by a value
plus a gradient covector -- there is no quadratic slot to truncate.  Monads
(neighbourhoods) are never enumerated; they are represented intensionally by
linear constraints on displacements, which turns "for all neighbours"
quantifiers into small linear-algebra conditions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BaseMismatch, NotDistinct, NotOnSphere
from .scalars import TAU_DISTINCT, TAU_ON, TAU_PARALLEL, as_point, lengths_close


@dataclass(frozen=True, eq=False)
class Displacement:
    """A formal infinitesimal direction.  Products of two components are zero."""

    delta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "delta", as_point(self.delta))


@dataclass(frozen=True, eq=False)
class MonadPoint:
    """A neighbour of ``base``: the point base + disp.

    A monad point is never distinct from its own base, regardless of the
    numeric size of the displacement used to model it.
    """

    base: np.ndarray
    disp: Displacement

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base))

    def resolve(self) -> np.ndarray:
        return self.base + self.disp.delta


@dataclass(frozen=True, eq=False)
class JetScalar:
    """First-order expansion of a scalar over a monad: value + gradient.delta."""

    value: float
    gradient: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "gradient", as_point(self.gradient))

    def at(self, delta) -> float:
        """Evaluate on a displacement.  Exact: no higher-order term exists."""
        if isinstance(delta, Displacement):
            delta = delta.delta
        return self.value + float(np.dot(self.gradient, np.asarray(delta, dtype=float)))


@dataclass(frozen=True, eq=False)
class TangentConstraint:
    """The linear condition normal.delta = 0 on displacements at ``base``.

    The normal is only defined up to nonzero scaling; it encodes a monad
    slice of a hypersurface (e.g. of a sphere) as a hyperplane of admissible
    displacements.
    """

    base: np.ndarray
    normal: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base))
        n = as_point(self.normal)
        if float(np.linalg.norm(n)) == 0.0:
            raise ValueError("tangent constraint normal must be nonzero")
        object.__setattr__(self, "normal", n)

    def project(self, delta) -> np.ndarray:
        """Tangential part of a displacement: the exact solution of normal.delta = 0."""
        d = np.asarray(delta, dtype=float)
        n = self.normal / np.linalg.norm(self.normal)
        return d - np.dot(d, n) * n

    def satisfies(self, delta, tol: float = TAU_PARALLEL) -> bool:
        d = np.asarray(delta, dtype=float)
        scale = max(float(np.linalg.norm(d)) * float(np.linalg.norm(self.normal)), 1.0)
        return abs(float(np.dot(self.normal, d))) <= tol * scale


def parallel_rejection(g, n) -> float:
    """Normalized rejection of g from the line spanned by n.

    Returns ||g - (g.n^)n^|| / max(||g||, 1); zero iff g is parallel to n
    (an identically zero g counts as parallel).
    """
    g = np.asarray(g, dtype=float)
    n = np.asarray(n, dtype=float)
    nn = float(np.linalg.norm(n))
    if nn == 0.0:
        raise ValueError("rejection against a zero vector is undefined")
    nhat = n / nn
    rej = g - np.dot(g, nhat) * nhat
    return float(np.linalg.norm(rej)) / max(float(np.linalg.norm(g)), 1.0)


def jet_dist_sq(b, x) -> JetScalar:
    """First-order expansion of delta -> ||(b + delta) - x||^2.

    The quadratic delta.delta term vanishes identically, so the jet
    (value ||b-x||^2, gradient 2(b-x)) is exact, not a truncation.
    """
    b = as_point(b)
    x = as_point(x)
    diff = b - x
    v = float(np.dot(diff, diff))
    if v <= TAU_DISTINCT * TAU_DISTINCT:
        raise NotDistinct(f"points {b} and {x} are not distinct")
    return JetScalar(value=v, gradient=2.0 * diff)


def sphere_monad_slice(sphere, b) -> TangentConstraint:
    """The monad slice of a sphere at a point b on it, as a tangent constraint.

    The admissible displacements are exactly those with (b - center).delta = 0:
    on them the squared-distance jet to the center stays at radius^2.
    """
    b = as_point(b)
    center = as_point(sphere.center)
    d = float(np.linalg.norm(b - center))
    if d <= TAU_DISTINCT:
        raise NotDistinct("point coincides with the sphere center")
    if abs(d - sphere.radius) > TAU_ON:
        raise NotOnSphere(
            f"point at distance {d} from center is not on sphere of radius {sphere.radius}"
        )
    return TangentConstraint(base=b, normal=b - center)


def jet_equal_under(c: TangentConstraint, j1: JetScalar, j2: JetScalar) -> bool:
    """Whether two jets agree on every displacement satisfying the constraint.

    Equivalent linear condition: equal values, and a gradient difference
    parallel to the constraint normal (so it vanishes on the hyperplane).
    """
    if not lengths_close(j1.value, j2.value):
        return False
    gdiff = j1.gradient - j2.gradient
    return parallel_rejection(gdiff, c.normal) <= TAU_PARALLEL


def constraints_equal(c1: TangentConstraint, c2: TangentConstraint) -> bool:
    """Whether two constraints at the same base cut out the same hyperplane."""
    if float(np.linalg.norm(c1.base - c2.base)) > TAU_DISTINCT:
        raise BaseMismatch(f"constraints based at {c1.base} and {c2.base}")
    n1 = c1.normal / np.linalg.norm(c1.normal)
    n2 = c2.normal / np.linalg.norm(c2.normal)
    return parallel_rejection(n1, n2) <= TAU_PARALLEL


def kernel_basis(c: TangentConstraint) -> np.ndarray:
    """Orthonormal basis of the constraint's admissible displacements."""
    n = c.normal / np.linalg.norm(c.normal)
    # null space of the 1 x n row matrix, via SVD
    _, _, vt = np.linalg.svd(n.reshape(1, -1))
    return vt[1:]


def constraint_kernel_included(c1: TangentConstraint, c2: TangentConstraint) -> bool:
    """Whether every displacement admissible for c1 is admissible for c2.

    Checked through an explicit basis of c1's hyperplane rather than through
    normal directions, so it is an independent route to the same geometry:
    for same-dimension hyperplanes, inclusion holds iff they are equal.
    """
    if float(np.linalg.norm(c1.base - c2.base)) > TAU_DISTINCT:
        raise BaseMismatch(f"constraints based at {c1.base} and {c2.base}")
    n2 = c2.normal / np.linalg.norm(c2.normal)
    return all(abs(float(np.dot(v, n2))) <= TAU_PARALLEL for v in kernel_basis(c1))
