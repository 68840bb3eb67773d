"""Seeded randomized verification suites and scenario-level checks.

The touching axioms and the propagation operator are universally quantified;
these suites sample their hypotheses from seeded generators so that any
reported failure is replayable from the seed alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .contact import ContactElement, characteristic_check, propagate_contact
from .errors import CausticExceeded, GeometryError
from .fronts import Front, envelope_verify, front_propagate, semigroup_check
from .jets import (
    TangentConstraint,
    constraint_kernel_included,
    constraints_equal,
    parallel_rejection,
)
from .scalars import TAU_PARALLEL
from .spheres import (
    Sphere,
    TouchKind,
    intersection_separation,
    monadic_touch_check,
    radial_project,
    radial_retract,
    touch_classify,
    unique_touch_point,
)

RADIUS_RANGE = (0.1, 10.0)
DEFAULT_BOX = (-10.0, 10.0)


@dataclass(eq=False)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _unit(rng, dim):
    while True:
        v = rng.normal(size=dim)
        n = np.linalg.norm(v)
        if n > 1e-6:
            return v / n


def _point(rng, dim, box):
    return rng.uniform(box[0], box[1], size=dim)


def _perp_unit(rng, u):
    while True:
        v = _unit(rng, u.shape[0])
        v = v - np.dot(v, u) * u
        n = np.linalg.norm(v)
        if n > 1e-6:
            return v / n


def _crossing_points(s1: Sphere, s2: Sphere, rng):
    """The two analytic intersection points of a transversally crossing pair.

    Heron-factored height keeps the result accurate near tangency.  In 3D the
    intersection is a circle; two antipodal points of it are returned.
    """
    a, b = s1.center, s2.center
    d = float(np.linalg.norm(b - a))
    u = (b - a) / d
    r1, r2 = s1.radius, s2.radius
    x0 = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    f = (r1 + r2 - d) * (r2 + d - r1) * (d + r1 - r2) * (d + r1 + r2)
    h = math.sqrt(max(f, 0.0)) / (2.0 * d)
    v = _perp_unit(rng, u)
    mid = a + x0 * u
    return mid + h * v, mid - h * v


def run_axiom_checks(dim: int, seed: int, trials: int, box=DEFAULT_BOX) -> CheckResult:
    """Randomized suite for the touching axioms and the propagation point.

    Covers: uniqueness of the touching point (tangency discriminant),
    equivalence of the distance criterion with the monad-slice comparison,
    subtouching rigidity for tangent constraints, and presentation
    independence of the distance-s propagation of a contact element.
    """
    rng = np.random.default_rng(seed)
    failures = 0
    max_sep = 0.0
    max_spread = 0.0
    for trial in range(trials):
        a = _point(rng, dim, box)
        u = _unit(rng, dim)
        which = trial % 6
        if which == 0:  # external touching
            r1 = rng.uniform(*RADIUS_RANGE)
            r2 = rng.uniform(*RADIUS_RANGE)
            s1 = Sphere(a, r1)
            s2 = Sphere(a + (r1 + r2) * u, r2)
            res = touch_classify(s1, s2)
            sep = intersection_separation(s1, s2)
            max_sep = max(max_sep, sep)
            if res.kind is not TouchKind.EXTERNAL or sep > 1e-6:
                failures += 1
            elif not monadic_touch_check(s1, s2, res.point):
                failures += 1
        elif which == 1:  # internal touching
            r1 = rng.uniform(0.5, 10.0)
            r2 = r1 * rng.uniform(0.2, 0.8)
            s1 = Sphere(a, r1)
            s2 = Sphere(a + (r1 - r2) * u, r2)
            res = touch_classify(s1, s2)
            sep = intersection_separation(s1, s2)
            max_sep = max(max_sep, sep)
            if res.kind is not TouchKind.INTERNAL or sep > 1e-6:
                failures += 1
            elif not monadic_touch_check(s1, s2, res.point):
                failures += 1
        elif which == 2:  # transversal crossing: both crossing points fail the slice test
            r1 = rng.uniform(0.5, 10.0)
            r2 = r1 * rng.uniform(0.3, 1.0)
            lo = (r1 - r2) + 0.1 * r1
            hi = (r1 + r2) - 0.1 * r1
            s1 = Sphere(a, r1)
            s2 = Sphere(a + rng.uniform(lo, hi) * u, r2)
            if touch_classify(s1, s2).kind is not TouchKind.NONE:
                failures += 1
                continue
            for p in _crossing_points(s1, s2, rng):
                if monadic_touch_check(s1, s2, p):
                    failures += 1
        elif which == 3:  # disjoint
            r1 = rng.uniform(*RADIUS_RANGE)
            r2 = rng.uniform(*RADIUS_RANGE)
            s2 = Sphere(a + (r1 + r2) * rng.uniform(1.15, 2.0) * u, r2)
            if touch_classify(Sphere(a, r1), s2).kind is not TouchKind.NONE:
                failures += 1
        elif which == 4:  # subtouching rigidity on tangent constraints
            parallel = trial % 2 == 0
            n2 = u * rng.uniform(0.2, 5.0) * (1 if trial % 4 else -1) if parallel else _unit(rng, dim)
            if not parallel and parallel_rejection(n2, u) <= 1e-3:
                continue  # nearly parallel draw: no clean expectation either way
            c1 = TangentConstraint(a, u)
            c2 = TangentConstraint(a, n2)
            included = constraint_kernel_included(c1, c2)
            equal = constraints_equal(c1, c2)
            is_par = parallel_rejection(n2, u) <= TAU_PARALLEL
            if not (included == equal == is_par == parallel):
                failures += 1
        else:  # presentation independence of contact propagation
            s = rng.uniform(0.1, 5.0)
            elem = ContactElement(a, u)
            target = propagate_contact(elem, s)
            pts = []
            for r in rng.uniform(0.5, 8.0, size=5):
                inner = Sphere(a - r * u, r)
                pts.append(unique_touch_point(Sphere(inner.center, r + s), Sphere(a, s)))
            spread = max(
                float(np.linalg.norm(p - q)) for p in pts for q in pts
            )
            max_spread = max(max_spread, spread)
            if spread > 1e-9 or float(np.linalg.norm(pts[0] - target)) > 1e-9:
                failures += 1
            elif not characteristic_check(target, elem, s, oriented=True):
                failures += 1
            else:
                mirror = a - s * u
                off_axis = a + s * _perp_unit(rng, u)
                if not characteristic_check(mirror, elem, s):
                    failures += 1
                elif characteristic_check(mirror, elem, s, oriented=True):
                    failures += 1
                elif characteristic_check(off_axis, elem, s):
                    failures += 1
    passed = failures == 0
    detail = (
        f"{trials} trials in {dim}D, {failures} failures, "
        f"max tangency separation {max_sep:.3e}, max presentation spread {max_spread:.3e}"
    )
    return CheckResult(f"axioms[{dim}d]", passed, detail)


def run_reciprocity_check(dim: int, seed: int, trials: int, box=DEFAULT_BOX) -> CheckResult:
    """Radial projection and retraction must invert each other, both ways."""
    rng = np.random.default_rng(seed)
    max_dev = 0.0
    for _ in range(trials):
        center = _point(rng, dim, box)
        radius = rng.uniform(*RADIUS_RANGE)
        s = rng.uniform(*RADIUS_RANGE)
        sphere = Sphere(center, radius)
        b = center + radius * _unit(rng, dim)
        round_b = radial_retract(sphere, s, radial_project(sphere, s, b))
        c = center + (radius + s) * _unit(rng, dim)
        round_c = radial_project(sphere, s, radial_retract(sphere, s, c))
        max_dev = max(
            max_dev,
            float(np.linalg.norm(round_b - b)),
            float(np.linalg.norm(round_c - c)),
        )
    passed = max_dev <= 1e-9
    return CheckResult(
        f"reciprocity[{dim}d]", passed, f"{trials} trials, max roundtrip deviation {max_dev:.3e}"
    )


def run_envelope_check(front: Front, step: float) -> CheckResult:
    """One propagation step plus the wavelet-contact identity on every sample."""
    try:
        report = front_propagate(front, step)
        env = envelope_verify(front, step, report.front_out)
    except GeometryError as exc:
        return CheckResult("envelope", False, f"{type(exc).__name__}: {exc}")
    n_bad = int((~env.per_sample_ok).sum())
    detail = (
        f"step {step:g} on {front.n_samples} samples ({front.source}), {n_bad} failing, "
        f"max distance residual {env.max_distance_residual:.3e}, "
        f"max parallel residual {env.max_parallel_residual:.3e}"
    )
    return CheckResult("envelope", env.all_ok, detail)


def run_semigroup_check(front: Front, steps) -> CheckResult:
    """Stepwise propagation must equal one combined step."""
    if len(steps) >= 2:
        s, t = float(steps[0]), float(sum(steps[1:]))
    else:
        s = t = float(steps[0]) / 2.0
    try:
        dev = semigroup_check(front, s, t)
    except CausticExceeded as exc:
        return CheckResult("semigroup", False, f"CausticExceeded: {exc}")
    passed = dev <= 1e-9
    return CheckResult(
        "semigroup", passed, f"({s:g} then {t:g}) vs {s + t:g}: max deviation {dev:.3e}"
    )
