"""Batch front-propagation tool.

Loads a JSON scenario, propagates each primitive through the listed steps,
writes CSV samples and optional SVG figures, and runs the requested checks.
The process exits 0 exactly when every check passed.

Scenario schema (all lengths in scene units):

    {
      "dimension": 2,                       # 2 or 3
      "sample_count": 256,                  # >= 8
      "primitives": [
        {"type": "circle", "center": [0, 0], "radius": 1.0,
         "orientation": "outward"},
        {"type": "ellipse", "center": [0, 0], "semi_axes": [2, 1]},
        {"type": "sphere", "center": [0, 0, 0], "radius": 1.0},
        {"type": "sampled", "points": [...], "normals": [...], "closed": true}
      ],
      "steps": [0.5, 0.5],                  # strictly positive
      "checks": ["envelope", "semigroup"],  # optional; also: reciprocity, axioms
      "box": [-10, 10]                      # optional sampling box for random suites
    }
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._backend import backend_name
from .checks import (
    DEFAULT_BOX,
    CheckResult,
    run_axiom_checks,
    run_envelope_check,
    run_reciprocity_check,
    run_semigroup_check,
)
from .errors import (
    CausticExceeded,
    DimensionError,
    GeometryError,
    ParseError,
    ValidationError,
)
from .fronts import Front, envelope_verify, front_propagate, sample_primitive
from .spheres import Sphere

KNOWN_CHECKS = ("envelope", "semigroup", "reciprocity", "axioms")
_PRIMITIVE_TYPES = ("circle", "ellipse", "sphere", "sampled")

_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


@dataclass(eq=False)
class Scenario:
    dimension: int
    sample_count: int
    primitives: list
    steps: list
    checks: list = field(default_factory=list)
    box: tuple = DEFAULT_BOX


def _fail(path: str, msg: str):
    raise ValidationError(f"{path}: {msg}")


def _require_number(value, path, positive=False):
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
        _fail(path, f"expected a finite number, got {value!r}")
    if positive and value <= 0:
        _fail(path, f"must be strictly positive, got {value!r}")
    return float(value)


def _require_coords(value, path, dim):
    if not isinstance(value, list) or len(value) != dim:
        _fail(path, f"expected a list of {dim} coordinates")
    return [_require_number(v, f"{path}[{k}]", positive=False) for k, v in enumerate(value)]


def _validate_primitive(prim, path, dim):
    if not isinstance(prim, dict):
        _fail(path, "expected an object")
    kind = prim.get("type")
    if kind not in _PRIMITIVE_TYPES:
        _fail(f"{path}.type", f"expected one of {_PRIMITIVE_TYPES}, got {kind!r}")
    orientation = prim.get("orientation", "outward")
    if orientation not in ("outward", "inward"):
        _fail(f"{path}.orientation", f"expected 'outward' or 'inward', got {orientation!r}")
    if kind in ("circle", "ellipse") and dim != 2:
        _fail(f"{path}.type", f"{kind} primitives require dimension 2")
    if kind == "sphere" and dim != 3:
        _fail(f"{path}.type", "sphere primitives require dimension 3")
    if kind in ("circle", "sphere"):
        _require_coords(prim.get("center"), f"{path}.center", dim)
        _require_number(prim.get("radius"), f"{path}.radius", positive=True)
    elif kind == "ellipse":
        _require_coords(prim.get("center"), f"{path}.center", dim)
        axes = prim.get("semi_axes")
        if not isinstance(axes, list) or len(axes) != 2:
            _fail(f"{path}.semi_axes", "expected [a, b]")
        for k, v in enumerate(axes):
            _require_number(v, f"{path}.semi_axes[{k}]", positive=True)
    else:  # sampled
        for key in ("points", "normals"):
            rows = prim.get(key)
            if not isinstance(rows, list) or len(rows) < 3:
                _fail(f"{path}.{key}", "expected a list of at least 3 rows")
            for k, row in enumerate(rows):
                _require_coords(row, f"{path}.{key}[{k}]", dim)
        if len(prim["points"]) != len(prim["normals"]):
            _fail(f"{path}.normals", "points and normals must have the same length")
    return prim


def _validate_scenario(data) -> Scenario:
    if not isinstance(data, dict):
        _fail("$", "scenario must be a JSON object")
    dim = data.get("dimension")
    if dim not in (2, 3):
        _fail("dimension", f"expected 2 or 3, got {dim!r}")
    count = data.get("sample_count")
    if not isinstance(count, int) or isinstance(count, bool) or count < 8:
        _fail("sample_count", f"expected an integer >= 8, got {count!r}")
    prims = data.get("primitives")
    if not isinstance(prims, list) or not prims:
        _fail("primitives", "expected a non-empty list")
    prims = [
        _validate_primitive(p, f"primitives[{i}]", dim) for i, p in enumerate(prims)
    ]
    steps = data.get("steps")
    if not isinstance(steps, list) or not steps:
        _fail("steps", "expected a non-empty list")
    steps = [_require_number(s, f"steps[{i}]", positive=True) for i, s in enumerate(steps)]
    checks = data.get("checks", [])
    if not isinstance(checks, list):
        _fail("checks", "expected a list")
    for i, c in enumerate(checks):
        if c not in KNOWN_CHECKS:
            _fail(f"checks[{i}]", f"expected one of {KNOWN_CHECKS}, got {c!r}")
    box = data.get("box", list(DEFAULT_BOX))
    if not isinstance(box, list) or len(box) != 2:
        _fail("box", "expected [lo, hi]")
    lo = _require_number(box[0], "box[0]")
    hi = _require_number(box[1], "box[1]")
    if hi <= lo:
        _fail("box[1]", "upper bound must exceed lower bound")
    return Scenario(dim, count, prims, steps, list(checks), (lo, hi))


def load_scene(path) -> Scenario:
    """Read and validate a scenario file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read scene file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return _validate_scenario(data)


def write_csv(front: Front, path, front_index: int = 0):
    """One row per sample: indices, coordinates, normal components.

    Fixed 12-decimal formatting and LF newlines keep the output byte-stable
    across runs on identical input.
    """
    cols = ["x", "y", "nx", "ny"] if front.dim == 2 else ["x", "y", "z", "nx", "ny", "nz"]
    lines = ["front_index,sample_index," + ",".join(cols)]
    for k in range(front.n_samples):
        vals = [*front.points[k], *front.normals[k]]
        lines.append(f"{front_index},{k}," + ",".join(f"{v:.12f}" for v in vals))
    path = Path(path)
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")
    return path


def _svg_path(front: Front) -> str:
    cmds = [f"{'M' if k == 0 else 'L'} {p[0]:.6f},{p[1]:.6f}" for k, p in enumerate(front.points)]
    if front.closed:
        cmds.append("Z")
    return " ".join(cmds)


def write_svg(fronts, wavelets=None, path=None):
    """Standalone SVG figure: fronts as paths, wavelets as circles.

    2D only; the viewBox is fitted to the geometry with a 5% margin.
    """
    fronts = list(fronts)
    for f in fronts:
        if f.dim != 2:
            raise DimensionError("SVG rendering is 2D only")
    wavelets = list(wavelets or [])
    xs, ys = [], []
    for f in fronts:
        xs += [float(f.points[:, 0].min()), float(f.points[:, 0].max())]
        ys += [float(f.points[:, 1].min()), float(f.points[:, 1].max())]
    for w in wavelets:
        xs += [float(w.center[0] - w.radius), float(w.center[0] + w.radius)]
        ys += [float(w.center[1] - w.radius), float(w.center[1] + w.radius)]
    if not xs:
        xs = ys = [0.0, 1.0]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    margin = 0.05 * max(x1 - x0, y1 - y0, 1e-9)
    width = (x1 - x0) + 2 * margin
    height = (y1 - y0) + 2 * margin
    sw = 0.004 * max(width, height)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{x0 - margin:.6f} {-(y1 + margin):.6f} {width:.6f} {height:.6f}">',
        "<style>",
        f".front {{ fill: none; stroke-width: {sw:.6f}; }}",
        f".wavelet {{ fill: none; stroke: #999999; stroke-width: {sw / 2:.6f}; }}",
        "</style>",
        '<g transform="scale(1,-1)">',
    ]
    for i, f in enumerate(fronts):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        parts.append(
            f'<path class="front front-{i}" stroke="{color}" d="{_svg_path(f)}"/>'
        )
    for w in wavelets:
        parts.append(
            f'<circle class="wavelet" cx="{w.center[0]:.6f}" cy="{w.center[1]:.6f}" '
            f'r="{w.radius:.6f}"/>'
        )
    parts += ["</g>", "</svg>"]
    path = Path(path)
    path.write_text("\n".join(parts) + "\n", encoding="ascii", newline="\n")
    return path


@dataclass(eq=False)
class PipelineResult:
    results: list
    artifacts: list

    @property
    def status(self) -> int:
        return 0 if all(r.passed for r in self.results) else 1


def _build_fronts(scenario: Scenario):
    fronts = []
    for prim in scenario.primitives:
        fronts.append(
            sample_primitive(prim, scenario.sample_count, prim.get("orientation", "outward"))
        )
    return fronts


def _propagate_sequence(front: Front, steps):
    """Fronts after each cumulative step; stops at the first caustic failure."""
    seq = [front]
    failure = None
    for step in steps:
        try:
            seq.append(front_propagate(seq[-1], step).front_out)
        except CausticExceeded as exc:
            failure = str(exc)
            break
    return seq, failure


def run_pipeline(
    scenario: Scenario,
    out_dir=None,
    svg: bool = False,
    seed: int = 0,
    trials: int = 1000,
    checks=None,
    write_outputs: bool = True,
) -> PipelineResult:
    """Propagate every primitive through the step list and run the checks.

    Writes one CSV per primitive per cumulative step (step 0 is the input
    front) when an output directory is given.  A caustic failure surfaces as
    a failed propagate check, never as a crash.
    """
    results = []
    artifacts = []
    requested = scenario.checks if checks is None else list(checks)
    out_dir = Path(out_dir) if out_dir is not None else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)

    sequences = []
    for i, front in enumerate(_build_fronts(scenario)):
        seq, failure = _propagate_sequence(front, scenario.steps)
        sequences.append(seq)
        if failure is None:
            results.append(
                CheckResult(
                    f"propagate[{i}]",
                    True,
                    f"{len(scenario.steps)} steps of {front.n_samples} samples ({front.source})",
                )
            )
        else:
            results.append(CheckResult(f"propagate[{i}]", False, failure))
        if out_dir is not None and write_outputs:
            for j, f in enumerate(seq):
                p = out_dir / f"front_{i}_step_{j}.csv"
                artifacts.append(write_csv(f, p, front_index=i))

    for name in requested:
        if name == "envelope":
            for i, seq in enumerate(sequences):
                for j, step in enumerate(scenario.steps[: len(seq) - 1]):
                    res = run_envelope_check(seq[j], step)
                    res.name = f"envelope[{i}] step {j + 1}"
                    results.append(res)
                if len(seq) - 1 < len(scenario.steps):
                    results.append(
                        CheckResult(f"envelope[{i}]", False, "propagation failed before checking")
                    )
        elif name == "semigroup":
            for i, seq in enumerate(sequences):
                res = run_semigroup_check(seq[0], scenario.steps)
                res.name = f"semigroup[{i}]"
                results.append(res)
        elif name == "reciprocity":
            results.append(run_reciprocity_check(scenario.dimension, seed, trials, scenario.box))
        elif name == "axioms":
            results.append(run_axiom_checks(scenario.dimension, seed, trials, scenario.box))

    if svg and out_dir is not None:
        try:
            artifacts.append(_render_svg(scenario, sequences, out_dir / "scene.svg"))
        except DimensionError as exc:
            results.append(CheckResult("render", False, str(exc)))
    return PipelineResult(results, artifacts)


def _render_svg(scenario: Scenario, sequences, path):
    fronts = [f for seq in sequences for f in seq]
    wavelets = []
    if sequences and len(sequences[0]) > 1:
        base = sequences[0][0]
        step = scenario.steps[0]
        stride = max(1, base.n_samples // 8)
        wavelets = [Sphere(base.points[k], step) for k in range(0, base.n_samples, stride)]
    return write_svg(fronts, wavelets, path)


def _print_results(results) -> int:
    status = 0
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        print(f"[{tag}] {r.name}: {r.detail}")
        if not r.passed:
            status = 1
    return status


def _cmd_propagate(args) -> int:
    scenario = load_scene(args.scene)
    result = run_pipeline(scenario, out_dir=args.out, svg=args.svg, checks=[])
    for p in result.artifacts:
        print(f"wrote {p}")
    return max(result.status, _print_results(result.results))


def _cmd_verify(args) -> int:
    checks = None
    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
        for c in checks:
            if c not in KNOWN_CHECKS:
                print(f"unknown check {c!r}; known: {', '.join(KNOWN_CHECKS)}", file=sys.stderr)
                return 2
    if args.scene is None:
        requested = checks or ["axioms", "reciprocity"]
        scene_bound = [c for c in requested if c in ("envelope", "semigroup")]
        if scene_bound:
            print(
                f"checks {scene_bound} need --scene; only axioms/reciprocity run scene-free",
                file=sys.stderr,
            )
            return 2
        results = []
        for dim in (2, 3):
            for c in requested:
                if c == "axioms":
                    results.append(run_axiom_checks(dim, args.seed, args.trials))
                else:
                    results.append(run_reciprocity_check(dim, args.seed, args.trials))
        return _print_results(results)
    scenario = load_scene(args.scene)
    result = run_pipeline(
        scenario,
        out_dir=None,
        seed=args.seed,
        trials=args.trials,
        checks=checks,
        write_outputs=False,
    )
    return _print_results(result.results)


def _cmd_render(args) -> int:
    scenario = load_scene(args.scene)
    sequences = []
    for front in _build_fronts(scenario):
        seq, failure = _propagate_sequence(front, scenario.steps)
        sequences.append(seq)
        if failure is not None:
            print(f"[FAIL] propagate: {failure}")
            return 1
    path = _render_svg(scenario, sequences, args.out)
    print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="huygens",
        description="Wavefront propagation, envelope verification, and axiom suites "
        f"(kernel backend: {backend_name()})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("propagate", help="propagate scene primitives and write CSV samples")
    p.add_argument("--scene", required=True, help="scenario JSON file")
    p.add_argument("--out", required=True, help="output directory for CSV files")
    p.add_argument("--svg", action="store_true", help="also write an SVG figure")
    p.set_defaults(func=_cmd_propagate)

    p = sub.add_parser("verify", help="run checks (scene-bound or randomized suites)")
    p.add_argument("--scene", help="scenario JSON file (optional for axioms/reciprocity)")
    p.add_argument("--checks", help=f"comma-separated subset of {','.join(KNOWN_CHECKS)}")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    p.add_argument("--trials", type=int, default=1000, help="trials per randomized suite")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("render", help="write an SVG figure of the scene and its fronts")
    p.add_argument("--scene", required=True, help="scenario JSON file")
    p.add_argument("--out", required=True, help="output SVG path")
    p.set_defaults(func=_cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
