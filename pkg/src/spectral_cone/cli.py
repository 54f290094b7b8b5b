"""Command-line front end: decomposition, entropy landscapes and check suites.

Subcommands
-----------
decompose   orthogonal decomposition of a cone element, JSON output
check       locality | sufficiency | spectrality | concavity, JSON report
landscape   entropy grid over a 2D space, CSV plus a maxima sidecar

All randomness flows from a single seed (flag --seed, else the
SPECTRAL_CONE_SEED environment variable, else 42), so identical invocations
produce byte-identical output.  Exit codes: 0 pass, 1 usage or parse error,
2 check or invariant failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

import numpy as np

from . import divergence as dv
from . import geometries as geo
from . import jordan, spectral
from .cone import ConeElement, State
from .errors import SpectralConeError

DEFAULT_SEED = 42

_SHORTHANDS = {
    "square": lambda m: geo.unit_square(),
    "disc": lambda m: geo.Ball(2),
    "disk": lambda m: geo.Ball(2),
}
_PATTERNS = (
    (re.compile(r"^simplex(\d+)$"), lambda n: geo.Simplex(n)),
    (re.compile(r"^ball(\d+)$"), lambda n: geo.Ball(n)),
    (re.compile(r"^spin(\d+)$"), lambda n: geo.SpinFactor(n)),
    (re.compile(r"^real(\d+)$"), lambda n: geo.DensityMatrices("real", n)),
    (re.compile(r"^complex(\d+)$"), lambda n: geo.DensityMatrices("complex", n)),
    (re.compile(r"^quaternion(\d+)$"), lambda n: geo.DensityMatrices("quaternion", n)),
)


def _load_json_arg(text: str):
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


def parse_space(text: str):
    """Space from a shorthand name, inline JSON, or @path to a JSON file."""
    text = text.strip()
    if text.startswith("{") or text.startswith("@"):
        return geo.space_from_json(_load_json_arg(text))
    if text in _SHORTHANDS:
        return _SHORTHANDS[text](None)
    for pattern, build in _PATTERNS:
        m = pattern.match(text)
        if m:
            return build(int(m.group(1)))
    raise ValueError(f"cannot parse space {text!r}")


def parse_element(text: str, space) -> ConeElement:
    """Cone element from JSON: a bare coords list (trace 1) or {trace, coords}."""
    data = _load_json_arg(text.strip())
    if isinstance(data, list):
        return State(space, np.asarray(data, dtype=float))
    return ConeElement(space, float(data.get("trace", 1.0)),
                       np.asarray(data["coords"], dtype=float))


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_safe(value):
    """Replace non-finite floats with strings so reports stay strict JSON."""
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def _report_json(report: dict) -> str:
    return json.dumps(_json_safe(report), sort_keys=True, allow_nan=False) + "\n"


def cmd_decompose(args) -> int:
    try:
        space = parse_space(args.space)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        x = parse_element(args.element, space)
        dec = geo.decompose(space, x, with_witnesses=True)
    except SpectralConeError as exc:
        # membership or decomposition invariant failure
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = dec.to_json()
    payload["space"] = space.to_json()
    payload["trace"] = x.trace_weight
    payload["n"] = dec.size
    payload["dim"] = space.dim
    payload["caratheodory_ok"] = dec.size <= space.dim + 1
    payload["reconstruction_error"] = dec.reconstruction_error(x)
    payload["witnesses"] = [
        {"linear": [float(c) for c in w.linear], "offset": w.offset} if w else None
        for w in (dec.witnesses or ())
    ]
    _emit(_report_json(payload), args.out)
    return 0


def cmd_check(args) -> int:
    seed = args.seed
    try:
        if args.kind == "concavity":
            if not args.algebra:
                raise ValueError("check concavity requires --algebra")
            report = jordan.check_concavity(args.algebra, trials=args.trials, seed=seed)
        elif args.kind == "spectrality":
            space = parse_space(args.space)
            report = spectral.is_spectral(space, samples=args.trials, seed=seed).to_json()
        elif args.kind in ("locality", "sufficiency"):
            space = parse_space(args.space)
            div = dv.builtin_divergence(args.divergence, space)
            tol = args.tol if args.tol is not None else (1e-8 if args.kind == "locality" else 1e-9)
            if args.kind == "locality":
                report = dv.check_locality(div, space, trials=args.trials, tol=tol, seed=seed)
            else:
                report = dv.check_sufficiency(div, space, tol=tol, trials=args.trials, seed=seed)
        else:
            raise ValueError(f"unknown check {args.kind!r}")
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(_report_json(report), args.out)
    return 0 if report["pass"] else 2


def cmd_landscape(args) -> int:
    try:
        space = parse_space(args.space)
        land = spectral.entropy_landscape(space, grid_resolution=args.grid)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rows = ["x,y,entropy"]
    rows += [f"{x:.17g},{y:.17g},{h:.17g}" for x, y, h in land.csv_rows()]
    csv_text = "\n".join(rows) + "\n"
    maxima_text = json.dumps(land.maxima_json(), sort_keys=True) + "\n"
    if args.out:
        _emit(csv_text, args.out)
        _emit(maxima_text, args.out + ".maxima.json")
    else:
        sys.stdout.write(csv_text)
        sys.stderr.write(maxima_text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-cone",
        description="Decompositions, entropy and divergence checks on convex state spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    env_seed = os.environ.get("SPECTRAL_CONE_SEED")
    seed_default = int(env_seed) if env_seed else DEFAULT_SEED

    p_dec = sub.add_parser("decompose", help="orthogonal decomposition of a cone element")
    p_dec.add_argument("--space", required=True)
    p_dec.add_argument("--element", required=True,
                       help='JSON coords list or {"trace": t, "coords": [...]}, or @file')
    p_dec.add_argument("--out")
    p_dec.add_argument("--format", choices=["json"], default="json")
    p_dec.set_defaults(func=cmd_decompose)

    p_chk = sub.add_parser("check", help="run a verification suite")
    p_chk.add_argument("kind", choices=["locality", "sufficiency", "spectrality", "concavity"])
    p_chk.add_argument("--space")
    p_chk.add_argument("--divergence", default="kl",
                       choices=["kl", "squared_euclidean", "itakura_saito", "matrix_negentropy"])
    p_chk.add_argument("--algebra", help="e.g. complex2, quaternion3, spin5")
    p_chk.add_argument("--trials", type=int, default=200)
    p_chk.add_argument("--tol", type=float, default=None)
    p_chk.add_argument("--seed", type=int, default=seed_default)
    p_chk.add_argument("--out")
    p_chk.add_argument("--format", choices=["json"], default="json")
    p_chk.set_defaults(func=cmd_check)

    p_land = sub.add_parser("landscape", help="entropy grid over a 2D space")
    p_land.add_argument("--space", required=True)
    p_land.add_argument("--grid", type=int, default=101)
    p_land.add_argument("--out")
    p_land.add_argument("--format", choices=["csv"], default="csv")
    p_land.set_defaults(func=cmd_landscape)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
