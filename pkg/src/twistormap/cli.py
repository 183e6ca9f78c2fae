"""Command-line interface.

Exit codes: 0 success, 2 invalid input (fails a mathematical check or a
parameter is out of its domain), 3 the input cannot be parsed.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .catalog import PRESETS, compare, get_preset
from .classifier import analyze
from .config import DEFAULT_TOL, TOL_ENV_VAR, default_tol
from .errors import BadParameter, SpecParseError, ValidationError
from .inputs import load
from .report import SWEEP_SCHEMA, build_report, dumps, num, render_table

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PARSE = 3

log = logging.getLogger("twistormap")

# CLI flag -> preset parameter.  The Lie-group parameter ``t`` is exposed as
# --lie-t because --t is the fibre scale of the twistor metric.
PRESET_FLAGS = {"eps1": "eps1", "eps2": "eps2", "phi": "phi", "s": "s", "lie_t": "t"}


def _resolve_tol(cli_tol, file_tol):
    if cli_tol is not None:
        return cli_tol, "--tol"
    if file_tol is not None:
        return file_tol, "input file"
    tol = default_tol()
    return tol, (TOL_ENV_VAR if tol != DEFAULT_TOL else "default")


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not (np.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return v


def _preset_values(args) -> dict:
    values = {}
    for flag, pname in PRESET_FLAGS.items():
        v = getattr(args, flag, None)
        if v is not None:
            values[pname] = v
    for item in args.param or []:
        if "=" not in item:
            raise BadParameter(f"--param expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        values[k.strip()] = v.strip()
    return values


def _parse_grid_values(text: str, kind) -> list:
    """``a,b,c`` or ``start:stop:n`` (``n`` points, ``stop`` excluded)."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise BadParameter(f"range must be start:stop:n, got {text!r}")
        try:
            start, stop, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise BadParameter(f"range must be start:stop:n, got {text!r}") from None
        if n < 1:
            raise BadParameter("range needs at least one point")
        return list(np.linspace(start, stop, n, endpoint=False))
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok:
            try:
                out.append(kind(float(tok)) if kind is int else kind(tok))
            except ValueError:
                raise BadParameter(f"cannot read grid value {tok!r}") from None
    if not out:
        raise BadParameter("empty grid")
    return out


def _emit(text: str, out):
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


# ---------------------------------------------------------------- classify


def cmd_classify(args, out=sys.stdout) -> int:
    if (args.preset is None) == (args.path is None):
        raise BadParameter("give either an input file or --preset NAME")
    preset = None
    if args.preset is not None:
        preset = get_preset(args.preset, **_preset_values(args))
        manifold, J = preset.manifold, preset.J
        tol, tol_source = _resolve_tol(args.tol, None)
        jacobi = None
        source = {"source": "preset", "preset": preset.name, "params": {k: _jsonable(v) for k, v in preset.params.items()}}
    else:
        if _preset_values(args):
            raise BadParameter("preset parameters given without --preset")
        spec = load(args.path)
        manifold, J = spec.manifold, spec.J
        tol, tol_source = _resolve_tol(args.tol, spec.tol)
        jacobi = spec.jacobi_tol
        source = {"source": "file", "path": str(args.path)}
    kwargs = {} if jacobi is None else {"jacobi_tol": jacobi}
    a = analyze(manifold, J, t=args.t, tol=tol, **kwargs)
    report = build_report(a, source, preset, tol_source)
    _emit(dumps(report) if args.format == "json" else render_table(report), out)
    return EXIT_OK


def _jsonable(v):
    if isinstance(v, (np.floating, float)):
        return num(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


# ---------------------------------------------------------------- sweep


def _sweep_point(preset_name, values, t, tol):
    preset = get_preset(preset_name, **values)
    a = analyze(preset.manifold, preset.J, t=t, tol=tol)
    diffs = compare(preset, a, tol)
    row = {k: _jsonable(v) for k, v in preset.params.items()}
    row["t"] = num(t)
    row["class"] = a.herm.structure_class.value
    row.update({k: bool(v) for k, v in a.verdict.flags().items()})
    row["cross_check"] = bool(a.verdict.cross_check)
    failed = [d.key for d in diffs if not d.passed]
    row["expected_ok"] = not failed
    row["expected_failed"] = failed
    return row


def cmd_sweep(args, out=sys.stdout) -> int:
    spec = PRESETS.get(args.preset)
    if spec is None:
        raise BadParameter(f"unknown preset {args.preset!r}; choose from {sorted(PRESETS)}")
    kinds = {p.name: p.kind for p in spec.params}
    grid_axes = []
    for item in args.grid or []:
        if "=" not in item:
            raise BadParameter(f"--grid expects name=values, got {item!r}")
        k, v = item.split("=", 1)
        k = k.strip()
        if k == "lie_t" or k == "lie-t":
            k = "t"
        if k not in kinds:
            raise BadParameter(f"preset {args.preset!r} has no parameter {k!r}")
        grid_axes.append((k, _parse_grid_values(v, kinds[k])))
    t_values = _parse_grid_values(args.t_grid, float) if args.t_grid else [args.t]
    for tv in t_values:
        if not tv > 0:
            raise BadParameter(f"fibre scale t must be positive, got {tv}")
    tol, tol_source = _resolve_tol(args.tol, None)
    names = [k for k, _ in grid_axes]
    points = []
    for combo in itertools.product(*[vals for _, vals in grid_axes]):
        values = dict(zip(names, combo))
        spec.build(**values)  # validate every point before any work starts
        for tv in t_values:
            points.append((values, tv))
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        rows = list(pool.map(lambda p: _sweep_point(args.preset, p[0], p[1], tol), points))
    result = {
        "schema": SWEEP_SCHEMA,
        "header": {"preset": args.preset, "tol": num(tol), "tol_source": tol_source, "points": len(rows)},
        "rows": rows,
    }
    if args.format == "json":
        _emit(json.dumps(result, indent=2), out)
    else:
        _emit(render_table(result), out)
    return EXIT_OK


def cmd_presets(args, out=sys.stdout) -> int:
    for name, spec in PRESETS.items():
        params = ", ".join(
            f"{p.name}={p.default}" + (f" (one of {p.choices})" if p.choices else "") for p in spec.params
        )
        out.write(f"{name:18} {spec.summary}" + (f"  [{params}]" if params else "") + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _common(p):
    p.add_argument("--t", type=_positive_float, default=1.0, help="fibre scale of the twistor metric (default 1)")
    p.add_argument("--tol", type=_positive_float, default=None, help=f"numeric tolerance (default {DEFAULT_TOL}, or ${TOL_ENV_VAR})")
    p.add_argument("--format", choices=("table", "json"), default="table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistormap",
        description="Decide whether the twistor section of a homogeneous almost Hermitian 4-manifold is harmonic or minimal.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="analyse one input file or preset")
    c.add_argument("path", nargs="?", help="JSON input document")
    c.add_argument("--preset", choices=sorted(PRESETS))
    c.add_argument("--eps1", type=int)
    c.add_argument("--eps2", type=int)
    c.add_argument("--phi", type=float, help="angle in radians (kodaira-ak)")
    c.add_argument("--s", type=float, help="parameter s (lie-ak)")
    c.add_argument("--lie-t", dest="lie_t", type=float, help="parameter t of lie-ak (not the fibre scale)")
    c.add_argument("--param", action="append", metavar="NAME=VALUE", help="any preset parameter")
    _common(c)
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("sweep", help="classify a preset over a parameter grid")
    s.add_argument("--preset", required=True)
    s.add_argument(
        "--grid",
        action="append",
        metavar="NAME=VALUES",
        help="comma list 'a,b,c' or 'start:stop:n' (n points, stop excluded); repeat for more axes",
    )
    s.add_argument("--t-grid", help="fibre scales to sweep, same syntax as --grid values")
    s.add_argument("--jobs", type=int, default=1, help="worker threads")
    _common(s)
    s.set_defaults(func=cmd_sweep)

    p = sub.add_parser("presets", help="list built-in presets")
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return args.func(args, out)
    except SpecParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:  # e.g. a malformed tolerance environment variable
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
