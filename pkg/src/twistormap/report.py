"""Machine-readable reports and their plain-text rendering."""

from __future__ import annotations

import json

import numpy as np

from . import __version__
from .catalog import Preset, compare
from .classifier import Analysis
from .frame_algebra import PAIRS

SCHEMA = "twistormap.report/1"
SWEEP_SCHEMA = "twistormap.sweep/1"
SIG_DIGITS = 15


def num(x) -> float:
    """Round to the report precision (15 significant digits)."""
    return float(f"{float(x):.{SIG_DIGITS}g}") + 0.0


def arr(a):
    a = np.asarray(a, dtype=float)
    if a.ndim == 0:
        return num(a)
    return [arr(x) for x in a]


def _nonzero(values: np.ndarray, tol: float, labels) -> list:
    out = []
    for idx in np.ndindex(values.shape):
        if abs(values[idx]) > tol:
            out.append({**labels(idx), "value": num(values[idx])})
    return out


def _value(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, str):
        return x
    a = np.asarray(x, dtype=float)
    return arr(a)


def build_report(a: Analysis, source: dict, preset: Preset | None = None, tol_source: str = "default") -> dict:
    """Collect everything computed for one input into a JSON-compatible dict."""
    tol = a.tol
    herm, curv = a.herm, a.curv
    one = lambda idx: {"i": idx[0] + 1, "j": idx[1] + 1, "k": idx[2] + 1}  # noqa: E731
    upper = [(i, j) for i, j in PAIRS]
    curvature_rows = []
    for i, j in upper:
        for k in range(4):
            for l in range(4):
                v = curv.R[i, j, k, l]
                if abs(v) > tol:
                    curvature_rows.append({"i": i + 1, "j": j + 1, "k": k + 1, "l": l + 1, "value": num(v)})
    nij_rows = []
    for i, j in upper:
        for k in range(4):
            v = herm.N[i, j, k]
            if abs(v) > tol:
                nij_rows.append({"i": i + 1, "j": j + 1, "k": k + 1, "value": num(v)})
    s_ad = a.s_adapted
    report = {
        "schema": SCHEMA,
        "header": {"t": num(a.ctx.t), "tol": num(tol), "tol_source": tol_source, "version": __version__},
        "input": {
            **source,
            "name": a.manifold.name,
            "orientation": a.manifold.orientation,
            "structure_constants": _nonzero(
                np.triu(np.ones((4, 4)), 1)[:, :, None] * a.manifold.c, 0.0, one
            ),
            "J": arr(herm.J),
        },
        "connection": _nonzero(a.conn.gamma, tol, one),
        "curvature": curvature_rows,
        "ricci": arr(curv.ricci),
        "star_ricci": arr(curv.star_ricci),
        "s": num(curv.s),
        "s_star": num(curv.s_star),
        "theta": arr(herm.theta),
        "B": arr(herm.B),
        "dtheta": arr(herm.dtheta),
        "dtheta_is_11": bool(np.max(np.abs(herm.J.T @ herm.dtheta @ herm.J - herm.dtheta)) < tol * (1 + np.max(np.abs(herm.dtheta)))),
        "nijenhuis": nij_rows,
        "N_space_dimension": a.nspace.dimension,
        "N_s2": arr(a.N_s2),
        "N_s3": arr(a.N_s3),
        "trace_R_N": arr(a.trace_RN),
        "class": herm.structure_class.value,
        "class_flags": {k: bool(v) for k, v in herm.flags.items()},
        "tension": {
            "vertical_s2": num(a.tension.vertical.dot(s_ad.s2)),
            "vertical_s3": num(a.tension.vertical.dot(s_ad.s3)),
            "horizontal": arr(a.tension.horizontal),
        },
        "normal_residual": num(a.normal_residual),
        "verdict": {
            **{k: bool(v) for k, v in a.verdict.flags().items()},
            "method": a.verdict.method,
            "cross_check": bool(a.verdict.cross_check),
            "direct": {k: bool(v) for k, v in a.verdict.direct.items()},
            "theorem": None if a.verdict.theorem is None else {k: bool(v) for k, v in a.verdict.theorem.items()},
            "conditions": [
                {"name": c.name, "value": num(c.value), "threshold": num(c.threshold), "pass": bool(c.passed)}
                for c in a.verdict.conditions
            ],
            "warnings": list(a.verdict.warnings),
        },
    }
    if preset is not None:
        report["expected"] = [
            {
                "key": r.key,
                "expected": _value(r.expected),
                "max_error": num(r.error),
                "pass": bool(r.passed),
                **({"published": _value(r.published), "published_max_error": num(r.published_error)} if r.published is not None else {}),
                **({"note": r.note} if r.note else {}),
            }
            for r in compare(preset, a, tol)
        ]
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)


# ---------------------------------------------------------------- text tables


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        return f"{x:.{SIG_DIGITS}g}"
    if x is None:
        return "-"
    return str(x)


def _is_matrix(v) -> bool:
    return isinstance(v, list) and v and all(isinstance(r, list) for r in v)


def _flat(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    return _fmt(v)


def _rows_table(rows: list, max_cell: int = 48) -> list:
    """Aligned columns; cells longer than ``max_cell`` become numbered footnotes."""
    cols = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    notes = []
    cells = []
    for r in rows:
        row = []
        for c in cols:
            text = _flat(r[c]) if c in r else ""
            if len(text) > max_cell:
                notes.append(f"[{len(notes) + 1}] {r.get(cols[0], '')} {c}: {text}")
                text = f"[{len(notes)}]"
            row.append(text)
        cells.append(row)
    width = [max(len(c), *(len(row[n]) for row in cells)) for n, c in enumerate(cols)]
    lines = ["  " + "  ".join(c.ljust(w) for c, w in zip(cols, width)).rstrip()]
    lines += ["  " + "  ".join(x.ljust(w) for x, w in zip(row, width)).rstrip() for row in cells]
    return lines + ["  " + n for n in notes]


def _render(key: str, value, indent: str = "") -> list:
    if isinstance(value, dict):
        if not value:
            return [f"{indent}{key}: (none)"]
        lines = [f"{indent}{key}:"]
        for k, v in value.items():
            lines += _render(k, v, indent + "  ")
        return lines
    if _is_matrix(value):
        cells = [[_fmt(x) for x in row] for row in value]
        w = max(len(c) for row in cells for c in row)
        return [f"{indent}{key}:"] + [indent + "  " + "  ".join(c.rjust(w) for c in row) for row in cells]
    if isinstance(value, list) and value and all(isinstance(r, dict) for r in value):
        return [f"{indent}{key}:"] + [indent + line for line in _rows_table(value)]
    if isinstance(value, list):
        if not value:
            return [f"{indent}{key}: (none)"]
        return [f"{indent}{key}: " + "  ".join(_flat(x) for x in value)]
    return [f"{indent}{key}: {_fmt(value)}"]


def render_table(report: dict) -> str:
    lines = []
    for key, value in report.items():
        lines += _render(key, value)
        if isinstance(value, dict) or (isinstance(value, list) and value and isinstance(value[0], (list, dict))):
            lines.append("")
    return "\n".join(lines).rstrip() + "\n"
