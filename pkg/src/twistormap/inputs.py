"""Reading a manifold + complex structure description from a JSON document.

Document layout::

    {
      "name": "optional label",
      "structure_constants": [{"i": 1, "j": 2, "k": 4, "c": -2.0}, ...],
      "J": [[...4 numbers...], ... 4 rows ...],
      "orientation": 1,
      "tolerance": 1e-9
    }

An entry ``{"i", "j", "k", "c"}`` means ``[E_i, E_j]`` has ``E_k`` coefficient
``c`` (1-based).  The partner ``[E_j, E_i]`` is filled in automatically and
must not be listed separately.  ``J`` is the matrix of the endomorphism in the
frame, given row by row: ``J[a][b]`` is the ``E_a`` component of ``J E_b``.
``tolerance`` may be a number or ``{"tol": ..., "jacobi": ...}``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .config import JACOBI_TOL
from .curvature import FrameManifold
from .errors import SpecParseError

_KNOWN_KEYS = {"name", "structure_constants", "J", "orientation", "tolerance"}


@dataclass
class InputSpec:
    name: str
    manifold: FrameManifold
    J: np.ndarray
    tol: float | None = None
    jacobi_tol: float = JACOBI_TOL
    entries: list | None = None


def _number(value, where) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecParseError(f"expected a number, got {value!r}", where)
    v = float(value)
    if not math.isfinite(v):
        raise SpecParseError("number must be finite", where)
    return v


def _index(value, where) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecParseError(f"expected an integer frame index 1..4, got {value!r}", where)
    if not 1 <= value <= 4:
        raise SpecParseError(f"frame index must be between 1 and 4, got {value}", where)
    return value


def _positive(value, where) -> float:
    v = _number(value, where)
    if v <= 0:
        raise SpecParseError(f"tolerance must be positive, got {v}", where)
    return v


def parse_document(doc, source: str = "<input>") -> InputSpec:
    """Turn an already-decoded JSON object into an :class:`InputSpec`.

    Raises :class:`SpecParseError` for structural problems; mathematical
    validity (Jacobi identity, ``J`` checks) is left to the pipeline.
    """
    if not isinstance(doc, dict):
        raise SpecParseError("top level must be an object", source)
    unknown = set(doc) - _KNOWN_KEYS
    if unknown:
        raise SpecParseError(f"unknown field(s) {sorted(unknown)}", source)
    for key in ("structure_constants", "J"):
        if key not in doc:
            raise SpecParseError(f"missing required field {key!r}", source)

    name = doc.get("name", source)
    if not isinstance(name, str):
        raise SpecParseError("must be a string", "name")

    raw = doc["structure_constants"]
    if not isinstance(raw, list):
        raise SpecParseError("must be a list of {i, j, k, c} objects", "structure_constants")
    c = np.zeros((4, 4, 4))
    seen = {}
    entries = []
    for n, item in enumerate(raw):
        where = f"structure_constants[{n}]"
        if not isinstance(item, dict):
            raise SpecParseError("entry must be an object with keys i, j, k, c", where)
        missing = {"i", "j", "k", "c"} - set(item)
        if missing:
            raise SpecParseError(f"missing key(s) {sorted(missing)}", where)
        extra = set(item) - {"i", "j", "k", "c"}
        if extra:
            raise SpecParseError(f"unknown key(s) {sorted(extra)}", where)
        i = _index(item["i"], f"{where}.i")
        j = _index(item["j"], f"{where}.j")
        k = _index(item["k"], f"{where}.k")
        val = _number(item["c"], f"{where}.c")
        if i == j:
            raise SpecParseError("[E_i, E_i] is zero; i and j must differ", where)
        slot = (min(i, j), max(i, j), k)
        if slot in seen:
            raise SpecParseError(
                f"coefficient of E_{k} in [E_{slot[0]}, E_{slot[1]}] already given by entry {seen[slot]}", where
            )
        seen[slot] = n
        c[i - 1, j - 1, k - 1] = val
        c[j - 1, i - 1, k - 1] = -val
        entries.append({"i": i, "j": j, "k": k, "c": val})

    rows = doc["J"]
    if not isinstance(rows, list) or len(rows) != 4:
        raise SpecParseError("must be a list of 4 rows", "J")
    J = np.zeros((4, 4))
    for a, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 4:
            raise SpecParseError("row must hold 4 numbers", f"J[{a}]")
        for b, v in enumerate(row):
            J[a, b] = _number(v, f"J[{a}][{b}]")

    orientation = doc.get("orientation", 1)
    if orientation not in (1, -1) or isinstance(orientation, bool):
        raise SpecParseError(f"must be 1 or -1, got {orientation!r}", "orientation")

    tol, jacobi = None, JACOBI_TOL
    if "tolerance" in doc:
        t = doc["tolerance"]
        if isinstance(t, dict):
            extra = set(t) - {"tol", "jacobi"}
            if extra:
                raise SpecParseError(f"unknown key(s) {sorted(extra)}", "tolerance")
            if "tol" in t:
                tol = _positive(t["tol"], "tolerance.tol")
            if "jacobi" in t:
                jacobi = _positive(t["jacobi"], "tolerance.jacobi")
        else:
            tol = _positive(t, "tolerance")

    manifold = FrameManifold(name, c, int(orientation))
    return InputSpec(name=name, manifold=manifold, J=J, tol=tol, jacobi_tol=jacobi, entries=entries)


def parse_text(text: str, source: str = "<input>") -> InputSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from exc
    return parse_document(doc, source)


def load(path) -> InputSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecParseError(f"cannot read file ({exc.strerror})", str(path)) from exc
    return parse_text(text, str(path))


def to_document(manifold: FrameManifold, J, tol: float | None = None) -> dict:
    """Inverse of :func:`parse_document` (entries with ``i < j`` only)."""
    sc = []
    for i in range(4):
        for j in range(i + 1, 4):
            for k in range(4):
                v = float(manifold.c[i, j, k])
                if v != 0.0:
                    sc.append({"i": i + 1, "j": j + 1, "k": k + 1, "c": v})
    doc = {
        "name": manifold.name,
        "structure_constants": sc,
        "J": np.asarray(J, dtype=float).tolist(),
        "orientation": manifold.orientation,
    }
    if tol is not None:
        doc["tolerance"] = tol
    return doc
