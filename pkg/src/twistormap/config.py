"""Tolerance defaults.

The numeric tolerance used by every predicate can be overridden globally with
the ``TWISTORMAP_TOL`` environment variable; explicit ``tol=`` arguments always
win over it.
"""

import os

import numpy as np

TOL_ENV_VAR = "TWISTORMAP_TOL"

#: default tolerance for "is this tensor zero" style predicates
DEFAULT_TOL = 1e-9
#: tolerance for validating input structure constants (Jacobi identity)
JACOBI_TOL = 1e-8
#: below this the Gram matrix of the tangent span is declared singular
GRAM_SINGULAR_TOL = 1e-12


def default_tol():
    """Return the tolerance in effect, honouring ``TWISTORMAP_TOL``."""
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValueError(f"{TOL_ENV_VAR}={raw!r} is not a number") from exc
    if not value > 0:
        raise ValueError(f"{TOL_ENV_VAR} must be positive, got {value}")
    return value


def is_zero(values, tol, scale=0.0):
    """Scale-free zero test: ``max|values| < tol * (1 + scale)``."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return True
    return float(np.max(np.abs(arr))) < tol * (1.0 + abs(float(scale)))
