"""Every tensor identity on randomized valid structures."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_ak, random_any_J, random_hermitian
from twistormap import analyze, get_preset
from twistormap import identities as ids

seeds = st.integers(min_value=0, max_value=2**32 - 1)
BOUND = 1e-8


def _check_all(a, rng):
    scale = max(1.0, a.manifold.scale()) ** 3
    res = ids.identity_residuals(a, rng)
    bad = {k: v for k, v in res.items() if not v < BOUND * scale}
    assert not bad, (a.manifold.name, bad)
    return res


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_identities_hermitian(seed):
    rng = np.random.default_rng(seed)
    res = _check_all(analyze(*random_hermitian(rng)), rng)
    assert "lee_ricci" in res and "lee_horizontal_tension" in res


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_identities_almost_kahler(seed):
    rng = np.random.default_rng(seed)
    res = _check_all(analyze(*random_ak(rng)), rng)
    assert "symplectic_trace" in res and "symplectic_horizontal_tension" in res


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_identities_generic(seed):
    rng = np.random.default_rng(seed)
    _check_all(analyze(*random_any_J(rng)), rng)


@pytest.mark.parametrize(
    "name,params",
    [
        ("kodaira-hermitian", {"eps1": -1, "eps2": 1}),
        ("kodaira-ak", {"eps1": -1, "eps2": -1, "phi": 2.0}),
        ("lie-ak", {"s": 3.0, "t": 0.5}),
        ("inoue-s0", {}),
        ("flat-torus", {}),
    ],
)
def test_identities_on_presets(name, params):
    p = get_preset(name, **params)
    _check_all(analyze(p.manifold, p.J), np.random.default_rng(0))


def test_adapted_trace_s3_sign():
    """The s3 relation needs ``+rho*(E2,E4)``; with ``-rho*(E2,E4)`` it fails once that entry is non-zero."""
    rng = np.random.default_rng(1)
    worst_literal, worst_fixed = 0.0, 0.0
    for _ in range(20):
        a = analyze(*random_ak(rng))
        parts = ids.symplectic_adapted_trace_parts(a)
        worst_literal = max(worst_literal, parts["s3_literal"])
        worst_fixed = max(worst_fixed, parts["s3"], parts["s2"])
    assert worst_fixed < 1e-9
    assert worst_literal > 1e-3
    # on the catalog presets both forms agree
    for phi in (0.0, 0.7, 2.5):
        p = get_preset("kodaira-ak", phi=phi)
        parts = ids.symplectic_adapted_trace_parts(analyze(p.manifold, p.J))
        assert parts["s3_literal"] < 1e-12 and parts["s3"] < 1e-12


def test_lee_identities_fail_off_class():
    """Sanity check that the Hermitian-only formulas are not vacuous."""
    p = get_preset("kodaira-ak", phi=0.3)
    a = analyze(p.manifold, p.J)
    assert ids.lee_nabla_J_residual(a) > 0.1
