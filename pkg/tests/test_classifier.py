import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import hopf, inoue_like, J0, random_structure
from twistormap import DEFAULT_TOL, TOL_ENV_VAR, analyze, get_preset
from twistormap.classifier import adapted_frame, j_invariant_ricci_shortcut, n_space
from twistormap.errors import ValidationError

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_adapted_frame():
    rng = np.random.default_rng(0)
    Q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    J = Q @ J0 @ Q.T
    F = adapted_frame(J)
    assert np.allclose(F.T @ F, np.eye(4))
    assert np.allclose(F[:, 1], J @ F[:, 0]) and np.allclose(F[:, 3], J @ F[:, 2])
    assert np.allclose(F[:, 0], [1, 0, 0, 0])


def test_n_space_dimensions():
    assert n_space(np.zeros(4), np.zeros(4), 1e-9).dimension == 0
    ns = n_space(np.array([1.0, 0, 0, 0]), np.array([0, 1.0, 0, 0]), 1e-9)
    assert ns.dimension == 2
    assert ns.residual([3.0, -2.0, 0, 0]) < 1e-12
    assert ns.residual([0, 0, 1.0, 0]) == pytest.approx(1.0)


def test_n_space_rank_one_warns():
    with pytest.warns(RuntimeWarning, match="rank"):
        ns = n_space(np.array([1.0, 0, 0, 0]), np.array([2.0, 0, 0, 0]), 1e-9)
    assert ns.numerical_rank == 1


def test_ricci_shortcut():
    assert j_invariant_ricci_shortcut(np.eye(4), J0)
    assert not j_invariant_ricci_shortcut(np.diag([1.0, 0, 0, 0]), J0)


@pytest.mark.parametrize(
    "name,params,flags",
    [
        ("kodaira-hermitian", {}, (True, True, True, False)),
        ("kodaira-ak", {"phi": 1.0}, (True, True, True, False)),
        ("lie-ak", {"s": 1.0, "t": 1.0}, (True, True, True, None)),
        ("inoue-s0", {}, (True, False, True, None)),
        ("flat-torus", {}, (True, True, True, True)),
    ],
)
def test_preset_verdicts(name, params, flags):
    p = get_preset(name, **params)
    v = analyze(p.manifold, p.J).verdict
    got = (v.harmonic_section, v.harmonic_map, v.minimal, v.totally_geodesic)
    for g, want in zip(got, flags):
        if want is not None:
            assert g is want
    assert v.cross_check
    assert v.conditions
    assert v.method


def test_hopf_verdicts_agree():
    a = analyze(hopf(), J0)
    assert a.verdict.cross_check
    assert not a.verdict.warnings


def test_inoue_like_family_is_section_and_minimal():
    for abc in [(1.0, 0.5, 0.0), (0.7, -1.3, 0.4)]:
        a = analyze(inoue_like(*abc), J0)
        v = a.verdict
        assert v.harmonic_section and v.minimal and v.cross_check


def test_tolerance_from_environment(monkeypatch):
    p = get_preset("inoue-s0")
    monkeypatch.setenv(TOL_ENV_VAR, "1e-6")
    assert analyze(p.manifold, p.J).tol == 1e-6
    assert analyze(p.manifold, p.J, tol=1e-11).tol == 1e-11
    monkeypatch.setenv(TOL_ENV_VAR, "zero")
    with pytest.raises(ValueError):
        analyze(p.manifold, p.J)
    monkeypatch.delenv(TOL_ENV_VAR)
    assert analyze(p.manifold, p.J).tol == DEFAULT_TOL


def test_bad_t_rejected():
    p = get_preset("flat-torus")
    with pytest.raises(ValidationError):
        analyze(p.manifold, p.J, t=0.0)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_verdicts_consistent_on_random_structures(seed):
    rng = np.random.default_rng(seed)
    M, J = random_structure(rng)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        a = analyze(M, J, t=float(rng.choice([0.5, 1.0, 2.0])))
    v = a.verdict
    assert v.cross_check, (M.name, v.direct, v.theorem)
    assert v.implication_chain_ok()
    assert a.nspace.dimension in (0, 2)
    for c in v.conditions:
        assert c.passed == (c.value <= c.threshold) or c.passed == (c.value < c.threshold)
