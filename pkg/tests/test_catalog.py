import math

import numpy as np
import pytest

from twistormap import PRESETS, analyze, compare, get_preset
from twistormap.catalog import STANDARD_J, kodaira_adapted_frame, kodaira_almost_kahler_J_on_A, observed
from twistormap.errors import BadParameter


def _grid():
    cases = [("kodaira-hermitian", {"eps1": a, "eps2": b}) for a in (1, -1) for b in (1, -1)]
    cases += [
        ("kodaira-ak", {"eps1": a, "eps2": b, "phi": 2 * math.pi * k / 8}) for a in (1, -1) for b in (1, -1) for k in range(8)
    ]
    cases += [("lie-ak", {"s": s, "t": t}) for s, t in [(0, 2), (1, 1), (2, -1), (3, 0.5), (-0.4, 1.7)]]
    cases += [("inoue-s0", {}), ("flat-torus", {})]
    return cases


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("name,params", _grid(), ids=lambda v: str(v))
def test_expected_tables_match(name, params, t):
    p = get_preset(name, **params)
    rows = compare(p, analyze(p.manifold, p.J, t=t))
    failed = [(r.key, r.error) for r in rows if not r.passed]
    assert not failed


def test_presets_registry():
    assert set(PRESETS) == {"kodaira-hermitian", "kodaira-ak", "lie-ak", "inoue-s0", "flat-torus"}
    for name, spec in PRESETS.items():
        assert spec.summary
        p = spec.build()
        assert p.name == name
        assert p.expected


@pytest.mark.parametrize(
    "name,params",
    [
        ("nope", {}),
        ("kodaira-hermitian", {"eps1": 2}),
        ("kodaira-hermitian", {"eps1": "x"}),
        ("kodaira-ak", {"phi": "inf"}),
        ("lie-ak", {"t": 0}),
        ("lie-ak", {"bogus": 1}),
    ],
)
def test_bad_parameters(name, params):
    with pytest.raises(BadParameter):
        get_preset(name, **params)


def test_string_parameters_are_coerced():
    p = get_preset("kodaira-ak", eps1="-1", eps2="1", phi="0.5")
    assert p.params == {"eps1": -1, "eps2": 1, "phi": 0.5}


def test_published_values_kept_beside_corrections():
    p = get_preset("kodaira-hermitian", eps1=1, eps2=-1)
    b = next(e for e in p.expected if e.key == "B")
    assert b.published is not None and b.note
    assert not np.allclose(b.published, b.value)
    lie = get_preset("lie-ak", s=2, t=-1)
    curv = next(e for e in lie.expected if e.key == "curvature")
    assert curv.note and not np.allclose(curv.published, curv.value)
    same = get_preset("lie-ak", s=1, t=1)
    curv = next(e for e in same.expected if e.key == "curvature")
    assert np.allclose(curv.published, curv.value)


def test_kodaira_ak_J_in_both_frames():
    for e1 in (1, -1):
        for e2 in (1, -1):
            for phi in (0.0, 0.9, 4.0):
                JA = kodaira_almost_kahler_J_on_A(e1, e2, phi)
                P = kodaira_adapted_frame(e1, e2, phi)
                assert np.allclose(JA @ JA, -np.eye(4))
                assert np.allclose(P.T @ P, np.eye(4))
                assert np.allclose(P.T @ JA @ P, STANDARD_J)


def test_observed_unknown_key():
    p = get_preset("flat-torus")
    with pytest.raises(KeyError):
        observed(p, analyze(p.manifold, p.J), "nothing")


def test_lambda_observable():
    p = get_preset("lie-ak", s=3, t=0.5)
    assert observed(p, analyze(p.manifold, p.J), "lambda") == pytest.approx(9.25)
