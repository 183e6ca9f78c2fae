import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import hopf, inoue_like, random_any_J
from twistormap.curvature import (
    FrameManifold,
    apply_curvature_operator,
    curvature,
    curvature_cross_residual,
    curvature_endo,
    curvature_operator,
    curvature_symmetry_residuals,
    levi_civita,
    ricci,
)
from twistormap.errors import NotALieAlgebra, ValidationError
from twistormap.frame_algebra import PAIRS, Bivector, random_selfdual, wedge

seeds = st.integers(min_value=0, max_value=2**32 - 1)
E = np.eye(4)


def test_manifold_validation():
    with pytest.raises(ValidationError):
        FrameManifold("bad", np.zeros((3, 4, 4)))
    c = np.zeros((4, 4, 4))
    c[0, 1, 2] = 1.0
    with pytest.raises(ValidationError, match="antisymmetric"):
        FrameManifold("bad", c)
    with pytest.raises(ValidationError):
        FrameManifold("bad", np.zeros((4, 4, 4)), orientation=2)
    c = np.zeros((4, 4, 4))
    c[0, 1, 2] = np.nan
    with pytest.raises(ValidationError, match="finite"):
        FrameManifold("bad", c)


def test_structure_constants_are_read_only():
    M = hopf()
    with pytest.raises(ValueError):
        M.c[0, 0, 0] = 1.0


def test_bracket_matches_constants():
    M = inoue_like(1.0, 0.5, 0.25)
    assert np.allclose(M.bracket(E[0], E[1]), [-1.0, 0, 0, 0])
    assert np.allclose(M.bracket(E[1], E[2]), [0, 0, -0.5, -0.25])


def test_non_lie_algebra_rejected():
    # [E1,E2] = E1, [E1,E3] = E2: the cyclic sum on (E1,E2,E3) is -E2
    M = FrameManifold.from_brackets("broken", {(1, 2): {1: 1.0}, (1, 3): {2: 1.0}})
    assert M.jacobi_residual() > 0.1
    with pytest.raises(NotALieAlgebra):
        levi_civita(M)


def test_flat_torus():
    M = FrameManifold("torus", np.zeros((4, 4, 4)))
    conn = levi_civita(M)
    assert np.all(conn.gamma == 0)
    assert np.all(curvature(M, conn).R == 0)


def test_round_three_sphere_factor():
    # R x su(2) with [E_i, E_j] = E_k: the S^3 factor has sectional curvature 1/4
    M = hopf()
    curv = curvature(M, levi_civita(M))
    assert np.allclose(curv.ricci, np.diag([0.0, 0.5, 0.5, 0.5]))
    assert curv.s == pytest.approx(1.5)
    # with R(X,Y) = nabla_[X,Y] - [nabla_X, nabla_Y] the sectional curvature is g(R(X,Y)X, Y)
    assert curv.R[1, 2, 1, 2] == pytest.approx(0.25)
    assert np.all(curv.R[0] == 0)


def test_curvature_operator_matches_tensor():
    M = inoue_like(1.0, 0.7, 0.3)
    R = curvature(M, levi_civita(M)).R
    op = curvature_operator(R)
    assert np.allclose(op, op.T)
    for i, j in PAIRS:
        rop = apply_curvature_operator(R, wedge(E[i], E[j]))
        for k, l in PAIRS:
            assert rop.dot(wedge(E[k], E[l])) == pytest.approx(R[i, j, k, l], abs=1e-14)
        # the endomorphism R(E_i, E_j) sends E_k to sum_l R[i,j,k,l] E_l
        assert np.allclose(curvature_endo(R, wedge(E[i], E[j])), R[i, j].T)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_levi_civita_and_curvature_identities(seed):
    rng = np.random.default_rng(seed)
    M, _ = random_any_J(rng)
    conn = levi_civita(M)
    scale = max(1.0, M.scale()) ** 2
    assert conn.torsion_residual(M) < 1e-10 * scale
    assert conn.metric_residual() < 1e-10 * scale
    curv = curvature(M, conn)
    for name, value in curvature_symmetry_residuals(curv.R).items():
        assert value < 1e-9 * scale**2, name
    assert np.allclose(curv.ricci, curv.ricci.T, atol=1e-9 * scale**2)
    assert np.allclose(ricci(curv.R), curv.ricci)
    a = Bivector(rng.normal(size=6))
    b, c = random_selfdual(rng, M.orientation), random_selfdual(rng, M.orientation)
    assert curvature_cross_residual(curv.R, a, b, c, M.orientation) < 1e-9 * scale**2


def test_orthogonal_change_of_frame_preserves_scalar_curvature():
    rng = np.random.default_rng(5)
    M = inoue_like(1.2, -0.4, 0.9)
    Q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    M2 = M.transformed(Q)
    s1 = curvature(M, levi_civita(M)).s
    s2 = curvature(M2, levi_civita(M2)).s
    assert s1 == pytest.approx(s2, abs=1e-12)
    assert M2.orientation == int(np.sign(np.linalg.det(Q)))
