import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistormap.errors import NotSelfDual, OrientationError
from twistormap.frame_algebra import (
    PAIRS,
    Bivector,
    K_op,
    act_on_bivector,
    antiselfdual_part,
    bivector_of_skew,
    cross,
    hodge_star,
    is_selfdual,
    permutation_sign,
    random_selfdual,
    selfdual_basis,
    selfdual_part,
    wedge,
)

E = np.eye(4)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_wedge_basis_norm_and_antisymmetry():
    for i, j in PAIRS:
        a = wedge(E[i], E[j])
        assert a.dot(a) == pytest.approx(0.5)
        assert (wedge(E[j], E[i]) + a).norm() == 0.0
    assert wedge(E[0], E[0]).norm() == 0.0


def test_bivector_is_immutable():
    a = Bivector(np.arange(6.0))
    with pytest.raises(AttributeError):
        a.x = 1
    with pytest.raises(ValueError):
        a.components[0] = 5.0


def test_matrix_round_trip():
    a = Bivector([1, 2, 3, 4, 5, 6])
    m = a.matrix
    assert np.allclose(m, -m.T)
    assert Bivector.from_matrix(m).allclose(a)


@pytest.mark.parametrize("orientation", [1, -1])
def test_hodge_star_is_an_involution(orientation):
    a = Bivector(np.random.default_rng(0).normal(size=6))
    assert hodge_star(hodge_star(a, orientation), orientation).allclose(a, 1e-14)
    sd, asd = selfdual_part(a, orientation), antiselfdual_part(a, orientation)
    assert (sd + asd).allclose(a, 1e-14)
    assert abs(sd.dot(asd)) < 1e-14
    assert is_selfdual(sd, orientation)
    assert not is_selfdual(asd, orientation)


def test_hodge_star_orientation_flips_sign():
    a = wedge(E[0], E[1])
    assert hodge_star(a, -1).allclose(-hodge_star(a, 1))
    assert hodge_star(a, 1).allclose(wedge(E[2], E[3]))


@pytest.mark.parametrize("orientation,frame", [(1, (0, 1, 2, 3)), (1, (1, 0, 3, 2)), (-1, (1, 0, 2, 3))])
def test_selfdual_basis_is_orthonormal_and_cyclic(orientation, frame):
    s = selfdual_basis(frame, orientation)
    gram = np.array([[a.dot(b) for b in s] for a in s])
    assert np.allclose(gram, np.eye(3))
    for a in s:
        assert is_selfdual(a, orientation)
    assert cross(s.s1, s.s2, orientation).allclose(s.s3)
    assert cross(s.s2, s.s3, orientation).allclose(s.s1)
    assert cross(s.s3, s.s1, orientation).allclose(s.s2)


def test_selfdual_basis_refuses_odd_frames():
    with pytest.raises(OrientationError):
        selfdual_basis((1, 0, 2, 3), orientation=1)
    with pytest.raises(OrientationError):
        selfdual_basis(np.diag([1.0, 1.0, 1.0, -1.0]))


def test_selfdual_basis_rejects_non_orthonormal_matrix():
    with pytest.raises(ValueError):
        selfdual_basis(np.diag([2.0, 1.0, 1.0, 1.0]))


def test_cross_rejects_anti_self_dual_argument():
    a = wedge(E[0], E[1]) - wedge(E[2], E[3])
    with pytest.raises(NotSelfDual):
        cross(a, selfdual_basis().s1)


@pytest.mark.parametrize(
    "perm,sign", [((0, 1, 2, 3), 1), ((1, 0, 2, 3), -1), ((1, 2, 0, 3), 1), ((3, 2, 1, 0), 1), ((0, 1, 3, 2), -1)]
)
def test_permutation_sign(perm, sign):
    assert permutation_sign(perm) == sign


def test_permutation_sign_rejects_non_permutation():
    with pytest.raises(ValueError):
        permutation_sign((0, 0, 1, 2))


def test_K_of_unit_selfdual_is_a_complex_structure():
    J = K_op(selfdual_basis().s1)
    assert np.allclose(J @ J, -np.eye(4))
    assert np.allclose(J.T @ J, np.eye(4))
    assert bivector_of_skew(J).allclose(selfdual_basis().s1)


@settings(max_examples=100, deadline=None)
@given(seeds, st.sampled_from([1, -1]))
def test_cross_product_properties(seed, orientation):
    rng = np.random.default_rng(seed)
    a, b = random_selfdual(rng, orientation), random_selfdual(rng, orientation)
    c = cross(a, b, orientation)
    assert is_selfdual(c, orientation, tol=1e-12)
    assert abs(c.dot(a)) < 1e-12 and abs(c.dot(b)) < 1e-12
    assert cross(b, a, orientation).allclose(-c, 1e-12)
    assert c.dot(c) == pytest.approx(a.dot(a) * b.dot(b) - a.dot(b) ** 2, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(seeds, st.sampled_from([1, -1]))
def test_K_composition(seed, orientation):
    rng = np.random.default_rng(seed)
    a, b = random_selfdual(rng, orientation), random_selfdual(rng, orientation)
    lhs = K_op(a) @ K_op(b)
    rhs = -a.dot(b) * np.eye(4) + K_op(cross(a, b, orientation))
    assert np.max(np.abs(lhs - rhs)) < 1e-12


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_skew_action_preserves_metric(seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(4, 4))
    A = X - X.T
    a, b = Bivector(rng.normal(size=6)), Bivector(rng.normal(size=6))
    # a skew endomorphism acts as a derivation of the bivector metric
    lhs = act_on_bivector(A, a).dot(b) + a.dot(act_on_bivector(A, b))
    assert abs(lhs) < 1e-12


def test_random_selfdual_unit():
    s = random_selfdual(np.random.default_rng(3), -1, unit=True)
    assert s.norm() == pytest.approx(1.0)
    assert is_selfdual(s, -1)
