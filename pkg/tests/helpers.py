"""Random valid structures for property tests.

Lie algebras come from catalog presets (Jacobi holds exactly) deformed by a
change of frame that is then declared orthonormal.  Deformations commuting
with ``J`` keep an integrable ``J`` integrable; symplectic ones keep
``dOmega = 0``.  Both keep ``J`` itself fixed as a matrix.
"""

import numpy as np

from twistormap.catalog import STANDARD_J, get_preset
from twistormap.curvature import FrameManifold
from twistormap.frame_algebra import K_op, random_selfdual

J0 = STANDARD_J
OMEGA0 = J0.T


def inoue_like(a, b, c):
    """``[E1,E2] = -a E1``, ``[E2,E3] = -b E3 - c E4``, ``[E2,E4] = c E3 - b E4``."""
    return FrameManifold.from_brackets(
        f"inoue-like({a:g},{b:g},{c:g})", {(1, 2): {1: -a}, (2, 3): {3: -b, 4: -c}, (2, 4): {3: c, 4: -b}}
    )


def hopf():
    """``R + su(2)`` with ``E1`` central."""
    return FrameManifold.from_brackets("hopf", {(2, 3): {4: 1.0}, (3, 4): {2: 1.0}, (4, 2): {3: 1.0}})


def cayley_symplectic(rng, size=0.4):
    """Random ``P`` with ``P^T Omega P = Omega`` (Cayley transform of an element of sp)."""
    S = rng.normal(size=(4, 4)) * size
    S = S + S.T
    H = np.linalg.solve(OMEGA0, S)
    eye = np.eye(4)
    P = np.linalg.solve(eye - 0.5 * H, eye + 0.5 * H)
    if np.linalg.cond(P) > 6.0:  # keep structure constants of moderate size
        return cayley_symplectic(rng, size)
    return P


def complex_linear(rng, size=0.4):
    """Random invertible ``P`` commuting with ``J0``."""
    while True:
        X = rng.normal(size=(4, 4))
        X = 0.5 * (X - J0 @ X @ J0)
        P = np.eye(4) + size * X
        if abs(np.linalg.det(P)) > 0.2:
            return P


def random_ak(rng):
    """Almost Kahler ``(M, J0)``, generally not integrable."""
    if rng.random() < 0.5:
        base = get_preset(
            "kodaira-ak", eps1=int(rng.choice([1, -1])), eps2=int(rng.choice([1, -1])), phi=rng.uniform(0, 2 * np.pi)
        ).manifold
    else:
        t = rng.uniform(0.4, 2.0) * rng.choice([1, -1])
        base = get_preset("lie-ak", s=rng.normal(), t=t).manifold
    return base.transformed(cayley_symplectic(rng), name=f"ak~{base.name}"), J0


def random_hermitian(rng):
    """Integrable ``J0`` on a deformed Hermitian preset."""
    k = rng.integers(5)
    if k == 4:
        # keep the semidirect shape; a J-commuting rescaling preserves it
        base = inoue_like(rng.uniform(0.3, 2), rng.normal(), rng.normal())
        a, b = rng.uniform(0.5, 2.0, size=2)
        return base.transformed(np.diag([a, a, b, b]), name=f"herm~{base.name}"), J0
    if k == 0:
        base = get_preset("inoue-s0").manifold
    elif k == 1:
        base = inoue_like(rng.uniform(0.3, 2), rng.normal(), rng.normal())
    elif k == 2:
        base = hopf()
    else:
        # Kodaira nilmanifold with eps1 = eps2 = 1, where J0 is the integrable J
        base = get_preset("kodaira-hermitian").manifold
    return base.transformed(complex_linear(rng), name=f"herm~{base.name}"), J0


def random_any_J(rng):
    """Random orthogonal ``J = K_sigma`` on a deformed catalog algebra (usually Generic)."""
    name = rng.choice(["kodaira-hermitian", "inoue-s0", "lie-ak", "kodaira-ak"])
    base = get_preset(str(name)).manifold
    P = np.eye(4) + 0.3 * rng.normal(size=(4, 4))
    M = base.transformed(P, name=f"gen~{name}")
    sigma = random_selfdual(rng, M.orientation, unit=True)
    return M, K_op(sigma)


def random_structure(rng):
    k = rng.integers(3)
    return (random_ak, random_hermitian, random_any_J)[k](rng)
