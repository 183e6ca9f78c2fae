"""Almost Hermitian structures on a frame manifold and the tensors built from them.

``J`` is always a 4x4 matrix acting on column vectors of frame components, so
column ``i`` holds ``J E_i``.  The associated self-dual bivector ``frakJ`` is
defined by ``g(frakJ, X^Y) = 1/2 g(JX, Y)``; by construction ``J = K_frakJ``.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .config import default_tol, is_zero
from .curvature import Connection, CurvatureData, FrameManifold
from .errors import NotAComplexStructure, NotIntegrable, NotOrthogonal, WrongOrientation
from .frame_algebra import PAIRS, Bivector, bivector_of_skew, hodge_star


class StructureClass(str, enum.Enum):
    KAHLER = "Kahler"
    HERMITIAN = "Hermitian"
    ALMOST_KAHLER = "AlmostKahler"
    GENERIC = "Generic"


@dataclass
class HermitianData:
    J: np.ndarray
    Omega: np.ndarray
    frakJ: Bivector
    nablaJ: np.ndarray | None = None
    nabla_frakJ: list | None = None
    N: np.ndarray | None = None
    theta: np.ndarray | None = None
    B: np.ndarray | None = None
    dtheta: np.ndarray | None = None
    dOmega: np.ndarray | None = None
    L: np.ndarray | None = None
    structure_class: StructureClass | None = None
    flags: dict = field(default_factory=dict)


def validate_J(manifold: FrameManifold, J, tol: float | None = None) -> HermitianData:
    """Check that ``J`` is an orientation-compatible orthogonal complex structure.

    Raises:
        NotAComplexStructure: ``J^2 != -Id``.
        NotOrthogonal: ``J^T J != Id``.
        WrongOrientation: ``frakJ`` is not self-dual for the manifold's orientation.
    """
    tol = default_tol() if tol is None else tol
    J = np.array(J, dtype=float)
    if J.shape != (4, 4):
        raise NotAComplexStructure(f"J must be 4x4, got shape {J.shape}")
    if not np.all(np.isfinite(J)):
        raise NotAComplexStructure("J has non-finite entries")
    if np.max(np.abs(J @ J + np.eye(4))) > tol * 10:
        raise NotAComplexStructure("J^2 != -Id")
    if np.max(np.abs(J.T @ J - np.eye(4))) > tol * 10:
        raise NotOrthogonal("J is not orthogonal")
    omega = fundamental_form(J)
    frak = frak_J(J)
    if (hodge_star(frak, manifold.orientation) - frak).norm() > tol * 10:
        raise WrongOrientation("frakJ is not self-dual for the chosen orientation")
    J.setflags(write=False)
    return HermitianData(J=J, Omega=omega, frakJ=frak)


def fundamental_form(J) -> np.ndarray:
    """``Omega[a, b] = g(J E_a, E_b)``."""
    return np.asarray(J, dtype=float).T.copy()


def frak_J(J) -> Bivector:
    """``m^{ij} = g(J E_i, E_j)``; equivalently ``K_frakJ = J``."""
    return bivector_of_skew(J)


def nabla_J(conn: Connection, J) -> np.ndarray:
    """Stack of matrices ``(nabla_{E_i} J)``, shape (4, 4, 4)."""
    G = conn.matrices()
    return np.einsum("iab,bc->iac", G, J) - np.einsum("ab,ibc->iac", J, G)


def nabla_frakJ(conn: Connection, frak: Bivector) -> list:
    """``nabla_{E_i} frakJ`` via ``nabla_X(Y^Z) = nabla_X Y ^ Z + Y ^ nabla_X Z``."""
    m = frak.matrix
    out = []
    for i in range(4):
        G = conn.matrix(i)
        out.append(Bivector.from_matrix(G @ m + m @ G.T))
    return out


def nijenhuis(manifold: FrameManifold, J) -> np.ndarray:
    """``N[i, j]`` = components of ``N(E_i, E_j)``.

    ``N(Y, Z) = -[Y, Z] + [JY, JZ] - J[Y, JZ] - J[JY, Z]``.
    """
    J = np.asarray(J, dtype=float)
    c = manifold.c
    JJ = np.einsum("ai,bj,abk->ijk", J, J, c)  # [J E_i, J E_j]
    YJ = np.einsum("bj,ibk->ijk", J, c)  # [E_i, J E_j]
    JY = np.einsum("ai,ajk->ijk", J, c)  # [J E_i, E_j]
    return -c + JJ - np.einsum("lk,ijk->ijl", J, YJ + JY)


def nijenhuis_bivector(N: np.ndarray, a: Bivector) -> np.ndarray:
    """Induced map on bivectors: ``N(a) = sum_{i<j} a^{ij} N(E_i, E_j)``."""
    out = np.zeros(4)
    for n, (i, j) in enumerate(PAIRS):
        out += a.components[n] * N[i, j]
    return out


def nabla_two_form(conn: Connection, form: np.ndarray) -> np.ndarray:
    """``(nabla_{E_i} w)(E_a, E_b)`` for a constant-component 2-form ``w``."""
    G = conn.matrices()
    # (nabla_i w)(Y,Z) = -w(nabla_i Y, Z) - w(Y, nabla_i Z)
    return -(np.einsum("ica,cb->iab", G, form) + np.einsum("ac,icb->iab", form, G))


def lee_form(conn: Connection, Omega: np.ndarray, J) -> tuple:
    """Lee form ``theta = -(delta Omega) o J`` and its dual vector ``B``.

    ``(delta Omega)(X) = -sum_i (nabla_{E_i} Omega)(E_i, X)``.
    """
    J = np.asarray(J, dtype=float)
    nO = nabla_two_form(conn, Omega)
    delta = -np.einsum("iix->x", nO)
    theta = -J.T @ delta
    return theta, theta.copy()


def d_theta(manifold: FrameManifold, theta) -> np.ndarray:
    """``d theta(E_i, E_j) = -theta([E_i, E_j])`` for constant components."""
    return -np.einsum("ijk,k->ij", manifold.c, theta)


def is_one_one(dtheta, J, tol: float | None = None, scale: float = 0.0) -> bool:
    """Type (1,1) test: ``dtheta(JX, JY) == dtheta(X, Y)`` on all frame pairs."""
    tol = default_tol() if tol is None else tol
    J = np.asarray(J, dtype=float)
    return is_zero(J.T @ dtheta @ J - dtheta, tol, scale)


def d_omega(manifold: FrameManifold, Omega: np.ndarray) -> np.ndarray:
    """``dOmega(X,Y,Z) = -Omega([X,Y],Z) - Omega([Y,Z],X) - Omega([Z,X],Y)``."""
    t = np.einsum("ijm,mk->ijk", manifold.c, Omega)
    return -(t + np.einsum("jki->ijk", t) + np.einsum("kij->ijk", t))


def lee_hessian(conn: Connection, theta) -> np.ndarray:
    """``(nabla_{E_i} theta)(E_j) = -theta(nabla_{E_i} E_j)``."""
    return -np.einsum("ijk,k->ij", conn.gamma, theta)


def L_tensor(conn: Connection, theta) -> np.ndarray:
    """``L(X, Y) = (nabla_X theta)(Y) + 1/2 theta(X) theta(Y)``."""
    theta = np.asarray(theta, dtype=float)
    return lee_hessian(conn, theta) + 0.5 * np.outer(theta, theta)


def classify_structure(nablaJ, N, dOmega, tol: float | None = None, scales=None) -> tuple:
    """Return ``(StructureClass, flags)``.

    Kahler is tested first since it is both integrable and symplectic.
    ``scales`` maps ``"nablaJ"``, ``"N"``, ``"dOmega"`` to the magnitudes fed
    into the scale-free zero test.
    """
    tol = default_tol() if tol is None else tol
    scales = scales or {}
    kahler = is_zero(nablaJ, tol, scales.get("nablaJ", 0.0))
    integrable = is_zero(N, tol, scales.get("N", 0.0))
    symplectic = is_zero(dOmega, tol, scales.get("dOmega", 0.0))
    flags = {"kahler": kahler, "integrable": integrable, "symplectic": symplectic}
    if kahler:
        cls = StructureClass.KAHLER
    elif integrable:
        cls = StructureClass.HERMITIAN
    elif symplectic:
        cls = StructureClass.ALMOST_KAHLER
    else:
        cls = StructureClass.GENERIC
    return cls, flags


def lee_ricci_residual(rho, rho_star, L, s, s_star, J) -> float:
    """Max residual of ``rho - rho* = 1/2 [L(JX,JY) - L(X,Y)] + (s - s*)/4 g``.

    Meaningful for integrable ``J`` only; see :func:`lee_ricci_check`.
    """
    J = np.asarray(J, dtype=float)
    lhs = rho - rho_star
    rhs = 0.5 * (J.T @ L @ J - L) + 0.25 * (s - s_star) * np.eye(4)
    return float(np.max(np.abs(lhs - rhs)))


def lee_ricci_check(rho, rho_star, L, s, s_star, J, structure_class) -> float:
    if structure_class not in (StructureClass.HERMITIAN, StructureClass.KAHLER):
        raise NotIntegrable(f"identity requires an integrable J, class is {structure_class.value}")
    return lee_ricci_residual(rho, rho_star, L, s, s_star, J)


def integrability_via_nablaJ(nablaJ, J, tol: float | None = None, scale: float = 0.0) -> bool:
    """``(nabla_X J) Y == (nabla_{JX} J)(JY)`` on all frame pairs."""
    tol = default_tol() if tol is None else tol
    J = np.asarray(J, dtype=float)
    # (nabla_{JX} J) = sum_i (JX)^i nabla_i J
    lhs = nablaJ  # [x] matrix; column y is (nabla_x J) E_y
    rhs = np.einsum("ix,iab,bc->xac", J, nablaJ, J)
    return is_zero(lhs - rhs, tol, scale)


def nabla_J_formula_residual(nablaJ, dOmega, N, J) -> float:
    """``2 g((nabla_X J)Y, Z) = dOmega(X,Y,Z) - dOmega(X,JY,JZ) + g(N(Y,Z), JX)``."""
    J = np.asarray(J, dtype=float)
    lhs = 2.0 * np.einsum("xzy->xyz", nablaJ)
    dO_twisted = np.einsum("xbc,by,cz->xyz", dOmega, J, J)
    nterm = np.einsum("yzk,kx->xyz", N, J)
    return float(np.max(np.abs(lhs - (dOmega - dO_twisted + nterm))))


def hermitian_data(manifold: FrameManifold, conn: Connection, J, tol: float | None = None) -> HermitianData:
    """Validate ``J`` and fill in every derived tensor and the structure class."""
    tol = default_tol() if tol is None else tol
    h = validate_J(manifold, J, tol)
    nJ = nabla_J(conn, h.J)
    nfrak = nabla_frakJ(conn, h.frakJ)
    N = nijenhuis(manifold, h.J)
    theta, B = lee_form(conn, h.Omega, h.J)
    dth = d_theta(manifold, theta)
    dO = d_omega(manifold, h.Omega)
    L = L_tensor(conn, theta)
    c_scale = manifold.scale()
    g_scale = float(np.max(np.abs(conn.gamma)))
    cls, flags = classify_structure(
        nJ, N, dO, tol, {"nablaJ": g_scale, "N": c_scale, "dOmega": c_scale}
    )
    flags["integrable_via_nablaJ"] = integrability_via_nablaJ(nJ, h.J, tol, g_scale)
    if flags["integrable_via_nablaJ"] != flags["integrable"]:
        warnings.warn("integrability tests disagree (Nijenhuis vs nabla J)", RuntimeWarning)
    return replace(
        h,
        nablaJ=nJ,
        nabla_frakJ=nfrak,
        N=N,
        theta=theta,
        B=B,
        dtheta=dth,
        dOmega=dO,
        L=L,
        structure_class=cls,
        flags=flags,
    )


def attach_star_ricci(curv: CurvatureData, J) -> CurvatureData:
    from .curvature import star_ricci

    rs = star_ricci(curv.R, np.asarray(J, dtype=float))
    return replace(curv, star_ricci=rs, s_star=float(np.trace(rs)))
