"""Levi-Civita connection and curvature of a left-invariant orthonormal frame.

All tensors have constant components in the frame, so derivatives of
components vanish and every covariant derivative reduces to the action of the
connection matrices.

Index conventions (0-based):

* ``c[i, j, k]``      coefficient of ``E_k`` in ``[E_i, E_j]``
* ``gamma[i, j, k]``  coefficient of ``E_k`` in ``nabla_{E_i} E_j``
* ``R[i, j, k, l]``   coefficient of ``E_l`` in ``R(E_i, E_j) E_k``

Curvature uses ``R(X, Y) = nabla_[X,Y] - [nabla_X, nabla_Y]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import JACOBI_TOL
from .errors import NotALieAlgebra, ValidationError
from .frame_algebra import PAIRS, Bivector, Endo4, act_on_bivector, cross


@dataclass(frozen=True)
class FrameManifold:
    """Homogeneous 4-manifold given by structure constants of an orthonormal frame.

    ``orientation`` records whether ``(E_1, .., E_4)`` is positively (+1) or
    negatively (-1) oriented.
    """

    name: str
    c: np.ndarray
    orientation: int = 1

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        if c.shape != (4, 4, 4):
            raise ValidationError(f"structure constants must have shape (4, 4, 4), got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValidationError("structure constants must be finite")
        if not np.allclose(c, -c.transpose(1, 0, 2), rtol=0.0, atol=1e-12):
            raise ValidationError("structure constants are not antisymmetric in (i, j)")
        if self.orientation not in (1, -1):
            raise ValidationError("orientation must be +1 or -1")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @classmethod
    def from_brackets(cls, name, brackets, orientation=1):
        """Build from ``{(i, j): {k: value}}`` with 1-based frame indices.

        Only one of ``(i, j)`` / ``(j, i)`` needs to be given.
        """
        c = np.zeros((4, 4, 4))
        for (i, j), rhs in brackets.items():
            for k, value in rhs.items():
                c[i - 1, j - 1, k - 1] += value
                c[j - 1, i - 1, k - 1] -= value
        return cls(name, c, orientation)

    def bracket(self, x, y) -> np.ndarray:
        """Lie bracket of two left-invariant fields given by constant components."""
        return np.einsum("i,j,ijk->k", x, y, self.c)

    def jacobi_residual(self) -> float:
        # sum over cyclic (i, j, l) of [[E_i, E_j], E_l]
        cc = np.einsum("ijk,klm->ijlm", self.c, self.c)
        total = cc + np.einsum("jlim->ijlm", cc) + np.einsum("lijm->ijlm", cc)
        return float(np.max(np.abs(total)))

    def scale(self) -> float:
        return float(np.max(np.abs(self.c))) if self.c.size else 0.0

    def transformed(self, p, name=None) -> "FrameManifold":
        """Same Lie algebra, new frame ``F_a = sum_i E_i p[i, a]`` declared orthonormal.

        For orthogonal ``p`` this is a change of orthonormal frame of the same
        metric; for general invertible ``p`` it changes the metric.
        """
        p = np.asarray(p, dtype=float)
        pinv = np.linalg.inv(p)
        c = np.einsum("ia,jb,ijk,ck->abc", p, p, self.c, pinv)
        orient = self.orientation * int(np.sign(np.linalg.det(p)))
        return FrameManifold(name or self.name, c, orient)


@dataclass(frozen=True)
class Connection:
    gamma: np.ndarray

    def matrix(self, i: int) -> Endo4:
        """Matrix of ``nabla_{E_i}`` acting on constant component vectors."""
        return self.gamma[i].T.copy()

    def matrices(self) -> np.ndarray:
        """Stack of all four ``nabla_{E_i}`` matrices, shape (4, 4, 4)."""
        return self.gamma.transpose(0, 2, 1).copy()

    def nabla(self, x, y) -> np.ndarray:
        """``nabla_X Y`` for constant-component fields ``X``, ``Y``."""
        return np.einsum("i,j,ijk->k", x, y, self.gamma)

    def torsion_residual(self, manifold: FrameManifold) -> float:
        t = self.gamma - self.gamma.transpose(1, 0, 2) - manifold.c
        return float(np.max(np.abs(t)))

    def metric_residual(self) -> float:
        return float(np.max(np.abs(self.gamma + self.gamma.transpose(0, 2, 1))))


@dataclass
class CurvatureData:
    R: np.ndarray
    ricci: np.ndarray
    s: float
    star_ricci: np.ndarray | None = None
    s_star: float | None = None
    extras: dict = field(default_factory=dict)

    def endo(self, i: int, j: int) -> Endo4:
        """Matrix of ``R(E_i, E_j)`` acting on column vectors."""
        return self.R[i, j].T.copy()

    def apply(self, x, y, z) -> np.ndarray:
        """``R(X, Y) Z``."""
        return np.einsum("i,j,k,ijkl->l", x, y, z, self.R)


def levi_civita(manifold: FrameManifold, jacobi_tol: float = JACOBI_TOL) -> Connection:
    """Koszul formula: ``2 Gamma^k_ij = c^k_ij - c^i_jk + c^j_ki``."""
    resid = manifold.jacobi_residual()
    if resid > jacobi_tol * (1.0 + manifold.scale() ** 2):
        raise NotALieAlgebra(f"Jacobi identity violated (residual {resid:.3e})")
    c = manifold.c
    gamma = 0.5 * (c - np.einsum("jki->ijk", c) + np.einsum("kij->ijk", c))
    return Connection(gamma)


def curvature(manifold: FrameManifold, conn: Connection) -> CurvatureData:
    """Full curvature tensor, Ricci tensor and scalar curvature."""
    G = conn.matrices()
    # R(E_i,E_j) = sum_m c^m_ij nabla_m - (nabla_i nabla_j - nabla_j nabla_i)
    bracket_part = np.einsum("ijm,mab->ijab", manifold.c, G)
    comm = np.einsum("iab,jbc->ijac", G, G)
    endo = bracket_part - (comm - comm.transpose(1, 0, 2, 3))
    # endo[i,j,l,k] is the (l,k) matrix entry, i.e. coefficient of E_l in R(E_i,E_j)E_k
    R = endo.transpose(0, 1, 3, 2)
    rho = ricci(R)
    return CurvatureData(R=R, ricci=rho, s=float(np.trace(rho)))


def curvature_endo(R: np.ndarray, a: Bivector) -> Endo4:
    """``R(a) = sum_{i<j} a^{ij} R(E_i, E_j)`` as a tangent endomorphism."""
    out = np.zeros((4, 4))
    for n, (i, j) in enumerate(PAIRS):
        out += a.components[n] * R[i, j].T
    return out


def curvature_operator(R: np.ndarray) -> np.ndarray:
    """Matrix of the curvature operator on bivectors.

    Returned in the orthonormal basis ``sqrt(2) E_i^E_j`` (``i<j``) so that the
    bivector metric becomes the identity; self-adjointness is then plain
    symmetry.  Use :func:`apply_curvature_operator` to act on a
    :class:`Bivector`.
    """
    # g(Rop(E_i^E_j), E_k^E_l) = g(R(E_i,E_j)E_k, E_l) = R[i,j,k,l]
    # in the basis b_p = sqrt(2) E_i^E_j: <Rop b_p, b_q> = 2 R[i,j,k,l]
    m = np.zeros((6, 6))
    for p, (i, j) in enumerate(PAIRS):
        for q, (k, l) in enumerate(PAIRS):
            m[q, p] = 2.0 * R[i, j, k, l]
    return m


def apply_curvature_operator(R: np.ndarray, a: Bivector) -> Bivector:
    m = curvature_operator(R)
    return Bivector(m @ a.components)


def ricci(R: np.ndarray) -> np.ndarray:
    """``rho(X, Y) = sum_i g(R(X, E_i) Y, E_i)``."""
    return np.einsum("aibi->ab", R)


def star_ricci(R: np.ndarray, J: np.ndarray) -> np.ndarray:
    """``rho*(X, Y) = sum_i g(R(J E_i, X) J Y, E_i)``.

    ``J`` acts on column vectors, so ``J E_i`` is column ``i``.
    """
    # R(JE_i, E_a) J E_b, component along E_i
    return np.einsum("pi,paqi,qb->ab", J, R, J)


def curvature_symmetry_residuals(R: np.ndarray) -> dict:
    """Residuals of antisymmetry, pair symmetry and the first Bianchi identity."""
    anti = R + R.transpose(1, 0, 2, 3)
    pair = R - R.transpose(2, 3, 0, 1)
    bianchi = R + np.einsum("jkil->ijkl", R) + np.einsum("kijl->ijkl", R)
    return {
        "antisymmetry": float(np.max(np.abs(anti))),
        "pair_symmetry": float(np.max(np.abs(pair))),
        "bianchi": float(np.max(np.abs(bianchi))),
    }


def curvature_cross_residual(R: np.ndarray, a: Bivector, b: Bivector, c: Bivector, orientation: int = 1) -> float:
    """``|g(R(a) b, c) - g(Rop(b x c), a)|`` with ``R(a)`` acting as a derivation."""
    lhs = act_on_bivector(curvature_endo(R, a), b).dot(c)
    rhs = apply_curvature_operator(R, cross(b, c, orientation)).dot(a)
    return abs(lhs - rhs)
