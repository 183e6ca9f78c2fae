"""Residuals of tensor identities that every valid structure must satisfy.

Each function returns the maximum absolute violation over the frame, so a
correct pipeline gives values at rounding level.  Functions taking an
:class:`~twistormap.classifier.Analysis` read the tensors already computed
there; :func:`identity_residuals` picks the ones that apply to the structure
class.
"""

from __future__ import annotations

import numpy as np

from .curvature import curvature_endo, curvature_symmetry_residuals
from .frame_algebra import PAIRS, Bivector, K_op, cross, hodge_star, wedge
from .hermitian import StructureClass, lee_ricci_residual, nabla_J_formula_residual, nijenhuis_bivector
from .twistor import trace_second_cov


def _maxabs(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.max(np.abs(x))) if x.size else 0.0


def k_composition_residual(a: Bivector, b: Bivector, orientation: int = 1) -> float:
    """``K_a K_b = -g(a, b) Id + K_{a x b}`` for self-dual ``a``, ``b``."""
    lhs = K_op(a) @ K_op(b)
    rhs = -a.dot(b) * np.eye(4) + K_op(cross(a, b, orientation))
    return _maxabs(lhs - rhs)


def star_ricci_twist_residual(star_ricci, J) -> float:
    """``rho*(JX, JY) = rho*(Y, X)``."""
    J = np.asarray(J, dtype=float)
    return _maxabs(J.T @ star_ricci @ J - star_ricci.T)


def nijenhuis_J_residual(N, J) -> float:
    """``N(JX, Y) = N(X, JY) = -J N(X, Y)``."""
    J = np.asarray(J, dtype=float)
    NJx = np.einsum("ax,ayk->xyk", J, N)  # N(J E_x, E_y)
    NJy = np.einsum("by,xbk->xyk", J, N)  # N(E_x, J E_y)
    JN = np.einsum("kl,xyl->xyk", J, N)
    return max(_maxabs(NJx - NJy), _maxabs(NJy + JN))


def nijenhuis_kernel_residual(N, frak: Bivector, orientation: int = 1) -> float:
    """``N`` vanishes on anti-self-dual bivectors and on ``frakJ``."""
    worst = _maxabs(nijenhuis_bivector(N, frak))
    for i, j in PAIRS:
        e = wedge(np.eye(4)[i], np.eye(4)[j])
        asd = 0.5 * (e - hodge_star(e, orientation))
        worst = max(worst, _maxabs(nijenhuis_bivector(N, asd)))
    return worst


def frakJ_unit_residual(analysis) -> float:
    """``*frakJ = frakJ``, ``|frakJ| = 1`` and ``g(nabla_X frakJ, frakJ) = 0``."""
    h = analysis.herm
    o = analysis.manifold.orientation
    worst = max((hodge_star(h.frakJ, o) - h.frakJ).norm(), abs(h.frakJ.norm() - 1.0))
    for b in h.nabla_frakJ:
        worst = max(worst, abs(b.dot(h.frakJ)))
    return worst


def nabla_frakJ_half_residual(analysis) -> float:
    """``g(nabla_X frakJ, Y ^ Z) = 1/2 g((nabla_X J) Y, Z)``."""
    h = analysis.herm
    worst = 0.0
    for x in range(4):
        m = h.nabla_frakJ[x].matrix  # m[y, z] = 2 g(nabla_x frakJ, E_y ^ E_z)
        worst = max(worst, _maxabs(0.5 * m - 0.5 * h.nablaJ[x].T))
    return worst


def second_cov_orthogonality_residual(analysis) -> float:
    """``g(nabla^2_{Y X} frakJ, frakJ) = -g(nabla_X frakJ, nabla_Y frakJ)``."""
    h = analysis.herm
    second = analysis.second_cov
    worst = 0.0
    for x in range(4):
        for y in range(4):
            lhs = second[y][x].dot(h.frakJ)
            rhs = -h.nabla_frakJ[x].dot(h.nabla_frakJ[y])
            worst = max(worst, abs(lhs - rhs))
    return worst


def tilde_symmetry_residual(analysis) -> float:
    worst = 0.0
    for i in range(4):
        for j in range(4):
            u, v = analysis.tilde[i][j], analysis.tilde[j][i]
            worst = max(worst, _maxabs(u.horizontal - v.horizontal), _maxabs((u.vertical - v.vertical).components))
    return worst


def tilde_trace_residual(analysis) -> float:
    """The trace of the second fundamental quantity is the tension field."""
    tr = analysis.tilde[0][0]
    for i in range(1, 4):
        tr = tr + analysis.tilde[i][i]
    tau = analysis.tension
    return max(_maxabs(tr.horizontal - tau.horizontal), _maxabs((tr.vertical - tau.vertical).components))


def curvature_cross_identity(analysis, rng, samples: int = 5) -> float:
    """``g(R(a) b, c) = g(Rop(b x c), a)`` for random ``a`` and self-dual ``b``, ``c``."""
    from .curvature import curvature_cross_residual
    from .frame_algebra import random_selfdual

    o = analysis.manifold.orientation
    worst = 0.0
    for _ in range(samples):
        a = Bivector(rng.normal(size=6))
        b = random_selfdual(rng, o)
        c = random_selfdual(rng, o)
        worst = max(worst, curvature_cross_residual(analysis.curv.R, a, b, c, o))
    return worst


# ---------------------------------------------------------------- integrable J


def lee_nabla_J_residual(analysis) -> float:
    """``2 (nabla_X J) Y = g(JX, Y) B - g(B, Y) JX + g(X, Y) JB - g(JB, Y) X``."""
    h = analysis.herm
    J, B = h.J, h.B
    JB = J @ B
    eye = np.eye(4)
    worst = 0.0
    for x in range(4):
        for y in range(4):
            X, Y = eye[x], eye[y]
            lhs = 2.0 * h.nablaJ[x] @ Y
            rhs = (J @ X) @ Y * B - B @ Y * (J @ X) + X @ Y * JB - JB @ Y * X
            worst = max(worst, _maxabs(lhs - rhs))
    return worst


def lee_nabla_frakJ_residual(analysis) -> float:
    """``nabla_X frakJ = 1/2 (JX ^ B + X ^ JB)``."""
    h = analysis.herm
    J, B = h.J, h.B
    eye = np.eye(4)
    worst = 0.0
    for x in range(4):
        X = eye[x]
        rhs = 0.5 * (wedge(J @ X, B) + wedge(X, J @ B))
        worst = max(worst, _maxabs((h.nabla_frakJ[x] - rhs).components))
    return worst


def lee_second_cov_residual(analysis) -> float:
    """``nabla^2_{XY} frakJ = 1/2 [(nabla_X J)Y ^ B + Y ^ (nabla_X J)B + JY ^ nabla_X B + Y ^ J nabla_X B]``."""
    h = analysis.herm
    conn = analysis.conn
    J, B = h.J, h.B
    eye = np.eye(4)
    worst = 0.0
    for x in range(4):
        nB = conn.nabla(eye[x], B)
        for y in range(4):
            Y = eye[y]
            rhs = 0.5 * (
                wedge(h.nablaJ[x] @ Y, B) + wedge(Y, h.nablaJ[x] @ B) + wedge(J @ Y, nB) + wedge(Y, J @ nB)
            )
            worst = max(worst, _maxabs((analysis.second_cov[x][y] - rhs).components))
    return worst


def lee_trace_residual(analysis) -> float:
    """``4 g(Trace nabla^2 frakJ, X^Y) = -dtheta(JX,Y) - dtheta(X,JY) + |B|^2 g(X,JY)``."""
    h = analysis.herm
    J, dth = h.J, h.dtheta
    tr = trace_second_cov(analysis.conn, h.nabla_frakJ).matrix  # tr[x,y] = 2 g(Tr, E_x^E_y)
    rhs = -(J.T @ dth) - dth @ J + float(h.B @ h.B) * J
    return _maxabs(2.0 * tr - rhs)


def lee_vertical_trace_residual(analysis) -> float:
    """``4 g(V Trace nabla^2 frakJ, X^Y) = -dtheta(JX,Y) - dtheta(X,JY)``."""
    h = analysis.herm
    J, dth = h.J, h.dtheta
    v = analysis.tension.vertical.matrix
    return _maxabs(2.0 * v - (-(J.T @ dth) - dth @ J))


def lee_horizontal_tension_residual(analysis) -> float:
    """Horizontal tension equals ``t/2 (rho - rho*)(., B)``."""
    h, c = analysis.herm, analysis.curv
    rhs = 0.5 * analysis.ctx.t * (c.ricci - c.star_ricci) @ h.B
    return _maxabs(analysis.tension.horizontal - rhs)


def cross_nabla_integrable_residual(analysis) -> float:
    """``frakJ x nabla_X frakJ = nabla_{JX} frakJ`` for integrable ``J``."""
    h = analysis.herm
    o = analysis.manifold.orientation
    comps = np.array([b.components for b in h.nabla_frakJ])
    worst = 0.0
    for x in range(4):
        lhs = cross(h.frakJ, h.nabla_frakJ[x], o).components
        worst = max(worst, _maxabs(lhs - h.J[:, x] @ comps))
    return worst


def lee_ricci_identity(analysis) -> float:
    h, c = analysis.herm, analysis.curv
    return lee_ricci_residual(c.ricci, c.star_ricci, h.L, c.s, c.s_star, h.J)


def dOmega_lee_residual(analysis) -> float:
    """``dOmega = theta ^ Omega`` (3-form components)."""
    h = analysis.herm
    th, Om = h.theta, h.Omega
    wedge3 = (
        np.einsum("i,jk->ijk", th, Om) + np.einsum("j,ki->ijk", th, Om) + np.einsum("k,ij->ijk", th, Om)
    )
    return _maxabs(h.dOmega - wedge3)


# ---------------------------------------------------------------- symplectic J


def symplectic_trace_residual(analysis) -> float:
    """``2 g(Trace nabla^2 frakJ, X^Y) = rho(Y,JX) - rho(X,JY) + 2 rho*(X,JY)``."""
    h, c = analysis.herm, analysis.curv
    J = h.J
    tr = trace_second_cov(analysis.conn, h.nabla_frakJ).matrix
    rho, rs = c.ricci, c.star_ricci
    rhs = (rho @ J).T - rho @ J + 2.0 * rs @ J
    return _maxabs(tr - rhs)


def symplectic_adapted_trace_parts(analysis) -> dict:
    """Trace components in the adapted frame ``(E1, JE1, E3, JE3)``.

    ``s2``: ``g(Tr, s2) - (rho*_14 - rho*_41)``.
    ``s3``: ``g(Tr, s3) - (rho*_31 - rho*_13)``, equivalently with ``-rho*_13 + rho*_24``.
    ``s3_literal``: the same with ``-rho*_13 - rho*_24``, which is right only
    when ``rho*_24`` vanishes.
    """
    h = analysis.herm
    F = analysis.adapted_frame
    rs = F.T @ analysis.curv.star_ricci @ F
    tr = trace_second_cov(analysis.conn, h.nabla_frakJ)
    s = analysis.s_adapted
    g2, g3 = tr.dot(s.s2), tr.dot(s.s3)
    return {
        "s2": abs(g2 - (rs[0, 3] - rs[3, 0])),
        "s3": abs(g3 - (-rs[0, 2] + rs[1, 3])),
        "s3_literal": abs(g3 - (-rs[0, 2] - rs[1, 3])),
    }


def symplectic_adapted_trace_residual(analysis, literal: bool = False) -> float:
    parts = symplectic_adapted_trace_parts(analysis)
    return max(parts["s2"], parts["s3_literal" if literal else "s3"])


def symplectic_nabla_frakJ_residual(analysis) -> float:
    """``g(nabla_X frakJ, a) = 1/4 g(N(a), JX)`` for ``a`` in the frame pairs."""
    h = analysis.herm
    worst = 0.0
    for x in range(4):
        JX = h.J[:, x]
        for i, j in PAIRS:
            a = wedge(np.eye(4)[i], np.eye(4)[j])
            worst = max(worst, abs(h.nabla_frakJ[x].dot(a) - 0.25 * nijenhuis_bivector(h.N, a) @ JX))
    return worst


def symplectic_horizontal_tension_residual(analysis) -> float:
    """``4 (horizontal tension) = -t Trace{tau -> R(tau) N(tau)}``."""
    return _maxabs(4.0 * analysis.tension.horizontal + analysis.ctx.t * analysis.trace_RN)


def cross_nabla_symplectic_residual(analysis) -> float:
    """``nabla_{JX} frakJ = -frakJ x nabla_X frakJ`` for symplectic ``J``."""
    h = analysis.herm
    o = analysis.manifold.orientation
    comps = np.array([b.components for b in h.nabla_frakJ])
    worst = 0.0
    for x in range(4):
        lhs = cross(h.frakJ, h.nabla_frakJ[x], o).components
        worst = max(worst, _maxabs(lhs + h.J[:, x] @ comps))
    return worst


def nspace_residual(analysis) -> float:
    """``N(Lambda^2_0)`` is ``J``-invariant of dimension 0 or 2 (returns distance from invariance)."""
    ns = analysis.nspace
    if ns.dimension not in (0, 2):
        return float("inf")
    if ns.dimension == 0:
        return 0.0
    return max(ns.residual(analysis.herm.J @ v) for v in ns.basis)


# ---------------------------------------------------------------- dispatcher


def identity_residuals(analysis, rng=None) -> dict:
    """All identities applicable to ``analysis``'s structure class."""
    c, h = analysis.curv, analysis.herm
    out = {}
    sym = curvature_symmetry_residuals(c.R)
    out.update({f"curvature_{k}": v for k, v in sym.items()})
    out["torsion"] = analysis.conn.torsion_residual(analysis.manifold)
    out["metric_compatibility"] = analysis.conn.metric_residual()
    out["ricci_symmetric"] = _maxabs(c.ricci - c.ricci.T)
    out["star_ricci_twist"] = star_ricci_twist_residual(c.star_ricci, h.J)
    out["nabla_J_formula"] = nabla_J_formula_residual(h.nablaJ, h.dOmega, h.N, h.J)
    out["nijenhuis_J"] = nijenhuis_J_residual(h.N, h.J)
    out["nijenhuis_kernel"] = nijenhuis_kernel_residual(h.N, h.frakJ, analysis.manifold.orientation)
    out["frakJ_unit"] = frakJ_unit_residual(analysis)
    out["nabla_frakJ_half"] = nabla_frakJ_half_residual(analysis)
    out["second_cov_orthogonality"] = second_cov_orthogonality_residual(analysis)
    out["tilde_symmetry"] = tilde_symmetry_residual(analysis)
    out["tilde_trace"] = tilde_trace_residual(analysis)
    out["nspace_J_invariant"] = nspace_residual(analysis)
    if rng is not None:
        out["curvature_cross"] = curvature_cross_identity(analysis, rng)
        o = analysis.manifold.orientation
        from .frame_algebra import random_selfdual

        out["k_composition"] = k_composition_residual(random_selfdual(rng, o), random_selfdual(rng, o), o)
    cls = h.structure_class
    if cls in (StructureClass.HERMITIAN, StructureClass.KAHLER):
        out["lee_nabla_J"] = lee_nabla_J_residual(analysis)
        out["lee_nabla_frakJ"] = lee_nabla_frakJ_residual(analysis)
        out["lee_second_cov"] = lee_second_cov_residual(analysis)
        out["lee_trace"] = lee_trace_residual(analysis)
        out["lee_vertical_trace"] = lee_vertical_trace_residual(analysis)
        out["lee_horizontal_tension"] = lee_horizontal_tension_residual(analysis)
        out["lee_ricci"] = lee_ricci_identity(analysis)
        out["dOmega_lee"] = dOmega_lee_residual(analysis)
        out["cross_nabla_integrable"] = cross_nabla_integrable_residual(analysis)
    if cls in (StructureClass.ALMOST_KAHLER, StructureClass.KAHLER):
        out["symplectic_trace"] = symplectic_trace_residual(analysis)
        out["symplectic_adapted_trace"] = symplectic_adapted_trace_residual(analysis)
        out["symplectic_nabla_frakJ"] = symplectic_nabla_frakJ_residual(analysis)
        out["symplectic_horizontal_tension"] = symplectic_horizontal_tension_residual(analysis)
        out["cross_nabla_symplectic"] = cross_nabla_symplectic_residual(analysis)
    return out
