"""Tangent calculus of the twistor space along the section frakJ.

A tangent vector of the twistor space at ``sigma = frakJ(p)`` is represented
extrinsically as a pair ``(horizontal, vertical)``: a tangent vector of ``M``
(identified with its horizontal lift at ``sigma``) and a self-dual bivector
orthogonal to ``sigma``.  The metric is
``h_t(X^h + V, Y^h + W) = g(X, Y) + t g(V, W)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import GRAM_SINGULAR_TOL, default_tol
from .curvature import Connection, curvature_endo
from .errors import BasepointMismatch, DegenerateSpan, ValidationError
from .frame_algebra import Bivector, SelfDualTriple, act_on_bivector, cross


@dataclass(frozen=True)
class TwistorContext:
    t: float
    basepoint: Bivector
    orientation: int = 1
    tol: float = 1e-9

    def __post_init__(self):
        if not (np.isfinite(self.t) and self.t > 0):
            raise ValidationError(f"fibre scale t must be positive, got {self.t}")


@dataclass(frozen=True)
class TwistorVec:
    horizontal: np.ndarray
    vertical: Bivector
    basepoint: Bivector

    def __add__(self, other):
        _same_base(self, other)
        return TwistorVec(self.horizontal + other.horizontal, self.vertical + other.vertical, self.basepoint)

    def __sub__(self, other):
        _same_base(self, other)
        return TwistorVec(self.horizontal - other.horizontal, self.vertical - other.vertical, self.basepoint)

    def __mul__(self, scalar):
        return TwistorVec(float(scalar) * self.horizontal, float(scalar) * self.vertical, self.basepoint)

    __rmul__ = __mul__

    def as_array(self, t: float) -> np.ndarray:
        """Coordinates in which ``h_t`` is the Euclidean inner product."""
        return np.concatenate([self.horizontal, np.sqrt(0.5 * t) * self.vertical.components])


def _same_base(u: TwistorVec, v: TwistorVec, atol: float = 1e-9):
    if not u.basepoint.allclose(v.basepoint, atol=atol):
        raise BasepointMismatch("twistor vectors live at different points")


def h_t(ctx: TwistorContext, u: TwistorVec, v: TwistorVec) -> float:
    _same_base(u, v)
    if not u.basepoint.allclose(ctx.basepoint, atol=1e-9):
        raise BasepointMismatch("vectors are not based at the context basepoint")
    return float(u.horizontal @ v.horizontal) + ctx.t * u.vertical.dot(v.vertical)


def h_norm(ctx: TwistorContext, v: TwistorVec) -> float:
    return float(np.sqrt(max(h_t(ctx, v, v), 0.0)))


def covariant_derivative_bivector(conn: Connection, X, a: Bivector) -> Bivector:
    """``nabla_X a`` for a bivector field with constant frame components."""
    G = np.einsum("i,iab->ab", np.asarray(X, dtype=float), conn.matrices())
    return act_on_bivector(G, a)


def horizontal_lift_coeffs(conn: Connection, s_frame: SelfDualTriple, X, sigma: Bivector) -> np.ndarray:
    """Fibre velocity of the horizontal lift of ``X`` at ``sigma``.

    In the fibre coordinates ``y_j = g(sigma, s_j)`` the lift has
    ``dy_k = -sum_j y_j g(nabla_X s_j, s_k)``.
    """
    y = s_frame.coordinates(sigma)
    ds = [covariant_derivative_bivector(conn, X, s) for s in s_frame]
    m = np.array([[ds[j].dot(s_frame[k]) for k in range(3)] for j in range(3)])
    return -(y @ m)


def second_cov_frakJ(conn: Connection, nabla_frak: list, i: int, j: int) -> Bivector:
    """``nabla^2_{E_i E_j} frakJ = nabla_{E_i} nabla_{E_j} frakJ - nabla_{nabla_{E_i} E_j} frakJ``."""
    outer = act_on_bivector(conn.matrix(i), nabla_frak[j])
    comps = np.array([b.components for b in nabla_frak])
    return Bivector(outer.components - conn.gamma[i, j] @ comps)


def second_cov_table(conn: Connection, nabla_frak: list) -> list:
    """All sixteen ``nabla^2_{E_i E_j} frakJ`` as a nested list ``[i][j]``."""
    return [[second_cov_frakJ(conn, nabla_frak, i, j) for j in range(4)] for i in range(4)]


def trace_second_cov(conn: Connection, nabla_frak: list) -> Bivector:
    total = Bivector.zero()
    for i in range(4):
        total = total + second_cov_frakJ(conn, nabla_frak, i, i)
    return total


def vertical_projection(a: Bivector, sigma: Bivector) -> Bivector:
    """Remove the ``sigma`` component (``sigma`` is a unit vector)."""
    return a - a.dot(sigma) * sigma


def curvature_twists(R, frak: Bivector, nabla_frak: list, orientation: int) -> list:
    """``R(frakJ x nabla_{E_i} frakJ)`` as endomorphisms, ``i = 1..4``."""
    return [curvature_endo(R, cross(frak, nabla_frak[i], orientation)) for i in range(4)]


def tilde_nabla_frakJ(
    ctx: TwistorContext, conn: Connection, R, nabla_frak: list, i: int, j: int, second=None, twists=None
) -> TwistorVec:
    """Second fundamental quantity of the map ``frakJ`` on the pair ``(E_i, E_j)``.

    ``second`` and ``twists`` accept the outputs of :func:`second_cov_table`
    and :func:`curvature_twists` to avoid recomputation.
    """
    frak = ctx.basepoint
    if second is None:
        a = second_cov_frakJ(conn, nabla_frak, i, j)
        b = second_cov_frakJ(conn, nabla_frak, j, i)
    else:
        a, b = second[i][j], second[j][i]
    if twists is None:
        ti = curvature_endo(R, cross(frak, nabla_frak[i], ctx.orientation))
        tj = curvature_endo(R, cross(frak, nabla_frak[j], ctx.orientation))
    else:
        ti, tj = twists[i], twists[j]
    vert = 0.5 * (vertical_projection(a, frak) + vertical_projection(b, frak))
    horiz = -0.5 * ctx.t * (ti[:, j] + tj[:, i])
    return TwistorVec(horiz, vert, frak)


def tension(ctx: TwistorContext, conn: Connection, R, nabla_frak: list, twists=None) -> TwistorVec:
    """Trace of :func:`tilde_nabla_frakJ` over the orthonormal frame.

    Vertical part ``V Trace nabla^2 frakJ``; horizontal part
    ``-t sum_i R(frakJ x nabla_{E_i} frakJ) E_i``.
    """
    frak = ctx.basepoint
    if twists is None:
        twists = curvature_twists(R, frak, nabla_frak, ctx.orientation)
    vert = vertical_projection(trace_second_cov(conn, nabla_frak), frak)
    horiz = sum(twists[i][:, i] for i in range(4))
    return TwistorVec(-ctx.t * horiz, vert, frak)


def tangent_span(ctx: TwistorContext, nabla_frak: list) -> list:
    """``frakJ_* E_i = (E_i)^h + nabla_{E_i} frakJ`` for ``i = 1..4``."""
    return [TwistorVec(np.eye(4)[i], nabla_frak[i], ctx.basepoint) for i in range(4)]


def normal_component(ctx: TwistorContext, v: TwistorVec, nabla_frak: list) -> TwistorVec:
    span = tangent_span(ctx, nabla_frak)
    for a in span:
        _same_base(a, v)
    V = np.array([a.as_array(ctx.t) for a in span])
    gram = V @ V.T
    if abs(np.linalg.det(gram)) < GRAM_SINGULAR_TOL:
        raise DegenerateSpan("tangent span of frakJ(M) is degenerate")
    coeff = np.linalg.solve(gram, V @ v.as_array(ctx.t))
    horiz = coeff @ np.array([a.horizontal for a in span])
    vert = coeff @ np.array([a.vertical.components for a in span])
    return v - TwistorVec(horiz, Bivector(vert), ctx.basepoint)


def normal_residual(ctx: TwistorContext, v: TwistorVec, nabla_frak: list) -> float:
    """``h_t``-norm of the component of ``v`` normal to ``frakJ(M)``."""
    return h_norm(ctx, normal_component(ctx, v, nabla_frak))


def make_context(t: float, frak: Bivector, orientation: int = 1, tol: float | None = None) -> TwistorContext:
    return TwistorContext(float(t), frak, orientation, default_tol() if tol is None else tol)
