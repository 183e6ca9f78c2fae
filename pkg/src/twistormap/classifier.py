"""Harmonicity / minimality verdicts for the map frakJ: (M, g) -> (Z, h_t).

Two independent routes are evaluated for every input:

* the *theorem route* uses only Riemannian and Hermitian invariants (Lee form,
  Ricci and star-Ricci tensors, Nijenhuis tensor) and is available for the
  Kahler, Hermitian and almost Kahler classes;
* the *direct route* evaluates the tension field and its component normal to
  ``frakJ(M)`` in the twistor space.

The verdict reports the theorem route when it exists and records whether the
two agree.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

from .config import JACOBI_TOL, default_tol, is_zero
from .curvature import Connection, CurvatureData, FrameManifold, curvature, curvature_endo, levi_civita
from .frame_algebra import SelfDualTriple, selfdual_basis
from .hermitian import HermitianData, StructureClass, attach_star_ricci, hermitian_data, nijenhuis_bivector
from .twistor import (
    TwistorContext,
    TwistorVec,
    h_norm,
    make_context,
    normal_residual,
    curvature_twists,
    second_cov_table,
    tension,
    tilde_nabla_frakJ,
)

log = logging.getLogger(__name__)


@dataclass
class Condition:
    name: str
    value: float
    threshold: float
    passed: bool

    def as_dict(self):
        return {"name": self.name, "value": self.value, "threshold": self.threshold, "pass": self.passed}


@dataclass
class Verdict:
    harmonic_section: bool
    harmonic_map: bool
    minimal: bool
    totally_geodesic: bool
    conditions: list
    method: str
    cross_check: bool
    direct: dict = field(default_factory=dict)
    theorem: dict | None = None
    warnings: list = field(default_factory=list)

    def __post_init__(self):
        for name in ("harmonic_section", "harmonic_map", "minimal", "totally_geodesic", "cross_check"):
            setattr(self, name, bool(getattr(self, name)))

    def implication_chain_ok(self) -> bool:
        ok = True
        if self.totally_geodesic:
            ok &= self.harmonic_map
        if self.harmonic_map:
            ok &= self.harmonic_section and self.minimal
        return bool(ok)

    def flags(self) -> dict:
        return {
            "harmonic_section": self.harmonic_section,
            "harmonic_map": self.harmonic_map,
            "minimal": self.minimal,
            "totally_geodesic": self.totally_geodesic,
        }


@dataclass
class NSpace:
    """``N(Lambda^2_0)``: image of the Nijenhuis map, dimension 0 or 2."""

    basis: np.ndarray
    numerical_rank: int

    @property
    def dimension(self) -> int:
        return int(self.basis.shape[0])

    def residual(self, v) -> float:
        """Distance from ``v`` to the subspace."""
        v = np.asarray(v, dtype=float)
        if self.dimension == 0:
            return float(np.linalg.norm(v))
        q = self.basis
        return float(np.linalg.norm(v - q.T @ (q @ v)))


@dataclass
class Analysis:
    """Everything computed for one ``(M, J, t)``."""

    manifold: FrameManifold
    conn: Connection
    curv: CurvatureData
    herm: HermitianData
    ctx: TwistorContext
    adapted_frame: np.ndarray
    s_adapted: SelfDualTriple
    N_s2: np.ndarray
    N_s3: np.ndarray
    trace_RN: np.ndarray
    nspace: NSpace
    tension: TwistorVec
    normal_residual: float
    tilde: list
    verdict: Verdict | None = None
    tol: float = 1e-9
    second_cov: list | None = None

    @property
    def structure_class(self) -> StructureClass:
        return self.herm.structure_class


def adapted_frame(J) -> np.ndarray:
    """Orthonormal frame ``(F1, J F1, F3, J F3)`` with ``F1 = E1`` (columns).

    ``F3`` is the normalised projection of the first standard basis vector
    whose component orthogonal to ``{F1, J F1}`` has norm above 1/2.
    """
    J = np.asarray(J, dtype=float)
    f1 = np.eye(4)[0]
    f2 = J @ f1
    f3 = None
    for k in range(4):
        e = np.eye(4)[k]
        w = e - (e @ f1) * f1 - (e @ f2) * f2
        if np.linalg.norm(w) > 0.5:
            f3 = w / np.linalg.norm(w)
            break
    if f3 is None:  # cannot happen: the complement is 2-dimensional
        raise RuntimeError("no standard basis vector leaves the span of {E1, JE1}")
    f4 = J @ f3
    return np.column_stack([f1, f2, f3, f4])


def trace_R_of_N(R, N, s_frame: SelfDualTriple) -> np.ndarray:
    """``Trace{tau -> R(tau) N(tau)}`` over the orthonormal basis ``{s2, s3}``."""
    total = np.zeros(4)
    for s in (s_frame.s2, s_frame.s3):
        total += curvature_endo(R, s) @ nijenhuis_bivector(N, s)
    return total


def n_space(N_s2, N_s3, tol: float, scale: float = 0.0) -> NSpace:
    m = np.vstack([N_s2, N_s3])
    u, sv, vt = np.linalg.svd(m)
    thresh = tol * (1.0 + scale)
    rank = int(np.sum(sv > thresh))
    if rank == 1:
        msg = "numerical rank of N(Lambda^2_0) is 1; expected 0 or 2"
        warnings.warn(msg, RuntimeWarning)
        log.warning(msg)
    return NSpace(basis=vt[:rank], numerical_rank=rank)


def j_invariant_ricci_shortcut(rho, J, tol: float | None = None) -> bool:
    """Whether ``rho(JX, JY) == rho(X, Y)``.

    For integrable ``J`` this forces ``frakJ`` to be a minimal imbedding and a
    harmonic section; :func:`classify` checks that implication.
    """
    tol = default_tol() if tol is None else tol
    J = np.asarray(J, dtype=float)
    rho = np.asarray(rho, dtype=float)
    return is_zero(J.T @ rho @ J - rho, tol, float(np.max(np.abs(rho))))


def analyze(
    manifold: FrameManifold, J, t: float = 1.0, tol: float | None = None, jacobi_tol: float = JACOBI_TOL
) -> Analysis:
    """Run the full pipeline and classify."""
    tol = default_tol() if tol is None else tol
    conn = levi_civita(manifold, jacobi_tol)
    curv = curvature(manifold, conn)
    herm = hermitian_data(manifold, conn, J, tol)
    curv = attach_star_ricci(curv, herm.J)
    ctx = make_context(t, herm.frakJ, manifold.orientation, tol)
    frame = adapted_frame(herm.J)
    s_ad = selfdual_basis(frame, manifold.orientation)
    N_s2 = nijenhuis_bivector(herm.N, s_ad.s2)
    N_s3 = nijenhuis_bivector(herm.N, s_ad.s3)
    trace_rn = trace_R_of_N(curv.R, herm.N, s_ad)
    nsp = n_space(N_s2, N_s3, tol, manifold.scale())
    twists = curvature_twists(curv.R, herm.frakJ, herm.nabla_frakJ, manifold.orientation)
    second = second_cov_table(conn, herm.nabla_frakJ)
    tau = tension(ctx, conn, curv.R, herm.nabla_frakJ, twists)
    nres = normal_residual(ctx, tau, herm.nabla_frakJ)
    tilde = [
        [tilde_nabla_frakJ(ctx, conn, curv.R, herm.nabla_frakJ, i, j, second, twists) for j in range(4)]
        for i in range(4)
    ]
    result = Analysis(
        manifold=manifold,
        conn=conn,
        curv=curv,
        herm=herm,
        ctx=ctx,
        adapted_frame=frame,
        s_adapted=s_ad,
        N_s2=N_s2,
        N_s3=N_s3,
        trace_RN=trace_rn,
        nspace=nsp,
        tension=tau,
        normal_residual=nres,
        tilde=tilde,
        tol=tol,
        second_cov=second,
    )
    result.verdict = classify(result)
    return result


def _magnitude(*arrays) -> float:
    vals = [float(np.max(np.abs(np.asarray(a, dtype=float)))) for a in arrays if np.size(a)]
    return max(vals) if vals else 0.0


def _cond(name, values, tol, scale) -> Condition:
    value = _magnitude(values)
    threshold = tol * (1.0 + scale)
    return Condition(name, value, threshold, value < threshold)


def direct_route(a: Analysis) -> tuple:
    """Booleans and conditions from the tension field itself."""
    tol, t = a.tol, a.ctx.t
    nf = a.herm.nabla_frakJ
    second = a.second_cov if a.second_cov is not None else second_cov_table(a.conn, nf)
    v_scale = _magnitude(*[second[i][j].components for i in range(4) for j in range(4)])
    h_scale = t * _magnitude(a.curv.R) * max(_magnitude(*[b.components for b in nf]), 1e-300) * 4.0
    scale = max(v_scale * max(np.sqrt(t), 1.0), h_scale)
    conds = [
        _cond("tension_vertical", a.tension.vertical.components, tol, v_scale),
        _cond("tension_horizontal", a.tension.horizontal, tol, h_scale),
        Condition("normal_residual", a.normal_residual, tol * (1.0 + scale), a.normal_residual < tol * (1.0 + scale)),
    ]
    tg_value = max(h_norm(a.ctx, a.tilde[i][j]) for i in range(4) for j in range(4))
    conds.append(Condition("tilde_nabla_max", tg_value, tol * (1.0 + scale), tg_value < tol * (1.0 + scale)))
    flags = {
        "harmonic_section": conds[0].passed,
        "harmonic_map": conds[0].passed and conds[1].passed,
        "minimal": conds[2].passed,
        "totally_geodesic": conds[3].passed,
    }
    return flags, conds


def theorem_route(a: Analysis) -> tuple:
    """Booleans from the invariant conditions, or ``(None, [])`` for the generic class."""
    cls = a.herm.structure_class
    tol = a.tol
    J = a.herm.J
    rho, rho_s = a.curv.ricci, a.curv.star_ricci
    conds = []
    if cls == StructureClass.KAHLER:
        flags = {"harmonic_section": True, "harmonic_map": True, "minimal": True}
        return flags, conds
    if cls == StructureClass.HERMITIAN:
        dth = a.herm.dtheta
        c11 = _cond("dtheta_is_(1,1)", J.T @ dth @ J - dth, tol, _magnitude(dth))
        B = a.herm.B
        w = (rho - rho_s) @ B
        w_scale = _magnitude(rho, rho_s) * max(1.0, float(np.linalg.norm(B)))
        c_rb = _cond("rho(X,B)=rho*(X,B) all X", w, tol, w_scale)
        conds += [c11, c_rb]
        if float(np.linalg.norm(B)) < tol:
            conds.append(Condition("B_is_zero", float(np.linalg.norm(B)), tol, True))
            minimal = c11.passed
        else:
            b = B / np.linalg.norm(B)
            jb = J @ b
            w_perp = w - (w @ b) * b - (w @ jb) * jb
            c_perp = _cond("rho(X,B)=rho*(X,B) X perp {B,JB}", w_perp, tol, w_scale)
            conds.append(c_perp)
            minimal = c11.passed and c_perp.passed
        flags = {
            "harmonic_section": c11.passed,
            "harmonic_map": c11.passed and c_rb.passed,
            "minimal": minimal,
        }
        return flags, conds
    if cls == StructureClass.ALMOST_KAHLER:
        c_sym = _cond("rho*_symmetric", rho_s - rho_s.T, tol, _magnitude(rho_s))
        tr_scale = _magnitude(a.curv.R) * max(_magnitude(a.N_s2, a.N_s3), 1e-300) * 4.0
        c_tr = _cond("trace_R(tau)N(tau)=0", a.trace_RN, tol, tr_scale)
        # the horizontal tension is orthogonal to the normal directions iff the
        # trace vector is orthogonal to N(Lambda^2_0)
        if a.nspace.dimension == 0:
            perp = a.trace_RN
        else:
            q = a.nspace.basis
            perp = q @ a.trace_RN
        c_n = _cond("trace_R(tau)N(tau) perp N_p", perp, tol, tr_scale)
        conds += [c_sym, c_tr, c_n]
        flags = {
            "harmonic_section": c_sym.passed,
            "harmonic_map": c_sym.passed and c_tr.passed,
            "minimal": c_sym.passed and c_n.passed,
        }
        return flags, conds
    return None, conds


def classify(a: Analysis) -> Verdict:
    direct, d_conds = direct_route(a)
    theorem, t_conds = theorem_route(a)
    notes = []
    if theorem is None:
        method = "direct"
        chosen = direct
        agree = True
    else:
        method = "theorem"
        chosen = theorem
        agree = all(theorem[k] == direct[k] for k in ("harmonic_section", "harmonic_map", "minimal"))
        if not agree:
            notes.append("theorem and direct routes disagree")
    cls = a.herm.structure_class
    if cls in (StructureClass.HERMITIAN, StructureClass.KAHLER) and j_invariant_ricci_shortcut(a.curv.ricci, a.herm.J, a.tol):
        if not (chosen["minimal"] and chosen["harmonic_section"]):
            notes.append("J-invariant Ricci tensor but verdict is not minimal harmonic section")
    verdict = Verdict(
        harmonic_section=chosen["harmonic_section"],
        harmonic_map=chosen["harmonic_map"],
        minimal=chosen["minimal"],
        totally_geodesic=direct["totally_geodesic"],
        conditions=t_conds + d_conds,
        method=method,
        cross_check=agree,
        direct=direct,
        theorem=theorem,
        warnings=notes,
    )
    if not verdict.implication_chain_ok():
        verdict.warnings.append("verdict implication chain violated")
    for n in verdict.warnings:
        log.warning(n)
    return verdict
