"""Built-in homogeneous examples with their reference value tables.

Each preset bundles a :class:`FrameManifold`, a complex structure ``J`` (as a
matrix acting on frame column vectors), the self-dual frame in which its
fibre coordinates are written, and a list of :class:`Expected` entries.  An
entry holds the value the pipeline should reproduce; when a published value
differs from it, that value is kept in ``published`` together with a note so
that reports can show both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .curvature import FrameManifold
from .errors import BadParameter
from .frame_algebra import SelfDualTriple, selfdual_basis
from .hermitian import nijenhuis_bivector
from .twistor import horizontal_lift_coeffs

STANDARD_J = np.array(
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
    ]
)
"""``J E_1 = E_2``, ``J E_3 = E_4``."""


@dataclass(frozen=True)
class Param:
    name: str
    kind: type
    default: object
    choices: tuple | None = None
    help: str = ""

    def coerce(self, value):
        try:
            v = self.kind(value)
        except (TypeError, ValueError) as exc:
            raise BadParameter(f"parameter {self.name!r}: cannot read {value!r} as {self.kind.__name__}") from exc
        if self.kind is float and not math.isfinite(v):
            raise BadParameter(f"parameter {self.name!r} must be finite")
        if self.choices is not None and v not in self.choices:
            raise BadParameter(f"parameter {self.name!r} must be one of {self.choices}, got {value!r}")
        return v


@dataclass(frozen=True)
class Expected:
    key: str
    value: object
    published: object = None
    note: str = ""


@dataclass
class Preset:
    name: str
    params: dict
    manifold: FrameManifold
    J: np.ndarray
    s_frame: SelfDualTriple
    expected: list = field(default_factory=list)

    def expected_value(self, key):
        for e in self.expected:
            if e.key == key:
                return e.value
        raise KeyError(key)


# ---------------------------------------------------------------- helpers


def _eps(name, value):
    if value not in (1, -1):
        raise BadParameter(f"{name} must be +1 or -1, got {value!r}")
    return int(value)


def _conn_table(entries) -> np.ndarray:
    """``{(i, j): {k: v}}`` (1-based) -> gamma with ``nabla_{E_i} E_j = sum_k v E_k``."""
    g = np.zeros((4, 4, 4))
    for (i, j), rhs in entries.items():
        for k, v in rhs.items():
            g[i - 1, j - 1, k - 1] = v
    return g


def _curv_table(entries) -> np.ndarray:
    """``{(i, j, k): {l: v}}`` with ``i < j`` -> full ``R[i, j, k, l]``."""
    R = np.zeros((4, 4, 4, 4))
    for (i, j, k), rhs in entries.items():
        for l, v in rhs.items():
            R[i - 1, j - 1, k - 1, l - 1] = v
            R[j - 1, i - 1, k - 1, l - 1] = -v
    return R


def _sym(entries, n=4) -> np.ndarray:
    m = np.zeros((n, n))
    for (i, j), v in entries.items():
        m[i - 1, j - 1] = v
    return m


def _vec(entries) -> np.ndarray:
    v = np.zeros(4)
    for k, val in entries.items():
        v[k - 1] = val
    return v


def _lift(rows) -> np.ndarray:
    """Stack of 3x3 matrices ``U_i`` with fibre velocity ``u_i(x) = U_i x``."""
    return np.array(rows, dtype=float)


def _verdicts(section, harmonic_map, minimal, geodesic=None) -> list:
    out = [
        Expected("verdict.harmonic_section", section),
        Expected("verdict.harmonic_map", harmonic_map),
        Expected("verdict.minimal", minimal),
    ]
    if geodesic is not None:
        out.append(Expected("verdict.totally_geodesic", geodesic))
    return out


# ---------------------------------------------------------------- presets


def kodaira_hermitian(eps1: int = 1, eps2: int = 1) -> Preset:
    """Primary Kodaira surface, frame ``A_1..A_4``, ``J A_1 = eps1 A_2``, ``J A_3 = eps2 A_4``.

    The frame is declared positively oriented when ``eps1 * eps2 = 1`` and
    negatively oriented otherwise, which is the orientation induced by ``J``.
    """
    e1, e2 = _eps("eps1", eps1), _eps("eps2", eps2)
    M = FrameManifold.from_brackets(
        f"kodaira-hermitian({e1:+d},{e2:+d})", {(1, 2): {4: -2.0}}, orientation=e1 * e2
    )
    J = np.zeros((4, 4))
    J[1, 0], J[0, 1] = e1, -e1
    J[3, 2], J[2, 3] = e2, -e2
    s_frame = selfdual_basis(np.diag([1.0, e1, 1.0, e2]), orientation=e1 * e2)
    conn = _conn_table(
        {(1, 2): {4: -1}, (2, 1): {4: 1}, (1, 4): {2: 1}, (4, 1): {2: 1}, (2, 4): {1: -1}, (4, 2): {1: -1}}
    )
    curv = _curv_table(
        {(1, 2, 1): {2: -3}, (1, 2, 2): {1: 3}, (1, 4, 1): {4: 1}, (1, 4, 4): {1: -1}, (2, 4, 2): {4: 1}, (2, 4, 4): {2: -1}}
    )
    B = _vec({3: -2.0 * e1 * e2})
    b_note = "" if e1 * e2 == 1 else "published B = -2 eps1 A3; the Lee form gives -2 eps1 eps2 A3"
    lift = _lift(
        [
            [[0, 0, -e1 * e2], [0, 0, 0], [e1 * e2, 0, 0]],
            [[0, e2, 0], [-e2, 0, 0], [0, 0, 0]],
            np.zeros((3, 3)),
            [[0, 0, 0], [0, 0, e1], [0, -e1, 0]],
        ]
    )
    expected = [
        Expected("connection", conn),
        Expected("curvature", curv),
        Expected("ricci", _sym({(1, 1): -2, (2, 2): -2, (4, 4): 2})),
        Expected("star_ricci", _sym({(1, 1): -3, (2, 2): -3})),
        Expected("B", B, published=_vec({3: -2.0 * e1}), note=b_note),
        Expected("dtheta", np.zeros((4, 4))),
        Expected("nijenhuis", np.zeros((4, 4, 4))),
        Expected("class", "Hermitian"),
        Expected("tension_vertical", np.zeros(6)),
        Expected("tension_horizontal_per_t", np.zeros(4)),
        Expected("lift", lift),
        *_verdicts(True, True, True, False),
    ]
    return Preset("kodaira-hermitian", {"eps1": e1, "eps2": e2}, M, J, s_frame, expected)


def kodaira_almost_kahler_J_on_A(eps1: int, eps2: int, phi: float) -> np.ndarray:
    """The almost Kahler ``J`` written on the frame ``A_1..A_4`` (column ``i`` is ``J A_i``)."""
    c, s = math.cos(phi), math.sin(phi)
    J = np.zeros((4, 4))
    J[:, 0] = [0, 0, -eps1 * s, eps1 * eps2 * c]
    J[:, 1] = [0, 0, -c, -eps2 * s]
    J[:, 2] = [eps1 * s, c, 0, 0]
    J[:, 3] = [-eps1 * eps2 * c, eps2 * s, 0, 0]
    return J


def kodaira_adapted_frame(eps1: int, eps2: int, phi: float) -> np.ndarray:
    """Columns are ``E_1..E_4`` in the ``A`` frame; ``J E_1 = E_2``, ``J E_3 = E_4``."""
    c, s = math.cos(phi), math.sin(phi)
    P = np.zeros((4, 4))
    P[:, 0] = [1, 0, 0, 0]
    P[:, 1] = [0, 0, -eps1 * s, eps1 * eps2 * c]
    P[:, 2] = [0, 0, c, eps2 * s]
    P[:, 3] = [0, 1, 0, 0]
    return P


def kodaira_almost_kahler(eps1: int = 1, eps2: int = 1, phi: float = 0.0) -> Preset:
    """Kodaira surface with a symplectic ``J``, written in the adapted frame ``E_1..E_4``."""
    e1, e2 = _eps("eps1", eps1), _eps("eps2", eps2)
    try:
        phi = float(phi)
    except (TypeError, ValueError) as exc:
        raise BadParameter(f"phi must be a real number, got {phi!r}") from exc
    if not math.isfinite(phi):
        raise BadParameter("phi must be finite")
    a = e1 * e2 * math.cos(phi)
    b = e2 * math.sin(phi)
    M = FrameManifold.from_brackets(
        f"kodaira-ak({e1:+d},{e2:+d},{phi:g})", {(1, 4): {2: -2.0 * a, 3: -2.0 * b}}
    )
    # J is read off its action table on A and moved to the E frame
    P = kodaira_adapted_frame(e1, e2, phi)
    J = P.T @ kodaira_almost_kahler_J_on_A(e1, e2, phi) @ P
    J[np.abs(J) < 1e-15] = 0.0
    s_frame = selfdual_basis()
    c2, s2, sin2 = math.cos(phi) ** 2, math.sin(phi) ** 2, math.sin(2 * phi)
    h = 0.5 * e1 * sin2
    conn = _conn_table(
        {
            (1, 2): {4: a}, (2, 1): {4: a},
            (1, 3): {4: b}, (3, 1): {4: b},
            (1, 4): {2: -a, 3: -b}, (4, 1): {2: a, 3: b},
            (2, 4): {1: -a}, (4, 2): {1: -a},
            (3, 4): {1: -b}, (4, 3): {1: -b},
        }
    )
    curv = _curv_table(
        {
            (1, 2, 1): {2: c2, 3: h}, (1, 2, 2): {1: -c2}, (1, 2, 3): {1: -h},
            (1, 3, 1): {2: h, 3: s2}, (1, 3, 2): {1: -h}, (1, 3, 3): {1: -s2},
            (1, 4, 1): {4: -3}, (1, 4, 4): {1: 3},
            (2, 4, 2): {4: c2}, (2, 4, 3): {4: h}, (2, 4, 4): {2: -c2, 3: -h},
            (3, 4, 2): {4: h}, (3, 4, 3): {4: s2}, (3, 4, 4): {2: -h, 3: -s2},
        }
    )
    lift = _lift(
        [
            [[0, 0, a], [0, 0, b], [-a, -b, 0]],
            [[0, a, 0], [-a, 0, 0], [0, 0, 0]],
            [[0, b, 0], [-b, 0, 0], [0, 0, 0]],
            [[0, 0, -b], [0, 0, a], [b, -a, 0]],
        ]
    )
    expected = [
        Expected("J", STANDARD_J),
        Expected("connection", conn),
        Expected("curvature", curv),
        Expected(
            "star_ricci",
            _sym({(1, 1): c2, (2, 2): c2, (3, 3): s2, (4, 4): s2, (1, 4): -h, (4, 1): -h, (2, 3): h, (3, 2): h}),
            published=_sym({(1, 1): c2, (2, 2): c2, (3, 3): s2, (4, 4): s2, (1, 4): -h, (4, 1): -h}),
            note="" if abs(h) < 1e-15 else "published table omits rho*_23 = rho*_32, forced by rho*(JX,JY) = rho*(Y,X)",
        ),
        Expected("dOmega", np.zeros((4, 4, 4))),
        Expected("N_s2", _vec({1: -4 * a, 4: 4 * b})),
        Expected("N_s3", _vec({2: 4 * a, 3: 4 * b})),
        Expected("trace_RN", np.zeros(4)),
        Expected("class", "AlmostKahler"),
        Expected("tension_vertical", np.zeros(6)),
        Expected("tension_horizontal_per_t", np.zeros(4)),
        Expected("lift", lift),
        *_verdicts(True, True, True, False),
    ]
    return Preset("kodaira-ak", {"eps1": e1, "eps2": e2, "phi": phi}, M, J, s_frame, expected)


def lie_group_ak(s: float = 0.0, t: float = 2.0) -> Preset:
    """Almost Kahler Lie algebra with ``J``-invariant Ricci tensor, parameters ``s`` and ``t != 0``."""
    try:
        s, t = float(s), float(t)
    except (TypeError, ValueError) as exc:
        raise BadParameter(f"s and t must be real numbers, got {s!r}, {t!r}") from exc
    if not (math.isfinite(s) and math.isfinite(t)):
        raise BadParameter("s and t must be finite")
    if t == 0.0:
        raise BadParameter("t must be non-zero")
    q = (s * s - t * t) / (2 * t)
    lam = (s * s + t * t) / (2 * t)
    M = FrameManifold.from_brackets(
        f"lie-ak({s:g},{t:g})",
        {
            (1, 3): {1: s, 2: s * s / t},
            (1, 4): {1: q, 2: -s},
            (2, 3): {1: -t, 2: -s},
            (2, 4): {1: -s, 2: -q},
            (3, 4): {3: -2 * lam},
        },
    )
    conn = _conn_table(
        {
            (1, 1): {3: -s, 4: -q}, (2, 1): {3: -q, 4: s}, (3, 1): {2: -lam},
            (1, 2): {3: -q, 4: s}, (2, 2): {3: s, 4: q}, (3, 2): {1: lam},
            (1, 3): {1: s, 2: q}, (2, 3): {1: q, 2: -s}, (3, 3): {4: 2 * lam},
            (1, 4): {1: q, 2: -s}, (2, 4): {1: -s, 2: -q}, (3, 4): {3: -2 * lam},
        }
    )
    published_conn = conn.copy()
    published_conn[2, 0, 1] = lam
    table = {
        (1, 2, 1): {2: 2}, (1, 2, 2): {1: -2}, (1, 2, 3): {4: 2}, (1, 2, 4): {3: -2},
        (1, 3, 1): {3: -1}, (1, 3, 2): {4: 1}, (1, 3, 3): {1: 1}, (1, 3, 4): {2: -1},
        (1, 4, 1): {4: -1}, (1, 4, 2): {3: -1}, (1, 4, 3): {2: 1}, (1, 4, 4): {1: 1},
        (2, 3, 1): {4: -1}, (2, 3, 2): {3: -1}, (2, 3, 3): {2: 1}, (2, 3, 4): {1: 1},
        (2, 4, 1): {3: 1}, (2, 4, 2): {4: -1}, (2, 4, 3): {1: -1}, (2, 4, 4): {2: 1},
        (3, 4, 1): {2: 2}, (3, 4, 2): {1: -2}, (3, 4, 3): {4: -4}, (3, 4, 4): {3: 4},
    }
    unit = _curv_table(table)
    rstar_unit = _sym({(1, 1): 4, (2, 2): 4, (3, 3): -2, (4, 4): -2})
    scale_note = "published table is linear in lambda; brackets scale by k and curvature by k^2, so the entries carry lambda^2"
    same = abs(lam * lam - lam) < 1e-12
    expected = [
        Expected("lambda", lam),
        Expected(
            "connection",
            conn,
            published=published_conn,
            note="published nabla_{E3}E1 = +lambda E2 contradicts metric compatibility with nabla_{E3}E2 = lambda E1",
        ),
        Expected("curvature", lam * lam * unit, published=lam * unit, note="" if same else scale_note),
        Expected("star_ricci", lam * lam * rstar_unit, published=lam * rstar_unit, note="" if same else scale_note),
        Expected("dOmega", np.zeros((4, 4, 4))),
        Expected("N_s2", -8.0 * _vec({1: s, 2: q})),
        Expected("N_s3", 8.0 * _vec({1: -q, 2: s})),
        Expected("trace_RN", np.zeros(4)),
        Expected("class", "AlmostKahler"),
        Expected("tension_vertical", np.zeros(6)),
        Expected("tension_horizontal_per_t", np.zeros(4)),
        *_verdicts(True, True, True),
    ]
    return Preset("lie-ak", {"s": s, "t": t}, M, STANDARD_J.copy(), selfdual_basis(), expected)


def inoue_s0() -> Preset:
    """Locally conformally Kahler metric on an Inoue surface of type S0."""
    M = FrameManifold.from_brackets(
        "inoue-s0", {(1, 2): {1: -1.0}, (2, 3): {3: -0.5}, (2, 4): {4: -0.5}}
    )
    conn = _conn_table(
        {(1, 1): {2: 1}, (1, 2): {1: -1}, (3, 2): {3: 0.5}, (3, 3): {2: -0.5}, (4, 2): {4: 0.5}, (4, 4): {2: -0.5}}
    )
    B = _vec({2: 1.0})
    expected = [
        Expected("connection", conn),
        Expected("B", B),
        Expected("rho_B", _vec({2: -1.5})),
        Expected("rho_star_B", _vec({2: -1.0})),
        Expected("dtheta", np.zeros((4, 4))),
        Expected("class", "Hermitian"),
        Expected("tension_vertical", np.zeros(6)),
        Expected("tension_horizontal_per_t", _vec({2: -0.25})),
        *_verdicts(True, False, True, False),
    ]
    return Preset("inoue-s0", {}, M, STANDARD_J.copy(), selfdual_basis(), expected)


def flat_torus() -> Preset:
    M = FrameManifold("flat-torus", np.zeros((4, 4, 4)))
    expected = [
        Expected("connection", np.zeros((4, 4, 4))),
        Expected("curvature", np.zeros((4, 4, 4, 4))),
        Expected("class", "Kahler"),
        Expected("tension_vertical", np.zeros(6)),
        Expected("tension_horizontal_per_t", np.zeros(4)),
        Expected("lift", np.zeros((4, 3, 3))),
        *_verdicts(True, True, True, True),
    ]
    return Preset("flat-torus", {}, M, STANDARD_J.copy(), selfdual_basis(), expected)


@dataclass(frozen=True)
class PresetSpec:
    name: str
    builder: Callable[..., Preset]
    params: tuple
    summary: str

    def build(self, **values) -> Preset:
        known = {p.name for p in self.params}
        extra = set(values) - known
        if extra:
            raise BadParameter(f"preset {self.name!r} has no parameter(s) {sorted(extra)}")
        kwargs = {p.name: p.coerce(values.get(p.name, p.default)) for p in self.params}
        return self.builder(**kwargs)


PRESETS = {
    "kodaira-hermitian": PresetSpec(
        "kodaira-hermitian",
        kodaira_hermitian,
        (Param("eps1", int, 1, (1, -1)), Param("eps2", int, 1, (1, -1))),
        "Kodaira surface, integrable J",
    ),
    "kodaira-ak": PresetSpec(
        "kodaira-ak",
        kodaira_almost_kahler,
        (Param("eps1", int, 1, (1, -1)), Param("eps2", int, 1, (1, -1)), Param("phi", float, 0.0, help="radians")),
        "Kodaira surface, symplectic J",
    ),
    "lie-ak": PresetSpec(
        "lie-ak",
        lie_group_ak,
        (Param("s", float, 0.0), Param("t", float, 2.0, help="non-zero")),
        "almost Kahler Lie group with J-invariant Ricci tensor",
    ),
    "inoue-s0": PresetSpec("inoue-s0", inoue_s0, (), "Inoue surface of type S0"),
    "flat-torus": PresetSpec("flat-torus", flat_torus, (), "flat torus, Kahler"),
}


def get_preset(name: str, **values) -> Preset:
    try:
        spec = PRESETS[name]
    except KeyError:
        raise BadParameter(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return spec.build(**values)


# ---------------------------------------------------------------- comparison


def lift_matrices(conn, s_frame: SelfDualTriple) -> np.ndarray:
    """``U_i`` with ``u_i(x) = U_i x``: fibre velocity of ``E_i^h`` at ``sum_k x_k s_k``."""
    out = np.zeros((4, 3, 3))
    for i in range(4):
        for m in range(3):
            out[i, :, m] = horizontal_lift_coeffs(conn, s_frame, np.eye(4)[i], s_frame[m])
    return out


def observed(preset: Preset, analysis, key: str):
    """Extract the pipeline value matching an :class:`Expected` key."""
    a = analysis
    herm, curv = a.herm, a.curv
    if key.startswith("verdict."):
        return bool(getattr(a.verdict, key.split(".", 1)[1]))
    simple = {
        "J": lambda: herm.J,
        "connection": lambda: a.conn.gamma,
        "curvature": lambda: curv.R,
        "ricci": lambda: curv.ricci,
        "star_ricci": lambda: curv.star_ricci,
        "B": lambda: herm.B,
        "dtheta": lambda: herm.dtheta,
        "dOmega": lambda: herm.dOmega,
        "nijenhuis": lambda: herm.N,
        "class": lambda: herm.structure_class.value,
        "rho_B": lambda: curv.ricci @ herm.B,
        "rho_star_B": lambda: curv.star_ricci @ herm.B,
        "N_s2": lambda: nijenhuis_bivector(herm.N, preset.s_frame.s2),
        "N_s3": lambda: nijenhuis_bivector(herm.N, preset.s_frame.s3),
        "trace_RN": lambda: a.trace_RN,
        "tension_vertical": lambda: a.tension.vertical.components,
        "tension_horizontal_per_t": lambda: a.tension.horizontal / a.ctx.t,
        "lift": lambda: lift_matrices(a.conn, preset.s_frame),
        "lambda": lambda: float(preset.manifold.c[2, 3, 2] / -2.0),
    }
    if key not in simple:
        raise KeyError(f"no observable named {key!r}")
    return simple[key]()


@dataclass
class Comparison:
    key: str
    expected: object
    computed: object
    error: float
    passed: bool
    published: object = None
    published_error: float | None = None
    note: str = ""


def _err(x, y) -> float:
    if isinstance(x, (bool, str, np.bool_)) or isinstance(y, (bool, str, np.bool_)):
        return 0.0 if x == y else 1.0
    return float(np.max(np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))))


def compare(preset: Preset, analysis, tol: float = 1e-9) -> list:
    """Diff every expected entry against the pipeline; one :class:`Comparison` per entry."""
    rows = []
    for e in preset.expected:
        got = observed(preset, analysis, e.key)
        err = _err(e.value, got)
        pub_err = None if e.published is None else _err(e.published, got)
        rows.append(Comparison(e.key, e.value, got, err, err <= tol, e.published, pub_err, e.note))
    return rows
