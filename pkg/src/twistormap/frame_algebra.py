"""Linear algebra of an oriented Euclidean 4-space and its bivectors.

Tangent vectors are plain length-4 numpy arrays holding components in an
orthonormal frame ``E_1..E_4``; endomorphisms are 4x4 arrays acting on column
vectors.  Bivectors are stored by their six coefficients ``a^{ij}`` (``i < j``)
of ``a = sum a^{ij} E_i ^ E_j``.

The metric on bivectors is the determinant one,
``g(v1^v2, v3^v4) = 1/2 det[g(v_i, v_j)]``, so that ``|E_i ^ E_j|^2 = 1/2``.
Every function below keeps that factor explicit.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import default_tol
from .errors import NotSelfDual, OrientationError

#: ordered index pairs (0-based) labelling bivector slots
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_PAIR_INDEX = {p: n for n, p in enumerate(PAIRS)}

Vec4 = np.ndarray
Endo4 = np.ndarray


def _levi_civita4():
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        eps[perm] = permutation_sign(perm)
    return eps


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of ``0..n-1`` given in one-line notation."""
    perm = list(perm)
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"{perm!r} is not a permutation of 0..{len(perm) - 1}")
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


_EPS = _levi_civita4()


def basis_vector(i: int) -> Vec4:
    """``E_{i+1}`` as a component array (0-based index)."""
    e = np.zeros(4)
    e[i] = 1.0
    return e


class Bivector:
    """Element of the second exterior power of a 4-dimensional space.

    Instances are immutable.  Arithmetic (``+``, ``-``, scalar ``*``) returns new
    bivectors.  ``matrix`` gives the antisymmetric 4x4 array ``A`` with
    ``A[i, j] = a^{ij}``; ``dot`` is the determinant metric.
    """

    __slots__ = ("_c",)

    def __init__(self, components: Iterable[float]):
        c = np.array(components, dtype=float).reshape(6)
        c.setflags(write=False)
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Bivector is immutable")

    @classmethod
    def zero(cls) -> "Bivector":
        return cls(np.zeros(6))

    @classmethod
    def from_matrix(cls, m) -> "Bivector":
        m = np.asarray(m, dtype=float)
        return cls([m[i, j] for i, j in PAIRS])

    @classmethod
    def basis(cls, i: int, j: int) -> "Bivector":
        """``E_{i+1} ^ E_{j+1}`` for 0-based ``i != j``."""
        return wedge(basis_vector(i), basis_vector(j))

    @property
    def components(self) -> np.ndarray:
        return self._c

    @property
    def matrix(self) -> np.ndarray:
        m = np.zeros((4, 4))
        for n, (i, j) in enumerate(PAIRS):
            m[i, j] = self._c[n]
            m[j, i] = -self._c[n]
        return m

    def __getitem__(self, pair):
        i, j = pair
        if i == j:
            return 0.0
        if i < j:
            return float(self._c[_PAIR_INDEX[(i, j)]])
        return -float(self._c[_PAIR_INDEX[(j, i)]])

    def dot(self, other: "Bivector") -> float:
        return 0.5 * float(self._c @ other._c)

    def norm(self) -> float:
        return float(np.sqrt(self.dot(self)))

    def __add__(self, other):
        return Bivector(self._c + other._c)

    def __sub__(self, other):
        return Bivector(self._c - other._c)

    def __neg__(self):
        return Bivector(-self._c)

    def __mul__(self, scalar):
        return Bivector(float(scalar) * self._c)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Bivector(self._c / float(scalar))

    def allclose(self, other: "Bivector", atol: float = 1e-9) -> bool:
        return bool(np.max(np.abs(self._c - other._c)) <= atol)

    def __repr__(self):
        body = ", ".join(f"{v:.6g}" for v in self._c)
        return f"Bivector([{body}])"


def wedge(x: Vec4, y: Vec4) -> Bivector:
    """``x ^ y`` with coefficients ``x^i y^j - x^j y^i`` for ``i < j``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return Bivector([x[i] * y[j] - x[j] * y[i] for i, j in PAIRS])


def bivector_metric(a: Bivector, b: Bivector) -> float:
    return a.dot(b)


def hodge_star(a: Bivector, orientation: int = 1) -> Bivector:
    """Hodge star on bivectors.

    ``orientation=+1`` means ``(E_1, E_2, E_3, E_4)`` is positively oriented,
    ``-1`` that it is negatively oriented.
    """
    m = a.matrix
    star = 0.5 * np.einsum("ijkl,ij->kl", _EPS, m)
    return Bivector.from_matrix(orientation * star)


def selfdual_part(a: Bivector, orientation: int = 1) -> Bivector:
    return 0.5 * (a + hodge_star(a, orientation))


def antiselfdual_part(a: Bivector, orientation: int = 1) -> Bivector:
    return 0.5 * (a - hodge_star(a, orientation))


def is_selfdual(a: Bivector, orientation: int = 1, tol: float | None = None) -> bool:
    tol = default_tol() if tol is None else tol
    return (hodge_star(a, orientation) - a).norm() < tol * (1.0 + a.norm())


@dataclass(frozen=True)
class SelfDualTriple:
    """Oriented orthonormal basis ``(s1, s2, s3)`` of the self-dual bivectors."""

    s1: Bivector
    s2: Bivector
    s3: Bivector

    def __iter__(self):
        return iter((self.s1, self.s2, self.s3))

    def __getitem__(self, k):
        return (self.s1, self.s2, self.s3)[k]

    def coordinates(self, a: Bivector) -> np.ndarray:
        """Coefficients of ``a`` along ``s1, s2, s3`` (orthogonal projection)."""
        return np.array([a.dot(s) for s in self])

    def combine(self, x) -> Bivector:
        x = np.asarray(x, dtype=float)
        return x[0] * self.s1 + x[1] * self.s2 + x[2] * self.s3


def selfdual_basis(frame=None, orientation: int = 1) -> SelfDualTriple:
    """Build ``s1 = F1^F2 + F3^F4``, ``s2 = F1^F3 + F4^F2``, ``s3 = F1^F4 + F2^F3``.

    ``frame`` is either a permutation of ``(0, 1, 2, 3)`` selecting
    ``F_k = E_{perm[k]}``, or a 4x4 array whose columns are an orthonormal frame
    ``F_1..F_4`` expressed in ``E``.  The default is the identity permutation.

    Raises:
        OrientationError: the frame ``F`` is not positively oriented with respect
            to ``orientation``.  Orientation is never silently reversed.
    """
    if frame is None:
        frame = (0, 1, 2, 3)
    arr = np.asarray(frame)
    if arr.ndim == 1:
        perm = [int(v) for v in arr]
        sign = permutation_sign(perm)
        cols = np.eye(4)[:, perm]
    else:
        cols = np.asarray(frame, dtype=float)
        if cols.shape != (4, 4):
            raise ValueError("frame matrix must be 4x4")
        if not np.allclose(cols.T @ cols, np.eye(4), atol=1e-9):
            raise ValueError("frame columns are not orthonormal")
        sign = int(np.sign(np.linalg.det(cols)))
    if sign * orientation <= 0:
        raise OrientationError("frame is negatively oriented; refusing to reorient it")
    f = [cols[:, k] for k in range(4)]
    return SelfDualTriple(
        wedge(f[0], f[1]) + wedge(f[2], f[3]),
        wedge(f[0], f[2]) + wedge(f[3], f[1]),
        wedge(f[0], f[3]) + wedge(f[1], f[2]),
    )


def cross(a: Bivector, b: Bivector, orientation: int = 1, tol: float | None = None) -> Bivector:
    """Oriented cross product on the self-dual bivectors.

    Orientation is the one fixed by ``(s1, s2, s3)`` of a positively oriented
    frame, so ``cross(s1, s2) == s3``.
    """
    tol = default_tol() if tol is None else tol
    for name, v in (("a", a), ("b", b)):
        if (hodge_star(v, orientation) - v).norm() >= tol * (1.0 + v.norm()):
            raise NotSelfDual(f"argument {name} is not self-dual")
    basis = _oriented_basis(orientation)
    x = basis.coordinates(a)
    y = basis.coordinates(b)
    z = (x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0])
    return basis.combine(z)


@functools.lru_cache(maxsize=2)
def _oriented_basis(orientation: int) -> SelfDualTriple:
    return selfdual_basis((0, 1, 2, 3) if orientation > 0 else (0, 1, 3, 2), orientation)


def K_op(a: Bivector) -> Endo4:
    """Skew endomorphism ``K_a`` defined by ``g(K_a X, Y) = 2 g(a, X ^ Y)``.

    With ``A = a.matrix`` one has ``2 g(a, X^Y) = X^T A Y``, hence ``K_a = -A``.
    """
    return -a.matrix


def endo_metric(p: Endo4, q: Endo4) -> float:
    """``G(P, Q) = -1/2 trace(PQ)`` on skew endomorphisms."""
    return -0.5 * float(np.trace(p @ q))


def bivector_of_skew(k: Endo4) -> Bivector:
    """Inverse of :func:`K_op`."""
    return Bivector.from_matrix(-np.asarray(k, dtype=float))


def act_on_bivector(endo: Endo4, a: Bivector) -> Bivector:
    """Derivation action ``L(X^Y) = LX ^ Y + X ^ LY`` of an endomorphism on bivectors."""
    m = a.matrix
    return Bivector.from_matrix(endo @ m + m @ endo.T)


def random_selfdual(rng: np.random.Generator, orientation: int = 1, unit: bool = False) -> Bivector:
    basis = _oriented_basis(orientation)
    x = rng.normal(size=3)
    if unit:
        x /= np.linalg.norm(x)
    return basis.combine(x)
