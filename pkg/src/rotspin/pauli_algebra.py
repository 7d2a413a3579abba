"""Pauli and Dirac matrices, unit axes and closed-form SU(2) rotations.

Spin matrices are plain ``(2, 2)`` complex numpy arrays and Dirac matrices
``(4, 4)`` arrays. Indices follow the physics convention ``1..4`` with 4 the
identity (for sigma) or the time-like direction (for gamma).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

DEFAULT_TOL = 1e-10
UNIT_TOL = 1e-12
MIN_AXIS_NORM = 1e-8

_SIGMA = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
    4: np.eye(2, dtype=complex),
}

# diag(-1, -1, -1, +1), index 4 is time-like
METRIC = np.diag([-1.0, -1.0, -1.0, 1.0])


def pauli(k: int) -> np.ndarray:
    """Return sigma^k for k in 1..4 (sigma^4 is the 2x2 identity)."""
    if k not in _SIGMA:
        raise DomainError(f"pauli index must be in 1..4, got {k!r}")
    return _SIGMA[k].copy()


def sigma_vector() -> np.ndarray:
    """Stacked (sigma^1, sigma^2, sigma^3) with shape (3, 2, 2)."""
    return np.stack([_SIGMA[1], _SIGMA[2], _SIGMA[3]])


@dataclass(frozen=True)
class UnitAxis:
    """A direction in the abstract 3-space.

    Build with :meth:`from_vector` (normalizes) or :meth:`from_angles`.
    Direct construction requires components that are already unit.
    """

    n1: float
    n2: float
    n3: float

    def __post_init__(self):
        comps = (self.n1, self.n2, self.n3)
        if not all(math.isfinite(c) for c in comps):
            raise DomainError(f"axis components must be finite, got {comps}")
        norm2 = self.n1**2 + self.n2**2 + self.n3**2
        if abs(norm2 - 1.0) > UNIT_TOL:
            raise DomainError(f"axis is not unit: |n|^2 = {norm2!r}")

    @classmethod
    def from_vector(cls, v) -> UnitAxis:
        v = np.asarray(v, dtype=float)
        if v.shape != (3,):
            raise DomainError(f"axis needs 3 components, got shape {v.shape}")
        norm = float(np.linalg.norm(v))
        if not math.isfinite(norm) or norm < MIN_AXIS_NORM:
            raise DomainError(f"cannot normalize axis with norm {norm!r}")
        v = v / norm
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @classmethod
    def from_angles(cls, polar: float, azimuth: float) -> UnitAxis:
        s = math.sin(polar)
        return cls.from_vector([s * math.cos(azimuth), s * math.sin(azimuth), math.cos(polar)])

    @classmethod
    def random(cls, rng: np.random.Generator) -> UnitAxis:
        return cls.from_vector(rng.normal(size=3))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.n1, self.n2, self.n3])

    @property
    def polar(self) -> float:
        # atan2 form stays accurate near the poles, unlike acos(n3)
        return math.atan2(math.hypot(self.n1, self.n2), self.n3)

    @property
    def azimuth(self) -> float:
        if self.n1 == 0.0 and self.n2 == 0.0:
            return 0.0
        phi = math.atan2(self.n2, self.n1)
        return math.pi if phi == -math.pi else phi


def as_axis(n) -> UnitAxis:
    """Coerce ``n`` to a UnitAxis without normalizing; non-unit input is rejected."""
    if isinstance(n, UnitAxis):
        return n
    v = np.asarray(n, dtype=float)
    if v.shape != (3,):
        raise DomainError(f"axis needs 3 components, got shape {v.shape}")
    return UnitAxis(float(v[0]), float(v[1]), float(v[2]))


def axis_dot_sigma(n) -> np.ndarray:
    """n^k sigma^k summed over k = 1, 2, 3."""
    n = as_axis(n)
    return n.n1 * _SIGMA[1] + n.n2 * _SIGMA[2] + n.n3 * _SIGMA[3]


def rotation_matrix(n, theta: float) -> np.ndarray:
    """exp(i (n.sigma) theta / 2) in closed form.

    Uses (n.sigma)^2 = 1 to sum the series:
    ``sigma^4 cos(theta/2) + i (n.sigma) sin(theta/2)``.
    """
    if not math.isfinite(theta):
        raise DomainError(f"rotation angle must be finite, got {theta!r}")
    half = 0.5 * theta
    return math.cos(half) * _SIGMA[4] + 1j * math.sin(half) * axis_dot_sigma(n)


def matrix_exp_series(m: np.ndarray, terms: int = 30) -> np.ndarray:
    """Partial sum of the exponential series, sum_{k < terms} m^k / k!.

    Kept deliberately naive; it serves as the oracle for :func:`rotation_matrix`.
    """
    if terms < 1:
        raise DomainError("series needs at least one term")
    m = np.asarray(m, dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    total = term.copy()
    for k in range(1, terms):
        term = term @ m / k
        total = total + term
    return total


def gamma(mu: int) -> np.ndarray:
    """Chiral-representation Dirac matrix gamma^mu, mu in 1..4.

    gamma^k = [[0, -sigma^k], [sigma^k, 0]],  gamma^4 = [[0, 1], [1, 0]].
    """
    if mu not in _SIGMA:
        raise DomainError(f"gamma index must be in 1..4, got {mu!r}")
    s = _SIGMA[mu]
    z = np.zeros((2, 2), dtype=complex)
    if mu == 4:
        return np.block([[z, s], [s, z]])
    return np.block([[z, -s], [s, z]])


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def clifford_table() -> np.ndarray:
    """Array T[mu-1, nu-1] = {gamma^mu, gamma^nu}, shape (4, 4, 4, 4)."""
    gs = [gamma(mu) for mu in range(1, 5)]
    return np.array([[anticommutator(a, b) for b in gs] for a in gs])


def max_abs_diff(a, b) -> float:
    """Entrywise max-norm distance, the default comparison metric."""
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def allclose(a, b, tol: float = DEFAULT_TOL) -> bool:
    return max_abs_diff(a, b) <= tol
