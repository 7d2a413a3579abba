"""Closed-form eigenspinors of SU(2) rotations.

Two-spinors are length-2 complex numpy arrays. Only the rotation axis
matters: the eigenspinors of R(n, theta) are the same for every theta.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import DomainError
from .pauli_algebra import as_axis, rotation_matrix


def eigenspinor_plus(n) -> np.ndarray:
    """u+ = (cos(rho/2) e^{-i phi/2}, sin(rho/2) e^{+i phi/2}); (n.sigma) u+ = u+."""
    n = as_axis(n)
    rho, phi = n.polar, n.azimuth
    return np.array(
        [math.cos(rho / 2) * cmath.exp(-0.5j * phi), math.sin(rho / 2) * cmath.exp(0.5j * phi)]
    )


def eigenspinor_minus(n) -> np.ndarray:
    """u- = (-sin(rho/2) e^{-i phi/2}, cos(rho/2) e^{+i phi/2}); (n.sigma) u- = -u-."""
    n = as_axis(n)
    rho, phi = n.polar, n.azimuth
    return np.array(
        [-math.sin(rho / 2) * cmath.exp(-0.5j * phi), math.cos(rho / 2) * cmath.exp(0.5j * phi)]
    )


def verify_rotation_eigen(n, theta: float, v, sign: int = 1) -> float:
    """Relative residual ||R v - e^{i sign theta/2} v|| / ||v||.

    ``sign=+1`` tests the eigenvalue e^{+i theta/2}, which is the one shared by
    every pair member; ``sign=-1`` tests the opposite branch.
    """
    v = np.asarray(v, dtype=complex)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise DomainError("zero vector is not an eigenvector")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")
    r = rotation_matrix(n, theta)
    return float(np.linalg.norm(r @ v - cmath.exp(0.5j * sign * theta) * v) / norm)


def decompose(v, n) -> tuple[complex, complex]:
    """Coefficients (alpha, beta) with v = alpha u+ + beta u-.

    u+ and u- are orthonormal, so the coefficients are plain inner products.
    """
    v = np.asarray(v, dtype=complex)
    return complex(np.vdot(eigenspinor_plus(n), v)), complex(np.vdot(eigenspinor_minus(n), v))
