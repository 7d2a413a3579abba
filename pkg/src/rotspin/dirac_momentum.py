"""Chiral bispinors built from eigenvector pairs and the momentum-space Dirac equation."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .pair_construction import EigenPair, FourMomentum, assumption1_reduce
from .pauli_algebra import gamma
from .rotation_eigensystem import eigenspinor_minus

RANK_RTOL = 1e-8


@dataclass(frozen=True)
class Bispinor:
    """psi = col{upper, lower}; upper is the RIGHT spinor v1, lower the LEFT spinor v2."""

    upper: np.ndarray
    lower: np.ndarray

    @classmethod
    def from_array(cls, psi) -> Bispinor:
        psi = np.asarray(psi, dtype=complex)
        if psi.shape != (4,):
            raise DomainError(f"bispinor needs 4 components, got shape {psi.shape}")
        return cls(psi[:2].copy(), psi[2:].copy())

    def as_array(self) -> np.ndarray:
        return np.concatenate([np.asarray(self.upper, dtype=complex), np.asarray(self.lower, dtype=complex)])

    def __add__(self, other: Bispinor) -> Bispinor:
        return Bispinor.from_array(self.as_array() + other.as_array())

    def __rmul__(self, c) -> Bispinor:
        return Bispinor.from_array(c * self.as_array())

    def __mul__(self, c) -> Bispinor:
        return self.__rmul__(c)


def slash(p: FourMomentum) -> np.ndarray:
    """gamma^mu p_mu with lowered components."""
    pl = p.lower
    return sum(pl[mu - 1] * gamma(mu) for mu in range(1, 5))


def assemble_bispinor(pair: EigenPair) -> Bispinor:
    return Bispinor(pair.v1.copy(), pair.v2.copy())


def pair_momentum(pair: EigenPair) -> FourMomentum:
    return assumption1_reduce(pair.u, pair.axis)


def spin_down_partner(pair: EigenPair) -> Bispinor:
    """Spin-down bispinor with the same four-momentum as ``pair``.

    With (n.sigma) u- = -u-, the boost relation forces v1- = e^{-u} v2-;
    here v2- = |v2| u- and v1- = e^{-u} |v2| u-.
    """
    if pair.branch != "plus":
        raise DomainError("spin-down partner is defined for plus-branch pairs")
    c = float(np.linalg.norm(pair.v2))
    um = eigenspinor_minus(pair.axis)
    return Bispinor(math.exp(-pair.u) * c * um, c * um)


def dirac_residual_momentum(psi, p: FourMomentum) -> float:
    """||gamma^mu p_mu psi - psi|| / ||psi||."""
    p.require_on_shell()
    arr = psi.as_array() if isinstance(psi, Bispinor) else np.asarray(psi, dtype=complex)
    norm = np.linalg.norm(arr)
    if norm == 0.0:
        raise DomainError("zero bispinor")
    return float(np.linalg.norm(slash(p) @ arr - arr) / norm)


def solution_space_dimension(p: FourMomentum, rtol: float = RANK_RTOL) -> int:
    """Dimension of the kernel of (gamma^mu p_mu - 1), by singular-value counting."""
    p.require_on_shell()
    s = np.linalg.svd(slash(p) - np.eye(4), compute_uv=False)
    rank = int(np.sum(s > rtol * s[0]))
    return 4 - rank


def gram_determinant(*psis: Bispinor) -> float:
    """det of the normalized Gram matrix; 0 for dependent vectors, 1 for orthogonal."""
    vs = [b.as_array() for b in psis]
    vs = [v / np.linalg.norm(v) for v in vs]
    g = np.array([[np.vdot(a, b) for b in vs] for a in vs])
    return float(np.linalg.det(g).real)
