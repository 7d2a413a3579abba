"""Simultaneous eigenvector pairs and the matrix factor relating them.

A pair (v1, v2) shares the rotation eigenvalue e^{i theta/2}, so in two
dimensions the members are proportional: v1 = e^{u} v2. Since both sigma^4
and n.sigma act as the identity on the pair, the scalar factor generalizes to
a two-parameter family of matrices. Fixing the parameters so that the factor
does not depend on the direction of the map gives a unit energy-momentum.

Orientation sign ``eps`` is +1 for the map v2 -> v1 and -1 for v1 -> v2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from fractions import Fraction

import numpy as np

from .errors import DegeneracyError, DomainError
from .pauli_algebra import UnitAxis, as_axis, axis_dot_sigma, pauli
from .rotation_eigensystem import eigenspinor_plus

MASS_SHELL_TOL = 1e-10


def _check_eps(eps: int) -> None:
    if eps not in (1, -1):
        raise DomainError(f"orientation sign must be +1 or -1, got {eps!r}")


@dataclass(frozen=True)
class EigenPair:
    axis: UnitAxis
    theta: float
    u: float
    v1: np.ndarray = field(repr=False)
    v2: np.ndarray = field(repr=False)
    branch: str = "plus"

    def member(self, a: int) -> np.ndarray:
        if a == 1:
            return self.v1
        if a == 2:
            return self.v2
        raise DomainError(f"pair member index must be 1 or 2, got {a!r}")

    def swapped(self) -> EigenPair:
        """The same pair read with roles exchanged: u -> -u."""
        return EigenPair(self.axis, self.theta, -self.u, self.v2, self.v1, self.branch)


@dataclass(frozen=True)
class FactorParams:
    A: float
    B: float


@dataclass(frozen=True)
class FourMomentum:
    """Unit energy-momentum with upper-index components (p^1, p^2, p^3; p^4)."""

    p4: float
    p_vec: tuple[float, float, float]

    @property
    def upper(self) -> np.ndarray:
        return np.array([*self.p_vec, self.p4])

    @property
    def lower(self) -> np.ndarray:
        """p_mu = (-p^k, p^4), lowered with diag(-1, -1, -1, +1)."""
        return np.array([-self.p_vec[0], -self.p_vec[1], -self.p_vec[2], self.p4])

    def mass_shell(self) -> float:
        """p4^2 - |p|^2, evaluated exactly on the stored doubles and then rounded."""
        return float(self._exact_m2())

    def _exact_m2(self) -> Fraction:
        return Fraction(self.p4) ** 2 - sum(Fraction(c) ** 2 for c in self.p_vec)

    def mass_shell_error(self, relative: bool = False) -> float:
        """|p4^2 - |p|^2 - 1|, optionally divided by p4^2.

        The stored components carry rounding of order ulp(p4), so the
        absolute error grows like p4^2 * 1e-16; the relative form does not.
        """
        err = abs(self._exact_m2() - 1)
        if relative:
            err /= max(Fraction(1), Fraction(self.p4) ** 2)
        return float(err)

    def require_on_shell(self, tol: float = MASS_SHELL_TOL) -> None:
        if not self.mass_shell_error(relative=True) <= tol or self.p4 < 1.0 - tol:
            m2 = self.mass_shell()
            raise DomainError(f"four-momentum is off the unit mass shell: p.p = {m2!r}, p4 = {self.p4!r}")

    @classmethod
    def rest(cls) -> FourMomentum:
        return cls(1.0, (0.0, 0.0, 0.0))


@dataclass(frozen=True)
class CurrentSpinParams:
    j: float
    j4: float
    a: float
    a4: float
    K: float


@dataclass(frozen=True)
class CurrentSpinSolution:
    """Outcome of eliminating the current/spin parameters.

    ``relation`` maps (a, a4) to (j, j4). ``j4_sign`` is the derived s in
    j4 = s a; ``stated_j4_sign`` is the commonly quoted +1 and
    ``sign_discrepancy`` records whether the two disagree.
    """

    relation: np.ndarray
    j_equals_a4: bool
    j4_sign: float
    stated_j4_sign: float
    sign_discrepancy: bool
    params: CurrentSpinParams
    orthogonality: float
    orthogonality_stated_sign: float
    base_identity_residual: float


def make_pair(n, theta: float, u: float, scale: float = 1.0) -> EigenPair:
    """v2 = scale u+(n), v1 = e^{u} v2."""
    if not scale > 0:
        raise DomainError(f"scale must be positive, got {scale!r}")
    if not (math.isfinite(theta) and math.isfinite(u)):
        raise DomainError("theta and u must be finite")
    n = as_axis(n)
    v2 = scale * eigenspinor_plus(n)
    v1 = math.exp(u) * v2
    return EigenPair(n, float(theta), float(u), v1, v2)


def factor_coefficients(params: FactorParams, u: float, eps: int) -> tuple[float, float]:
    """(p_ab4, p_ab) = (A + eps(B + sinh u), B + eps(A - cosh u))."""
    _check_eps(eps)
    p_ab4 = params.A + eps * (params.B + math.sinh(u))
    p_ab = params.B + eps * (params.A - math.cosh(u))
    return p_ab4, p_ab


def general_factor_matrix(params: FactorParams, u: float, n, eps: int) -> np.ndarray:
    """sigma^4 p_ab4 - eps (n.sigma) p_ab.

    On the pair (where n.sigma acts as 1) this reduces to
    p_ab4 - eps p_ab = cosh u + eps sinh u = e^{eps u} for any A, B.
    """
    p_ab4, p_ab = factor_coefficients(params, u, eps)
    return p_ab4 * pauli(4) - eps * p_ab * axis_dot_sigma(n)


def assumption1_params(u: float) -> FactorParams:
    """A = cosh u, B = -sinh u: the unique choice that removes every eps term."""
    return FactorParams(math.cosh(u), -math.sinh(u))


def assumption1_reduce(u: float, n) -> FourMomentum:
    """Unit energy-momentum p^4 = cosh u, p^k = n^k sinh u."""
    if not math.isfinite(u):
        raise DomainError(f"rapidity must be finite, got {u!r}")
    n = as_axis(n)
    params = assumption1_params(u)
    p4, p_ab = factor_coefficients(params, u, 1)
    # p_ab4 and p_ab are orientation independent here: p4 = A, |p| = -p_ab = -B
    p = -p_ab
    return FourMomentum(p4, (n.n1 * p, n.n2 * p, n.n3 * p))


def boost_matrix(u: float, n, eps: int) -> np.ndarray:
    """sigma^4 cosh u + eps (n.sigma) sinh u."""
    _check_eps(eps)
    return math.cosh(u) * pauli(4) + eps * math.sinh(u) * axis_dot_sigma(n)


def _relative(residual: np.ndarray, target: np.ndarray) -> float:
    return float(np.linalg.norm(residual) / np.linalg.norm(target))


def factor_residual(pair: EigenPair, params: FactorParams, eps: int) -> float:
    """Relative error of mapping the source member to its partner.

    eps = +1 maps v2 -> v1, eps = -1 maps v1 -> v2.
    """
    _check_eps(eps)
    src, dst = (pair.v2, pair.v1) if eps == 1 else (pair.v1, pair.v2)
    m = general_factor_matrix(params, pair.u, pair.axis, eps)
    return _relative(m @ src - dst, dst)


def verify_eq6(pair: EigenPair) -> tuple[float, float]:
    """Residuals of v1 = Lambda(+) v2 and v2 = Lambda(-) v1, each relative to its target."""
    fwd = boost_matrix(pair.u, pair.axis, 1) @ pair.v2 - pair.v1
    rev = boost_matrix(pair.u, pair.axis, -1) @ pair.v1 - pair.v2
    return _relative(fwd, pair.v1), _relative(rev, pair.v2)


def _problem4_shift(x, K: float, eps: int) -> float:
    """Linear part of p_ab4 - eps p_ab contributed by x = (j, j4, a, a4)."""
    j, j4, a, a4 = x
    dp4 = K * j4 + eps * K * a4
    dp = K * j - eps * K * a
    return dp4 - eps * dp


def solve_current_spin_constraints(u: float, K: float, a: float = 1.0, a4: float = 1.0) -> CurrentSpinSolution:
    """Eliminate (j, j4) in favour of (a, a4).

    The parametrization
        p_ab4 = cosh u + K j4 + eps K a4,   p_ab = -sinh u + K j - eps K a
    must keep p_ab4 - eps p_ab = e^{eps u} for both orientations. The base
    part already does, so the K terms must vanish for eps = +1 and -1: two
    linear equations in four unknowns, solved here for (j, j4).

    ``a`` and ``a4`` are the sample values at which the Minkowski product
    j4 a4 - j^k a^k (with both vectors along n) is reported.
    """
    if K == 0 or not math.isfinite(K):
        raise DegeneracyError("scale K must be finite and nonzero; K = 0 makes the constraints vacuous")
    # every coefficient is an integer multiple of K; dividing it out keeps
    # the elimination in exact small integers
    c = [[_problem4_shift(e, K, eps) / K for e in np.eye(4)] for eps in (1, -1)]
    (c00, c01, c02, c03), (c10, c11, c12, c13) = c
    det = c00 * c11 - c01 * c10
    if det == 0:
        raise DegeneracyError("constraint system does not determine (j, j4)")
    # Cramer's rule for (j, j4) = -C_j^{-1} C_a (a, a4)
    relation = np.array(
        [
            [-(c11 * c02 - c01 * c12) / det, -(c11 * c03 - c01 * c13) / det],
            [-(c00 * c12 - c10 * c02) / det, -(c00 * c13 - c10 * c03) / det],
        ]
    )
    relation = relation + 0.0  # normalize -0.0

    j, j4 = relation @ np.array([a, a4])
    sign = float(relation[1, 0])
    j_eq_a4 = bool(relation[0, 0] == 0.0 and relation[0, 1] == 1.0)
    orth = j4 * a4 - j * a
    orth_stated = (1.0 * a) * a4 - j * a

    # scaled by cosh u, the size of the terms that cancel for eps * u < 0
    base = max(abs(math.cosh(u) - eps * (-math.sinh(u)) - math.exp(eps * u)) / math.cosh(u) for eps in (1, -1))
    return CurrentSpinSolution(
        relation=relation,
        j_equals_a4=j_eq_a4,
        j4_sign=sign,
        stated_j4_sign=1.0,
        sign_discrepancy=sign != 1.0,
        params=CurrentSpinParams(float(j), float(j4), float(a), float(a4), float(K)),
        orthogonality=float(orth),
        orthogonality_stated_sign=float(orth_stated),
        base_identity_residual=float(base),
    )
