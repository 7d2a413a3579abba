"""Rotation angle as a function of position: phase maps and gauge line integrals.

Coordinates are indexed q^1..q^4 with q^4 time-like; in arrays they sit at
positions 0..3. Momenta enter with lowered indices, p_mu = (-p^k, p^4).

The space-time gradient is defined as ``2 p_mu d/dtheta - F_mu`` with
``F_mu = -i e A_mu``. Acting on e^{i theta/2} this fixes

    d theta / d q^mu = 2 p_mu + 2 i F_mu = 2 (p_mu + e A_mu),

so theta is a line integral that depends on the path unless A is a gradient.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .dirac_momentum import Bispinor, assemble_bispinor, pair_momentum
from .errors import DegeneracyError, DomainError
from .pair_construction import EigenPair, FourMomentum
from .pauli_algebra import gamma

SOLENOID_R_MIN = 1e-6
DEFAULT_FD_STEP = 1e-4
MAX_CONDITION = 1e8

Potential = Callable[[np.ndarray], np.ndarray]


def as_event(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.shape != (4,):
        raise DomainError(f"event needs 4 coordinates, got shape {q.shape}")
    if not np.all(np.isfinite(q)):
        raise DomainError("event coordinates must be finite")
    return q


@dataclass(frozen=True)
class Path4:
    """Ordered polyline through 4-space. A closed path repeats its first vertex last."""

    vertices: np.ndarray
    closed: bool = False

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 4 or v.shape[0] < 2:
            raise DomainError(f"path needs at least two 4-vectors, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise DomainError("path vertices must be finite")
        if np.any(np.all(v[1:] == v[:-1], axis=1)):
            raise DomainError("consecutive path vertices must be distinct")
        if self.closed and not np.array_equal(v[0], v[-1]):
            raise DomainError("closed path must end at its first vertex")
        object.__setattr__(self, "vertices", v)

    @classmethod
    def segment(cls, start, end) -> Path4:
        return cls(np.array([as_event(start), as_event(end)]))

    @classmethod
    def circle(
        cls,
        radius: float,
        n_vertices: int,
        windings: int = 1,
        center=(0.0, 0.0),
        fixed=(0.0, 0.0),
    ) -> Path4:
        """Closed polygonal loop in the (q^1, q^2) plane, traversed ``windings`` times.

        Positive windings run counter-clockwise. ``fixed`` holds (q^3, q^4).
        ``n_vertices`` counts distinct vertices per turn.
        """
        if windings == 0:
            raise DomainError("a loop needs a nonzero number of windings")
        if radius <= 0 or n_vertices < 3:
            raise DomainError("loop needs positive radius and at least 3 vertices")
        turns = abs(windings)
        k = np.arange(turns * n_vertices + 1)
        ang = math.copysign(2 * math.pi, windings) * k / n_vertices
        # pin the endpoint so the loop closes bitwise
        ang[-1] = 0.0
        ang[0] = 0.0
        v = np.empty((k.size, 4))
        v[:, 0] = center[0] + radius * np.cos(ang)
        v[:, 1] = center[1] + radius * np.sin(ang)
        v[:, 2] = fixed[0]
        v[:, 3] = fixed[1]
        return cls(v, closed=True)

    @property
    def start(self) -> np.ndarray:
        return self.vertices[0]

    @property
    def end(self) -> np.ndarray:
        return self.vertices[-1]


@dataclass(frozen=True)
class GaugeField:
    """A covariant potential A_mu(q) together with the charge e.

    ``potential`` maps an (M, 4) array of events to an (M, 4) array of A_mu.
    Use the presets rather than constructing directly.
    """

    kind: str
    potential: Potential = field(repr=False)
    charge: float = 1.0
    flux: float = 0.0
    r_min: float = 0.0
    gauge_function: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)

    @classmethod
    def zero(cls, charge: float = 1.0) -> GaugeField:
        return cls("zero", lambda q: np.zeros_like(q), charge)

    @classmethod
    def constant(cls, a, charge: float = 1.0) -> GaugeField:
        a = np.asarray(a, dtype=float)
        if a.shape != (4,) or not np.all(np.isfinite(a)):
            raise DomainError("constant potential needs 4 finite components")
        return cls("constant", lambda q: np.broadcast_to(a, q.shape).copy(), charge)

    @classmethod
    def solenoid(cls, flux: float, charge: float = 1.0, r_min: float = SOLENOID_R_MIN) -> GaugeField:
        """Exterior potential of an ideal solenoid along the q^3 axis.

        A = flux / (2 pi r^2) (-q^2, q^1, 0, 0), so a loop winding once
        counter-clockwise collects flux regardless of its shape.
        """

        def potential(q):
            x, y = q[:, 0], q[:, 1]
            c = flux / (2 * math.pi * (x * x + y * y))
            out = np.zeros_like(q)
            out[:, 0] = -c * y
            out[:, 1] = c * x
            return out

        return cls("solenoid", potential, charge, flux=float(flux), r_min=r_min)

    @classmethod
    def pure_gauge(cls, g, grad_g, charge: float = 1.0) -> GaugeField:
        """A_mu = d g / d q^mu for a single-valued scalar g; both act on (M, 4) arrays."""
        return cls("pure_gauge", grad_g, charge, gauge_function=g)

    def __call__(self, q) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        single = q.ndim == 1
        q2 = np.atleast_2d(q)
        self.check_domain(q2)
        a = np.asarray(self.potential(q2), dtype=float)
        return a[0] if single else a

    def check_domain(self, q) -> None:
        if self.kind != "solenoid":
            return
        q = np.atleast_2d(q)
        r = np.hypot(q[:, 0], q[:, 1])
        if np.any(r < self.r_min):
            raise DomainError(f"solenoid potential is undefined within r < {self.r_min} of the axis")

    def check_path(self, path: Path4) -> None:
        """Reject paths whose edges pass within r_min of the solenoid axis."""
        if self.kind != "solenoid":
            return
        a = path.vertices[:-1, :2]
        b = path.vertices[1:, :2]
        d = b - a
        dd = np.einsum("ij,ij->i", d, d)
        t = np.zeros(len(a))
        nz = dd > 0
        t[nz] = np.clip(-np.einsum("ij,ij->i", a[nz], d[nz]) / dd[nz], 0.0, 1.0)
        closest = a + t[:, None] * d
        if np.any(np.hypot(closest[:, 0], closest[:, 1]) < self.r_min):
            raise DomainError("path passes through the solenoid exclusion zone")

    @property
    def path_independent(self) -> bool:
        return self.kind in ("zero", "constant", "pure_gauge")


def gauge_offset(field: GaugeField, q) -> np.ndarray:
    """F_mu = -i e A_mu(q)."""
    return -1j * field.charge * np.asarray(field(q), dtype=complex)


def _midpoints(path: Path4, segments_per_edge: int) -> tuple[np.ndarray, np.ndarray]:
    if segments_per_edge < 1:
        raise DomainError("need at least one segment per edge")
    a = path.vertices[:-1]
    d = (path.vertices[1:] - a) / segments_per_edge
    t = np.arange(segments_per_edge) + 0.5
    mids = a[:, None, :] + t[None, :, None] * d[:, None, :]
    steps = np.broadcast_to(d[:, None, :], mids.shape)
    return mids.reshape(-1, 4), steps.reshape(-1, 4)


def path_phase_offset(p: FourMomentum, offset: Callable[[np.ndarray], np.ndarray], path: Path4,
                      segments_per_edge: int = 1) -> complex:
    """theta = 2 int (p_mu + i F_mu) dq^mu for an arbitrary offset F (test hook)."""
    mids, steps = _midpoints(path, segments_per_edge)
    integrand = p.lower[None, :] + 1j * np.asarray(offset(mids), dtype=complex)
    return complex(2.0 * np.sum(integrand * steps))


def path_phase(p: FourMomentum, field: GaugeField, path: Path4, segments_per_edge: int = 1) -> complex:
    """Rotation-angle change along ``path`` by composite midpoint quadrature.

    Real for real potentials. Error is O(h^2) in the sub-segment length h and
    vanishes for fields that are affine along each edge.
    """
    if field.kind == "solenoid":
        field.check_path(path)
    return path_phase_offset(p, lambda q: -1j * field.charge * field.potential(q), path, segments_per_edge)


def plane_wave_phase(p: FourMomentum, q_from, q_to) -> float:
    """Free-particle phase change 2 p_mu (q_to - q_from)^mu."""
    p.require_on_shell()
    dq = as_event(q_to) - as_event(q_from)
    return float(2.0 * p.lower @ dq)


def gradient_theta(p: FourMomentum, field: GaugeField, q) -> np.ndarray:
    """d theta / d q^mu = 2 p_mu + 2 i F_mu(q), a complex 4-vector."""
    return 2.0 * p.lower + 2j * gauge_offset(field, as_event(q))


def phase_derivative_check(pair: EigenPair, theta_samples: int = 16, step: float = 1e-5,
                           analytic: bool = False) -> float:
    """max over samples and members of ||-2i d/dtheta v' - v'|| / ||v'||, v' = e^{i theta/2} v."""
    if theta_samples < 2:
        raise DomainError("need at least two theta samples")
    if not analytic and not step > 0:
        raise DomainError("finite-difference step must be positive")
    worst = 0.0
    for theta in np.linspace(0.0, 2 * math.pi, theta_samples):
        for v in (pair.v1, pair.v2):
            vp = cmath.exp(0.5j * theta) * v
            if analytic:
                dv = 0.5j * vp
            else:
                dv = (cmath.exp(0.5j * (theta + step)) - cmath.exp(0.5j * (theta - step))) * v / (2 * step)
            worst = max(worst, float(np.linalg.norm(-2j * dv - vp) / np.linalg.norm(vp)))
    return worst


def _phase_from_origin(p: FourMomentum, field: GaugeField, q: np.ndarray) -> complex:
    if not np.any(q):
        return 0j
    return path_phase(p, field, Path4.segment(np.zeros(4), q))


def wave_function(pair: EigenPair, field: GaugeField, q, psi0: Bispinor | None = None) -> np.ndarray:
    """psi(q) = e^{i theta(q)/2} psi0 with theta anchored to vanish at the origin."""
    if field.kind not in ("zero", "constant"):
        raise DomainError(f"wave function needs a zero or constant field, got {field.kind!r}")
    psi0 = assemble_bispinor(pair) if psi0 is None else psi0
    theta = _phase_from_origin(pair_momentum(pair), field, as_event(q))
    return cmath.exp(0.5j * theta) * psi0.as_array()


def dirac_residual_coordinate(pair: EigenPair, field: GaugeField, q, h: float = DEFAULT_FD_STEP,
                              psi0: Bispinor | None = None) -> float:
    """Relative residual of -i gamma^mu (d_mu - i e A_mu) psi = psi at event q.

    Partials are central differences with step h; the error is O(h^2).
    ``psi0`` overrides the bispinor built from ``pair`` (e.g. a superposition
    with its spin-down partner); the momentum always comes from ``pair``.
    """
    if field.kind not in ("zero", "constant"):
        raise DomainError(f"coordinate Dirac check needs a zero or constant field, got {field.kind!r}")
    if not h > 0:
        raise DomainError("finite-difference step must be positive")
    q = as_event(q)
    psi = wave_function(pair, field, q, psi0)
    a = field(q)
    lhs = np.zeros(4, dtype=complex)
    for mu in range(4):
        dq = np.zeros(4)
        dq[mu] = h
        d_psi = (wave_function(pair, field, q + dq, psi0) - wave_function(pair, field, q - dq, psi0)) / (2 * h)
        lhs += gamma(mu + 1) @ (d_psi - 1j * field.charge * a[mu] * psi)
    lhs *= -1j
    return float(np.linalg.norm(lhs - psi) / np.linalg.norm(psi))


def h2_constant(pair: EigenPair, field: GaugeField, q, h: float = DEFAULT_FD_STEP) -> float:
    """Estimated C in residual ~ C h^2, from a step large enough to dominate rounding."""
    probe = max(h, 1e-2)
    return dirac_residual_coordinate(pair, field, q, probe) / probe**2


def problem5_gradient(p: FourMomentum, field: GaugeField, m, q, max_condition: float = MAX_CONDITION) -> np.ndarray:
    """Angle gradient when the offset gains a term linear in the gradient.

    With F_mu -> F_mu + M_{mu nu} d_nu the gradient obeys
    (delta_{mu nu} + M_{mu nu}) d_nu theta = 2 p_mu + 2 i F_mu(q).
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise DomainError(f"M must be 4x4, got shape {m.shape}")
    lhs = np.eye(4) + m
    cond = np.linalg.cond(lhs)
    if not cond <= max_condition:
        raise DegeneracyError(f"(I + M) is singular or ill-conditioned (cond = {cond:.3g})")
    return np.linalg.solve(lhs.astype(complex), gradient_theta(p, field, q))


def problem5_path_phase(p: FourMomentum, field: GaugeField, m, path: Path4, segments_per_edge: int = 1) -> complex:
    """theta change along ``path`` from the modified gradient (midpoint quadrature)."""
    if field.kind == "solenoid":
        field.check_path(path)
    mids, steps = _midpoints(path, segments_per_edge)
    grads = np.array([problem5_gradient(p, field, m, q) for q in mids])
    return complex(np.sum(grads * steps))
