"""Spin-1/2 structure from pairs of simultaneous rotation eigenvectors."""
from .errors import DegeneracyError, DomainError
from .pauli_algebra import (
    UnitAxis,
    axis_dot_sigma,
    clifford_table,
    gamma,
    matrix_exp_series,
    pauli,
    rotation_matrix,
)
from .rotation_eigensystem import eigenspinor_minus, eigenspinor_plus, verify_rotation_eigen
from .pair_construction import (
    EigenPair,
    FactorParams,
    FourMomentum,
    assumption1_reduce,
    boost_matrix,
    general_factor_matrix,
    make_pair,
    solve_current_spin_constraints,
    verify_eq6,
)
from .dirac_momentum import (
    Bispinor,
    assemble_bispinor,
    dirac_residual_momentum,
    solution_space_dimension,
    spin_down_partner,
)
from .phase_geometry import (
    GaugeField,
    Path4,
    dirac_residual_coordinate,
    gradient_theta,
    path_phase,
    phase_derivative_check,
    plane_wave_phase,
    problem5_gradient,
)

__version__ = "0.1.0"
