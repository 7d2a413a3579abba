import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import angles, unit_axes
from rotspin import DomainError, UnitAxis
from rotspin.pauli_algebra import (
    METRIC,
    as_axis,
    axis_dot_sigma,
    clifford_table,
    gamma,
    matrix_exp_series,
    pauli,
    rotation_matrix,
)

I2 = np.eye(2)


def test_pauli_constants():
    np.testing.assert_array_equal(pauli(1), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(pauli(2), [[0, -1j], [1j, 0]])
    np.testing.assert_array_equal(pauli(3), [[1, 0], [0, -1]])
    np.testing.assert_array_equal(pauli(4), I2)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_pauli_hermitian_traceless(k):
    s = pauli(k)
    np.testing.assert_array_equal(s, s.conj().T)
    assert np.trace(s) == 0


@pytest.mark.parametrize("k", [0, 5, -1, "x"])
def test_pauli_bad_index(k):
    with pytest.raises(DomainError):
        pauli(k)


def test_pauli_returns_copy():
    s = pauli(3)
    s[0, 0] = 99
    assert pauli(3)[0, 0] == 1


def test_axis_normalizes_and_rejects_tiny():
    n = UnitAxis.from_vector([0, 0, 5])
    assert (n.n1, n.n2, n.n3) == (0, 0, 1)
    with pytest.raises(DomainError):
        UnitAxis.from_vector([1e-9, 0, 0])
    with pytest.raises(DomainError):
        UnitAxis(0.0, 0.0, 2.0)


def test_axis_angles_round_trip(rng):
    for _ in range(200):
        n = UnitAxis.random(rng)
        m = UnitAxis.from_angles(n.polar, n.azimuth)
        np.testing.assert_allclose(m.vector, n.vector, atol=1e-14)
        assert 0 <= n.polar <= math.pi
        assert -math.pi < n.azimuth <= math.pi


def test_axis_pole_chart():
    assert UnitAxis(0.0, 0.0, 1.0).azimuth == 0.0
    assert UnitAxis(0.0, 0.0, -1.0).azimuth == 0.0
    assert UnitAxis(0.0, 0.0, -1.0).polar == math.pi
    assert UnitAxis(-1.0, 0.0, 0.0).azimuth == math.pi


def test_axis_dot_sigma_single_components():
    np.testing.assert_array_equal(axis_dot_sigma((0, 0, 1)), pauli(3))
    np.testing.assert_array_equal(axis_dot_sigma((1, 0, 0)), pauli(1))


def test_axis_dot_sigma_rejects_non_unit():
    with pytest.raises(DomainError):
        axis_dot_sigma((0, 0, 2))
    with pytest.raises(DomainError):
        as_axis((1, 0))


@given(unit_axes())
def test_axis_dot_sigma_squares_to_identity(n):
    m = axis_dot_sigma(n)
    np.testing.assert_allclose(m @ m, I2, atol=1e-14)
    np.testing.assert_allclose(m, m.conj().T, atol=0)
    assert abs(np.trace(m)) <= 1e-15


def test_rotation_about_z_is_diagonal():
    theta = 0.83
    r = rotation_matrix((0, 0, 1), theta)
    np.testing.assert_allclose(r, np.diag([np.exp(0.5j * theta), np.exp(-0.5j * theta)]), atol=1e-15)


@given(unit_axes())
def test_rotation_zero_angle_is_identity(n):
    np.testing.assert_array_equal(rotation_matrix(n, 0.0), I2)


@given(unit_axes(), angles)
def test_rotation_unitary_unit_det(n, theta):
    r = rotation_matrix(n, theta)
    np.testing.assert_allclose(r @ r.conj().T, I2, atol=1e-12)
    assert abs(np.linalg.det(r) - 1) <= 1e-12


@given(unit_axes(), angles, angles)
def test_rotation_inverse_and_additivity(n, t1, t2):
    np.testing.assert_allclose(rotation_matrix(n, t1) @ rotation_matrix(n, -t1), I2, atol=1e-12)
    np.testing.assert_allclose(
        rotation_matrix(n, t1) @ rotation_matrix(n, t2), rotation_matrix(n, t1 + t2), atol=1e-12
    )


def test_rotation_rejects_nonfinite_angle():
    with pytest.raises(DomainError):
        rotation_matrix((0, 0, 1), math.inf)


@settings(max_examples=200)
@given(unit_axes(), angles)
def test_rotation_matches_series(n, theta):
    series = matrix_exp_series(0.5j * theta * axis_dot_sigma(n), 30)
    np.testing.assert_allclose(rotation_matrix(n, theta), series, atol=1e-10)


def test_rotation_pi_over_3_random_axis(rng):
    n = UnitAxis.random(rng)
    series = matrix_exp_series(0.5j * (math.pi / 3) * axis_dot_sigma(n), 30)
    assert np.max(np.abs(rotation_matrix(n, math.pi / 3) - series)) <= 1e-10


def test_series_of_zero_is_identity():
    np.testing.assert_array_equal(matrix_exp_series(np.zeros((2, 2)), 30), I2)


def test_series_quarter_turn():
    # closed form: exp(+-i pi/2) = +-i
    got = matrix_exp_series(0.5j * math.pi * pauli(3), 30)
    np.testing.assert_allclose(got, np.diag([1j, -1j]), atol=1e-12)


def test_series_converged_by_twenty_terms(rng):
    # tail after 20 terms is bounded by x^20/20! e^x for x = ||m||
    for x in (math.pi / 2, math.pi):
        bound = x**20 / math.factorial(20) * math.exp(x)
        for _ in range(20):
            m = 1j * x * axis_dot_sigma(UnitAxis.random(rng))  # spectral norm x
            diff = np.max(np.abs(matrix_exp_series(m, 20) - matrix_exp_series(m, 30)))
            assert diff <= bound + 1e-15
            if x <= math.pi / 2:
                assert diff < 1e-14


def test_series_needs_a_term():
    with pytest.raises(DomainError):
        matrix_exp_series(np.zeros((2, 2)), 0)


def test_gamma_block_layout():
    z = np.zeros((2, 2))
    for k in (1, 2, 3):
        g = gamma(k)
        np.testing.assert_array_equal(g[:2, :2], z)
        np.testing.assert_array_equal(g[2:, 2:], z)
        np.testing.assert_array_equal(g[:2, 2:], -pauli(k))
        np.testing.assert_array_equal(g[2:, :2], pauli(k))
    np.testing.assert_array_equal(gamma(4)[:2, 2:], I2)
    np.testing.assert_array_equal(gamma(4)[2:, :2], I2)


def test_gamma_bad_index():
    with pytest.raises(DomainError):
        gamma(0)


def test_clifford_table():
    table = clifford_table()
    for mu in range(4):
        for nu in range(4):
            np.testing.assert_allclose(table[mu, nu], 2 * METRIC[mu, nu] * np.eye(4), atol=1e-14)
    np.testing.assert_array_equal(gamma(4) @ gamma(4), np.eye(4))
    np.testing.assert_array_equal(gamma(1) @ gamma(2) + gamma(2) @ gamma(1), np.zeros((4, 4)))
