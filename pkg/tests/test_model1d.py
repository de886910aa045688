import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ghostlap.errors import DomainError, UnsupportedError
from ghostlap.model1d import (assemble_system_1d, bc_coefficients, consistency_error,
                              grid_from_theta, rank_one_decomposition, unit_grid)

thetas = st.floats(0.0, 1.0)


def test_grid_examples():
    g = grid_from_theta(0.0, math.pi, 10, 1.0)
    assert g.h == pytest.approx(math.pi / 11)
    assert g.x0 == pytest.approx(0.0, abs=1e-15)
    g = grid_from_theta(0.0, math.pi, 10, 0.5)
    assert g.h == pytest.approx(math.pi / 10.5)
    assert g.x0 == pytest.approx(math.pi - 11 * g.h)


@pytest.mark.parametrize("theta", [-0.1, 1.5, math.nan])
def test_grid_rejects_bad_theta(theta):
    with pytest.raises(DomainError):
        grid_from_theta(0.0, 1.0, 8, theta)


def test_grid_rejects_bad_interval_and_size():
    with pytest.raises(DomainError):
        grid_from_theta(1.0, 1.0, 8, 0.5)
    with pytest.raises(DomainError):
        unit_grid(1, 0.5)


@given(thetas, st.integers(2, 200))
def test_grid_places_boundary_at_theta(theta, n):
    g = grid_from_theta(-1.0, 2.0, n, theta)
    nodes = g.nodes
    assert nodes[-1] == 2.0
    np.testing.assert_allclose(np.diff(nodes), g.h, rtol=1e-9)
    assert (nodes[1] - g.a) / g.h == pytest.approx(theta, abs=1e-9)


def test_two_point_stencil():
    g = unit_grid(8, 0.3)
    np.testing.assert_array_equal(bc_coefficients(2, g).coeffs, [0.3, 0.7])
    with pytest.raises(DomainError):
        bc_coefficients(1, g)


@given(thetas, st.integers(2, 5))
def test_stencil_reproduces_polynomials(theta, s):
    g = unit_grid(10, theta)
    c = bc_coefficients(s, g).coeffs
    assert c.sum() == pytest.approx(1.0)
    x = g.unknown_nodes[:s]
    for k in range(s):
        assert c @ x ** k == pytest.approx(g.a ** k, abs=1e-9)


def test_zero_data_gives_zero_rhs():
    sys_ = assemble_system_1d(unit_grid(6, 0.4), 0.0, 0.0, 0.0)
    np.testing.assert_array_equal(sys_.rhs, 0.0)
    assert sys_.size == 7
    assert sys_.bandwidths == (1, 1)


def test_theta_one_row_zero():
    sys_ = assemble_system_1d(unit_grid(5, 1.0), 0.0, 0.0, 0.0)
    np.testing.assert_array_equal(sys_.matrix[0], [1, 0, 0, 0, 0, 0])


def test_arrays_are_read_only():
    sys_ = assemble_system_1d(unit_grid(5, 0.5), 1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        sys_.matrix[0, 0] = 3.0


def test_rhs_layout():
    g = unit_grid(4, 0.5)
    sys_ = assemble_system_1d(g, lambda x: x, 2.0, 3.0)
    assert sys_.rhs[0] == 2.0
    np.testing.assert_allclose(sys_.rhs[1:4], g.nodes[1:4])
    assert sys_.rhs[4] == pytest.approx(g.nodes[4] + 3.0 / g.h ** 2)


def test_rank_one_vector_at_theta_one():
    g = grid_from_theta(0.0, 1.0, 9, 1.0)  # h = 0.1
    _, v = rank_one_decomposition(assemble_system_1d(g, 0.0, 0.0, 0.0))
    np.testing.assert_allclose(v[:2], [-1.99, 1.0])
    np.testing.assert_array_equal(v[2:], 0.0)


@given(thetas, st.integers(2, 40))
@settings(max_examples=40)
def test_rank_one_reconstruction(theta, n):
    sys_ = assemble_system_1d(unit_grid(n, theta), 0.0, 0.0, 0.0)
    s, v = rank_one_decomposition(sys_)
    rebuilt = s.copy()
    rebuilt[0] += v / sys_.grid.h ** 2
    np.testing.assert_allclose(rebuilt, sys_.matrix, atol=1e-9 * np.abs(sys_.matrix).max())


def test_rank_one_rejects_wider_stencil():
    sys_ = assemble_system_1d(unit_grid(6, 0.5), 0.0, 0.0, 0.0, s=3)
    with pytest.raises(UnsupportedError):
        rank_one_decomposition(sys_)


@pytest.mark.parametrize("theta", [0.0, 0.37, 1.0])
def test_consistency_exact_on_linears(theta):
    g = grid_from_theta(0.5, 2.0, 12, theta)
    u = lambda x: 3.0 * x - 1.0
    sys_ = assemble_system_1d(g, 0.0, u(g.a), u(g.b))
    np.testing.assert_allclose(consistency_error(sys_, u), 0.0, atol=1e-9)
