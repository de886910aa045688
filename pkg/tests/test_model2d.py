import math

import numpy as np
import pytest

from ghostlap.errors import DomainError, GeometryError, ResourceError
from ghostlap.linalg import dense_inverse, set_max_dense_size
from ghostlap.model2d import (GhostGrid2D, assemble_system_2d, correction_symbols, decompose_2d,
                              numeric_norms_2d, smw_inverse_2d, toeplitz_inverse_2d)
from ghostlap.toeplitz import assemble_multilevel_toeplitz, laplacian_symbol


def test_smallest_block_layout():
    sys_ = assemble_system_2d(GhostGrid2D.from_theta(2, 0.5), 0.0, 0.0)
    assert sys_.matrix.shape == (6, 6)
    np.testing.assert_array_equal(sys_.matrix[0], [0.5, 0, 0.5, 0, 0, 0])
    np.testing.assert_array_equal(sys_.matrix[1], [0, 0.5, 0, 0.5, 0, 0])
    np.testing.assert_array_equal(sys_.rhs, 0.0)
    h2 = (1 / 3) ** 2
    np.testing.assert_allclose(sys_.matrix[2] * h2, [-1, 0, 4, -1, -1, 0])


@pytest.mark.parametrize("a", [0.0, 1 / 3, 0.5, -0.1])
def test_geometry_errors(a):
    with pytest.raises(GeometryError):
        GhostGrid2D.from_a(2, a)


def test_geometry_error_is_domain_error_and_small_n_rejected():
    with pytest.raises(DomainError):
        GhostGrid2D.from_theta(4, 1.0)
    with pytest.raises(DomainError):
        GhostGrid2D.from_theta(1, 0.5)


def test_from_a_round_trip():
    g = GhostGrid2D.from_a(9, 0.03)
    assert g.theta_S == pytest.approx(0.7)
    assert GhostGrid2D.from_theta(9, g.theta_S).a == pytest.approx(0.03)


def test_rhs_collects_eliminated_boundaries():
    n = 3
    grid = GhostGrid2D.from_theta(n, 0.5)
    sys_ = assemble_system_2d(grid, 0.0, 1.0)
    rhs = sys_.rhs.reshape(n + 1, n)
    inv_h2 = 1 / grid.h ** 2
    np.testing.assert_allclose(rhs[0], 1.0)
    np.testing.assert_allclose(rhs[1], [inv_h2, 0, inv_h2])
    np.testing.assert_allclose(rhs[n], [2 * inv_h2, inv_h2, 2 * inv_h2])


def test_constant_solution_is_reproduced():
    sys_ = assemble_system_2d(GhostGrid2D.from_theta(5, 0.3), 0.0, 2.5)
    np.testing.assert_allclose(np.linalg.solve(sys_.matrix, sys_.rhs), 2.5, rtol=1e-12)


@pytest.mark.parametrize("n,theta", [(2, 0.5), (6, 0.1), (11, 0.95)])
def test_decomposition(n, theta):
    sys_ = assemble_system_2d(GhostGrid2D.from_theta(n, theta), 0.0, 0.0)
    dec = decompose_2d(sys_)
    c = dec.correction
    np.testing.assert_array_equal(c.X, c.U @ c.C @ c.V)
    np.testing.assert_allclose(dec.toeplitz_part + c.X, sys_.grid.h ** 2 * sys_.matrix, atol=1e-13)
    assert np.linalg.matrix_rank(c.X) == n
    np.testing.assert_array_equal(c.X[n:], 0.0)


def test_correction_symbols_values():
    grid = GhostGrid2D.from_theta(9, 0.5)
    g1, g2 = correction_symbols(grid)
    assert g1(0.0) == pytest.approx(0.01 * 0.5 - 2)
    assert g2.coeffs[(0,)] == pytest.approx(0.01 * 0.5 + 1)


def test_toeplitz_inverse():
    n = 5
    t = assemble_multilevel_toeplitz(laplacian_symbol(2), (n + 1, n))
    np.testing.assert_allclose(toeplitz_inverse_2d(n) @ t, np.eye(n * (n + 1)), atol=1e-12)


@pytest.mark.parametrize("theta", [0.05, 0.5, 0.99])
def test_woodbury_inverse(theta):
    sys_ = assemble_system_2d(GhostGrid2D.from_theta(10, theta), 0.0, 0.0)
    np.testing.assert_allclose(smw_inverse_2d(sys_), dense_inverse(sys_.matrix), atol=1e-10)


def test_numeric_norms():
    sys_ = assemble_system_2d(GhostGrid2D.from_theta(6, 0.5), 0.0, 0.0)
    report = numeric_norms_2d(sys_)
    inv = dense_inverse(sys_.matrix)
    assert report.norms[1] == pytest.approx(np.abs(inv).sum(axis=0).max())
    assert report.norms[math.inf] == pytest.approx(np.abs(inv).sum(axis=1).max())
    assert report.norms[2] <= math.sqrt(report.norms[1] * report.norms[math.inf])
    assert set(report.to_dict()["norms"]) == {"1", "2", "inf"}


def test_size_cap():
    set_max_dense_size(50)
    try:
        with pytest.raises(ResourceError):
            assemble_system_2d(GhostGrid2D.from_theta(8, 0.5), 0.0, 0.0)
    finally:
        set_max_dense_size(None)
