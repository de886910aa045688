import math

import numpy as np
import pytest

from ghostlap.errors import DomainError, SingularityError
from ghostlap.harness import (ConvergenceTable, Problem1D, convergence_study, fit_slope,
                              lp_norm, min_eig_study, solve)
from ghostlap.model1d import assemble_system_1d, grid_from_theta, unit_grid
from ghostlap.model2d import GhostGrid2D, assemble_system_2d


def test_zero_data_gives_zero_solution():
    np.testing.assert_array_equal(solve(assemble_system_1d(unit_grid(10, 0.5), 0.0, 0.0, 0.0)), 0.0)
    np.testing.assert_array_equal(solve(assemble_system_2d(GhostGrid2D.from_theta(5, 0.5), 0.0, 0.0)), 0.0)


def test_solve_matches_dense():
    sys_ = Problem1D().system(50, 0.3)
    np.testing.assert_allclose(solve(sys_), np.linalg.solve(sys_.matrix, sys_.rhs), rtol=1e-10)


def test_singular_system_raises():
    class Fake:
        matrix = np.zeros((3, 3))
        rhs = np.ones(3)
        size = 3
    with pytest.raises(SingularityError):
        solve(Fake())


def test_lp_norm_examples():
    assert lp_norm(np.ones(10), 0.1, 1) == pytest.approx(1.0)
    assert lp_norm(np.array([1.0, -3.0, 2.0]), 0.5, "inf") == 3.0
    m = 4000
    x = (np.arange(m) + 0.5) * math.pi / m
    assert lp_norm(np.sin(x), math.pi / m, 2) == pytest.approx(math.sqrt(math.pi / 2), rel=1e-6)
    assert lp_norm(np.ones(4), 0.5, 1, dim=2) == pytest.approx(1.0)


def test_fit_slope():
    hs = np.array([0.1, 0.05, 0.025, 0.0125])
    assert fit_slope(hs, 3 * hs ** 2) == pytest.approx(2.0)
    assert fit_slope(hs, np.zeros(4)) is None


def test_exact_linear_solution_skips_slope():
    class Linear(Problem1D):
        pass
    problem = Linear(a=0.0, b=1.0, f=lambda x: 0 * x, exact=lambda x: 2 * x + 1)
    table = convergence_study(1, [1.0], [8, 16, 32], [math.inf], problem=problem)
    assert all(r.err_norm < 1e-12 for r in table.rows)
    assert table.slopes()[(1, 1.0, math.inf)]["err"] is None


def test_convergence_table_output():
    table = convergence_study(1, [0.5], [16, 32, 64], [1, "inf"])
    rows = table.csv_rows()
    assert ConvergenceTable.CSV_HEADER == ("dim", "n", "theta", "p", "err_norm", "tau_norm")
    assert rows[0][:4] == (1, 16, 0.5, "1")
    assert [r[3] for r in rows] == ["1"] * 3 + ["inf"] * 3
    d = table.slopes_dict()
    assert d["bound_holds"]
    assert {s["p"] for s in d["slopes"]} == {"1", "inf"}


def test_convergence_needs_two_sizes():
    with pytest.raises(DomainError):
        convergence_study(1, [0.5], [16], [1])


def test_two_d_bound_not_computed_by_default():
    table = convergence_study(2, [0.5], [4, 8], [2])
    assert all(r.ainv_norm is None for r in table.rows)


def test_min_eig_study_structure():
    study = min_eig_study([16, 32, 64], [0.0, 1.0])
    assert set(study.by_theta()) == {0.0, 1.0}
    assert all(v < 0.1 for v in study.stabilization().values())
    assert study.to_dict()["rows"][0]["n"] == 16
    # the benchmark geometry is [0, pi]; |lambda|_min approaches (pi/(b-a))^2 = 1 from nearby
    assert all(abs(v - 1.0) < 0.05 for n, _, v in study.rows if n == 64)


def test_problem_grid():
    sys_ = Problem1D().system(10, 0.5)
    assert sys_.grid.h == pytest.approx(math.pi / 10.5)
    assert grid_from_theta(0, math.pi, 10, 0.5) == sys_.grid
