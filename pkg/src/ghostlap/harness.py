"""Manufactured-solution solves, L^p error tables and order fits."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from .errors import DomainError, SingularityError
from .linalg import bandwidths, check_size, dense_inverse, format_p, induced_norm, parse_p, to_banded
from .model1d import System1D, assemble_system_1d, consistency_error, grid_from_theta
from .model2d import GhostGrid2D, System2D, assemble_system_2d
from .spectra import eigenvalues


def solve(sys: System1D | System2D) -> np.ndarray:
    """Banded LU with partial pivoting (LAPACK gbsv)."""
    check_size(sys.size)
    lower, upper = bandwidths(sys.matrix)
    ab = to_banded(sys.matrix, lower, upper)
    try:
        u = scipy.linalg.solve_banded((lower, upper), ab, sys.rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularityError(str(exc)) from exc
    if not np.all(np.isfinite(u)):
        raise SingularityError("solution is not finite")
    return u


def lp_norm(values, h: float, p, dim: int = 1) -> float:
    """Discrete L^p norm with cell measure h**dim; p = inf is the max norm."""
    p = parse_p(p)
    v = np.abs(np.asarray(values, dtype=float))
    if p == math.inf:
        return float(v.max()) if v.size else 0.0
    return float((h ** dim * np.sum(v ** p)) ** (1.0 / p))


# -- benchmark problems --------------------------------------------------------

@dataclass(frozen=True)
class Problem1D:
    """-u'' = f on (a, b) with exact solution known at every node."""
    a: float = 0.0
    b: float = math.pi
    f: Callable = field(default=lambda x: -np.sin(x))
    exact: Callable = field(default=lambda x: -np.sin(x))

    def system(self, n: int, theta: float) -> System1D:
        grid = grid_from_theta(self.a, self.b, n, theta)
        return assemble_system_1d(grid, self.f, float(self.exact(self.a)), float(self.exact(self.b)))


def _u2(x, y):
    return np.sin(np.pi * x) * np.sin(np.pi * y)


def _f2(x, y):
    return 2.0 * np.pi ** 2 * np.sin(np.pi * x) * np.sin(np.pi * y)


@dataclass(frozen=True)
class Problem2D:
    """u = sin(pi x) sin(pi y) on [0,1] x [a,1]; g is u sampled on the boundary."""
    f: Callable = _f2
    exact: Callable = _u2

    def system(self, n: int, theta: float) -> System2D:
        return assemble_system_2d(GhostGrid2D.from_theta(n, theta), self.f, self.exact)


@dataclass(frozen=True)
class ConvergenceRow:
    dim: int
    n: int
    theta: float
    p: float
    err_norm: float
    tau_norm: float
    h: float = math.nan
    # Vector-norm quantities for the bound ||e||_p <= ||A^{-1}||_p ||tau||_p
    ainv_norm: float | None = None
    err_vec: float | None = None
    tau_vec: float | None = None

    @property
    def product(self) -> float | None:
        if self.ainv_norm is None:
            return None
        return self.ainv_norm * self.tau_norm

    @property
    def bound_holds(self) -> bool | None:
        if self.ainv_norm is None:
            return None
        return self.err_vec <= self.ainv_norm * self.tau_vec * (1 + 1e-12) + 1e-300


def fit_slope(hs: Sequence[float], values: Sequence[float], last: int = 4) -> float | None:
    """Least-squares slope of log(value) against log(h) over the ``last`` finest rows."""
    hs = np.asarray(hs, dtype=float)[-last:]
    values = np.asarray(values, dtype=float)[-last:]
    if hs.size < 2 or np.any(values <= 1e-14):
        return None
    slope, _ = np.polyfit(np.log(hs), np.log(values), 1)
    return float(slope)


@dataclass
class ConvergenceTable:
    rows: list = field(default_factory=list)

    CSV_HEADER = ("dim", "n", "theta", "p", "err_norm", "tau_norm")

    def groups(self) -> dict:
        out: dict = {}
        for row in sorted(self.rows, key=lambda r: (r.dim, r.theta, r.p, r.n)):
            out.setdefault((row.dim, row.theta, row.p), []).append(row)
        return out

    def slopes(self) -> dict:
        """Fitted orders per (dim, theta, p) for error, consistency and bound product."""
        out = {}
        for key, rows in self.groups().items():
            hs = [r.h for r in rows]
            products = [r.product for r in rows]
            out[key] = {
                "err": fit_slope(hs, [r.err_norm for r in rows]),
                "tau": fit_slope(hs, [r.tau_norm for r in rows]),
                "product": None if None in products else fit_slope(hs, products),
            }
        return out

    def slopes_dict(self) -> dict:
        return {
            "slopes": [
                {"dim": d, "theta": t, "p": format_p(p), **vals}
                for (d, t, p), vals in self.slopes().items()
            ],
            "bound_holds": all(r.bound_holds is not False for r in self.rows),
        }

    def csv_rows(self) -> list[tuple]:
        return [(r.dim, r.n, r.theta, format_p(r.p), r.err_norm, r.tau_norm)
                for rows in self.groups().values() for r in rows]


def _vector_norm(v: np.ndarray, p) -> float:
    return float(np.linalg.norm(v, ord=np.inf if p == math.inf else p))


def convergence_study(dim: int, thetas: Sequence[float], ns: Sequence[int], ps: Sequence,
                      problem=None, with_bound: bool | None = None) -> ConvergenceTable:
    """Solve the benchmark problem on an n ladder and tabulate error/consistency norms.

    The bound ``||A^{-1}||_p ||tau||`` needs a dense inverse, so it is computed
    by default only in 1D.
    """
    ps = [parse_p(p) for p in ps]
    ns = sorted(int(n) for n in ns)
    if len(ns) < 2:
        raise DomainError("convergence_study needs at least two sizes")
    if problem is None:
        problem = Problem1D() if dim == 1 else Problem2D()
    if with_bound is None:
        with_bound = dim == 1
    table = ConvergenceTable()
    for theta in thetas:
        for n in ns:
            sys = problem.system(n, theta)
            u_h = solve(sys)
            if dim == 1:
                nodes = sys.grid.unknown_nodes
                exact = np.asarray(problem.exact(nodes), dtype=float)
                tau = consistency_error(sys, problem.exact)
            else:
                x, y = sys.grid.coordinates()
                exact = np.asarray(problem.exact(x, y), dtype=float)
                tau = sys.rhs - sys.matrix @ exact
            err = exact - u_h
            h = sys.grid.h
            a_inv = dense_inverse(sys.matrix) if with_bound else None
            for p in ps:
                ainv_norm = None
                if a_inv is not None:
                    if p == 2:
                        ainv_norm = 1.0 / float(scipy.linalg.svdvals(sys.matrix)[-1])
                    else:
                        ainv_norm = induced_norm(a_inv, p)
                table.rows.append(ConvergenceRow(
                    dim=dim, n=n, theta=float(theta), p=p,
                    err_norm=lp_norm(err, h, p, dim), tau_norm=lp_norm(tau, h, p, dim), h=h,
                    ainv_norm=ainv_norm, err_vec=_vector_norm(err, p), tau_vec=_vector_norm(tau, p),
                ))
    return table


@dataclass(frozen=True)
class MinEigStudy:
    rows: tuple  # (n, theta, min |lambda|)

    def by_theta(self) -> dict:
        out: dict = {}
        for n, theta, value in sorted(self.rows):
            out.setdefault(theta, []).append((n, value))
        return out

    def stabilization(self) -> dict:
        """``|v(n_max) - v(n_prev)| / |v(n_max)|`` per theta (n_prev = n_max/2 when present)."""
        out = {}
        for theta, pairs in self.by_theta().items():
            values = dict(pairs)
            n_max = max(values)
            n_prev = n_max // 2 if n_max // 2 in values else max(n for n in values if n < n_max)
            out[theta] = abs(values[n_max] - values[n_prev]) / abs(values[n_max])
        return out

    def theta_spread(self) -> float:
        """(max - min) / mean of min|lambda| over theta at the largest n."""
        n_max = max(n for n, _, _ in self.rows)
        values = np.array([v for n, _, v in self.rows if n == n_max])
        return float((values.max() - values.min()) / values.mean())

    def to_dict(self) -> dict:
        return {
            "rows": [{"n": n, "theta": t, "min_abs_eig": v} for n, t, v in sorted(self.rows)],
            "stabilization": [{"theta": t, "ratio": r} for t, r in sorted(self.stabilization().items())],
            "theta_spread": self.theta_spread(),
        }


def min_eig_study(ns: Sequence[int], thetas: Sequence[float], problem: Problem1D | None = None
                  ) -> MinEigStudy:
    """Smallest |eigenvalue| of A_h for the 1D benchmark geometry."""
    problem = problem or Problem1D()
    if len(ns) < 2:
        raise DomainError("min_eig_study needs at least two sizes")
    rows = []
    for theta in thetas:
        for n in sorted(ns):
            sys = problem.system(n, theta)
            lam = eigenvalues(sys.matrix)
            rows.append((int(n), float(theta), float(np.abs(lam).min())))
    return MinEigStudy(rows=tuple(rows))
