"""Ghost-point discretization of -u'' = f on (a, b) with Dirichlet data.

The left boundary sits between the ghost node x_0 and x_1; the boundary
condition there is imposed by interpolating u at the first ``s`` nodes and
kept as an explicit (non-eliminated) equation in row 0. The right boundary
coincides with x_{n+1} and is eliminated into the last interior row.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, UnsupportedError
from .linalg import bandwidths, check_size
from .toeplitz import assemble_toeplitz, laplacian_symbol


@dataclass(frozen=True)
class GhostGrid1D:
    a: float
    b: float
    n: int
    theta: float
    h: float
    x0: float

    @property
    def nodes(self) -> np.ndarray:
        """x_0 .. x_{n+1}; x_{n+1} is pinned to b."""
        x = self.x0 + self.h * np.arange(self.n + 2)
        x[-1] = self.b
        return x

    @property
    def unknown_nodes(self) -> np.ndarray:
        """Positions of the n+1 unknowns u_0 .. u_n."""
        return self.nodes[:-1]


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not 0.0 <= theta <= 1.0 or math.isnan(theta):
        raise DomainError(f"theta must lie in [0, 1], got {theta}")
    return theta


def grid_from_theta(a: float, b: float, n: int, theta: float) -> GhostGrid1D:
    """Place n interior nodes plus a ghost node so that (x_1 - a)/h == theta."""
    theta = _check_theta(theta)
    if not b > a:
        raise DomainError(f"need b > a, got a={a}, b={b}")
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    h = (b - a) / (n + theta)
    return GhostGrid1D(a=float(a), b=float(b), n=int(n), theta=theta, h=h, x0=b - (n + 1) * h)


def unit_grid(n: int, theta: float) -> GhostGrid1D:
    """Grid normalized to b - x_0 = 1, so that h = 1/(n+1) exactly."""
    theta = _check_theta(theta)
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    h = 1.0 / (n + 1)
    return GhostGrid1D(a=(1.0 - theta) * h, b=1.0, n=int(n), theta=theta, h=h, x0=0.0)


@dataclass(frozen=True)
class BoundaryStencil:
    s: int
    coeffs: np.ndarray


def bc_coefficients(s: int, grid: GhostGrid1D) -> BoundaryStencil:
    """Weights c_i with sum c_i u_i = q(a), q interpolating u on x_0..x_{s-1}."""
    if s < 2:
        raise DomainError(f"stencil size must be >= 2, got {s}")
    if s > grid.n + 1:
        raise DomainError(f"stencil size {s} exceeds the {grid.n + 1} unknowns")
    if s == 2:
        coeffs = np.array([grid.theta, 1.0 - grid.theta])
    else:
        # Lagrange basis in grid units: nodes 0..s-1, boundary at 1 - theta
        xi = 1.0 - grid.theta
        nodes = np.arange(s, dtype=float)
        coeffs = np.ones(s)
        for i in range(s):
            for j in range(s):
                if j != i:
                    coeffs[i] *= (xi - nodes[j]) / (nodes[i] - nodes[j])
    coeffs.flags.writeable = False
    return BoundaryStencil(s=s, coeffs=coeffs)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class System1D:
    grid: GhostGrid1D
    matrix: np.ndarray
    rhs: np.ndarray
    stencil: BoundaryStencil = field(repr=False)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    @property
    def bandwidths(self) -> tuple[int, int]:
        return bandwidths(self.matrix)

    def metadata(self) -> dict:
        g = self.grid
        return {"dim": 1, "n": g.n, "theta": g.theta, "h": g.h, "a": g.a, "b": g.b,
                "x0": g.x0, "size": self.size, "stencil_size": self.stencil.s,
                "ordering": "x0..xn"}


def _sample(func, *coords) -> np.ndarray:
    if callable(func):
        values = func(*coords)
    else:
        values = func
    return np.broadcast_to(np.asarray(values, dtype=float), np.shape(coords[0])).copy()


def assemble_system_1d(grid: GhostGrid1D, f: Callable | float, g_a: float, g_b: float,
                       s: int = 2) -> System1D:
    """Matrix and right-hand side of the ghost-point system (size n+1)."""
    n, h = grid.n, grid.h
    check_size(n + 1)
    stencil = bc_coefficients(s, grid)
    inv_h2 = 1.0 / (h * h)
    matrix = np.zeros((n + 1, n + 1))
    matrix[0, :s] = stencil.coeffs
    rows = np.arange(1, n + 1)
    matrix[rows, rows] = 2.0 * inv_h2
    matrix[rows, rows - 1] = -inv_h2
    matrix[rows[:-1], rows[:-1] + 1] = -inv_h2

    rhs = np.empty(n + 1)
    rhs[0] = g_a
    rhs[1:] = _sample(f, grid.nodes[1:n + 1])
    rhs[n] += g_b * inv_h2
    return System1D(grid=grid, matrix=_frozen(matrix), rhs=_frozen(rhs), stencil=stencil)


def rank_one_decomposition(sys: System1D) -> tuple[np.ndarray, np.ndarray]:
    """Split ``A_h = (1/h^2) T_{n+1}(2-2cos) + (1/h^2) e_1 v_h^T``.

    Returns the Toeplitz part ``(1/h^2) T_{n+1}`` (that is, S_{n+1}) and v_h.
    """
    if sys.stencil.s != 2:
        raise UnsupportedError("the rank-one split is only defined for stencil size 2")
    g = sys.grid
    h2 = g.h * g.h
    toeplitz_part = assemble_toeplitz(laplacian_symbol(1), g.n + 1) / h2
    v_h = np.zeros(g.n + 1)
    v_h[0] = g.theta * h2 - 2.0
    v_h[1] = (1.0 - g.theta) * h2 + 1.0
    return toeplitz_part, v_h


def consistency_error(sys: System1D, exact_u: Callable) -> np.ndarray:
    """``tau_h = f_h - A_h u`` with u sampled at x_0..x_n."""
    u = _sample(exact_u, sys.grid.unknown_nodes)
    return sys.rhs - sys.matrix @ u
