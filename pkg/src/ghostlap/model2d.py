"""Ghost-point system for -Lap u = f on [0,1] x [a,1], 0 < a < h.

Only the south side y = a carries ghost unknowns (x_i, 0); the other three
sides are eliminated into the interior stencil. Unknowns are ordered j-major:
the level j = 0 (ghosts) first, then j = 1..n, with i = 1..n inside each
level. With this order ``h^2 A_h = T_{(n+1,n)}(4 - 2cos t1 - 2cos t2) + X``
where X lives in the first block row only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from .errors import DomainError, GeometryError, SingularityError
from .linalg import check_size, dense_inverse, format_p, induced_norm, parse_p
from .toeplitz import (TrigSymbol, assemble_multilevel_toeplitz, assemble_toeplitz,
                       dst_eigendecomposition, laplacian_symbol)


@dataclass(frozen=True)
class GhostGrid2D:
    n: int
    a: float
    theta_S: float
    h: float

    @classmethod
    def from_a(cls, n: int, a: float) -> "GhostGrid2D":
        if n < 2:
            raise DomainError(f"need n >= 2, got {n}")
        h = 1.0 / (n + 1)
        if not 0.0 < a < h:
            raise GeometryError(f"south boundary a={a} must lie strictly inside (0, h={h})")
        return cls(n=int(n), a=float(a), theta_S=(h - a) / h, h=h)

    @classmethod
    def from_theta(cls, n: int, theta_S: float) -> "GhostGrid2D":
        if n < 2:
            raise DomainError(f"need n >= 2, got {n}")
        h = 1.0 / (n + 1)
        a = (1.0 - theta_S) * h
        if not 0.0 < a < h:
            raise GeometryError(f"theta_S={theta_S} puts a={a} outside (0, h={h})")
        return cls(n=int(n), a=a, theta_S=float(theta_S), h=h)

    @property
    def size(self) -> int:
        return self.n * (self.n + 1)

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """x and y of every unknown in storage order (ghosts at y = 0)."""
        idx = np.arange(1, self.n + 1)
        levels = np.arange(self.n + 1)
        x = np.tile(idx * self.h, self.n + 1)
        y = np.repeat(levels * self.h, self.n)
        return x, y


@dataclass(frozen=True)
class System2D:
    grid: GhostGrid2D
    matrix: np.ndarray
    rhs: np.ndarray
    ordering: str = "j-major"

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def metadata(self) -> dict:
        g = self.grid
        return {"dim": 2, "n": g.n, "theta": g.theta_S, "h": g.h, "a": g.a,
                "size": self.size, "ordering": self.ordering}


@dataclass(frozen=True)
class Correction2D:
    X: np.ndarray
    U: np.ndarray
    C: np.ndarray
    V: np.ndarray


def _eval(func, x, y) -> np.ndarray:
    values = func(x, y) if callable(func) else func
    return np.broadcast_to(np.asarray(values, dtype=float), np.shape(x)).copy()


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.flags.writeable = False
    return arr


def _t1(m: int) -> np.ndarray:
    return assemble_toeplitz(laplacian_symbol(1), m) if m > 1 else np.array([[2.0]])


def assemble_system_2d(grid: GhostGrid2D, f: Callable | float, g: Callable | float) -> System2D:
    n, h = grid.n, grid.h
    check_size(grid.size)
    inv_h2 = 1.0 / (h * h)
    matrix = (np.kron(_t1(n + 1), np.eye(n)) + np.kron(np.eye(n + 1), _t1(n))) * inv_h2
    matrix[:n, :] = 0.0
    matrix[:n, :n] = grid.theta_S * np.eye(n)
    matrix[:n, n:2 * n] = (1.0 - grid.theta_S) * np.eye(n)

    xs = np.arange(1, n + 1) * h
    rhs = np.zeros((n + 1, n))
    rhs[0] = _eval(g, xs, np.full(n, grid.a))
    ys = np.arange(1, n + 1) * h
    X, Y = np.meshgrid(xs, ys)  # rows follow j = 1..n
    interior = _eval(f, X, Y)
    interior[:, 0] += _eval(g, np.zeros(n), ys) * inv_h2
    interior[:, -1] += _eval(g, np.ones(n), ys) * inv_h2
    interior[-1, :] += _eval(g, xs, np.ones(n)) * inv_h2
    rhs[1:] = interior
    return System2D(grid=grid, matrix=_frozen(matrix), rhs=_frozen(rhs.ravel()))


def correction_symbols(grid: GhostGrid2D) -> tuple[TrigSymbol, TrigSymbol]:
    """Symbols of the two nonzero blocks of X: diagonal block and coupling block."""
    h2 = grid.h ** 2
    g1 = TrigSymbol.from_1d({0: h2 * grid.theta_S - 4.0, 1: 1.0, -1: 1.0})
    g2 = TrigSymbol.constant(h2 * (1.0 - grid.theta_S) + 1.0)
    return g1, g2


@dataclass(frozen=True)
class Decomposition2D:
    toeplitz_part: np.ndarray
    correction: Correction2D


def decompose_2d(sys: System2D) -> Decomposition2D:
    """``h^2 A_h = T_{(n+1,n)}(f) + X`` with ``X = U C V`` of rank at most n."""
    grid = sys.grid
    n = grid.n
    toeplitz_part = assemble_multilevel_toeplitz(laplacian_symbol(2), (n + 1, n))
    g1, g2 = correction_symbols(grid)
    v1 = assemble_toeplitz(g1, n)
    v2 = assemble_toeplitz(g2, n)
    V = np.zeros((n, grid.size))
    V[:, :n] = v1
    V[:, n:2 * n] = v2
    U = np.zeros((grid.size, n))
    U[:n, :] = np.eye(n)
    C = np.eye(n)
    X = U @ C @ V
    return Decomposition2D(toeplitz_part=toeplitz_part, correction=Correction2D(X=X, U=U, C=C, V=V))


def toeplitz_inverse_2d(n: int) -> np.ndarray:
    """``T_{(n+1,n)}(4 - 2cos t1 - 2cos t2)^{-1}`` diagonalized by ``Q_{n+1} (x) Q_n``."""
    q1, lam1 = dst_eigendecomposition(n + 1)
    q2, lam2 = dst_eigendecomposition(n)
    check_size(n * (n + 1))
    q = np.kron(q1, q2)
    inv_eig = 1.0 / (lam1[:, None] + lam2[None, :]).ravel()
    return (q * inv_eig[None, :]) @ q


def smw_inverse_2d(sys: System2D) -> np.ndarray:
    """``A_h^{-1} = h^2 (A^{-1} - A^{-1} U (C^{-1} + V A^{-1} U)^{-1} V A^{-1})``."""
    n = sys.grid.n
    dec = decompose_2d(sys)
    U, C, V = dec.correction.U, dec.correction.C, dec.correction.V
    a_inv = toeplitz_inverse_2d(n)
    a_inv_u = a_inv @ U
    capacitance = np.linalg.inv(C) + V @ a_inv_u
    if np.linalg.cond(capacitance) > 1e14:
        raise SingularityError("capacitance matrix is numerically singular")
    correction = a_inv_u @ scipy.linalg.solve(capacitance, V @ a_inv)
    return sys.grid.h ** 2 * (a_inv - correction)


@dataclass(frozen=True)
class NormReport2D:
    n: int
    theta: float
    h: float
    norms: dict
    argmax_column: int | None = None
    argmax_row: int | None = None

    def to_dict(self) -> dict:
        return {"n": self.n, "theta": self.theta, "h": self.h,
                "norms": {format_p(p): {"oracle": v} for p, v in self.norms.items()},
                "argmax_column_p1": self.argmax_column,
                "argmax_row_pinf": self.argmax_row}


def numeric_norms_2d(sys: System2D, ps=(1, 2, math.inf)) -> NormReport2D:
    """Induced norms of the dense inverse; no closed forms exist in 2D.

    The 0-based column (row) attaining the 1-norm (inf-norm) is recorded for
    inspection; the first block corresponds to indices < n.
    """
    check_size(sys.size)
    a_inv = dense_inverse(sys.matrix)
    norms = {parse_p(p): induced_norm(a_inv, parse_p(p)) for p in ps}
    abs_inv = np.abs(a_inv)
    return NormReport2D(n=sys.grid.n, theta=sys.grid.theta_S, h=sys.grid.h, norms=norms,
                        argmax_column=int(abs_inv.sum(axis=0).argmax()),
                        argmax_row=int(abs_inv.sum(axis=1).argmax()))
