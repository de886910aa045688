"""Banded (multilevel) Toeplitz matrices, their symbols, and the exact
spectral/inverse machinery of the discrete 1D Laplacian ``T_m(2 - 2cos)``.

Index conventions: public functions that take matrix positions use 1-based
indices, linearized storage is 0-based with the last index varying fastest.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import DimensionError, NumericError
from .linalg import check_size


@dataclass(frozen=True)
class TrigSymbol:
    """Real trigonometric polynomial ``f(t) = sum_k a_k exp(i k.t)``.

    ``coeffs`` maps integer offset tuples (length ``level``) to real Fourier
    coefficients. Only finitely many offsets are stored, so the symbol is
    always banded.
    """

    level: int
    coeffs: Mapping[tuple[int, ...], float]

    def __post_init__(self):
        if self.level not in (1, 2):
            raise DimensionError(f"symbol level must be 1 or 2, got {self.level}")
        clean = {}
        for key, value in self.coeffs.items():
            key = (key,) if isinstance(key, (int, np.integer)) else tuple(int(k) for k in key)
            if len(key) != self.level:
                raise DimensionError(f"offset {key} does not match level {self.level}")
            if value != 0.0:
                clean[key] = clean.get(key, 0.0) + float(value)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def from_1d(cls, coeffs: Mapping[int, float]) -> "TrigSymbol":
        return cls(1, {(k,): v for k, v in coeffs.items()})

    @classmethod
    def constant(cls, value: float, level: int = 1) -> "TrigSymbol":
        return cls(level, {(0,) * level: value})

    @property
    def band(self) -> tuple[int, ...]:
        """Largest |offset| per level (the omega of the banded matrix)."""
        if not self.coeffs:
            return (0,) * self.level
        keys = np.array(list(self.coeffs))
        return tuple(int(b) for b in np.abs(keys).max(axis=0))

    @property
    def is_even(self) -> bool:
        return all(self.coeffs.get(tuple(-k for k in key), 0.0) == value
                   for key, value in self.coeffs.items())

    def __call__(self, *thetas):
        """Evaluate at angle arrays; returns real values for even symbols."""
        if len(thetas) != self.level:
            raise DimensionError(f"expected {self.level} angle arguments")
        thetas = np.broadcast_arrays(*(np.asarray(t, dtype=float) for t in thetas))
        if self.is_even:
            # a_k e^{ikt} + a_{-k} e^{-ikt} = 2 a_k cos(kt)
            out = np.zeros(thetas[0].shape)
            for key, value in self.coeffs.items():
                out = out + value * np.cos(sum(k * t for k, t in zip(key, thetas)))
            return out
        out = np.zeros(thetas[0].shape, dtype=complex)
        for key, value in self.coeffs.items():
            out = out + value * np.exp(1j * sum(k * t for k, t in zip(key, thetas)))
        return out

    def __add__(self, other: "TrigSymbol") -> "TrigSymbol":
        if other.level != self.level:
            raise DimensionError("cannot add symbols of different levels")
        merged = dict(self.coeffs)
        for key, value in other.coeffs.items():
            merged[key] = merged.get(key, 0.0) + value
        return TrigSymbol(self.level, merged)

    def scaled(self, factor: float) -> "TrigSymbol":
        return TrigSymbol(self.level, {k: factor * v for k, v in self.coeffs.items()})


def laplacian_symbol(level: int = 1) -> TrigSymbol:
    """``2 - 2cos(t)`` (level 1) or ``4 - 2cos(t1) - 2cos(t2)`` (level 2)."""
    if level == 1:
        return TrigSymbol.from_1d({0: 2.0, 1: -1.0, -1: -1.0})
    if level == 2:
        return TrigSymbol(2, {(0, 0): 4.0, (1, 0): -1.0, (-1, 0): -1.0,
                              (0, 1): -1.0, (0, -1): -1.0})
    raise DimensionError(f"unsupported level {level}")


def shift_matrix(m: int, offset: int) -> np.ndarray:
    """``J_m^(l)``: ones where row - col == offset."""
    return np.eye(m, k=-offset)


def assemble_toeplitz(symbol: TrigSymbol, n: int) -> np.ndarray:
    """Dense ``T_n(f)`` with ``(T_n)_{s,t} = a_{s-t}``."""
    if symbol.level != 1:
        raise DimensionError("assemble_toeplitz needs a level-1 symbol")
    if n < 1:
        raise DimensionError(f"n must be positive, got {n}")
    (omega,) = symbol.band
    if omega >= n:
        raise DimensionError(f"symbol band {omega} must be smaller than n={n}")
    check_size(n)
    out = np.zeros((n, n))
    for (k,), value in symbol.coeffs.items():
        out += value * shift_matrix(n, k)
    return out


def assemble_multilevel_toeplitz(symbol: TrigSymbol, n: Sequence[int]) -> np.ndarray:
    """Two-level ``T_n(f) = sum_k a_k J^(k1) (x) J^(k2)``."""
    if symbol.level != 2:
        raise DimensionError("assemble_multilevel_toeplitz needs a level-2 symbol")
    n1, n2 = (int(v) for v in n)
    if n1 < 1 or n2 < 1:
        raise DimensionError(f"sizes must be positive, got {(n1, n2)}")
    if any(b >= size for b, size in zip(symbol.band, (n1, n2))):
        raise DimensionError(f"symbol band {symbol.band} must be below sizes {(n1, n2)}")
    check_size(n1 * n2)
    out = np.zeros((n1 * n2, n1 * n2))
    for (k1, k2), value in symbol.coeffs.items():
        out += value * np.kron(shift_matrix(n1, k1), shift_matrix(n2, k2))
    return out


def dst_eigendecomposition(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Sine eigenbasis of ``T_m(2 - 2cos)``: ``T_m = Q diag(eigenvalues) Q``.

    ``Q`` is symmetric and orthogonal; eigenvalues come out ascending.
    """
    if m < 1:
        raise DimensionError(f"m must be positive, got {m}")
    s = np.arange(1, m + 1)
    q = math.sqrt(2.0 / (m + 1)) * np.sin(np.outer(s, s) * math.pi / (m + 1))
    eigenvalues = 4.0 * np.sin(s * math.pi / (2 * (m + 1))) ** 2
    return q, eigenvalues


def inverse_entry(m: int, r: int, c: int) -> float:
    """Entry (r, c), 1-based, of ``T_m(2 - 2cos)^{-1}``."""
    if not (1 <= r <= m and 1 <= c <= m):
        raise IndexError(f"index ({r}, {c}) outside 1..{m}")
    if r < c:
        return (m + 1 - c) * r / (m + 1)
    return (m + 1 - r) * c / (m + 1)


def inverse_matrix(m: int) -> np.ndarray:
    """All entries of ``T_m(2 - 2cos)^{-1}`` from the closed form."""
    if m < 1:
        raise DimensionError(f"m must be positive, got {m}")
    idx = np.arange(1, m + 1)
    lo = np.minimum.outer(idx, idx)
    hi = np.maximum.outer(idx, idx)
    return (m + 1 - hi) * lo / (m + 1)


def condition_number_S(n: int) -> float:
    """Spectral condition number of ``S_{n+1}`` (matrix size n+1)."""
    if n < 0:
        raise DimensionError(f"n must be non-negative, got {n}")
    x = math.pi / (2 * (n + 2))
    return math.sin((n + 1) * x) ** 2 / math.sin(x) ** 2


def _trig_roots(symbol: TrigSymbol) -> np.ndarray:
    """Real zeros in (-pi, pi) of a level-1 symbol with real coefficients."""
    (omega,) = symbol.band
    if omega == 0:
        return np.empty(0)
    # z^omega f(z) with z = e^{it} is a polynomial of degree 2*omega
    poly = np.zeros(2 * omega + 1, dtype=complex)
    for (k,), value in symbol.coeffs.items():
        poly[omega + k] += value
    roots = np.roots(poly[::-1])
    on_circle = roots[np.abs(np.abs(roots) - 1.0) < 1e-6]
    angles = np.angle(on_circle)
    angles = angles[(angles > -math.pi) & (angles < math.pi)]
    return np.unique(np.round(angles, 14))


def integrate_abs_symbol(symbol: TrigSymbol, rtol: float = 1e-12, max_panels: int = 1 << 16) -> float:
    """``int_{-pi}^{pi} |f|`` for a level-1 symbol.

    The interval is split at the zeros of f so each piece is smooth, then
    composite 8-point Gauss-Legendre with panel doubling is run on each piece
    until successive totals agree to ``rtol``.
    """
    if symbol.level != 1:
        raise DimensionError("integrate_abs_symbol needs a level-1 symbol")
    cuts = np.concatenate([[-math.pi], _trig_roots(symbol), [math.pi]])
    nodes, weights = np.polynomial.legendre.leggauss(8)

    def composite(panels: int) -> float:
        total = 0.0
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            edges = np.linspace(lo, hi, panels + 1)
            mid = 0.5 * (edges[1:] + edges[:-1])
            half = 0.5 * (edges[1:] - edges[:-1])
            pts = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
            vals = np.abs(symbol(pts)).reshape(panels, -1)
            total += float((half[:, None] * weights[None, :] * vals).sum())
        return total

    panels = 1
    previous = composite(panels)
    while panels < max_panels:
        panels *= 2
        current = composite(panels)
        if abs(current - previous) <= rtol * max(abs(current), 1e-300):
            return current
        previous = current
    raise NumericError("quadrature of |f| did not converge")


def trace_norm_bound(symbol: TrigSymbol, n: int) -> tuple[float, float]:
    """Return ``(n/(2 pi) int |g|, ||T_n(g)||_1)``; the first bounds the second."""
    matrix = assemble_toeplitz(symbol, n)
    bound = n * integrate_abs_symbol(symbol) / (2.0 * math.pi)
    actual = float(np.linalg.svd(matrix, compute_uv=False).sum())
    return bound, actual


def _as_sizes(n) -> tuple[int, ...]:
    if isinstance(n, (int, np.integer)):
        return (int(n),)
    return tuple(int(v) for v in n)


def lex_linearize(i: Sequence[int], n) -> int:
    """0-based position of the 1-based multi-index ``i`` (last index fastest)."""
    sizes = _as_sizes(n)
    index = _as_sizes(i)
    if len(index) != len(sizes):
        raise IndexError("multi-index and size vector differ in length")
    pos = 0
    for ij, nj in zip(index, sizes):
        if not 1 <= ij <= nj:
            raise IndexError(f"multi-index {index} outside 1..{sizes}")
        pos = pos * nj + (ij - 1)
    return pos


def lex_delinearize(pos: int, n) -> tuple[int, ...]:
    sizes = _as_sizes(n)
    total = math.prod(sizes)
    if not 0 <= pos < total:
        raise IndexError(f"position {pos} outside 0..{total - 1}")
    out = []
    for nj in reversed(sizes):
        pos, rem = divmod(pos, nj)
        out.append(rem + 1)
    return tuple(reversed(out))


def diagonal_sampling(a: Callable[..., float], n) -> np.ndarray:
    """``D_n(a) = diag(a(i/n))`` over multi-indices in lexicographic order."""
    sizes = _as_sizes(n)
    check_size(math.prod(sizes))
    values = [a(*(np.array(idx) + 1) / np.array(sizes)) for idx in np.ndindex(*sizes)]
    return np.diag(np.asarray(values, dtype=float))
