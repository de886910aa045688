"""Empirical checks of eigenvalue/singular-value distributions against symbols.

A matrix sequence is compared with its symbol through a fixed family of
compactly supported test functions and through the Wasserstein-1 distance
between the sorted spectrum and equally many symbol quantiles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DistributionTypeError, DimensionError
from .linalg import check_size
from .model1d import assemble_system_1d, rank_one_decomposition, unit_grid
from .model2d import GhostGrid2D, assemble_system_2d, correction_symbols, decompose_2d
from .toeplitz import TrigSymbol, integrate_abs_symbol, laplacian_symbol


def eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Full spectrum with multiplicity, sorted by (real, imag)."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError("eigenvalues needs a square matrix")
    check_size(matrix.shape[0])
    if np.array_equal(matrix, matrix.T):
        values = np.linalg.eigvalsh(matrix).astype(complex)
    else:
        values = np.linalg.eigvals(matrix).astype(complex)
    order = np.lexsort((values.imag, values.real))
    return values[order]


def _smooth_step(t: np.ndarray) -> np.ndarray:
    """C-infinity transition from 0 (t <= 0) to 1 (t >= 1)."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)
        b = np.where(t < 1, np.exp(-1.0 / np.where(t < 1, 1.0 - t, 1.0)), 0.0)
    return a / (a + b)


@dataclass(frozen=True)
class TestFunctionFamily:
    """Continuous, compactly supported test functions spanning a symbol range."""

    lo: float
    hi: float
    functions: tuple = field(repr=False)
    names: tuple = ()

    __test__ = False  # not a pytest class

    @classmethod
    def default(cls, lo: float, hi: float) -> "TestFunctionFamily":
        width = hi - lo
        margin = 0.25 * width

        def cutoff(x):
            x = np.asarray(x, dtype=float)
            left = _smooth_step((x - (lo - 2 * margin)) / margin)
            right = _smooth_step(((hi + 2 * margin) - x) / margin)
            return left * right

        funcs, names = [], []
        for k in range(5):
            funcs.append(lambda x, k=k: ((np.asarray(x) - lo) / width) ** k * cutoff(x))
            names.append(f"monomial_{k}")
        for c in np.linspace(lo, hi, 5):
            radius = 0.25 * width
            funcs.append(lambda x, c=c, r=radius: _bump((np.asarray(x) - c) / r))
            names.append(f"bump_{c:g}")
        return cls(lo=lo, hi=hi, functions=tuple(funcs), names=tuple(names))

    def __len__(self) -> int:
        return len(self.functions)


def _bump(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    inside = np.abs(t) < 1
    out = np.zeros_like(t)
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - t[inside] ** 2))
    return out


def symbol_samples(symbol: TrigSymbol, count: int) -> np.ndarray:
    """Symbol on a midpoint grid of at least ``count`` points over [-pi, pi]^d, sorted."""
    if symbol.level == 1:
        m = count
        t = -math.pi + (np.arange(m) + 0.5) * 2 * math.pi / m
        values = symbol(t)
    else:
        k = math.isqrt(count - 1) + 1 if count > 1 else 1
        t = -math.pi + (np.arange(k) + 0.5) * 2 * math.pi / k
        values = symbol(t[:, None], t[None, :]).ravel()
    return np.sort(np.real(values))


def symbol_quantiles(symbol: TrigSymbol, d: int, oversample: int = 10) -> np.ndarray:
    """``d`` quantiles of the symbol picked from ``oversample * d`` sorted samples."""
    samples = symbol_samples(symbol, oversample * d)
    picks = ((np.arange(d) + 0.5) * samples.size / d).astype(int)
    return samples[picks]


def wasserstein1(values: Sequence[float], quantiles: Sequence[float]) -> float:
    """W1 between two equally sized empirical measures (mean sorted gap)."""
    a = np.sort(np.asarray(values, dtype=float))
    b = np.sort(np.asarray(quantiles, dtype=float))
    if a.shape != b.shape:
        raise DimensionError("wasserstein1 needs equally sized samples")
    return float(np.mean(np.abs(a - b)))


@dataclass(frozen=True)
class DiscrepancyRecord:
    size: int
    discrepancies: tuple
    wasserstein1: float
    max_imag: float

    @property
    def mean_discrepancy(self) -> float:
        return float(np.mean(self.discrepancies))


def _real_values(values, imag_tol: float) -> tuple[np.ndarray, float]:
    values = np.asarray(values)
    imag = np.abs(np.imag(values))
    max_imag = float(imag.max()) if imag.size else 0.0
    scale = max(1.0, float(np.abs(values).max())) if values.size else 1.0
    if max_imag > imag_tol * scale:
        raise DistributionTypeError(f"imaginary parts up to {max_imag:g} exceed tolerance")
    return np.real(values).astype(float), max_imag


def empirical_vs_symbol(values, symbol: TrigSymbol, family: TestFunctionFamily | None = None,
                        imag_tol: float = 1e-8) -> DiscrepancyRecord:
    """Compare ``mean F(values)`` with the symbol average of F for each test function.

    Complex input is accepted when its imaginary parts stay below ``imag_tol``
    relative to the spectral scale; the real parts are compared and the
    largest imaginary magnitude is reported.
    """
    real, max_imag = _real_values(values, imag_tol)
    d = real.size
    samples = symbol_samples(symbol, 10 * d)
    if family is None:
        family = TestFunctionFamily.default(float(samples[0]), float(samples[-1]))
    disc = tuple(abs(float(np.mean(F(real))) - float(np.mean(F(samples)))) for F in family.functions)
    picks = ((np.arange(d) + 0.5) * samples.size / d).astype(int)
    return DiscrepancyRecord(size=d, discrepancies=disc,
                             wasserstein1=wasserstein1(real, samples[picks]), max_imag=max_imag)


def cluster_check(values, interval: tuple[float, float], epsilon: float) -> float:
    """Fraction of values whose real part is outside [lo - eps, hi + eps]
    or whose imaginary part exceeds eps."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    values = np.asarray(values)
    if values.size == 0:
        return 0.0
    lo, hi = interval
    re, im = np.real(values), np.abs(np.imag(values))
    outside = (re < lo - epsilon) | (re > hi + epsilon) | (im > epsilon)
    return float(np.mean(outside))


@dataclass(frozen=True)
class ZeroDistributionRecord:
    size: int
    nonzero_singular: int
    fraction: float


def zero_distribution_check(matrices: Sequence[np.ndarray], rel_threshold: float = 1e-8
                            ) -> list[ZeroDistributionRecord]:
    """Count singular values above ``rel_threshold * max|entry|`` for each matrix."""
    out = []
    for m in matrices:
        m = np.asarray(m, dtype=float)
        check_size(max(m.shape))
        delta = rel_threshold * float(np.abs(m).max()) if m.size else 0.0
        sv = np.linalg.svd(m, compute_uv=False)
        count = int(np.sum(sv > delta))
        out.append(ZeroDistributionRecord(size=m.shape[0], nonzero_singular=count,
                                          fraction=count / m.shape[0]))
    return out


@dataclass(frozen=True)
class GLT2Report:
    sizes: tuple
    ratios: tuple
    bounds: tuple | None
    decreasing: bool
    within_bounds: bool

    @property
    def passed(self) -> bool:
        return self.decreasing and self.within_bounds


def trace_norm(matrix: np.ndarray) -> float:
    return float(np.linalg.svd(np.asarray(matrix, dtype=float), compute_uv=False).sum())


def glt2_hypothesis_check(corrections: Sequence[np.ndarray], bounds: Sequence[float] | None = None
                          ) -> GLT2Report:
    """Trace norm over size must fall strictly along the sequence (and stay under bounds)."""
    sizes = tuple(np.asarray(c).shape[0] for c in corrections)
    ratios = tuple(trace_norm(c) / s for c, s in zip(corrections, sizes))
    decreasing = all(b < a for a, b in zip(ratios, ratios[1:]))
    within = True
    if bounds is not None:
        within = all(r <= b * (1 + 1e-12) for r, b in zip(ratios, bounds))
    return GLT2Report(sizes=sizes, ratios=ratios, bounds=tuple(bounds) if bounds is not None else None,
                      decreasing=decreasing, within_bounds=within)


# -- the ghost-point sequences -------------------------------------------------

def scaled_matrix(dim: int, n: int, theta: float) -> np.ndarray:
    """``h^2 A_h`` on the normalized geometry (h = 1/(n+1))."""
    if dim == 1:
        sys = assemble_system_1d(unit_grid(n, theta), 0.0, 0.0, 0.0)
        return sys.grid.h ** 2 * sys.matrix
    if dim == 2:
        sys = assemble_system_2d(GhostGrid2D.from_theta(n, theta), 0.0, 0.0)
        return sys.grid.h ** 2 * sys.matrix
    raise DimensionError(f"dim must be 1 or 2, got {dim}")


def correction_matrix(dim: int, n: int, theta: float) -> np.ndarray:
    """The non-Toeplitz part of ``h^2 A_h``: ``e_1 v_h^T`` (1D) or ``X`` (2D)."""
    if dim == 1:
        sys = assemble_system_1d(unit_grid(n, theta), 0.0, 0.0, 0.0)
        _, v_h = rank_one_decomposition(sys)
        out = np.zeros((n + 1, n + 1))
        out[0] = v_h
        return out
    if dim == 2:
        sys = assemble_system_2d(GhostGrid2D.from_theta(n, theta), 0.0, 0.0)
        return decompose_2d(sys).correction.X
    raise DimensionError(f"dim must be 1 or 2, got {dim}")


def correction_bound_2d(n: int, theta: float) -> float:
    """``n (int|g1|/2pi + g2) / (n(n+1))``, the trace-norm bound of X per unit size."""
    grid = GhostGrid2D.from_theta(n, theta)
    g1, g2 = correction_symbols(grid)
    mean_abs = integrate_abs_symbol(g1) / (2 * math.pi)
    return n * (mean_abs + abs(g2.coeffs[(0,)])) / grid.size


@dataclass(frozen=True)
class DistributionRow:
    n: int
    size: int
    mean_discrepancy: float
    wasserstein1: float
    outlier_fraction: float
    max_imag: float
    correction_ratio: float
    correction_bound: float | None


@dataclass(frozen=True)
class DistributionReport:
    sequence_id: str
    sizes: tuple
    rows: tuple
    epsilon: float

    @property
    def wasserstein_decreasing(self) -> bool:
        w = [r.wasserstein1 for r in self.rows]
        return all(b < a for a, b in zip(w, w[1:]))

    @property
    def correction_decreasing(self) -> bool:
        c = [r.correction_ratio for r in self.rows]
        return all(b < a for a, b in zip(c, c[1:]))

    @property
    def within_bounds(self) -> bool:
        return all(r.correction_bound is None or r.correction_ratio <= r.correction_bound
                   for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "sequence_id": self.sequence_id,
            "sizes": list(self.sizes),
            "epsilon": self.epsilon,
            "records": [r.__dict__ for r in self.rows],
            "wasserstein_decreasing": self.wasserstein_decreasing,
            "correction_decreasing": self.correction_decreasing,
            "correction_within_bounds": self.within_bounds,
        }


def distribution_study(dim: int, ns: Sequence[int], theta: float, epsilon: float | None = None
                       ) -> DistributionReport:
    """Eigenvalues of ``h^2 A_h`` against ``2-2cos`` (1D) or ``4-2cos-2cos`` (2D)."""
    symbol = laplacian_symbol(dim)
    lo, hi = 0.0, 4.0 * dim
    if epsilon is None:
        epsilon = 0.05 if dim == 1 else 0.1
    family = TestFunctionFamily.default(lo, hi)
    rows = []
    for n in sorted(ns):
        matrix = scaled_matrix(dim, n, theta)
        values = eigenvalues(matrix)
        rec = empirical_vs_symbol(values, symbol, family)
        corr = correction_matrix(dim, n, theta)
        rows.append(DistributionRow(
            n=n, size=matrix.shape[0], mean_discrepancy=rec.mean_discrepancy,
            wasserstein1=rec.wasserstein1,
            outlier_fraction=cluster_check(values, (lo, hi), epsilon),
            max_imag=rec.max_imag,
            correction_ratio=trace_norm(corr) / corr.shape[0],
            correction_bound=correction_bound_2d(n, theta) if dim == 2 else None,
        ))
    sizes = tuple(r.size for r in rows)
    return DistributionReport(sequence_id=f"h2A_h/dim{dim}/theta={theta!r}", sizes=sizes,
                              rows=tuple(rows), epsilon=epsilon)
