"""Closed-form inverse norms of the 1D ghost-point matrix and their dense checks.

All closed forms use the normalized spacing h = 1/(n+1) (b - x_0 = 1), the
matrix ``A_h`` has size n+1 and splits as ``S_{n+1} + (1/h^2) e_1 v_h^T`` with
``S_{n+1} = T_{n+1}(2 - 2cos)/h^2``. ``R_{n+1}`` is the rank-one term with
``A_h^{-1} = S_{n+1}^{-1} - R_{n+1}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SingularityError, UnsupportedError
from .linalg import dense_inverse, induced_norm, parse_p
from .model1d import System1D, assemble_system_1d, rank_one_decomposition, unit_grid
from .toeplitz import inverse_matrix


def _h(n: int) -> float:
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    return 1.0 / (n + 1)


def _theta(theta: float) -> float:
    theta = float(theta)
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"theta must lie in [0, 1], got {theta}")
    return theta


def unit_system(n: int, theta: float) -> System1D:
    """Homogeneous system on the normalized grid; the matrix is all that matters here."""
    return assemble_system_1d(unit_grid(n, theta), 0.0, 0.0, 0.0)


def smw_denominator(sys: System1D) -> float:
    """``1 + v_h^T t^(1)`` where t^(1) is the first column of ``T_{n+1}^{-1}``."""
    _, v_h = rank_one_decomposition(sys)
    m = sys.grid.n + 1
    t1 = (m + 1 - np.arange(1, m + 1)) / (m + 1)
    return 1.0 + float(v_h[0] * t1[0] + v_h[1] * t1[1])


def smw_inverse(sys: System1D) -> np.ndarray:
    """``A_h^{-1}`` from the closed-form ``S^{-1}`` and one Sherman-Morrison update."""
    if sys.stencil.s != 2:
        raise UnsupportedError("smw_inverse needs stencil size 2")
    _, v_h = rank_one_decomposition(sys)
    h2 = sys.grid.h ** 2
    s_inv = h2 * inverse_matrix(sys.grid.n + 1)
    denom = smw_denominator(sys)
    if abs(denom) <= 1e-14 * (1.0 + abs(v_h).max()):
        raise SingularityError("Sherman-Morrison denominator vanishes")
    col = s_inv[:, 0] / h2  # S^{-1} u with u = e_1/h^2
    row = v_h @ s_inv       # v^T S^{-1}
    return s_inv - np.outer(col, row) / denom


def norm_S_inv(p, n: int) -> float:
    """``||S_{n+1}^{-1}||_p`` for p in {1, inf}; both coincide by symmetry."""
    p = parse_p(p)
    if p not in (1, math.inf):
        raise ValueError("norm_S_inv covers p = 1 and p = inf only")
    h = _h(n)
    if (n + 1) % 2 == 0:
        return (1.0 + 2.0 * h) / 8.0
    return (1.0 + 2.0 * h + h * h) / 8.0


def norm_S_inv_2(n: int) -> float:
    h = _h(n)
    return (h / (2.0 * math.sin(math.pi * h / (2.0 * (1.0 + h))))) ** 2


def _check_index(n: int, r: int, c: int) -> None:
    if not (1 <= r <= n + 1 and 1 <= c <= n + 1):
        raise IndexError(f"index ({r}, {c}) outside 1..{n + 1}")


def r_entry(n: int, theta: float, r: int, c: int) -> float:
    """Entry (r, c), 1-based, of ``R_{n+1}``."""
    _check_index(n, r, c)
    theta = _theta(theta)
    h = _h(n)
    d = h * (theta - 1.0) + 1.0
    if c == 1:
        return (h * (r - 1) - 1.0) / d - h * h * (h * (r - 1) - 1.0) / (h + 1.0)
    return h * h * (2.0 - theta) * (1.0 - (c - 1) * h) * (1.0 - h * (r - 1)) / ((h + 1.0) * d)


def r_matrix(n: int, theta: float) -> np.ndarray:
    theta = _theta(theta)
    h = _h(n)
    d = h * (theta - 1.0) + 1.0
    k = np.arange(n + 1)  # r - 1 (or c - 1)
    out = h * h * (2.0 - theta) * np.outer(1.0 - h * k, 1.0 - h * k) / ((h + 1.0) * d)
    out[:, 0] = (h * k - 1.0) / d - h * h * (h * k - 1.0) / (h + 1.0)
    return out


def norm_R(p, n: int, theta: float) -> float:
    p = parse_p(p)
    theta = _theta(theta)
    h = _h(n)
    d = h * (theta - 1.0) + 1.0
    if p == 1:
        return (h ** 3 * (1.0 - theta) - h * h + h + 1.0) / (2.0 * h * d)
    if p == math.inf:
        num = h * (2.0 - theta) * (1.0 - h) - 2.0 * h * h * d + 2.0 * (h + 1.0)
        return 0.5 * num / ((h + 1.0) * d)
    raise ValueError("norm_R covers p = 1 and p = inf only")


def norm_A_inv(p, n: int, theta: float) -> float:
    """Closed forms for p in {1, inf}; for p = 2 the bound sqrt(||.||_1 ||.||_inf)."""
    p = parse_p(p)
    theta = _theta(theta)
    h = _h(n)
    d = h * (theta - 1.0) + 1.0
    if p == 1:
        return (h + 1.0) / (2.0 * h * d)
    if p == math.inf:
        return (2.0 - h * (theta - 1.0) * (1.0 - h)) / (2.0 * d)
    return math.sqrt(2.0 / h + 2.0 + (h * h - 1.0) * (theta - 1.0)) / (2.0 * d)


@dataclass(frozen=True)
class NormRecord:
    closed_form: float
    oracle: float

    @property
    def abs_diff(self) -> float:
        return abs(self.closed_form - self.oracle)

    def to_dict(self) -> dict:
        return {"closed_form": self.closed_form, "oracle": self.oracle, "abs_diff": self.abs_diff}


# Names of the exact closed forms; "A_inv_2" is handled separately because its
# closed form is only an upper bound.
EXACT_NORMS = ("S_inv_1", "S_inv_inf", "S_inv_2", "R_1", "R_inf", "A_inv_1", "A_inv_inf")


@dataclass(frozen=True)
class NormReport:
    n: int
    theta: float
    h: float
    records: dict = field(default_factory=dict)

    @property
    def A_inv_2_bound(self) -> float:
        return self.records["A_inv_2"].closed_form

    @property
    def A_inv_2_oracle(self) -> float:
        return self.records["A_inv_2"].oracle

    @property
    def max_abs_diff(self) -> float:
        return max(self.records[name].abs_diff for name in EXACT_NORMS)

    def passed(self, atol: float = 1e-9) -> bool:
        return self.max_abs_diff <= atol and self.A_inv_2_oracle <= self.A_inv_2_bound

    def to_dict(self) -> dict:
        out = {"n": self.n, "theta": self.theta, "h": self.h}
        for name, record in self.records.items():
            out[name] = record.to_dict()
        out["A_inv_2_bound"] = self.A_inv_2_bound
        out["A_inv_2_oracle"] = self.A_inv_2_oracle
        return out


def norm_report(n: int, theta: float) -> NormReport:
    """Compare every closed form against norms of LU-computed dense inverses."""
    sys = unit_system(n, theta)
    s_part, _ = rank_one_decomposition(sys)
    s_inv = dense_inverse(s_part)
    a_inv = dense_inverse(sys.matrix)
    r = s_inv - a_inv
    inf = math.inf
    records = {
        "S_inv_1": NormRecord(norm_S_inv(1, n), induced_norm(s_inv, 1)),
        "S_inv_inf": NormRecord(norm_S_inv(inf, n), induced_norm(s_inv, inf)),
        "S_inv_2": NormRecord(norm_S_inv_2(n), 1.0 / float(np.linalg.eigvalsh(s_part)[0])),
        "R_1": NormRecord(norm_R(1, n, theta), induced_norm(r, 1)),
        "R_inf": NormRecord(norm_R(inf, n, theta), induced_norm(r, inf)),
        "A_inv_1": NormRecord(norm_A_inv(1, n, theta), induced_norm(a_inv, 1)),
        "A_inv_inf": NormRecord(norm_A_inv(inf, n, theta), induced_norm(a_inv, inf)),
        "A_inv_2": NormRecord(norm_A_inv(2, n, theta), induced_norm(a_inv, 2)),
    }
    return NormReport(n=n, theta=float(theta), h=sys.grid.h, records=records)


def norm_table_rows(report: NormReport) -> list[tuple]:
    return [(name, rec.closed_form, rec.oracle, rec.abs_diff) for name, rec in report.records.items()]

