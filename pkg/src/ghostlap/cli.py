"""Command-line front end.

Exit codes: 0 success, 1 usage/IO/resource error, 2 a validation check
(closed form vs oracle, slope window, monotonicity) failed.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import linalg
from .errors import GhostLapError
from .harness import Problem1D, Problem2D, convergence_study, min_eig_study
from .linalg import format_p, parse_p
from .model1d import assemble_system_1d, unit_grid
from .model2d import numeric_norms_2d
from .norms1d import norm_report
from .serialize import dumps_csv, dumps_json, system_dict, system_triplets
from .spectra import distribution_study, eigenvalues, scaled_matrix

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2

NORM_ATOL = 1e-9
SLOPE_WINDOW = {1: (1.8, 2.2), 2: (1.7, 2.3)}
PRODUCT_TOL = 0.2
STABILIZATION_MAX = 0.05
THETA_SPREAD_MAX = 0.10

SUBCOMMANDS = ("assemble", "norms", "spectrum", "distribution", "converge", "mineig")

DEFAULTS = {
    "assemble": {"n": "8", "theta": "0.5"},
    "norms": {"n": "64", "theta": "0.5"},
    "spectrum": {"n": "64", "theta": "0.5"},
    "distribution": {"n": None, "theta": "0.5"},
    "converge": {"n": None, "theta": "0,0.5,1"},
    "mineig": {"n": "32,64,128,256,512", "theta": "0,0.5,1"},
}
DEFAULT_LADDERS = {
    ("distribution", 1): "32,64,128,256",
    ("distribution", 2): "8,12,16,24",
    ("converge", 1): "32,64,128,256,512,1024",
    ("converge", 2): "8,16,32,64",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    dim: int
    n: tuple
    theta: tuple
    p: tuple
    epsilon: float | None
    out: Path | None
    format: str
    max_dense_size: int | None
    unit: bool = False


def _int_list(text: str) -> tuple:
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"invalid integer list {text!r}") from None
    if not values:
        raise UsageError("empty list")
    return values


def _theta_list(text: str) -> tuple:
    values = []
    for item in text.split(","):
        try:
            value = float(item)
        except ValueError:
            raise UsageError(f"invalid theta {item!r}") from None
        if not math.isfinite(value) or not 0.0 <= value <= 1.0:
            raise UsageError(f"theta must lie in [0, 1], got {item!r}")
        values.append(value)
    return tuple(values)


def _p_list(text: str) -> tuple:
    try:
        return tuple(parse_p(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ghostlap", description=__doc__.splitlines()[0])
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--dim", type=int, choices=(1, 2), default=1)
    parser.add_argument("--n", help="size or comma-separated size list")
    parser.add_argument("--theta", help="interpolation fraction(s) in [0, 1]")
    parser.add_argument("--p", default="1,2,inf", help="norm list, e.g. 1,2,inf")
    parser.add_argument("--epsilon", type=float, help="cluster tolerance")
    parser.add_argument("--out", type=Path, help="output file (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default="json")
    parser.add_argument("--max-dense-size", type=int, help=f"overrides {linalg.ENV_MAX_DENSE}")
    parser.add_argument("--unit", action="store_true",
                        help="assemble: 1D normalized grid (b - x0 = 1) with zero data")
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    sub = ns.subcommand
    n_text = ns.n or DEFAULTS[sub]["n"] or DEFAULT_LADDERS[(sub, ns.dim)]
    theta_text = ns.theta or DEFAULTS[sub]["theta"]
    n = _int_list(n_text)
    if min(n) < 2:
        raise UsageError("n must be >= 2")
    if ns.epsilon is not None and not ns.epsilon > 0:
        raise UsageError("epsilon must be positive")
    if ns.max_dense_size is not None and ns.max_dense_size < 1:
        raise UsageError("--max-dense-size must be positive")
    cfg = RunConfig(subcommand=sub, dim=ns.dim, n=n, theta=_theta_list(theta_text),
                    p=_p_list(ns.p), epsilon=ns.epsilon, out=ns.out, format=ns.format,
                    max_dense_size=ns.max_dense_size, unit=ns.unit)
    if sub in ("assemble", "spectrum") and (len(cfg.n) != 1 or len(cfg.theta) != 1):
        raise UsageError(f"{sub} takes a single --n and --theta")
    if sub in ("distribution",) and len(cfg.theta) != 1:
        raise UsageError("distribution takes a single --theta")
    if sub == "mineig" and cfg.dim != 1:
        raise UsageError("mineig is defined for --dim 1 only")
    return cfg


# -- subcommands: each returns (main text, extra files, validation ok) ---------

def _assemble(cfg: RunConfig):
    n, theta = cfg.n[0], cfg.theta[0]
    if cfg.dim == 1:
        if cfg.unit:
            sys_ = assemble_system_1d(unit_grid(n, theta), 0.0, 0.0, 0.0)
        else:
            sys_ = Problem1D().system(n, theta)
    else:
        sys_ = Problem2D().system(n, theta)
    if cfg.format == "csv":
        return dumps_csv(("row", "col", "value"), system_triplets(sys_)), {}, True
    return dumps_json(system_dict(sys_)), {}, True


def _norms(cfg: RunConfig):
    if cfg.dim == 1:
        reports = [norm_report(n, t) for n in cfg.n for t in cfg.theta]
        ok = all(r.passed(NORM_ATOL) for r in reports)
        if cfg.format == "csv":
            rows = [(r.n, r.theta, name, rec.closed_form, rec.oracle, rec.abs_diff)
                    for r in reports for name, rec in r.records.items()]
            text = dumps_csv(("n", "theta", "name", "closed_form", "oracle", "abs_diff"), rows)
        else:
            body = [r.to_dict() for r in reports]
            text = dumps_json(body[0] if len(body) == 1 else body)
        return text, {}, ok
    reports = [numeric_norms_2d(Problem2D().system(n, t), cfg.p) for n in cfg.n for t in cfg.theta]
    ok = True
    for r in reports:
        if all(k in r.norms for k in (1, 2, math.inf)):
            ok &= r.norms[2] <= math.sqrt(r.norms[1] * r.norms[math.inf]) * (1 + 1e-12)
    if cfg.format == "csv":
        rows = [(r.n, r.theta, format_p(p), v) for r in reports for p, v in r.norms.items()]
        return dumps_csv(("n", "theta", "p", "norm"), rows), {}, ok
    body = [r.to_dict() for r in reports]
    return dumps_json(body[0] if len(body) == 1 else body), {}, ok


def _spectrum(cfg: RunConfig):
    n, theta = cfg.n[0], cfg.theta[0]
    values = eigenvalues(scaled_matrix(cfg.dim, n, theta))
    rows = [(i, v.real, v.imag) for i, v in enumerate(values)]
    if cfg.format == "csv":
        return dumps_csv(("index", "real", "imag"), rows), {}, True
    body = {"dim": cfg.dim, "n": n, "theta": theta, "matrix": "h^2 A_h",
            "eigenvalues": [{"index": i, "real": re, "imag": im} for i, re, im in rows]}
    return dumps_json(body), {}, True


def _distribution(cfg: RunConfig):
    report = distribution_study(cfg.dim, cfg.n, cfg.theta[0], cfg.epsilon)
    ok = report.wasserstein_decreasing and report.correction_decreasing and report.within_bounds
    if cfg.format == "csv":
        header = ("n", "size", "mean_discrepancy", "wasserstein1", "outlier_fraction",
                  "max_imag", "correction_ratio", "correction_bound")
        rows = [tuple(getattr(r, k) for k in header) for r in report.rows]
        return dumps_csv(header, rows), {}, ok
    return dumps_json(report.to_dict()), {}, ok


def _converge(cfg: RunConfig):
    table = convergence_study(cfg.dim, cfg.theta, cfg.n, cfg.p)
    lo, hi = SLOPE_WINDOW[cfg.dim]
    ok = table.slopes_dict()["bound_holds"]
    for (_, _, p), vals in table.slopes().items():
        for key in ("err", "tau"):
            if vals[key] is not None:
                ok &= lo <= vals[key] <= hi
        if vals["product"] is not None:
            target = 2.0 - (0.0 if p == math.inf else 1.0 / p)
            ok &= abs(vals["product"] - target) <= PRODUCT_TOL
    slopes = dumps_json(table.slopes_dict())
    if cfg.format == "csv":
        text = dumps_csv(table.CSV_HEADER, table.csv_rows())
        extra = {"slopes": slopes}
        return text, extra, ok
    body = {"rows": [dict(zip(table.CSV_HEADER, row)) for row in table.csv_rows()],
            **table.slopes_dict()}
    return dumps_json(body), {}, ok


def _mineig(cfg: RunConfig):
    study = min_eig_study(cfg.n, cfg.theta)
    ok = (all(r <= STABILIZATION_MAX for r in study.stabilization().values())
          and study.theta_spread() <= THETA_SPREAD_MAX)
    if cfg.format == "csv":
        return dumps_csv(("n", "theta", "min_abs_eig"), sorted(study.rows)), {}, ok
    return dumps_json(study.to_dict()), {}, ok


HANDLERS = {"assemble": _assemble, "norms": _norms, "spectrum": _spectrum,
            "distribution": _distribution, "converge": _converge, "mineig": _mineig}


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def companion_path(out: Path, tag: str) -> Path:
    return out.with_name(f"{out.stem}.{tag}.json")


def run(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"ghostlap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    linalg.set_max_dense_size(cfg.max_dense_size)
    try:
        text, extra, ok = HANDLERS[cfg.subcommand](cfg)
        _write(cfg.out, text)
        for tag, content in extra.items():
            if cfg.out is None:
                sys.stderr.write(content)
            else:
                _write(companion_path(cfg.out, tag), content)
    except (GhostLapError, OSError) as exc:
        print(f"ghostlap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        linalg.set_max_dense_size(None)
    if not ok:
        print(f"ghostlap: {cfg.subcommand}: validation failed", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def main() -> None:
    sys.exit(run())
