"""Gap sweeps that pair the exact solution with Monte Carlo estimates."""
from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import analytics, simulator
from .model import Params

MODES = ("analytic", "simulate", "compare")
FORMATS = ("csv", "json")

CSV_COLUMNS = (
    "gap", "analytic_F", "analytic_x1", "sim_F_mean", "sim_F_se",
    "sim_x1_mean", "sim_x1_se", "rel_err_F", "rel_err_x1", "n_seeds",
    "horizon", "burn_in",
)

# paper setup of the numerical section
PAPER_RATES = dict(lambda_e=2.0, lambda_r=1.0, lambda_u=5.0, lambda_g=0.1)


class ConfigError(ValueError):
    """Invalid experiment configuration."""


class SweepError(RuntimeError):
    def __init__(self, message: str, gap: int, seed: Optional[int] = None):
        super().__init__(message)
        self.gap = gap
        self.seed = seed

    def __reduce__(self):
        return (type(self), (str(self), self.gap, self.seed))


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 50
    lambda_e: float = 2.0
    lambda_r: float = 1.0
    lambda_u: float = 5.0
    lambda_g: float = 0.1
    gap_values: tuple[int, ...] = tuple(range(31))
    horizon: float = 1e5
    burn_in: Optional[float] = None
    seeds: tuple[int, ...] = tuple(range(20))
    output_path: Optional[str] = None
    mode: str = "compare"

    def __post_init__(self):
        object.__setattr__(self, "gap_values", tuple(self.gap_values))
        object.__setattr__(self, "seeds", tuple(self.seeds))
        try:
            for name in ("lambda_e", "lambda_r", "lambda_u", "lambda_g", "horizon"):
                object.__setattr__(self, name, float(getattr(self, name)))
            if self.burn_in is not None:
                object.__setattr__(self, "burn_in", float(self.burn_in))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"non-numeric rate or time: {exc}") from None
        if self.burn_in is None:
            object.__setattr__(self, "burn_in", 0.1 * self.horizon)
        self.validate()

    def validate(self) -> None:
        try:
            self.params(0)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not self.gap_values:
            raise ConfigError("gap_values is empty")
        if any(not isinstance(g, int) or isinstance(g, bool) or g < 0 for g in self.gap_values):
            raise ConfigError(f"gap values must be non-negative integers: {self.gap_values}")
        if len(set(self.gap_values)) != len(self.gap_values):
            raise ConfigError(f"duplicate gap values: {self.gap_values}")
        if list(self.gap_values) != sorted(self.gap_values):
            raise ConfigError(f"gap values must be increasing: {self.gap_values}")
        if not self.horizon > 0:
            raise ConfigError(f"horizon must be positive, got {self.horizon}")
        if not 0 <= self.burn_in < self.horizon:
            raise ConfigError(f"burn_in must lie in [0, horizon), got {self.burn_in}")
        if self.mode != "analytic" and not self.seeds:
            raise ConfigError("at least one seed is needed to simulate")

    def params(self, gap: int) -> Params:
        return Params(self.n, self.lambda_e, self.lambda_r, self.lambda_u,
                      self.lambda_g, gap)

    def to_dict(self) -> dict:
        """Echo of the experiment; the output path is left out so that the
        report bytes do not depend on where the report is written."""
        d = asdict(self)
        del d["output_path"]
        d["gap_values"] = list(self.gap_values)
        d["seeds"] = list(self.seeds)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        unknown = set(d) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)


@dataclass
class Row:
    gap: int
    analytic_F: float
    analytic_x1: float
    sim_F_mean: Optional[float] = None
    sim_F_se: Optional[float] = None
    sim_x1_mean: Optional[float] = None
    sim_x1_se: Optional[float] = None
    rel_err_F: Optional[float] = None
    rel_err_x1: Optional[float] = None
    n_seeds: int = 0
    horizon: Optional[float] = None
    burn_in: Optional[float] = None

    @property
    def abs_err_F(self) -> Optional[float]:
        return None if self.sim_F_mean is None else abs(self.sim_F_mean - self.analytic_F)

    @property
    def abs_err_x1(self) -> Optional[float]:
        return None if self.sim_x1_mean is None else abs(self.sim_x1_mean - self.analytic_x1)


@dataclass
class ComparisonReport:
    config: ExperimentConfig
    rows: list[Row] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "rows": [asdict(r) for r in self.rows],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ComparisonReport":
        config = ExperimentConfig.from_dict(d["config"])
        return cls(config=config, rows=[Row(**r) for r in d["rows"]])


def mean_and_se(values: Sequence[float]) -> tuple[float, Optional[float]]:
    """Mean and standard error across independent runs (None for one run)."""
    x = np.asarray(values, dtype=float)
    mean = float(x.mean())
    if x.size < 2:
        return mean, None
    return mean, float(x.std(ddof=1) / math.sqrt(x.size))


def relative_error(estimate: float, exact: float) -> Optional[float]:
    if exact == 0:
        return None
    return abs(estimate - exact) / abs(exact)


def _simulate_one(args):
    params, horizon, burn_in, seed = args
    try:
        return simulator.run(params, horizon, burn_in, seed)
    except Exception as exc:
        raise SweepError(f"simulation failed at gap={params.gap}, seed={seed}: {exc}",
                         params.gap, seed) from exc


def _default_jobs() -> int:
    return os.cpu_count() or 1


def sweep(config: ExperimentConfig, jobs: Optional[int] = None) -> ComparisonReport:
    """Solve (and simulate, unless ``mode == 'analytic'``) every gap of ``config``.

    Simulations are share-nothing and are farmed out to ``jobs`` worker
    processes; results are reduced in (gap, seed) order so the report does not
    depend on the degree of parallelism.
    """
    jobs = _default_jobs() if jobs is None else jobs
    simulate = config.mode != "analytic"

    rows = []
    for gap in config.gap_values:
        try:
            exact = analytics.solve(config.params(gap))
        except Exception as exc:
            raise SweepError(f"analytic solve failed at gap={gap}: {exc}", gap) from exc
        rows.append(Row(gap=gap, analytic_F=exact.fraction_unreliable,
                        analytic_x1=exact.version_age))
    if not simulate:
        return ComparisonReport(config=config, rows=rows)

    tasks = [(config.params(gap), config.horizon, config.burn_in, seed)
             for gap in config.gap_values for seed in config.seeds]
    if jobs <= 1:
        results = [_simulate_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_simulate_one, tasks))

    per_gap = len(config.seeds)
    for i, row in enumerate(rows):
        chunk = results[i * per_gap:(i + 1) * per_gap]
        row.sim_F_mean, row.sim_F_se = mean_and_se([r.fraction_unreliable for r in chunk])
        row.sim_x1_mean, row.sim_x1_se = mean_and_se([r.version_age for r in chunk])
        row.n_seeds = per_gap
        row.horizon = float(config.horizon)
        row.burn_in = float(config.burn_in)
        if config.mode == "compare":
            row.rel_err_F = relative_error(row.sim_F_mean, row.analytic_F)
            row.rel_err_x1 = relative_error(row.sim_x1_mean, row.analytic_x1)
    return ComparisonReport(config=config, rows=rows)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def to_csv(report: ComparisonReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        values = asdict(row)
        writer.writerow([_fmt(values[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def to_json(report: ComparisonReport) -> str:
    return json.dumps(report.to_dict(), indent=2, allow_nan=False) + "\n"


def emit(report: ComparisonReport, format: str = "csv", path=None) -> str:
    """Serialise ``report`` and write it to ``path`` when given.

    Returns the serialised text either way.
    """
    if format == "csv":
        text = to_csv(report)
    elif format == "json":
        text = to_json(report)
    else:
        raise ValueError(f"format must be one of {FORMATS}, got {format!r}")
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc}") from exc
    return text
