"""Baseline ensembles, confidence intervals and radar comparisons.

Replica seeds are derived from (master_seed, stream, index) with a
splitmix64-style mix, so results do not depend on scheduling. Replicas may
run on a thread pool (capped by the COUPLEMAP_THREADS environment variable)
but aggregation always folds in replica order; summaries are byte-identical
for a fixed config no matter the worker count.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .errors import IoError, MismatchedMeasureSets, ParseError, TooFewSamples
from .metrics import MEASURE_FIELDS, MeasureReport, measure_all
from .netmap import DEFAULT_BIN_COUNT, map_lagged, map_pair
from .series import AlignedPair, TimeSeries
from .synth import FgnSpec, generate_fgn, surrogate

_MASK64 = 2**64 - 1

DEFAULT_HURST_VALUES = tuple(round(0.1 * i, 1) for i in range(1, 10))
DEFAULT_REPLICAS = 32
DEFAULT_SERIES_LENGTH = 2000
DEFAULT_LAG = 1
DEFAULT_LEVEL = 0.90
DEFAULT_MASTER_SEED = 20200529
UNCOUPLED_SYSTEM = "fgn_h0.5"

COUPLING_LAG = "lag"
COUPLING_PAIR = "pair"


def derive_seed(master_seed: int, stream: int, index: int) -> int:
    """Stable 64-bit mix of (master_seed, stream, index)."""

    def mix(z: int) -> int:
        z = (z + 0x9E3779B97F4A7C15) & _MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    z = master_seed & _MASK64
    z = mix(z ^ (stream & _MASK64))
    return mix(z ^ (index & _MASK64))


def worker_count(jobs: int) -> int:
    """Thread budget: COUPLEMAP_THREADS, 0 or unset meaning auto."""
    raw = os.environ.get("COUPLEMAP_THREADS", "0").strip()
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap <= 0:
        cap = os.cpu_count() or 1
    return max(1, min(cap, jobs))


def _run_jobs(fn, args: list) -> list:
    """Map fn over args, results in argument order."""
    workers = worker_count(len(args))
    if workers == 1 or len(args) <= 1:
        return [fn(a) for a in args]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args))


def confidence_interval(samples, level: float = DEFAULT_LEVEL) -> tuple[float, float]:
    """(mean, z * S / sqrt(n)) with S the sample (n-1 divisor) deviation."""
    values = np.asarray(samples, dtype=np.float64)
    if values.ndim != 1 or len(values) < 2:
        raise TooFewSamples(f"need at least 2 samples, got {values.size}")
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    z = float(norm.ppf((1.0 + level) / 2.0))
    mean = float(values.mean())
    half_width = z * float(values.std(ddof=1)) / math.sqrt(len(values))
    return mean, half_width


@dataclass(frozen=True)
class EnsembleConfig:
    """Baseline battery settings; defaults follow the 288-noise layout."""

    hurst_values: tuple = DEFAULT_HURST_VALUES
    replicas_per_h: int = DEFAULT_REPLICAS
    series_length: int = DEFAULT_SERIES_LENGTH
    bin_count: int = DEFAULT_BIN_COUNT
    lag: int = DEFAULT_LAG
    master_seed: int = DEFAULT_MASTER_SEED
    coupling: str = COUPLING_LAG

    def __post_init__(self) -> None:
        object.__setattr__(self, "hurst_values", tuple(self.hurst_values))
        if not self.hurst_values:
            raise ValueError("hurst_values must be non-empty")
        for h in self.hurst_values:
            if not 0.0 < h < 1.0:
                raise ValueError(f"hurst values must lie in (0, 1), got {h}")
        if self.replicas_per_h < 2:
            raise TooFewSamples(
                f"replicas_per_h must be at least 2, got {self.replicas_per_h}"
            )
        if self.series_length < 64:
            raise ValueError(
                f"series_length must be at least 64, got {self.series_length}"
            )
        if self.lag < 1:
            raise ValueError(f"lag must be at least 1, got {self.lag}")
        if not 0 <= self.master_seed <= _MASK64:
            raise ValueError("master_seed must fit in 64 unsigned bits")
        if self.coupling not in (COUPLING_LAG, COUPLING_PAIR):
            raise ValueError(f"unknown coupling mode {self.coupling!r}")


@dataclass(frozen=True)
class SummaryRow:
    """One measure aggregated over replicas; flags counts flagged replicas."""

    measure_name: str
    mean: float
    half_width: float
    n: int
    flags: int = 0


@dataclass(frozen=True)
class EnsembleSummary:
    """Ordered system name -> SummaryRow tuple, one row per measure."""

    systems: dict

    def system_names(self) -> tuple:
        return tuple(self.systems)

    def rows(self, system: str) -> tuple:
        return self.systems[system]

    def row(self, system: str, measure_name: str) -> SummaryRow:
        for row in self.systems[system]:
            if row.measure_name == measure_name:
                return row
        raise KeyError(measure_name)

    def vector(self, system: str) -> dict:
        """Measure name -> ensemble mean, for radar comparison."""
        return {row.measure_name: row.mean for row in self.systems[system]}

    def merged(self, other: "EnsembleSummary") -> "EnsembleSummary":
        overlap = set(self.systems) & set(other.systems)
        if overlap:
            raise ValueError(f"duplicate system names: {sorted(overlap)}")
        return EnsembleSummary({**self.systems, **other.systems})


def _aggregate(reports: list, level: float) -> tuple:
    rows = []
    for name in MEASURE_FIELDS:
        mean, half_width = confidence_interval(
            [getattr(r, name) for r in reports], level
        )
        flagged = sum(1 for r in reports if name in r.flags)
        rows.append(SummaryRow(name, mean, half_width, len(reports), flagged))
    return tuple(rows)


def fgn_system_name(hurst: float) -> str:
    return f"fgn_h{hurst:g}"


def run_fgn_ensemble(cfg: EnsembleConfig, level: float = DEFAULT_LEVEL) -> EnsembleSummary:
    """Per Hurst value: generate replicas, map, measure, aggregate.

    Lag coupling maps each noise against its own lag; pair coupling draws a
    second independent noise per replica (seed streams 2r and 2r + 1).
    """

    def one_replica(job) -> MeasureReport:
        h_index, replica = job
        h = cfg.hurst_values[h_index]
        if cfg.coupling == COUPLING_LAG:
            seed = derive_seed(cfg.master_seed, h_index, replica)
            series = generate_fgn(FgnSpec(h, cfg.series_length, seed))
            net = map_lagged(series, lag=cfg.lag, bin_count=cfg.bin_count)
        else:
            seed_x = derive_seed(cfg.master_seed, h_index, 2 * replica)
            seed_y = derive_seed(cfg.master_seed, h_index, 2 * replica + 1)
            x = generate_fgn(FgnSpec(h, cfg.series_length, seed_x))
            y = generate_fgn(FgnSpec(h, cfg.series_length, seed_y))
            net = map_pair(AlignedPair(x, y), bin_count=cfg.bin_count)
        return measure_all(net)

    jobs = [
        (h_index, replica)
        for h_index in range(len(cfg.hurst_values))
        for replica in range(cfg.replicas_per_h)
    ]
    reports = _run_jobs(one_replica, jobs)

    systems = {}
    per_h = cfg.replicas_per_h
    for h_index, h in enumerate(cfg.hurst_values):
        chunk = reports[h_index * per_h : (h_index + 1) * per_h]
        systems[fgn_system_name(h)] = _aggregate(chunk, level)
    return EnsembleSummary(systems)


def run_surrogate_pair(
    x: TimeSeries,
    y: TimeSeries,
    replicas: int,
    bin_count: int = DEFAULT_BIN_COUNT,
    master_seed: int = DEFAULT_MASTER_SEED,
    level: float = DEFAULT_LEVEL,
    system: str = "surrogate",
) -> EnsembleSummary:
    """Surrogate both series independently per replica, map, measure."""
    AlignedPair(x, y)
    if replicas < 2:
        raise TooFewSamples(f"need at least 2 replicas, got {replicas}")

    def one_replica(replica: int) -> MeasureReport:
        sx = surrogate(x, derive_seed(master_seed, replica, 0))
        sy = surrogate(y, derive_seed(master_seed, replica, 1))
        net = map_pair(AlignedPair(sx, sy), bin_count=bin_count)
        return measure_all(net)

    reports = _run_jobs(one_replica, list(range(replicas)))
    return EnsembleSummary({system: _aggregate(reports, level)})


@dataclass(frozen=True)
class ComparisonReport:
    """Raw and min-max-normalized measure vectors plus radar distances."""

    systems: dict
    normalized: dict
    distance_to_uncoupled: dict
    baseline: str = UNCOUPLED_SYSTEM

    def to_dict(self) -> dict:
        return {
            "baseline": self.baseline,
            "systems": self.systems,
            "normalized": self.normalized,
            "distance_to_uncoupled": self.distance_to_uncoupled,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ComparisonReport":
        return cls(
            systems=data["systems"],
            normalized=data["normalized"],
            distance_to_uncoupled=data["distance_to_uncoupled"],
            baseline=data["baseline"],
        )


def radar_normalize(systems: dict, baseline: str = UNCOUPLED_SYSTEM) -> ComparisonReport:
    """Min-max rescale each measure across systems; distances to baseline.

    All-equal measures normalize to 0.5 everywhere. distance_to_uncoupled is
    the Euclidean distance between a system's normalized vector and the
    baseline system's.
    """
    if len(systems) < 2:
        raise ValueError(f"need at least 2 systems, got {len(systems)}")
    names = list(systems)
    measure_names = list(systems[names[0]])
    reference = set(measure_names)
    for name in names[1:]:
        if set(systems[name]) != reference:
            raise MismatchedMeasureSets(
                f"system {name!r} does not share the measure set of {names[0]!r}"
            )
    if baseline not in systems:
        raise ValueError(f"baseline system {baseline!r} not among inputs")

    normalized = {name: {} for name in names}
    for measure in measure_names:
        values = [float(systems[name][measure]) for name in names]
        lo, hi = min(values), max(values)
        for name, value in zip(names, values):
            normalized[name][measure] = (
                0.5 if hi == lo else (value - lo) / (hi - lo)
            )

    base_vec = normalized[baseline]
    distances = {
        name: math.sqrt(
            sum((normalized[name][m] - base_vec[m]) ** 2 for m in measure_names)
        )
        for name in names
    }
    return ComparisonReport(
        systems={name: dict(systems[name]) for name in names},
        normalized=normalized,
        distance_to_uncoupled=distances,
        baseline=baseline,
    )


SUMMARY_COLUMNS = ("system", "measure_name", "mean", "half_width", "n", "flags")


def write_summary_csv(summary: EnsembleSummary, path) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(SUMMARY_COLUMNS)
            for system in summary.system_names():
                for row in summary.rows(system):
                    writer.writerow(
                        [
                            system,
                            row.measure_name,
                            repr(row.mean),
                            repr(row.half_width),
                            row.n,
                            row.flags,
                        ]
                    )
    except OSError as exc:
        raise IoError(str(exc)) from exc


def read_summary_csv(path) -> EnsembleSummary:
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            reader = csv.reader(handle)
            try:
                header = next(reader)
            except StopIteration:
                raise ParseError(f"{path}: empty summary file") from None
            if tuple(header) != SUMMARY_COLUMNS:
                raise ParseError(f"{path}: unexpected header {header}")
            systems: dict = {}
            for lineno, record in enumerate(reader, start=2):
                if len(record) != len(SUMMARY_COLUMNS):
                    raise ParseError(f"{path}:{lineno}: wrong column count")
                system, name, mean, half_width, n, flags = record
                try:
                    row = SummaryRow(
                        name, float(mean), float(half_width), int(n), int(flags)
                    )
                except ValueError as exc:
                    raise ParseError(f"{path}:{lineno}: {exc}") from exc
                systems.setdefault(system, []).append(row)
    except OSError as exc:
        raise IoError(str(exc)) from exc
    return EnsembleSummary({name: tuple(rows) for name, rows in systems.items()})


def write_comparison_json(report: ComparisonReport, path) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(report.to_dict(), handle, indent=2)
            handle.write("\n")
    except OSError as exc:
        raise IoError(str(exc)) from exc
