"""Amplitude binning and construction of the coupling network.

Each series is partitioned into B equal-width amplitude bins over its own
[min, max] range; bin index i of one series and bin index i of the other
name the same node. Every time step contributes one count to the weight
matrix W[source bin of x, target bin of y]; equal bins give self-loops.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import EmptyNetwork, IoError, LagTooLarge
from .series import AlignedPair, TimeSeries

DEFAULT_BIN_COUNT = 50


@dataclass(frozen=True, eq=False)
class BinGrid:
    """Uniform bin edges for the two coupled series."""

    bin_count: int
    edges_x: np.ndarray
    edges_y: np.ndarray

    def __post_init__(self):
        if self.bin_count < 2:
            raise ValueError("bin_count must be >= 2")
        for edges in (self.edges_x, self.edges_y):
            if len(edges) != self.bin_count + 1:
                raise ValueError("edge array must have bin_count + 1 entries")
            if not np.all(np.diff(edges) > 0):
                raise ValueError("edges must be strictly increasing")


@dataclass(frozen=True, eq=False)
class CouplingNetwork:
    """Weighted directed bin-co-occurrence network.

    ``weights[i, j]`` counts time steps with x in bin i and y in bin j;
    the diagonal holds self-loops. All entries sum to ``sample_count``.
    """

    bin_count: int
    weights: np.ndarray
    sample_count: int

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.int64)
        if w.shape != (self.bin_count, self.bin_count):
            raise ValueError("weights must be a bin_count x bin_count matrix")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        if int(w.sum()) != self.sample_count:
            raise ValueError("weights must sum to sample_count")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True, eq=False)
class JointProbability:
    """Coupling weights normalized to a joint distribution."""

    bin_count: int
    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.float64)
        if p.shape != (self.bin_count, self.bin_count):
            raise ValueError("p must be a bin_count x bin_count matrix")
        if np.any(p < 0) or np.any(p > 1):
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to 1")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)


def bin_indices(values: np.ndarray, bin_count: int) -> np.ndarray:
    """Uniform-bin indices over the values' own [min, max] range.

    index = floor(B * (v - min) / (max - min)), clamped so the maximum maps
    to bin B-1. A degenerate range (max == min) puts everything in bin 0.
    """
    if bin_count < 2:
        raise ValueError("bin_count must be >= 2")
    values = np.asarray(values, dtype=np.float64)
    lo, hi = values.min(), values.max()
    if hi == lo:
        return np.zeros(len(values), dtype=np.int64)
    idx = np.floor(bin_count * (values - lo) / (hi - lo)).astype(np.int64)
    return np.clip(idx, 0, bin_count - 1)


def discretize(s: TimeSeries, bin_count: int) -> np.ndarray:
    """Bin indices of a series' amplitudes."""
    return bin_indices(s.values, bin_count)


def bin_grid(x: TimeSeries, y: TimeSeries, bin_count: int) -> BinGrid:
    """Edge arrays the mapper implicitly uses for a pair."""
    return BinGrid(
        bin_count,
        np.linspace(x.values.min(), x.values.max(), bin_count + 1),
        np.linspace(y.values.min(), y.values.max(), bin_count + 1),
    )


def _count_pairs(xi: np.ndarray, yi: np.ndarray, bin_count: int) -> np.ndarray:
    flat = np.bincount(xi * bin_count + yi, minlength=bin_count * bin_count)
    return flat.reshape(bin_count, bin_count).astype(np.int64)


def map_pair(pair: AlignedPair, bin_count: int = DEFAULT_BIN_COUNT) -> CouplingNetwork:
    """Map an aligned pair onto the coupling network.

    Direction encodes source = x's bin, target = y's bin, so swapping the
    series transposes the weights.
    """
    xi = bin_indices(pair.x.values, bin_count)
    yi = bin_indices(pair.y.values, bin_count)
    w = _count_pairs(xi, yi, bin_count)
    return CouplingNetwork(bin_count, w, pair.common_length)


def map_lagged(
    s: TimeSeries, lag: int = 1, bin_count: int = DEFAULT_BIN_COUNT
) -> CouplingNetwork:
    """Couple a series with its own lag.

    Equivalent to mapping the pair (s[:-lag], s[lag:]), with bins taken from
    the full series range so both slices share node identities.
    """
    if lag < 1:
        raise ValueError("lag must be >= 1")
    if lag >= len(s):
        raise LagTooLarge(f"lag {lag} >= series length {len(s)}")
    idx = discretize(s, bin_count)
    w = _count_pairs(idx[:-lag], idx[lag:], bin_count)
    return CouplingNetwork(bin_count, w, len(s) - lag)


def joint_probability(net: CouplingNetwork) -> JointProbability:
    """W / N."""
    if net.sample_count <= 0:
        raise EmptyNetwork("network has no samples")
    return JointProbability(net.bin_count, net.weights / net.sample_count)


def write_adjacency_tsv(net: CouplingNetwork, path) -> None:
    """Dense B x B integer matrix, one tab-separated row per source bin."""
    try:
        with open(path, "w", encoding="utf-8") as fh:
            for row in net.weights:
                fh.write("\t".join(str(int(v)) for v in row) + "\n")
    except OSError as exc:
        raise IoError(str(path)) from exc


def write_edge_list_csv(net: CouplingNetwork, path) -> None:
    """Sparse (source, target, weight) rows, sorted by source then target."""
    src, dst = np.nonzero(net.weights)
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["source", "target", "weight"])
            for i, j in zip(src, dst):
                writer.writerow([int(i), int(j), int(net.weights[i, j])])
    except OSError as exc:
        raise IoError(str(path)) from exc


def write_joint_tsv(jp: JointProbability, path) -> None:
    """Dense B x B probability matrix in the adjacency layout."""
    try:
        with open(path, "w", encoding="utf-8") as fh:
            for row in jp.p:
                fh.write("\t".join(repr(float(v)) for v in row) + "\n")
    except OSError as exc:
        raise IoError(str(path)) from exc
