"""Coupling networks from time-series pairs, with noise baselines.

Pipeline: load or synthesize series, bin amplitudes, count simultaneous
bin visits as weighted directed edges, then compare the resulting network
measures against fractional-Gaussian-noise and phase-randomized baselines.
"""

from .ensemble import (
    ComparisonReport,
    EnsembleConfig,
    EnsembleSummary,
    SummaryRow,
    confidence_interval,
    derive_seed,
    radar_normalize,
    read_summary_csv,
    run_fgn_ensemble,
    run_surrogate_pair,
    write_comparison_json,
    write_summary_csv,
)
from .errors import (
    CoupleMapError,
    DegenerateDegrees,
    DuplicateTimestamp,
    EmbeddingFailure,
    EmptyDistribution,
    EmptyIntersection,
    EmptyNetwork,
    InvalidPartition,
    IoError,
    LagTooLarge,
    LengthTooShort,
    MismatchedMeasureSets,
    NetworkError,
    NoEdges,
    NonPositiveValue,
    ParseError,
    TooFewSamples,
    WrongKind,
    ZeroVariance,
)
from .metrics import (
    MEASURE_FIELDS,
    TABLE_FIELDS,
    AssortStats,
    ClusteringStats,
    DegreeStats,
    MeasureReport,
    ModularityStats,
    PathStats,
    assortativity_stats,
    clustering_stats,
    deformation_ratio,
    degree_stats,
    detect_communities,
    measure_all,
    modularity_stats,
    path_stats,
)
from .netmap import (
    DEFAULT_BIN_COUNT,
    BinGrid,
    CouplingNetwork,
    JointProbability,
    bin_grid,
    bin_indices,
    discretize,
    joint_probability,
    map_lagged,
    map_pair,
    write_adjacency_tsv,
    write_edge_list_csv,
    write_joint_tsv,
)
from .series import (
    KIND_LOG_RETURN,
    KIND_RAW,
    KIND_STANDARDIZED,
    AlignedPair,
    TimeSeries,
    align_pair,
    index_series,
    load_csv,
    log_returns,
    prepare,
    standardize,
    write_csv,
)
from .synth import (
    FgnSpec,
    Spectrum,
    estimate_hurst,
    fgn_autocovariance,
    generate_fgn,
    inverse_spectrum,
    spectrum,
    surrogate,
)

__version__ = "0.1.0"

__all__ = [
    "AlignedPair",
    "AssortStats",
    "BinGrid",
    "ClusteringStats",
    "ComparisonReport",
    "CoupleMapError",
    "CouplingNetwork",
    "DegenerateDegrees",
    "DEFAULT_BIN_COUNT",
    "DegreeStats",
    "DuplicateTimestamp",
    "EmbeddingFailure",
    "EmptyDistribution",
    "EmptyIntersection",
    "EmptyNetwork",
    "EnsembleConfig",
    "EnsembleSummary",
    "FgnSpec",
    "InvalidPartition",
    "IoError",
    "JointProbability",
    "KIND_LOG_RETURN",
    "KIND_RAW",
    "KIND_STANDARDIZED",
    "LagTooLarge",
    "LengthTooShort",
    "MEASURE_FIELDS",
    "MeasureReport",
    "MismatchedMeasureSets",
    "ModularityStats",
    "NetworkError",
    "NoEdges",
    "NonPositiveValue",
    "ParseError",
    "PathStats",
    "Spectrum",
    "SummaryRow",
    "TABLE_FIELDS",
    "TimeSeries",
    "TooFewSamples",
    "WrongKind",
    "ZeroVariance",
    "align_pair",
    "assortativity_stats",
    "bin_grid",
    "bin_indices",
    "clustering_stats",
    "confidence_interval",
    "deformation_ratio",
    "degree_stats",
    "derive_seed",
    "detect_communities",
    "discretize",
    "estimate_hurst",
    "fgn_autocovariance",
    "generate_fgn",
    "index_series",
    "inverse_spectrum",
    "joint_probability",
    "load_csv",
    "log_returns",
    "map_lagged",
    "map_pair",
    "measure_all",
    "modularity_stats",
    "path_stats",
    "prepare",
    "radar_normalize",
    "read_summary_csv",
    "run_fgn_ensemble",
    "run_surrogate_pair",
    "spectrum",
    "standardize",
    "surrogate",
    "write_adjacency_tsv",
    "write_comparison_json",
    "write_csv",
    "write_edge_list_csv",
    "write_joint_tsv",
    "write_summary_csv",
]
