"""Mutual-information-maximizing binary quantizers for noisy binary-input channels.

Given a binary input with prior (p0, p1) and two Gaussian-mixture conditional
output densities, this package finds the binary quantizer (a finite threshold
vector with alternating labels) that maximizes I(X;Z), certifies the solution
against an independent brute-force oracle, and classifies channels for which
a single threshold is provably enough.
"""

from .channel import (
    ChannelMatrix,
    LevelFunctionals,
    binary_entropy,
    channel_matrix,
    level_functionals,
    mutual_information,
    stationarity,
)
from .density import (
    DensityModel,
    GaussianComponent,
    Prior,
    Thresholds,
    cdf,
    interval_mass,
    log_pdf,
    partition_mass,
    pdf,
    validate_thresholds,
)
from .errors import (
    DegenerateChannelError,
    InvalidSpecError,
    NoSignChangeError,
    NotConvergedError,
    QuantizerError,
)
from .likelihood import (
    ChannelSpec,
    LevelSet,
    Monotonicity,
    MonotonicityReport,
    TranslateConcavity,
    channel_spec,
    classify_monotonicity,
    default_search_interval,
    find_level_set,
    likelihood_ratio,
    log_likelihood_ratio,
    posterior,
    translate_log_concavity,
)
from .oracle import StructuralCheck, OracleResult, SweepRow, grid_search, structural_checks, sweep_levels
from .solver import (
    QuantizerDesign,
    SolverConfig,
    StationarityReport,
    predict_single_threshold,
    solve,
    verify_stationarity,
)

__version__ = "0.1.0"

__all__ = [
    "GaussianComponent",
    "DensityModel",
    "Prior",
    "Thresholds",
    "pdf",
    "log_pdf",
    "cdf",
    "interval_mass",
    "partition_mass",
    "validate_thresholds",
    "ChannelSpec",
    "channel_spec",
    "default_search_interval",
    "Monotonicity",
    "MonotonicityReport",
    "TranslateConcavity",
    "LevelSet",
    "likelihood_ratio",
    "log_likelihood_ratio",
    "posterior",
    "classify_monotonicity",
    "translate_log_concavity",
    "find_level_set",
    "ChannelMatrix",
    "LevelFunctionals",
    "channel_matrix",
    "binary_entropy",
    "mutual_information",
    "level_functionals",
    "stationarity",
    "SolverConfig",
    "QuantizerDesign",
    "StationarityReport",
    "solve",
    "verify_stationarity",
    "predict_single_threshold",
    "OracleResult",
    "SweepRow",
    "StructuralCheck",
    "grid_search",
    "sweep_levels",
    "structural_checks",
    "QuantizerError",
    "InvalidSpecError",
    "DegenerateChannelError",
    "NoSignChangeError",
    "NotConvergedError",
    "__version__",
]
