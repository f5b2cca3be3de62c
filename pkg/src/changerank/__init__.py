"""changerank: quantify and rank change in image sequences.

The change between two adjacent frames is scored by the uncertainty
coefficient of their joint pixel-intensity distribution; the pair with the
minimal score is a sequence's most abrupt change point, and sequences are
ranked against each other by that minimal value.
"""

from .analysis import (
    DEFAULT_RECIPROCAL_CAP,
    PairRecord,
    RankingReport,
    ReciprocalSeries,
    SequenceReport,
    analyze_sequence,
    compare_sequences,
    find_target,
    reciprocal_series,
    uc_series,
)
from .infotheory import (
    EmptyDistributionError,
    Histogram,
    JointHistogram,
    NormalizationMode,
    UcResult,
    conditional_entropy,
    entropy,
    histogram_from_values,
    joint_entropy,
    joint_histogram_from_values,
    mutual_information,
    uncertainty_coefficient,
)
from .ingest import (
    GrayFrame,
    PreprocessConfig,
    SequenceDecodeError,
    SequenceSource,
    SourceKind,
    decode_sequence,
    downscale,
    quantize,
    to_grayscale,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_RECIPROCAL_CAP",
    "EmptyDistributionError",
    "GrayFrame",
    "Histogram",
    "JointHistogram",
    "NormalizationMode",
    "PairRecord",
    "PreprocessConfig",
    "RankingReport",
    "ReciprocalSeries",
    "SequenceDecodeError",
    "SequenceReport",
    "SequenceSource",
    "SourceKind",
    "UcResult",
    "analyze_sequence",
    "compare_sequences",
    "conditional_entropy",
    "decode_sequence",
    "downscale",
    "entropy",
    "find_target",
    "histogram_from_values",
    "joint_entropy",
    "joint_histogram_from_values",
    "mutual_information",
    "quantize",
    "reciprocal_series",
    "to_grayscale",
    "uc_series",
    "uncertainty_coefficient",
]
