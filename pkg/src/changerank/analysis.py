"""Sequence-level change analysis.

Builds the series of uncertainty coefficients between adjacent frames,
locates the most abrupt change point (the pair with minimal UC, denominated
by the earlier frame's entropy), and ranks whole sequences by that minimal
value: the sequence with the smaller target value changed more abruptly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .infotheory import (
    NormalizationMode,
    entropy,
    joint_histogram_from_values,
    mutual_information,
    uncertainty_coefficient,
)
from .ingest import GrayFrame, PreprocessConfig

__all__ = [
    "PairRecord",
    "SequenceReport",
    "RankingReport",
    "ReciprocalSeries",
    "DEFAULT_RECIPROCAL_CAP",
    "uc_series",
    "find_target",
    "analyze_sequence",
    "compare_sequences",
    "reciprocal_series",
]

DEFAULT_RECIPROCAL_CAP = 1e6


@dataclass(frozen=True)
class PairRecord:
    """Scores for one adjacent frame pair (earlier frame at position index)."""

    index: int
    uc: float
    mi: float
    h_prev: float
    h_next: float
    degenerate: bool = False


@dataclass(frozen=True)
class SequenceReport:
    """Full per-sequence result: the pair series plus its minimum."""

    id: str
    frame_count: int
    pairs: tuple[PairRecord, ...]
    target_index: int
    target_value: float
    mode: NormalizationMode
    preprocess: PreprocessConfig


@dataclass(frozen=True)
class RankingReport:
    """Sequences ordered by target value ascending; entries[0] changed most."""

    entries: tuple[SequenceReport, ...]
    winner: str


class ReciprocalSeries(NamedTuple):
    values: list[float]
    capped: list[bool]


def uc_series(
    frames: Sequence[GrayFrame],
    mode: NormalizationMode = NormalizationMode.UC_PREV,
) -> list[PairRecord]:
    """Score every adjacent pair of a homogeneous frame sequence.

    Record i pairs frames (i, i+1) in the direction U(earlier | later):
    mutual information divided by the entropy of frame i.
    """
    if len(frames) < 2:
        raise ValueError(f"sequence too short: need at least 2 frames, got {len(frames)}")
    shape = (frames[0].width, frames[0].height, frames[0].levels)
    for i, frame in enumerate(frames):
        if (frame.width, frame.height, frame.levels) != shape:
            raise ValueError(
                f"frame {i} is {frame.width}x{frame.height} at {frame.levels} levels, "
                f"expected {shape[0]}x{shape[1]} at {shape[2]}"
            )
    records = []
    for i in range(len(frames) - 1):
        joint = joint_histogram_from_values(
            frames[i].pixels, frames[i + 1].pixels, frames[i].levels
        )
        uc = uncertainty_coefficient(joint, mode)
        records.append(
            PairRecord(
                index=i,
                uc=uc.value,
                mi=mutual_information(joint),
                h_prev=entropy(joint.row_marginal()),
                h_next=entropy(joint.col_marginal()),
                degenerate=uc.degenerate,
            )
        )
    return records


def find_target(pairs: Sequence[PairRecord]) -> tuple[int, float]:
    """Locate the most abrupt change: minimal uc, earliest index on ties."""
    if not pairs:
        raise ValueError("empty pair series")
    best = min(pairs, key=lambda record: record.uc)
    return best.index, best.uc


def analyze_sequence(
    seq_id: str,
    frames: Sequence[GrayFrame],
    mode: NormalizationMode = NormalizationMode.UC_PREV,
    preprocess: PreprocessConfig | None = None,
) -> SequenceReport:
    """Run the full per-sequence analysis and assemble its report."""
    pairs = uc_series(frames, mode)
    target_index, target_value = find_target(pairs)
    return SequenceReport(
        id=seq_id,
        frame_count=len(frames),
        pairs=tuple(pairs),
        target_index=target_index,
        target_value=target_value,
        mode=mode,
        preprocess=preprocess if preprocess is not None else PreprocessConfig(),
    )


def compare_sequences(reports: Sequence[SequenceReport]) -> RankingReport:
    """Rank sequences by target value ascending (stable; smaller = more change).

    Values are only comparable under one normalization mode and one
    quantization level count, so mixed-mode or mixed-levels input is refused.
    """
    if not reports:
        raise ValueError("no sequences to compare")
    modes = {report.mode for report in reports}
    if len(modes) > 1:
        names = ", ".join(sorted(mode.value for mode in modes))
        raise ValueError(f"mixed normalization modes are not comparable: {names}")
    levels = {report.preprocess.levels for report in reports}
    if len(levels) > 1:
        raise ValueError(
            f"mixed quantization levels are not comparable: {sorted(levels)}"
        )
    entries = tuple(sorted(reports, key=lambda report: report.target_value))
    return RankingReport(entries=entries, winner=entries[0].id)


def reciprocal_series(
    pairs: Sequence[PairRecord], cap: float = DEFAULT_RECIPROCAL_CAP
) -> ReciprocalSeries:
    """Element-wise 1/uc for plotting; a zero uc is capped, not an error.

    For strictly positive series the argmax of the reciprocal is exactly the
    argmin of uc.
    """
    if not pairs:
        raise ValueError("empty pair series")
    values = []
    capped = []
    for record in pairs:
        if record.uc > 0.0:
            values.append(1.0 / record.uc)
            capped.append(False)
        else:
            values.append(cap)
            capped.append(True)
    return ReciprocalSeries(values=values, capped=capped)
