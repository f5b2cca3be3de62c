"""Information-theoretic kernels over discrete intensity histograms.

All quantities are plug-in estimates computed from raw relative frequencies,
in bits (log base 2), with the 0 log 0 = 0 convention:

    H(X)    = -sum_x p(x) log2 p(x)
    H(X,Y)  = -sum_{x,y} p(x,y) log2 p(x,y)
    H(Y|X)  = H(X,Y) - H(X)
    I(X;Y)  = H(X) + H(Y) - H(X,Y)
    U(X|Y)  = I(X;Y) / H(X)

Every function is a pure function of immutable inputs and is safe to call
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Literal, NamedTuple

import numpy as np

__all__ = [
    "EmptyDistributionError",
    "Histogram",
    "JointHistogram",
    "NormalizationMode",
    "UcResult",
    "histogram_from_values",
    "joint_histogram_from_values",
    "entropy",
    "joint_entropy",
    "conditional_entropy",
    "mutual_information",
    "uncertainty_coefficient",
]


class EmptyDistributionError(ValueError):
    """A histogram with zero total has no distribution to evaluate."""


class NormalizationMode(Enum):
    """How an adjacent-pair score is normalized.

    UC_PREV divides mutual information by the entropy of the earlier frame,
    SYMMETRIC by the geometric mean of both entropies, RAW_MI not at all.
    """

    UC_PREV = "uc"
    SYMMETRIC = "symmetric"
    RAW_MI = "mi"


class UcResult(NamedTuple):
    """A normalized score plus the degenerate-denominator flag."""

    value: float
    degenerate: bool


@dataclass(frozen=True, eq=False)
class Histogram:
    """Marginal intensity counts: counts[x] over bins intensity levels."""

    bins: int
    counts: np.ndarray
    total: int

    def __post_init__(self) -> None:
        if self.bins < 1:
            raise ValueError(f"bins must be positive, got {self.bins}")
        if self.counts.shape != (self.bins,):
            raise ValueError(
                f"counts shape {self.counts.shape} does not match bins {self.bins}"
            )
        if np.any(self.counts < 0):
            raise ValueError("counts must be non-negative")
        if self.total != int(self.counts.sum()):
            raise ValueError("total does not equal the sum of counts")

    @classmethod
    def from_counts(cls, counts) -> "Histogram":
        arr = np.asarray(counts, dtype=np.int64)
        return cls(bins=arr.shape[0], counts=arr, total=int(arr.sum()))


@dataclass(frozen=True, eq=False)
class JointHistogram:
    """Joint intensity counts of two equally sized frames.

    counts[x, y] is the number of pixel coordinates whose intensity is x in
    the first frame and y in the second.
    """

    bins: int
    counts: np.ndarray
    total: int

    def __post_init__(self) -> None:
        if self.bins < 1:
            raise ValueError(f"bins must be positive, got {self.bins}")
        if self.counts.shape != (self.bins, self.bins):
            raise ValueError(
                f"counts shape {self.counts.shape} does not match bins {self.bins}"
            )
        if np.any(self.counts < 0):
            raise ValueError("counts must be non-negative")
        if self.total != int(self.counts.sum()):
            raise ValueError("total does not equal the sum of counts")

    @classmethod
    def from_counts(cls, counts) -> "JointHistogram":
        arr = np.asarray(counts, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"joint counts must be square, got shape {arr.shape}")
        return cls(bins=arr.shape[0], counts=arr, total=int(arr.sum()))

    def row_marginal(self) -> Histogram:
        """Histogram of the first frame."""
        return _memoized(
            self, "_row_marginal", lambda: Histogram.from_counts(self.counts.sum(axis=1))
        )

    def col_marginal(self) -> Histogram:
        """Histogram of the second frame."""
        return _memoized(
            self, "_col_marginal", lambda: Histogram.from_counts(self.counts.sum(axis=0))
        )

    def transpose(self) -> "JointHistogram":
        return JointHistogram(self.bins, self.counts.T.copy(), self.total)


def _memoized(obj, key: str, compute):
    """Cache a derived value on a frozen, immutable histogram instance.

    Both histogram types are frozen dataclasses, so the counts can never
    change under a cached value; writing through object.__setattr__ sidesteps
    only the frozen guard, not any semantics.
    """
    cache = obj.__dict__
    if key not in cache:
        object.__setattr__(obj, key, compute())
    return cache[key]


def histogram_from_values(values, bins: int) -> Histogram:
    """Count occurrences of each intensity level in an integer array."""
    arr = np.asarray(values).ravel()
    _check_value_range(arr, bins)
    counts = np.bincount(arr, minlength=bins).astype(np.int64)
    return Histogram(bins=bins, counts=counts, total=int(arr.size))


def joint_histogram_from_values(first, second, bins: int) -> JointHistogram:
    """Joint counts of two integer arrays paired element by element.

    Runs in time linear in the number of pixels.
    """
    a = np.asarray(first).ravel()
    b = np.asarray(second).ravel()
    if a.size != b.size:
        raise ValueError(f"frames differ in pixel count: {a.size} vs {b.size}")
    _check_value_range(a, bins)
    _check_value_range(b, bins)
    flat = a.astype(np.int64) * bins + b.astype(np.int64)
    counts = np.bincount(flat, minlength=bins * bins).reshape(bins, bins)
    return JointHistogram(bins=bins, counts=counts, total=int(a.size))


def _check_value_range(arr: np.ndarray, bins: int) -> None:
    if bins < 1:
        raise ValueError(f"bins must be positive, got {bins}")
    if arr.size == 0:
        return
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"intensity values must be integers, got dtype {arr.dtype}")
    lo, hi = int(arr.min()), int(arr.max())
    if lo < 0 or hi >= bins:
        raise ValueError(f"intensity values [{lo}, {hi}] fall outside [0, {bins})")


def _plugin_entropy(counts: np.ndarray, total: int) -> float:
    if total == 0:
        raise EmptyDistributionError("empty distribution")
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def entropy(h: Histogram) -> float:
    """Shannon entropy of a histogram, in bits; lies in [0, log2(bins)]."""
    return _memoized(
        h, "_entropy", lambda: min(_plugin_entropy(h.counts, h.total), math.log2(h.bins))
    )


def joint_entropy(j: JointHistogram) -> float:
    """Entropy of the joint intensity distribution, in bits."""
    return _memoized(
        j, "_joint_entropy", lambda: _plugin_entropy(j.counts.ravel(), j.total)
    )


def conditional_entropy(
    j: JointHistogram, conditioning: Literal["row", "column"] = "row"
) -> float:
    """H(other | conditioning marginal) = H(X,Y) - H(conditioning), >= 0."""
    if conditioning == "row":
        marginal = j.row_marginal()
    elif conditioning == "column":
        marginal = j.col_marginal()
    else:
        raise ValueError(f"conditioning must be 'row' or 'column', got {conditioning!r}")
    return max(0.0, joint_entropy(j) - entropy(marginal))


def mutual_information(j: JointHistogram) -> float:
    """I = H(row) + H(col) - H(joint), clamped to zero from below.

    The clamp absorbs the ~1e-12 negative residue the plug-in estimate can
    accumulate through floating-point rounding.
    """
    value = entropy(j.row_marginal()) + entropy(j.col_marginal()) - joint_entropy(j)
    return max(0.0, value)


def uncertainty_coefficient(
    j: JointHistogram, mode: NormalizationMode = NormalizationMode.UC_PREV
) -> UcResult:
    """Normalized mutual information of a joint histogram.

    UC_PREV divides by the row (earlier frame) entropy, SYMMETRIC by the
    geometric mean of row and column entropies, RAW_MI returns the mutual
    information unchanged. A zero denominator means the conditioning frame
    is constant and carries no information; by convention the result is
    then 1.0 with the degenerate flag set, so constant footage reads as
    "no change" rather than failing.
    """
    mi = mutual_information(j)
    if mode is NormalizationMode.RAW_MI:
        return UcResult(mi, False)
    h_row = entropy(j.row_marginal())
    if mode is NormalizationMode.UC_PREV:
        denominator = h_row
    elif mode is NormalizationMode.SYMMETRIC:
        denominator = math.sqrt(h_row * entropy(j.col_marginal()))
    else:
        raise ValueError(f"unknown normalization mode: {mode!r}")
    if denominator == 0.0:
        return UcResult(1.0, True)
    # mi <= denominator holds mathematically but not always in floats;
    # clamping keeps normalized scores inside [0, 1].
    return UcResult(min(1.0, mi / denominator), False)
