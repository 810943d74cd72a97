"""Descriptive statistics shared by the distance, walking and flow analyses.

Conventions, fixed so results are reproducible:

* quartiles interpolate linearly between order statistics (numpy's default
  ``"linear"`` method, a.k.a. type 7);
* skewness is the adjusted Fisher-Pearson coefficient G1, taken as 0 for
  constant data;
* the mode is the midpoint of the fullest histogram bin, bins aligned on
  multiples of ``bin_width`` (lowest midpoint wins ties);
* the 95% interval of the mean is ``mean +/- 1.96 * std / sqrt(n)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np
from scipy import stats as _sps

from .errors import NonPositiveBinWidth, TooFewValues

Z95 = 1.96
FENCE_K = 1.5

FIELDS = (
    "n", "mean", "median", "mode", "std", "q1", "q3", "iqr", "skewness",
    "fence_low", "fence_high", "ci95_low", "ci95_high", "min", "max",
)


@dataclass(frozen=True)
class DescriptiveStats:
    n: int
    mean: float
    median: float
    mode: float
    std: float
    q1: float
    q3: float
    iqr: float
    skewness: float
    fence_low: float
    fence_high: float
    ci95_low: float
    ci95_high: float
    min: float
    max: float

    def as_dict(self) -> dict:
        return asdict(self)

    def outliers(self, values: Sequence[float]) -> np.ndarray:
        v = np.asarray(values, dtype=float)
        return v[(v < self.fence_low) | (v > self.fence_high)]


@dataclass(frozen=True)
class Histogram:
    bin_width: float
    origin: float
    bins: tuple[tuple[float, int], ...]

    @property
    def total(self) -> int:
        return sum(c for _, c in self.bins)

    def mode(self) -> float:
        # bins are sorted by midpoint, so max() keeps the lowest on ties
        best = max(self.bins, key=lambda b: b[1])
        return best[0]


def tukey_fences(q1: float, q3: float, k: float = FENCE_K) -> tuple[float, float]:
    iqr = q3 - q1
    return q1 - k * iqr, q3 + k * iqr


def histogram(values, bin_width: float, origin: float = 0.0) -> Histogram:
    """Count ``values`` into bins ``floor((v - origin) / bin_width)``.

    Only occupied bins are listed.
    """
    if not bin_width > 0:
        raise NonPositiveBinWidth(f"bin width must be positive, got {bin_width}")
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return Histogram(bin_width, origin, ())
    idx = np.floor((v - origin) / bin_width).astype(np.int64)
    keys, counts = np.unique(idx, return_counts=True)
    bins = tuple(
        (origin + (int(k) + 0.5) * bin_width, int(c)) for k, c in zip(keys, counts)
    )
    return Histogram(bin_width, origin, bins)


def describe(values, bin_width: float) -> DescriptiveStats:
    v = np.asarray(values, dtype=float).ravel()
    if v.size < 2:
        raise TooFewValues(f"need at least 2 values, got {v.size}")
    if not bin_width > 0:
        raise NonPositiveBinWidth(f"bin width must be positive, got {bin_width}")

    n = int(v.size)
    mean = float(v.mean())
    q1, median, q3 = (float(q) for q in np.percentile(v, [25, 50, 75]))
    if np.ptp(v) == 0:
        # avoid rounding noise in the mean leaking into std and skewness
        std, skew = 0.0, 0.0
    else:
        std = float(v.std(ddof=1))
        skew = float(_sps.skew(v, bias=False))
    lo, hi = tukey_fences(q1, q3)
    half = Z95 * std / math.sqrt(n)
    return DescriptiveStats(
        n=n,
        mean=mean,
        median=median,
        mode=histogram(v, bin_width).mode(),
        std=std,
        q1=q1,
        q3=q3,
        iqr=q3 - q1,
        skewness=skew,
        fence_low=lo,
        fence_high=hi,
        ci95_low=mean - half,
        ci95_high=mean + half,
        min=float(v.min()),
        max=float(v.max()),
    )
