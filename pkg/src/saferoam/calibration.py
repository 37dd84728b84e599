"""Speed-threshold calibration from recorded walking-speed samples.

The natural-walking threshold comes from a Tukey boxplot over chest speeds
recorded while the person was deliberately stepping in place: the upper
outlier fence, rounded up to a coarse grid for stability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

DEFAULT_ROUNDING_STEP = 0.05

MIN_SAMPLES = 4


class CalibrationError(ValueError):
    """Raised when a sample set cannot support fence estimation."""


@dataclass(frozen=True)
class SpeedSampleSet:
    """Chest-speed observations (m/s) from one recording."""

    samples: tuple[float, ...]
    source: str = ""

    def __post_init__(self):
        for v in self.samples:
            if not math.isfinite(v) or v < 0:
                raise CalibrationError(f"speed samples must be finite and >= 0, got {v!r}")

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class Fences:
    """Boxplot summary: quartiles plus Tukey outlier fences."""

    q1: float
    median: float
    q3: float
    iqr: float
    lower_fence: float
    upper_fence: float
    cumulative_fraction_at_upper: float

    def to_dict(self) -> dict:
        return {
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "iqr": self.iqr,
            "lower_fence": self.lower_fence,
            "upper_fence": self.upper_fence,
            "cumulative_fraction_at_upper": self.cumulative_fraction_at_upper,
        }


Samples = Union[SpeedSampleSet, Sequence[float]]


def _as_samples(sample_set: Samples) -> tuple[float, ...]:
    """Accept a SpeedSampleSet or any raw sequence, validating either way."""
    if isinstance(sample_set, SpeedSampleSet):
        return sample_set.samples
    return SpeedSampleSet(tuple(float(v) for v in sample_set)).samples


def _quantile(sorted_values: Sequence[float], p: float) -> float:
    """Linear interpolation at fractional rank p * (n - 1) over sorted data."""
    n = len(sorted_values)
    pos = p * (n - 1)
    lo = math.floor(pos)
    hi = min(lo + 1, n - 1)
    frac = pos - lo
    return sorted_values[lo] * (1.0 - frac) + sorted_values[hi] * frac


def boxplot_fences(sample_set: Samples) -> Fences:
    """Tukey boxplot fences over a speed sample set.

    Quartiles use linear interpolation at p*(n-1); fences sit 1.5 IQR beyond
    the quartiles.  Also reports the fraction of samples at or below the
    upper fence (how much data the fence keeps).

    Raises:
        CalibrationError: with fewer than 4 samples.
    """
    samples = _as_samples(sample_set)
    if len(samples) < MIN_SAMPLES:
        raise CalibrationError(
            f"need at least {MIN_SAMPLES} samples for fences, got {len(samples)}"
        )
    ordered = sorted(samples)
    q1 = _quantile(ordered, 0.25)
    median = _quantile(ordered, 0.50)
    q3 = _quantile(ordered, 0.75)
    iqr = q3 - q1
    upper = q3 + 1.5 * iqr
    lower = q1 - 1.5 * iqr
    kept = sum(1 for v in ordered if v <= upper)
    return Fences(
        q1=q1,
        median=median,
        q3=q3,
        iqr=iqr,
        lower_fence=lower,
        upper_fence=upper,
        cumulative_fraction_at_upper=kept / len(ordered),
    )


def calibrate_threshold(
    sample_set: Samples, rounding: float = DEFAULT_ROUNDING_STEP
) -> float:
    """Walking-speed threshold: the upper fence rounded up to the grid.

    Rounding up (never down) trades a little sensitivity for stability; a
    fence already on the grid stays put.
    """
    if rounding <= 0:
        raise CalibrationError(f"rounding step must be > 0, got {rounding}")
    fence = boxplot_fences(sample_set).upper_fence
    # The epsilon forgives float dust so an on-grid fence does not jump a step.
    return math.ceil(fence / rounding - 1e-9) * rounding


def load_speed_samples(path: Union[str, Path], source: str = "") -> SpeedSampleSet:
    """Read one-speed-per-line CSV; a single non-numeric header line is skipped."""
    values: list[float] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip().split(",")[0].strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                if lineno == 1:
                    continue  # header row
                raise CalibrationError(
                    f"{path}: line {lineno}: not a number: {text!r}"
                ) from None
    return SpeedSampleSet(samples=tuple(values), source=source or str(path))
