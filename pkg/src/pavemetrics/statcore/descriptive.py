"""Descriptive statistics and Pearson correlation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..errors import StatError


@dataclass(frozen=True)
class DescriptiveStats:
    min: float
    max: float
    mean: float
    sample_std: float
    n: int


def _as_finite_array(series, name="series") -> np.ndarray:
    arr = np.asarray(series, dtype=float)
    if arr.ndim != 1:
        raise StatError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise StatError(f"{name} contains non-finite values")
    return arr


def descriptive_stats(series: Sequence[float]) -> DescriptiveStats:
    """Min, max, mean and sample (n-1) standard deviation."""
    arr = _as_finite_array(series)
    if arr.size < 2:
        raise StatError(f"need at least 2 values, got {arr.size}")
    lo, hi = float(arr.min()), float(arr.max())
    mean = math.fsum(arr) / arr.size
    # rounding can push the mean a ulp outside the data range
    mean = min(max(mean, lo), hi)
    std = math.sqrt(math.fsum((arr - mean) ** 2) / (arr.size - 1))
    return DescriptiveStats(lo, hi, mean, std, int(arr.size))


def sample_std(series: Sequence[float]) -> float:
    return descriptive_stats(series).sample_std


def pearson_r(x: Sequence[float], y: Sequence[float]) -> float:
    x = _as_finite_array(x, "x")
    y = _as_finite_array(y, "y")
    if x.size != y.size:
        raise StatError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 3:
        raise StatError("pearson_r needs at least 3 pairs")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise StatError("pearson_r is undefined for a zero-variance series")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def correlation_p_value(r: float, n: int) -> float:
    """Two-sided p-value for H0: rho = 0, using t = r*sqrt(n-2)/sqrt(1-r²)."""
    from .distributions import t_two_sided_p

    if n < 3:
        raise StatError("need n >= 3")
    if abs(r) >= 1.0:
        return 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return t_two_sided_p(t, n - 2)


def correlation_matrix(columns: Mapping[str, Sequence[float]]) -> np.ndarray:
    """Pairwise Pearson matrix in the mapping's key order.

    The result is exactly symmetric with an exact unit diagonal.
    """
    names = list(columns)
    if len(names) < 2:
        raise StatError("need at least 2 columns")
    k = len(names)
    out = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            out[i, j] = out[j, i] = pearson_r(columns[names[i]], columns[names[j]])
    return out
