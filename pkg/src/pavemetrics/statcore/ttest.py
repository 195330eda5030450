"""Paired two-sample t-test used for measured-vs-estimated validation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from ..errors import StatError
from .distributions import t_two_sided_p


class Decision(str, Enum):
    DO_NOT_REJECT = "do_not_reject_H0"
    REJECT = "reject_H0"

    @property
    def label(self) -> str:
        return "Reject H0" if self is Decision.REJECT else "Do not reject H0"


@dataclass(frozen=True)
class PairedComparison:
    label: str
    n: int
    mean_measured: float
    mean_estimated: float
    t_stat: float
    p_value: float
    alpha: float
    decision: Decision


def paired_t_test(a: Sequence[float], b: Sequence[float], alpha: float = 0.05, label: str = "") -> PairedComparison:
    """Two-sided paired t-test of H0: mean(a - b) = 0.

    Differences with no spread beyond rounding noise are treated as the
    analytic limit: p = 1 when they are all zero, p = 0 otherwise.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise StatError(f"paired samples must be 1-d and equally long, got {a.shape} and {b.shape}")
    if a.size < 2:
        raise StatError("paired t-test needs at least 2 pairs")
    if not 0.0 < alpha < 1.0:
        raise StatError(f"alpha must lie in (0, 1), got {alpha}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise StatError("paired samples contain non-finite values")

    n = a.size
    d = a - b
    mean_d = float(d.mean())
    sd = float(np.std(d, ddof=1))
    noise = 8 * n * np.finfo(float).eps * max(float(np.abs(a).max()), float(np.abs(b).max()), 1.0)
    if sd <= noise:
        if abs(mean_d) <= noise:
            t, p = 0.0, 1.0
        else:
            t, p = math.copysign(math.inf, mean_d), 0.0
    else:
        t = mean_d / (sd / math.sqrt(n))
        p = t_two_sided_p(t, n - 1)
    decision = Decision.REJECT if p < alpha else Decision.DO_NOT_REJECT
    return PairedComparison(label, n, float(a.mean()), float(b.mean()), t, p, alpha, decision)
