"""Collinearity diagnostics: variance inflation factors and the
correlation report built around them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ..errors import StatError
from .descriptive import correlation_matrix, correlation_p_value
from .regression import RANK_TOL

VIF_THRESHOLD = 10.0


@dataclass(frozen=True)
class VifEntry:
    name: str
    vif: float
    r_squared: float

    @property
    def flagged(self) -> bool:
        return self.vif >= VIF_THRESHOLD


@dataclass(frozen=True)
class DiagnosticsReport:
    variable_names: tuple[str, ...]
    correlation_matrix: np.ndarray
    correlation_p_values: np.ndarray
    n: int
    vif: tuple[VifEntry, ...]
    warnings: tuple[str, ...] = field(default=())

    def r(self, a: str, b: str) -> float:
        i, j = self.variable_names.index(a), self.variable_names.index(b)
        return float(self.correlation_matrix[i, j])

    def vif_of(self, name: str) -> float:
        for e in self.vif:
            if e.name == name:
                return e.vif
        raise KeyError(name)


def _auxiliary_r_squared(target: np.ndarray, others: np.ndarray) -> float:
    """R² of ``target`` regressed (with intercept) on ``others``.

    Columns of ``others`` that are themselves collinear are skipped, so a
    rank-deficient set of regressors does not abort the computation.
    Returns 1.0 when ``target`` lies in the span of the regressors.
    """
    n = target.shape[0]
    basis: list[np.ndarray] = []

    def residual(v: np.ndarray) -> np.ndarray:
        # two passes of modified Gram-Schmidt keep the basis orthonormal
        r = v.copy()
        for _ in range(2):
            for q in basis:
                r -= (q @ r) * q
        return r

    for col in [np.ones(n)] + [others[:, k] for k in range(others.shape[1])]:
        norm0 = np.linalg.norm(col)
        r = residual(col)
        nr = np.linalg.norm(r)
        if norm0 > 0 and nr >= RANK_TOL * norm0:
            basis.append(r / nr)

    centered = target - target.mean()
    sst = float(centered @ centered)
    if sst == 0.0:
        raise StatError("VIF is undefined for a zero-variance predictor")
    r = residual(target.astype(float))
    if np.linalg.norm(r) < RANK_TOL * np.linalg.norm(target):
        return 1.0
    ssr = float(r @ r)
    return min(1.0, max(0.0, 1.0 - ssr / sst))


def vif(predictor_columns: Mapping[str, Sequence[float]]) -> list[VifEntry]:
    """Variance inflation factor 1/(1 - R²_j) for each predictor.

    Perfect collinearity yields ``inf`` rather than an exception.
    """
    names = list(predictor_columns)
    if len(names) < 2:
        raise StatError("VIF needs at least 2 predictors")
    M = np.column_stack([np.asarray(predictor_columns[k], dtype=float) for k in names])
    n, p = M.shape
    if not np.all(np.isfinite(M)):
        raise StatError("predictor columns contain non-finite values")
    if n < p + 2:
        raise StatError(f"VIF needs at least {p + 2} rows for {p} predictors, got {n}")
    out = []
    for j, name in enumerate(names):
        r2 = _auxiliary_r_squared(M[:, j], np.delete(M, j, axis=1))
        value = math.inf if r2 >= 1.0 else 1.0 / (1.0 - r2)
        out.append(VifEntry(name, value, r2))
    return out


def vif_warnings(entries: Sequence[VifEntry]) -> list[str]:
    msgs = []
    for e in entries:
        if math.isinf(e.vif):
            msgs.append(f"{e.name}: perfectly collinear with the other predictors (VIF infinite)")
        elif e.flagged:
            msgs.append(f"{e.name}: VIF {e.vif:.2f} >= {VIF_THRESHOLD:g}, serious multicollinearity")
    return msgs


def diagnose(columns: Mapping[str, Sequence[float]], predictors: Sequence[str]) -> DiagnosticsReport:
    """Correlation matrix over all ``columns`` plus VIF over ``predictors``.

    ``columns`` typically holds the response first, then the predictors.
    """
    names = tuple(columns)
    missing = [p for p in predictors if p not in columns]
    if missing:
        raise StatError(f"unknown predictors: {missing}")
    corr = correlation_matrix(columns)
    n = len(next(iter(columns.values())))
    k = len(names)
    pvals = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            pvals[i, j] = pvals[j, i] = correlation_p_value(corr[i, j], n)
    entries = vif({p: columns[p] for p in predictors})
    return DiagnosticsReport(
        variable_names=names,
        correlation_matrix=corr,
        correlation_p_values=pvals,
        n=n,
        vif=tuple(entries),
        warnings=tuple(vif_warnings(entries)),
    )
