"""Ordinary least squares with full coefficient inference.

The solver uses a Householder QR factorisation of the design matrix
(LAPACK via numpy). A column whose norm after orthogonalisation against
the earlier columns drops below ``RANK_TOL`` times its original norm is
treated as collinear and the fit is refused.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.linalg import solve_triangular

from ..errors import InsufficientDataError, SingularDesignError, StatError
from .distributions import f_sf, t_two_sided_p

RANK_TOL = 1e-10
INTERCEPT = "intercept"


def significance_stars(p: float) -> str:
    """Stars at p < 0.05, 0.01, 0.001. Ties get the weaker label."""
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


@dataclass(frozen=True)
class DesignSpec:
    response_name: str
    predictor_names: tuple[str, ...]
    include_intercept: bool = True

    def __post_init__(self):
        object.__setattr__(self, "predictor_names", tuple(self.predictor_names))
        if not self.include_intercept:
            raise StatError("models without an intercept are not supported")
        if not self.predictor_names:
            raise StatError("at least one predictor is required")
        if len(set(self.predictor_names)) != len(self.predictor_names):
            raise StatError("predictor names must be unique")
        if self.response_name in self.predictor_names:
            raise StatError("response cannot also be a predictor")
        if INTERCEPT in self.predictor_names:
            raise StatError(f"{INTERCEPT!r} is reserved")


@dataclass(frozen=True)
class Coefficient:
    name: str
    beta: float
    std_error: float
    t_stat: float
    p_value: float
    beta_std: float | None
    stars: str


@dataclass(frozen=True)
class FittedModel:
    spec: DesignSpec
    n_used: int
    n_dropped: int
    coefficients: tuple[Coefficient, ...]
    r_squared: float
    adj_r_squared: float
    f_stat: float
    df1: int
    df2: int
    f_p_value: float
    residual_std: float
    predictor_means: tuple[float, ...] = field(repr=False)

    @property
    def f_stars(self) -> str:
        return significance_stars(self.f_p_value)

    def coefficient(self, name: str) -> Coefficient:
        for c in self.coefficients:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def betas(self) -> np.ndarray:
        return np.array([c.beta for c in self.coefficients])

    def predict(self, X) -> np.ndarray:
        """Predict from a (n, p) array of predictors in spec order."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        b = self.betas
        return b[0] + X @ b[1:]

    def predict_row(self, row: Mapping[str, float]) -> float:
        return float(self.predict([[row[n] for n in self.spec.predictor_names]])[0])


def _is_missing(v) -> bool:
    if v is None:
        return True
    try:
        return math.isnan(v)
    except TypeError:
        return False


def listwise(spec: DesignSpec, rows: Iterable[Mapping[str, float]]):
    """Split rows into (X, y, n_dropped); any missing field drops the row."""
    names = spec.predictor_names
    X, y = [], []
    dropped = 0
    for row in rows:
        vals = [row.get(n) for n in names]
        resp = row.get(spec.response_name)
        if _is_missing(resp) or any(_is_missing(v) for v in vals):
            dropped += 1
            continue
        X.append(vals)
        y.append(resp)
    X = np.asarray(X, dtype=float).reshape(len(y), len(names))
    return X, np.asarray(y, dtype=float), dropped


def qr_least_squares(A: np.ndarray, y: np.ndarray, names: Sequence[str]):
    """Least-squares solve of ``A b = y`` with the collinearity rule.

    Returns ``(beta, R)`` where R is the triangular factor.
    """
    Q, R = np.linalg.qr(A, mode="reduced")
    orig = np.linalg.norm(A, axis=0)
    diag = np.abs(np.diag(R))
    for j in range(A.shape[1]):
        if orig[j] == 0.0 or diag[j] < RANK_TOL * orig[j]:
            raise SingularDesignError(names[j])
    beta = solve_triangular(R, Q.T @ y)
    return beta, R


def standardized_coefficients(fit: FittedModel, predictor_stds: Sequence[float], response_std: float):
    """beta_k * sd(x_k) / sd(y) for each non-intercept coefficient."""
    stds = [float(s) for s in predictor_stds]
    if len(stds) != fit.df1:
        raise StatError(f"expected {fit.df1} predictor standard deviations, got {len(stds)}")
    if response_std <= 0 or any(s <= 0 for s in stds):
        raise StatError("standard deviations must be positive")
    return [c.beta * s / response_std for c, s in zip(fit.coefficients[1:], stds)]


def ols_fit_arrays(spec: DesignSpec, X, y, n_dropped: int = 0) -> FittedModel:
    """Fit from complete arrays; ``X`` columns follow ``spec.predictor_names``."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    p = len(spec.predictor_names)
    if X.ndim != 2 or X.shape[1] != p or X.shape[0] != y.shape[0]:
        raise StatError(f"design shape {X.shape} does not match {p} predictors and {y.shape[0]} responses")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise StatError("design contains non-finite values")
    n = y.shape[0]
    df1, df2 = p, n - p - 1
    if df2 < 1:
        raise InsufficientDataError(f"{n} usable rows; need at least {p + 2} for {p} predictors")

    A = np.column_stack([np.ones(n), X])
    names = (INTERCEPT,) + spec.predictor_names
    beta, R = qr_least_squares(A, y, names)

    resid = y - A @ beta
    ssr = float(resid @ resid)
    ybar = float(y.mean())
    sst = float(((y - ybar) ** 2).sum())
    if sst == 0.0:
        raise StatError(f"response {spec.response_name!r} has zero variance")
    r2 = min(1.0, max(0.0, 1.0 - ssr / sst))
    adj = 1.0 - (1.0 - r2) * (n - 1) / df2
    f_stat = math.inf if r2 == 1.0 else (r2 / df1) / ((1.0 - r2) / df2)
    f_p = f_sf(f_stat, df1, df2)

    sigma2 = ssr / df2
    r_inv = solve_triangular(R, np.eye(A.shape[1]))
    se = np.sqrt(sigma2 * np.sum(r_inv ** 2, axis=1))

    sy = float(np.std(y, ddof=1))
    sx = np.std(X, axis=0, ddof=1)

    coefs = []
    for j, name in enumerate(names):
        b, s = float(beta[j]), float(se[j])
        if s > 0:
            t = b / s
        else:
            t = math.copysign(math.inf, b) if b != 0 else 0.0
        pv = t_two_sided_p(t, df2)
        b_std = None if j == 0 else b * float(sx[j - 1]) / sy
        coefs.append(Coefficient(name, b, s, t, pv, b_std, significance_stars(pv)))

    return FittedModel(
        spec=spec,
        n_used=n,
        n_dropped=n_dropped,
        coefficients=tuple(coefs),
        r_squared=r2,
        adj_r_squared=adj,
        f_stat=f_stat,
        df1=df1,
        df2=df2,
        f_p_value=f_p,
        residual_std=math.sqrt(sigma2),
        predictor_means=tuple(float(m) for m in X.mean(axis=0)),
    )


def ols_fit(spec: DesignSpec, rows: Iterable[Mapping[str, float]]) -> FittedModel:
    """Fit ``spec`` to mapping rows, dropping rows with any missing field."""
    X, y, dropped = listwise(spec, rows)
    return ols_fit_arrays(spec, X, y, n_dropped=dropped)
