"""Statistical engine: descriptive statistics, correlation, OLS inference,
collinearity diagnostics, paired t-tests and the t/F distributions."""

from .descriptive import (
    DescriptiveStats,
    correlation_matrix,
    correlation_p_value,
    descriptive_stats,
    pearson_r,
    sample_std,
)
from .diagnostics import VIF_THRESHOLD, DiagnosticsReport, VifEntry, diagnose, vif, vif_warnings
from .distributions import (
    f_cdf,
    f_sf,
    regularized_incomplete_beta,
    student_t_cdf,
    student_t_sf,
    t_two_sided_p,
)
from .regression import (
    INTERCEPT,
    Coefficient,
    DesignSpec,
    FittedModel,
    listwise,
    ols_fit,
    ols_fit_arrays,
    significance_stars,
    standardized_coefficients,
)
from .ttest import Decision, PairedComparison, paired_t_test

__all__ = [
    "Coefficient", "Decision", "DescriptiveStats", "DesignSpec", "DiagnosticsReport",
    "FittedModel", "INTERCEPT", "PairedComparison", "VIF_THRESHOLD", "VifEntry",
    "correlation_matrix", "correlation_p_value", "descriptive_stats", "diagnose",
    "f_cdf", "f_sf", "listwise", "ols_fit", "ols_fit_arrays", "paired_t_test",
    "pearson_r", "regularized_incomplete_beta", "sample_std", "significance_stars",
    "standardized_coefficients", "student_t_cdf", "student_t_sf", "t_two_sided_p",
    "vif", "vif_warnings",
]
