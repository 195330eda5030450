"""Condition indices, regression inference and the published PSI/PDI/PQI/IRI
regressions for South Carolina AC and JPCP pavements."""

from .indices import (
    Indicator,
    IndexValue,
    ffs_from_speed_limit,
    iri_from_psi,
    pdi_from_adv,
    pqi_from_psi_pdi,
    psi_from_iri,
)
from .registry import (
    PavementType,
    PredictionResult,
    PredictorInput,
    PublishedModel,
    SoilType,
    all_models,
    predict,
    predict_all,
    published_model,
)

__version__ = "0.1.0"
