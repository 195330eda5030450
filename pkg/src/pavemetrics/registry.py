"""The eight published regression models for South Carolina AC and JPCP pavements.

Each model is a linear predictor over precipitation, mean annual
temperature, log10(AADT), free-flow speed and a soil dummy (1 for soil
type A, 0 for the reference type B). Coefficients are stored exactly as
published, to three decimals. Validity envelopes come from the published
descriptive statistics of the calibration data, per pavement type.

Predictions outside an envelope are returned with a warning; they are
never refused.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Mapping

from .errors import DomainError
from .indices import Indicator


class PavementType(str, Enum):
    AC = "AC"
    JPCP = "JPCP"


class SoilType(str, Enum):
    A = "A"
    B = "B"


PREDICTORS = ("precipitation", "temperature", "log10_aadt", "ffs", "soil_type_A")
NUMERIC_PREDICTORS = PREDICTORS[:4]
INDICATOR_ORDER = (Indicator.PSI, Indicator.PDI, Indicator.PQI, Indicator.IRI)
PAVEMENT_ORDER = (PavementType.AC, PavementType.JPCP)

# inclusive envelopes tolerate this much rounding at the bounds
_ENVELOPE_SLACK = 1e-9


@dataclass(frozen=True)
class Term:
    beta: float
    stars: str = ""
    beta_std: float | None = None


@dataclass(frozen=True)
class Range:
    min: float
    max: float
    std: float | None = None

    def contains(self, value: float) -> bool:
        tol = _ENVELOPE_SLACK * max(1.0, abs(self.min), abs(self.max))
        return self.min - tol <= value <= self.max + tol


@dataclass(frozen=True)
class PublishedModel:
    indicator: Indicator
    pavement_type: PavementType
    intercept: Term
    coefficients: Mapping[str, Term]
    r_squared: float
    adj_r_squared: float
    f_stat: float
    f_stars: str
    df1: int
    df2: int
    validity: Mapping[str, Range]
    notes: tuple[str, ...] = ()

    @property
    def key(self) -> tuple[Indicator, PavementType]:
        return (self.indicator, self.pavement_type)

    @property
    def n(self) -> int:
        return self.df1 + self.df2 + 1

    def betas(self) -> list[float]:
        """Intercept followed by the five slopes in ``PREDICTORS`` order."""
        return [self.intercept.beta] + [self.coefficients[p].beta for p in PREDICTORS]

    def linear_predictor(self, values: Mapping[str, float]) -> float:
        return self.intercept.beta + sum(self.coefficients[p].beta * values[p] for p in PREDICTORS)

    def f_from_r_squared(self) -> float:
        return (self.r_squared / self.df1) / ((1.0 - self.r_squared) / self.df2)

    def adj_r_squared_from_r_squared(self) -> float:
        return 1.0 - (1.0 - self.r_squared) * (self.n - 1) / self.df2

    def sign_mismatches(self) -> list[str]:
        return [
            p for p, t in self.coefficients.items()
            if t.beta_std is not None and t.beta != 0 and t.beta_std != 0
            and math.copysign(1, t.beta) != math.copysign(1, t.beta_std)
        ]


@dataclass(frozen=True)
class PredictorInput:
    aadt: float
    ffs: float
    precipitation: float
    temperature: float
    soil_type: SoilType

    def __post_init__(self):
        object.__setattr__(self, "soil_type", SoilType(self.soil_type))
        for name in ("aadt", "ffs", "precipitation", "temperature"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if self.aadt <= 0:
            raise DomainError(f"aadt must be > 0, got {self.aadt}")
        if self.ffs <= 0:
            raise DomainError(f"ffs must be > 0, got {self.ffs}")

    def predictor_values(self) -> dict[str, float]:
        return {
            "precipitation": self.precipitation,
            "temperature": self.temperature,
            "log10_aadt": math.log10(self.aadt),
            "ffs": self.ffs,
            "soil_type_A": 1.0 if self.soil_type is SoilType.A else 0.0,
        }


@dataclass(frozen=True)
class PredictionResult:
    indicator: Indicator
    pavement_type: PavementType
    value: float
    extrapolation_warnings: tuple[str, ...] = field(default=())


def coerce_enum(enum, value):
    if isinstance(value, enum):
        return value
    return enum(str(value).strip().upper())


# -- descriptive statistics of the calibration data: (min, max, std) --------

_ENVELOPES = {
    PavementType.AC: {
        "psi": (2.6, 4.7, 0.3),
        "pdi": (1.9, 4.7, 0.6),
        "pqi": (2.0, 4.3, 0.5),
        "iri": (43.9, 112.9, 15.2),
        "log10_aadt": (3.4, 5.0, 0.5),
        "ffs": (39.7, 71.2, 7.9),
        "precipitation": (31.8, 68.5, 8.5),
        "temperature": (54.1, 66.7, 3.4),
    },
    PavementType.JPCP: {
        "psi": (2.9, 4.1, 0.3),
        "pdi": (4.1, 5.0, 0.2),
        "pqi": (3.7, 4.5, 0.2),
        "iri": (50.5, 137.4, 20.2),
        "log10_aadt": (3.8, 4.9, 0.4),
        "ffs": (47.6, 75.6, 7.7),
        "precipitation": (31.7, 54.7, 6.2),
        "temperature": (59.2, 68.3, 2.7),
    },
}


def calibration_ranges(pavement_type: PavementType | str) -> dict[str, Range]:
    """Published min/max/std of every variable for one pavement type."""
    return {k: Range(*v) for k, v in _ENVELOPES[coerce_enum(PavementType, pavement_type)].items()}


# -- published coefficient sets ----------------------------------------------
# rows: precipitation, temperature, log10_aadt, ffs, soil_type_A as
# (beta, stars, beta_std); then intercept, R², adjusted R², F, F stars, df.

_AC, _JPCP = PavementType.AC, PavementType.JPCP

_TABLES = {
    (Indicator.PSI, _AC): (
        Term(4.397, "***"),
        [(-0.006, "*", -0.211), (-0.019, "", -0.249), (-0.151, "**", -0.301),
         (0.021, "***", 0.684), (-0.047, "", -0.094)],
        0.442, 0.413, 14.913, "***", (5, 94),
    ),
    (Indicator.PSI, _JPCP): (
        Term(6.229, "***"),
        [(-0.005, "*", -0.115), (-0.021, "", -0.202), (-0.809, "***", -1.057),
         (0.038, "***", 1.044), (-0.560, "***", -1.018)],
        0.868, 0.855, 65.865, "***", (5, 50),
    ),
    (Indicator.PDI, _AC): (
        Term(-4.565),
        [(0.000, "", -0.006), (0.104, "**", 0.577), (-0.160, "", 0.131),
         (0.033, "***", 0.428), (0.787, "**", 0.641)],
        0.172, 0.128, 3.938, "**", (5, 95),
    ),
    (Indicator.PDI, _JPCP): (
        Term(7.576, "***"),
        [(-0.007, "*", -0.191), (-0.012, "", -0.155), (-0.443, "***", -0.751),
         (0.003, "", 0.107), (-0.114, "", -0.271)],
        0.639, 0.604, 18.071, "***", (5, 51),
    ),
    (Indicator.PQI, _AC): (
        Term(-2.683),
        [(-0.002, "", -0.037), (0.076, "**", 0.530), (0.145, "", -0.150),
         (0.029, "***", 0.479), (0.604, "**", 0.620)],
        0.195, 0.152, 4.591, "***", (5, 95),
    ),
    (Indicator.PQI, _JPCP): (
        Term(6.882, "***"),
        [(-0.006, "*", -0.199), (-0.015, "", -0.200), (-0.491, "***", -0.889),
         (0.011, "**", 0.423), (-0.220, "*", 0.557)],
        0.729, 0.703, 27.470, "***", (5, 51),
    ),
    (Indicator.IRI, _AC): (
        Term(-4.876),
        [(0.474, "*", 0.190), (1.852, "", 0.296), (14.686, "**", 0.349),
         (-1.789, "***", -0.669), (0.800, "", 0.019)],
        0.407, 0.376, 13.315, "***", (5, 97),
    ),
    (Indicator.IRI, _JPCP): (
        Term(-116.797, "*"),
        [(0.379, "*", 0.118), (1.648, "", 0.225), (57.820, "***", 1.053),
         (-2.666, "***", -1.032), (39.592, "***", 1.003)],
        0.859, 0.845, 61.109, "***", (5, 50),
    ),
}

_EXTRA_NOTES = {
    (Indicator.PDI, _AC): (
        "accompanying narrative quotes the ffs coefficient as -0.033; the tabulated 0.033 is stored",
    ),
}


def _build() -> dict[tuple[Indicator, PavementType], PublishedModel]:
    models = {}
    for (ind, pt), (intercept, rows, r2, adj, f, f_stars, (df1, df2)) in _TABLES.items():
        coefs = {p: Term(b, s, bs) for p, (b, s, bs) in zip(PREDICTORS, rows)}
        ranges = calibration_ranges(pt)
        m = PublishedModel(
            indicator=ind,
            pavement_type=pt,
            intercept=intercept,
            coefficients=MappingProxyType(coefs),
            r_squared=r2,
            adj_r_squared=adj,
            f_stat=f,
            f_stars=f_stars,
            df1=df1,
            df2=df2,
            validity=MappingProxyType({k: ranges[k] for k in NUMERIC_PREDICTORS}),
        )
        notes = list(_EXTRA_NOTES.get((ind, pt), ()))
        notes += [f"{p}: beta and standardized beta have opposite signs as published" for p in m.sign_mismatches()]
        models[(ind, pt)] = PublishedModel(**{**m.__dict__, "notes": tuple(notes)})
    return models


_MODELS = _build()


def published_model(indicator: Indicator | str, pavement_type: PavementType | str) -> PublishedModel:
    return _MODELS[(coerce_enum(Indicator, indicator), coerce_enum(PavementType, pavement_type))]


def all_models() -> list[PublishedModel]:
    """All eight models, AC first, indicators in PSI, PDI, PQI, IRI order."""
    return [_MODELS[(i, p)] for p in PAVEMENT_ORDER for i in INDICATOR_ORDER]


def predict(indicator, pavement_type, inp: PredictorInput) -> PredictionResult:
    model = published_model(indicator, pavement_type)
    values = inp.predictor_values()
    warnings = tuple(
        name for name in NUMERIC_PREDICTORS if not model.validity[name].contains(values[name])
    )
    return PredictionResult(model.indicator, model.pavement_type, model.linear_predictor(values), warnings)


def predict_all(pavement_type, inp: PredictorInput) -> list[PredictionResult]:
    return [predict(ind, pavement_type, inp) for ind in INDICATOR_ORDER]


def _term_record(t: Term) -> dict:
    return {"beta": t.beta, "beta_std": t.beta_std, "stars": t.stars}


def catalogue_records() -> list[dict]:
    """One flat, JSON-serialisable record per model for audit."""
    out = []
    for m in all_models():
        out.append({
            "indicator": m.indicator.value,
            "pavement_type": m.pavement_type.value,
            "intercept": _term_record(m.intercept),
            "coefficients": {p: _term_record(t) for p, t in m.coefficients.items()},
            "r_squared": m.r_squared,
            "adj_r_squared": m.adj_r_squared,
            "f_stat": m.f_stat,
            "f_stars": m.f_stars,
            "df1": m.df1,
            "df2": m.df2,
            "f_from_r_squared": round(m.f_from_r_squared(), 6),
            "adj_r_squared_from_r_squared": round(m.adj_r_squared_from_r_squared(), 6),
            "validity": {k: {"min": r.min, "max": r.max} for k, r in m.validity.items()},
            "notes": list(m.notes),
        })
    return out


def export_catalogue() -> str:
    return json.dumps(catalogue_records(), indent=2) + "\n"
