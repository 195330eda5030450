"""Synthetic observation generators driven by the published models.

Used for test fixtures, benchmarks and the bundled example dataset. All
generators are deterministic given ``seed``.
"""

from __future__ import annotations

import math
from importlib import resources
from typing import Sequence

import numpy as np

from .dataio import Observation, PavementSection, load_sections
from .indices import Indicator, ffs_from_speed_limit
from .registry import (
    INDICATOR_ORDER,
    PavementType,
    SoilType,
    calibration_ranges,
    coerce_enum,
    published_model,
)

# index ranges enforced on noisy synthetic responses
_CLIP = {"psi": (0.05, 5.0), "pdi": (0.0, 5.0), "pqi": (0.0, 5.0), "iri": (0.0, math.inf)}


def bundled_sections_path():
    return resources.files("pavemetrics") / "data" / "sections.csv"


def bundled_observations_path():
    return resources.files("pavemetrics") / "data" / "observations_synthetic.csv"


def bundled_sections() -> list[PavementSection]:
    with resources.as_file(bundled_sections_path()) as p:
        return list(load_sections(p).records)


def residual_scale(indicator: Indicator, pavement_type: PavementType) -> float:
    """Residual standard deviation implied by the published R² and response spread."""
    m = published_model(indicator, pavement_type)
    sd = calibration_ranges(pavement_type)[indicator.column].std
    return sd * math.sqrt(1.0 - m.r_squared)


def _responses(rng, pavement_type, values: dict, noise: float, clip: bool) -> dict:
    n = len(values["ffs"])
    out = {}
    for ind in INDICATOR_ORDER:
        m = published_model(ind, pavement_type)
        y = np.full(n, m.intercept.beta)
        for name, term in m.coefficients.items():
            y = y + term.beta * values[name]
        if noise:
            y = y + rng.normal(0.0, noise * residual_scale(ind, pavement_type), n)
        if clip:
            lo, hi = _CLIP[ind.column]
            y = np.clip(y, lo, hi)
        out[ind.column] = y
    return out


def _draw_predictors(rng, pavement_type, n):
    env = calibration_ranges(pavement_type)
    log_aadt = rng.uniform(env["log10_aadt"].min, env["log10_aadt"].max, n)
    return {
        "precipitation": rng.uniform(env["precipitation"].min, env["precipitation"].max, n),
        "temperature": rng.uniform(env["temperature"].min, env["temperature"].max, n),
        "log10_aadt": log_aadt,
        "ffs": rng.uniform(env["ffs"].min, env["ffs"].max, n),
        "soil_type_A": (rng.random(n) < 0.5).astype(float),
    }


def registry_design(pavement_type, n: int, seed: int, noise: float = 0.0):
    """Predictor matrix (in model order) and responses drawn from the registry.

    Predictors are independent draws inside the published envelopes; with
    ``noise=0`` the responses lie exactly on the published planes.
    """
    pt = coerce_enum(PavementType, pavement_type)
    rng = np.random.default_rng(seed)
    values = _draw_predictors(rng, pt, n)
    X = np.column_stack([values[k] for k in ("precipitation", "temperature", "log10_aadt", "ffs", "soil_type_A")])
    return X, _responses(rng, pt, values, noise, clip=False)


def design_observations(pavement_type, X, responses: dict, prefix: str = "D") -> list[Observation]:
    """Wrap a ``registry_design`` matrix as unrounded observation records.

    ``responses`` maps index columns (psi, pdi, pqi, iri) to arrays; any
    column left out stays unmeasured.
    """
    pt = coerce_enum(PavementType, pavement_type)
    out = []
    for k, row in enumerate(np.asarray(X, dtype=float)):
        out.append(Observation(
            section_id=f"{prefix}{k:06d}",
            year=2010,
            aadt=float(10 ** row[2]),
            ffs=float(row[3]),
            precipitation=float(row[0]),
            temperature=float(row[1]),
            pavement_type=pt,
            soil_type=SoilType.A if row[4] else SoilType.B,
            **{c: float(v[k]) for c, v in responses.items()},
        ))
    return out


def random_observations(n_rows: int, seed: int, noise: float = 1.0, missing_rate: float = 0.03,
                        ac_share: float = 103 / 160) -> list[Observation]:
    """Independent section-year rows of both pavement types.

    Measured indices are clipped into their valid ranges and blanked at
    ``missing_rate`` to exercise listwise deletion.
    """
    rng = np.random.default_rng(seed)
    is_ac = rng.random(n_rows) < ac_share
    out: list[Observation | None] = [None] * n_rows
    for pt, mask in ((PavementType.AC, is_ac), (PavementType.JPCP, ~is_ac)):
        idx = np.flatnonzero(mask)
        if idx.size == 0:
            continue
        values = _draw_predictors(rng, pt, idx.size)
        ys = _responses(rng, pt, values, noise, clip=True)
        blanks = {k: rng.random(idx.size) < missing_rate for k in ys}
        years = rng.integers(2005, 2015, idx.size)
        for k, row in enumerate(idx):
            measured = {c: (None if blanks[c][k] else round(float(ys[c][k]), 4)) for c in ys}
            out[row] = Observation(
                section_id=f"{pt.value}-{row:06d}",
                year=int(years[k]),
                aadt=float(round(10 ** float(values["log10_aadt"][k]))),
                ffs=round(float(values["ffs"][k]), 2),
                precipitation=round(float(values["precipitation"][k]), 2),
                temperature=round(float(values["temperature"][k]), 2),
                pavement_type=pt,
                soil_type=SoilType.A if values["soil_type_A"][k] else SoilType.B,
                **measured,
            )
    return out


# posted speed limits (mph) assumed for the bundled inventory
_SPEED_LIMITS = {
    "AIK-I520": 60, "BEA-US278": 55, "CHA-SC461": 35, "CHA-I526": 60, "CHE-SC9": 55,
    "CHF-SC151": 55, "FAI-I77": 70, "FLO-SC327": 45, "FLO-US301": 55, "GEO-US521": 55,
    "GRE-I385": 65, "GRE-I85": 65, "HOR-SC22": 55, "HOR-SC31": 45, "LAU-SC72": 55,
    "LEX-S378": 45, "ORA-US321": 55, "PIC-SC93": 45, "SPA-SC80": 55, "SPA-I85": 70,
}


def panel_observations(sections: Sequence[PavementSection], seed: int,
                       years: Sequence[int] = tuple(range(2005, 2015)),
                       noise: float = 1.0, missing_rate: float = 0.04) -> list[Observation]:
    """Section-year panel over a section inventory.

    Climate is drawn per county and year (upland soil-A counties cooler),
    traffic grows per section, and the free-flow speed is left to be
    derived from the posted limit on load.
    """
    rng = np.random.default_rng(seed)
    counties = sorted({s.county for s in sections})
    county_precip = {c: rng.uniform(40.0, 52.0) for c in counties}
    county_temp = {}
    for s in sections:
        base = 60.0 if s.soil_type is SoilType.A else 64.0
        county_temp.setdefault(s.county, base + rng.uniform(-1.0, 1.0))
    out = []
    for s in sections:
        pt = s.pavement_type
        env = calibration_ranges(pt)
        limit = _SPEED_LIMITS.get(s.section_id, 55)
        ffs = ffs_from_speed_limit(limit)
        base_log = rng.uniform(env["log10_aadt"].min + 0.1, env["log10_aadt"].max - 0.3)
        growth = rng.uniform(0.0, 0.02)
        for k, year in enumerate(years):
            log_aadt = base_log + growth * k
            values = {
                "precipitation": np.array([county_precip[s.county] + rng.normal(0.0, 5.0)]),
                "temperature": np.array([county_temp[s.county] + rng.normal(0.0, 0.8)]),
                "log10_aadt": np.array([log_aadt]),
                "ffs": np.array([ffs]),
                "soil_type_A": np.array([1.0 if s.soil_type is SoilType.A else 0.0]),
            }
            ys = _responses(rng, pt, values, noise, clip=True)
            measured = {
                c: (None if rng.random() < missing_rate else round(float(v[0]), 3))
                for c, v in ys.items()
            }
            out.append(Observation(
                section_id=s.section_id,
                year=int(year),
                aadt=float(round(10 ** log_aadt)),
                ffs=ffs,
                precipitation=round(float(values["precipitation"][0]), 2),
                temperature=round(float(values["temperature"][0]), 2),
                speed_limit=float(limit),
                ffs_source="derived",
                **measured,
            ))
    return out
