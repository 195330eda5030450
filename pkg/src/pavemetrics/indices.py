"""Pavement condition index algebra and free-flow speed formulas.

All functions are pure. Inputs outside a formula's domain raise
:class:`~pavemetrics.errors.DomainError` instead of being clamped, so bad
records surface at ingestion time.

Note that the PQI combination has a floor of 1.158 (both factors zero),
even though PQI is nominally described as a 0-5 index. The formula value
is returned unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

PSI_MAX = 5.0
PSI_DECAY = 0.002841  # per inch/mile
PDI_MAX = 5.0
PQI_BASE = 1.158
PQI_SLOPE = 0.138

FFS_THRESHOLD_MPH = 50.0


class Indicator(str, Enum):
    PSI = "PSI"
    PDI = "PDI"
    PQI = "PQI"
    IRI = "IRI"

    @property
    def column(self) -> str:
        return self.value.lower()


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class IndexValue:
    kind: Indicator
    value: float

    def __post_init__(self):
        v = _finite("index value", self.value)
        ok = {
            Indicator.IRI: v >= 0.0,
            Indicator.PSI: 0.0 < v <= PSI_MAX,
            Indicator.PDI: 0.0 <= v <= PDI_MAX,
            Indicator.PQI: 0.0 <= v <= PSI_MAX,
        }[Indicator(self.kind)]
        if not ok:
            raise DomainError(f"{self.kind.value} value {v} outside its valid range")


def check_index(kind: Indicator | str, value: float) -> float:
    """Validate a measured index value and return it as float."""
    return IndexValue(Indicator(kind), value).value


def psi_from_iri(iri: float) -> float:
    """Present Serviceability Index from roughness (inch/mile)."""
    iri = _finite("iri", iri)
    if iri < 0:
        raise DomainError(f"iri must be >= 0, got {iri}")
    return PSI_MAX * math.exp(-PSI_DECAY * iri)


def iri_from_psi(psi: float) -> float:
    """Inverse of :func:`psi_from_iri`."""
    psi = _finite("psi", psi)
    if not 0.0 < psi <= PSI_MAX:
        raise DomainError(f"psi must lie in (0, 5], got {psi}")
    return math.log(PSI_MAX / psi) / PSI_DECAY


def pdi_from_adv(adv: float) -> float:
    """Pavement Distress Index from an adjusted distress value in [0, 5]."""
    adv = _finite("adv", adv)
    if not 0.0 <= adv <= PDI_MAX:
        raise DomainError(f"adv must lie in [0, 5], got {adv}")
    return PDI_MAX - adv


def pqi_from_psi_pdi(psi: float, pdi: float) -> float:
    """Pavement Quality Index from serviceability and distress indices."""
    psi = _finite("psi", psi)
    pdi = _finite("pdi", pdi)
    for name, v in (("psi", psi), ("pdi", pdi)):
        if not 0.0 <= v <= 5.0:
            raise DomainError(f"{name} must lie in [0, 5], got {v}")
    return PQI_BASE + PQI_SLOPE * psi * pdi


def ffs_from_speed_limit(speed_limit: float) -> float:
    """Free-flow speed (mph) from the posted link speed limit (mph).

    The two linear branches meet discontinuously at 50 mph; the jump is
    intentional and must not be smoothed.
    """
    speed_limit = _finite("speed_limit", speed_limit)
    if speed_limit <= 0:
        raise DomainError(f"speed limit must be > 0, got {speed_limit}")
    if speed_limit > FFS_THRESHOLD_MPH:
        return 0.88 * speed_limit + 14.0
    return 0.79 * speed_limit + 12.0
