"""Reading, validating, writing and summarising section inventories and
section-year observations.

Both file types are comma-separated UTF-8 with a mandatory header row.
Column order is free; names are fixed. A row that fails validation never
disappears silently: it becomes an :class:`Issue` carrying its line
number, so ``rows_in == len(records) + len(errors)`` always holds.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import math
import os
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import DataFormatError, DomainError, InsufficientDataError
from .indices import Indicator, check_index, ffs_from_speed_limit
from .registry import PavementType, SoilType, coerce_enum
from .statcore import descriptive_stats

SECTION_COLUMNS = (
    "section_id", "county", "route", "pavement_type", "surface_thickness",
    "base_type", "base_thickness", "length", "construction_date", "soil_type",
)
OBSERVATION_REQUIRED = ("section_id", "year", "aadt", "precipitation", "temperature")
OBSERVATION_COLUMNS = (
    "section_id", "year", "aadt", "speed_limit", "ffs", "precipitation", "temperature",
    "psi", "pdi", "pqi", "iri", "pavement_type", "soil_type",
)
BASE_CODES = ("AA", "GAB", "SAB", "CSM", "CMS", "LC")
YEAR_RANGE = (1980, 2100)
_NA = {"", "na", "n/a", "nan", "null", "none"}

ERROR = "error"
WARNING = "warning"


class RowError(ValueError):
    def __init__(self, field_name, message):
        self.field = field_name
        super().__init__(message)


@dataclass(frozen=True)
class Issue:
    line: int
    severity: str
    field: str
    message: str


@dataclass(frozen=True)
class LoadResult:
    records: tuple
    issues: tuple[Issue, ...]
    rows_in: int

    @property
    def errors(self) -> list[Issue]:
        return [i for i in self.issues if i.severity == ERROR]

    @property
    def warnings(self) -> list[Issue]:
        return [i for i in self.issues if i.severity == WARNING]


# -- records -----------------------------------------------------------------

@dataclass(frozen=True)
class PavementSection:
    section_id: str
    county: str
    route: str
    pavement_type: PavementType
    surface_thickness: float
    base_type: str
    base_thickness: str
    length: float
    construction_date: dt.date
    soil_type: SoilType

    @property
    def base_thickness_total(self) -> float:
        return sum(float(part) for part in self.base_thickness.split("+"))

    @property
    def base_components(self) -> tuple[str, ...]:
        parts = [p.strip() for p in self.base_type.split("+")]
        return tuple(p if p in BASE_CODES else "other" for p in parts)


@dataclass(frozen=True)
class Observation:
    section_id: str
    year: int
    aadt: float
    ffs: float
    precipitation: float
    temperature: float
    speed_limit: float | None = None
    ffs_source: str = "given"
    psi: float | None = None
    pdi: float | None = None
    pqi: float | None = None
    iri: float | None = None
    pavement_type: PavementType | None = None
    soil_type: SoilType | None = None

    @property
    def log10_aadt(self) -> float:
        return math.log10(self.aadt)

    @property
    def soil_type_A(self) -> float | None:
        if self.soil_type is None:
            return None
        return 1.0 if self.soil_type is SoilType.A else 0.0

    @property
    def usable_for_fit(self) -> bool:
        return any(getattr(self, i.column) is not None for i in Indicator)

    def measured(self, indicator: Indicator | str) -> float | None:
        return getattr(self, Indicator(indicator).column)

    def as_row(self) -> dict:
        """Flat mapping of predictors and measured indices for regression."""
        return {
            "precipitation": self.precipitation,
            "temperature": self.temperature,
            "log10_aadt": self.log10_aadt,
            "ffs": self.ffs,
            "soil_type_A": self.soil_type_A,
            "psi": self.psi,
            "pdi": self.pdi,
            "pqi": self.pqi,
            "iri": self.iri,
        }


# -- field parsing -----------------------------------------------------------

def _text(row, name, required=True):
    v = (row.get(name) or "").strip()
    if required and not v:
        raise RowError(name, f"{name} is required")
    return v


def _number(row, name, required=True):
    raw = (row.get(name) or "").strip()
    if raw.lower() in _NA:
        if required:
            raise RowError(name, f"{name} is required")
        return None
    try:
        v = float(raw)
    except ValueError:
        raise RowError(name, f"{name} is not a number: {raw!r}") from None
    if not math.isfinite(v):
        raise RowError(name, f"{name} must be finite, got {raw!r}")
    return v


def _positive(row, name, required=True):
    v = _number(row, name, required)
    if v is not None and v <= 0:
        raise RowError(name, f"{name} must be > 0, got {v:g}")
    return v


def _enum(row, name, enum, required=True):
    raw = _text(row, name, required)
    if not raw:
        return None
    try:
        return enum(raw.upper().replace(" ", ""))
    except ValueError:
        allowed = ", ".join(e.value for e in enum)
        raise RowError(name, f"{name} must be one of {allowed}, got {raw!r}") from None


def _read(path, required: Sequence[str]):
    if not os.path.exists(path):
        raise DataFormatError(f"file not found: {path}")
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if not header:
            raise DataFormatError(f"{path}: missing header row")
        header = [h.strip() for h in header]
        reader.fieldnames = header
        missing = [c for c in required if c not in header]
        if missing:
            raise DataFormatError(f"{path}: missing required column(s): {', '.join(missing)}")
        for row in reader:
            yield reader.line_num, header, row


def _load(path, required, parse) -> LoadResult:
    records, issues, rows_in = [], [], 0
    header = None
    for line, header, row in _read(path, required):
        rows_in += 1
        if None in row:
            issues.append(Issue(line, ERROR, "", "row has more fields than the header"))
            continue
        try:
            rec, warns = parse(row, header)
        except RowError as e:
            issues.append(Issue(line, ERROR, e.field, str(e)))
            continue
        except DomainError as e:
            issues.append(Issue(line, ERROR, "", str(e)))
            continue
        records.append(rec)
        issues.extend(Issue(line, WARNING, f, m) for f, m in warns)
    return LoadResult(tuple(records), tuple(issues), rows_in)


def _parse_section(row, header):
    base_thickness = _text(row, "base_thickness")
    try:
        parts = [float(p) for p in base_thickness.split("+")]
    except ValueError:
        raise RowError("base_thickness", f"base_thickness is not a number or sum: {base_thickness!r}") from None
    if any(p <= 0 for p in parts):
        raise RowError("base_thickness", "base_thickness parts must be > 0")
    raw_date = _text(row, "construction_date")
    try:
        date = dt.date.fromisoformat(raw_date)
    except ValueError:
        raise RowError("construction_date", f"construction_date is not an ISO date: {raw_date!r}") from None
    rec = PavementSection(
        section_id=_text(row, "section_id"),
        county=_text(row, "county"),
        route=_text(row, "route"),
        pavement_type=_enum(row, "pavement_type", PavementType),
        surface_thickness=_positive(row, "surface_thickness"),
        base_type=_text(row, "base_type"),
        base_thickness=base_thickness,
        length=_positive(row, "length"),
        construction_date=date,
        soil_type=_enum(row, "soil_type", SoilType),
    )
    return rec, []


def _parse_observation(row, header):
    warns = []
    year_raw = _text(row, "year")
    try:
        year = int(year_raw)
    except ValueError:
        raise RowError("year", f"year is not an integer: {year_raw!r}") from None
    if not YEAR_RANGE[0] <= year <= YEAR_RANGE[1]:
        raise RowError("year", f"year {year} outside {YEAR_RANGE[0]}-{YEAR_RANGE[1]}")

    speed_limit = _positive(row, "speed_limit", required=False)
    ffs = _positive(row, "ffs", required=False)
    if ffs is not None:
        source = "given"
    elif speed_limit is not None:
        ffs, source = ffs_from_speed_limit(speed_limit), "derived"
    else:
        raise RowError("ffs", "either ffs or speed_limit is required")

    measured = {}
    for ind in Indicator:
        v = _number(row, ind.column, required=False)
        if v is not None:
            try:
                check_index(ind, v)
            except DomainError as e:
                raise RowError(ind.column, str(e)) from None
        measured[ind.column] = v

    rec = Observation(
        section_id=_text(row, "section_id"),
        year=year,
        aadt=_positive(row, "aadt"),
        ffs=ffs,
        precipitation=_number(row, "precipitation"),
        temperature=_number(row, "temperature"),
        speed_limit=speed_limit,
        ffs_source=source,
        pavement_type=_enum(row, "pavement_type", PavementType, required=False),
        soil_type=_enum(row, "soil_type", SoilType, required=False),
        **measured,
    )
    if not rec.usable_for_fit:
        warns.append(("", "no measured indices; usable for prediction only"))
    return rec, warns


def load_sections(path) -> LoadResult:
    return _load(path, SECTION_COLUMNS, _parse_section)


def load_observations(path) -> LoadResult:
    return _load(path, OBSERVATION_REQUIRED, _parse_observation)


def attach_sections(observations: Iterable[Observation], sections: Iterable[PavementSection]):
    """Fill pavement and soil type from the section inventory.

    Values already present on an observation win. Returns the updated
    observations and a list of section ids that were not found.
    """
    by_id = {s.section_id: s for s in sections}
    out, unknown = [], []
    for obs in observations:
        sec = by_id.get(obs.section_id)
        if sec is None:
            if obs.pavement_type is None or obs.soil_type is None:
                unknown.append(obs.section_id)
            out.append(obs)
            continue
        out.append(replace(
            obs,
            pavement_type=obs.pavement_type or sec.pavement_type,
            soil_type=obs.soil_type or sec.soil_type,
        ))
    return out, sorted(set(unknown))


# -- writers -------------------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    if hasattr(v, "value"):
        return v.value
    return str(v)


def write_sections(path, sections: Iterable[PavementSection]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SECTION_COLUMNS)
        for s in sections:
            w.writerow([
                s.section_id, s.county, s.route, s.pavement_type.value, _fmt(s.surface_thickness),
                s.base_type, s.base_thickness, _fmt(s.length), s.construction_date.isoformat(),
                s.soil_type.value,
            ])


def observation_cells(o: Observation) -> list[str]:
    return [
        o.section_id, str(o.year), _fmt(o.aadt), _fmt(o.speed_limit),
        _fmt(o.ffs) if o.ffs_source == "given" else "",
        _fmt(o.precipitation), _fmt(o.temperature),
        _fmt(o.psi), _fmt(o.pdi), _fmt(o.pqi), _fmt(o.iri),
        _fmt(o.pavement_type), _fmt(o.soil_type),
    ]


def write_observations(path, observations: Iterable[Observation]) -> None:
    """Write observations so that reloading reproduces them exactly.

    Derived free-flow speeds are written as blank ffs next to the speed
    limit, so they are re-derived (and flagged as such) on reload.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(OBSERVATION_COLUMNS)
        for o in observations:
            w.writerow(observation_cells(o))


def format_issues(issues: Iterable[Issue]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["line", "severity", "field", "message"])
    for i in issues:
        w.writerow([i.line, i.severity, i.field, i.message])
    return buf.getvalue()


# -- summaries -----------------------------------------------------------------

SUMMARY_VARIABLES = (
    ("psi", "-"),
    ("pdi", "-"),
    ("pqi", "-"),
    ("iri", "inch/mile"),
    ("log10_aadt", "veh/d"),
    ("ffs", "mph"),
    ("precipitation", "annual"),
    ("temperature", "degF"),
)


@dataclass(frozen=True)
class SummaryRow:
    pavement_type: PavementType
    variable: str
    unit: str
    n: int
    min: float | None
    max: float | None
    mean: float | None
    sample_std: float | None


def summarize(observations: Iterable[Observation], pavement_type: PavementType | str) -> list[SummaryRow]:
    """Min, max, mean, sample std and count per model variable.

    log10(AADT) is always derived from the stored raw AADT.
    """
    pt = coerce_enum(PavementType, pavement_type)
    obs = [o for o in observations if o.pavement_type is pt]
    if len(obs) < 2:
        raise InsufficientDataError(f"need at least 2 {pt.value} observations, got {len(obs)}")
    rows = []
    for var, unit in SUMMARY_VARIABLES:
        values = [v for v in (getattr(o, var) for o in obs) if v is not None]
        if len(values) < 2:
            rows.append(SummaryRow(pt, var, unit, len(values), None, None, None, None))
            continue
        s = descriptive_stats(values)
        rows.append(SummaryRow(pt, var, unit, s.n, s.min, s.max, s.mean, s.sample_std))
    return rows
