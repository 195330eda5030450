"""Batch command-line pipeline.

Subcommands: fit, diagnose, validate, predict, summarize (plus synth for
generating synthetic observation files). Exit codes: 0 success, 1 fatal
I/O or configuration error, 2 when some models or rows failed.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import dataio, synthetic
from .errors import DataFormatError, PavemetricsError
from .indices import Indicator, ffs_from_speed_limit
from .registry import (
    INDICATOR_ORDER,
    PAVEMENT_ORDER,
    PREDICTORS,
    PavementType,
    PredictorInput,
    predict,
    published_model,
)
from .reports import Report, Style, failures_text, fmt_num, fmt_p, render, table, write_output
from .statcore import DesignSpec, diagnose, listwise, ols_fit_arrays, paired_t_test

COMMANDS = ("fit", "predict", "diagnose", "validate", "summarize", "synth")


class ConfigError(PavemetricsError):
    pass


@dataclass
class RunConfig:
    command: str
    sections: Path | None = None
    observations: Path | None = None
    pavement: str = "both"
    indicator: str = "all"
    alpha: float = 0.05
    format: str = "text"
    out: Path | None = None
    refit: bool = False
    seed: int | None = None
    issues: Path | None = None
    pairs: Path | None = None
    workers: int = 8
    # predict
    batch: Path | None = None
    aadt: float | None = None
    ffs: float | None = None
    speed_limit: float | None = None
    precipitation: float | None = None
    temperature: float | None = None
    soil: str | None = None
    # synth
    rows: int = 1000
    noise: float = 1.0
    panel: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.format not in ("text", "csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.pavement.lower() not in ("ac", "jpcp", "both"):
            raise ConfigError(f"unknown pavement type {self.pavement!r}")
        if self.indicator.lower() not in ("psi", "pdi", "pqi", "iri", "all"):
            raise ConfigError(f"unknown indicator {self.indicator!r}")
        outputs = [p for p in (self.out, self.issues, self.pairs) if p is not None]
        inputs = [p for p in (self.sections, self.observations, self.batch) if p is not None]
        for o in outputs:
            for i in inputs:
                if Path(o).resolve() == Path(i).resolve():
                    raise ConfigError(f"output path {o} would overwrite input {i}")

    @property
    def pavement_types(self) -> list[PavementType]:
        p = self.pavement.lower()
        return list(PAVEMENT_ORDER) if p == "both" else [PavementType(p.upper())]

    @property
    def indicators(self) -> list[Indicator]:
        i = self.indicator.lower()
        return list(INDICATOR_ORDER) if i == "all" else [Indicator(i.upper())]

    def settings(self) -> dict:
        return {
            "pavement": self.pavement.lower(),
            "indicator": self.indicator.lower(),
            "alpha": self.alpha,
            "refit": self.refit,
        }


# -- loading -------------------------------------------------------------------

def _warn(msg: str) -> None:
    print(f"pavemetrics: {msg}", file=sys.stderr)


def load_inputs(config: RunConfig) -> list[dataio.Observation]:
    """Load observations, attach section attributes and report issues.

    Raises DataFormatError when nothing usable was loaded.
    """
    if config.observations is None:
        raise ConfigError("--observations is required")
    result = dataio.load_observations(config.observations)
    issues = list(result.issues)
    observations = list(result.records)

    if config.sections is not None:
        sec = dataio.load_sections(config.sections)
        issues += sec.issues
        sections = sec.records
    elif any(o.pavement_type is None or o.soil_type is None for o in observations):
        sections = synthetic.bundled_sections()
    else:
        sections = ()
    observations, unknown = dataio.attach_sections(observations, sections)
    if unknown:
        _warn(f"{len(unknown)} section id(s) without pavement or soil type: {', '.join(unknown[:5])}")

    if config.issues is not None:
        write_output(dataio.format_issues(issues), config.issues)
    if result.errors:
        _warn(f"{len(result.errors)} of {result.rows_in} observation rows rejected"
              + ("" if config.issues else " (use --issues PATH for details)"))
    if not observations:
        raise DataFormatError(f"{config.observations}: no usable observations")
    return observations


def _rows_for(observations, pt: PavementType) -> list[dict]:
    return [o.as_row() for o in observations if o.pavement_type is pt]


def _spec(ind: Indicator) -> DesignSpec:
    return DesignSpec(ind.column, PREDICTORS)


def _cells(config: RunConfig):
    return [(pt, ind) for pt in config.pavement_types for ind in config.indicators]


def _failure(pt, ind, exc) -> dict:
    f = {"pavement_type": pt.value, "indicator": ind.value, "error": str(exc)}
    if getattr(exc, "column", None) is not None:
        f["column"] = exc.column
    return f


# -- fit -----------------------------------------------------------------------

FIT_COLUMNS = [
    "pavement_type", "indicator", "term", "beta", "std_error", "t_stat", "p_value", "stars",
    "beta_std", "n_used", "n_dropped", "r_squared", "adj_r_squared", "f_stat", "df1", "df2",
    "f_p_value", "f_stars",
]


def fit_cells(observations, cells, workers: int = 8):
    """Fit one model per (pavement type, indicator); failures are returned, not raised."""
    rows = {pt: _rows_for(observations, pt) for pt in {pt for pt, _ in cells}}

    def job(cell):
        pt, ind = cell
        spec = _spec(ind)
        try:
            X, y, dropped = listwise(spec, rows[pt])
            return ols_fit_arrays(spec, X, y, n_dropped=dropped)
        except PavemetricsError as exc:
            return exc

    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(job, cells))
    else:
        results = [job(c) for c in cells]
    return list(zip(cells, results))


def _p_rel(p) -> str:
    s = fmt_p(p)
    return s.replace("<", "< ") if s.startswith("<") else f"= {s}"


def _fit_text(report: Report, style: Style) -> str:
    blocks = []
    groups: dict[tuple, list[dict]] = {}
    for r in report.rows:
        groups.setdefault((r["pavement_type"], r["indicator"]), []).append(r)
    for (pt, ind), rows in groups.items():
        head = rows[0]
        body = [
            [r["term"], fmt_num(r["beta"]) + r["stars"], fmt_num(r["beta_std"]),
             fmt_num(r["std_error"]), fmt_num(r["t_stat"]), fmt_p(r["p_value"])]
            for r in rows
        ]
        blocks.append("\n".join([
            style.bold(f"{ind} model, {pt} pavements (n = {head['n_used']}, dropped = {head['n_dropped']})"),
            table(["term", "beta", "beta_std", "std_error", "t", "p"], body),
            f"R2 = {fmt_num(head['r_squared'])}   adjusted R2 = {fmt_num(head['adj_r_squared'])}   "
            f"F({head['df1']}, {head['df2']}) = {fmt_num(head['f_stat'])}{head['f_stars']}   "
            f"p {_p_rel(head['f_p_value'])}",
        ]))
    text = "\n\n".join(blocks) + "\n"
    return text + failures_text(report, style)


def cmd_fit(config: RunConfig) -> Report:
    observations = load_inputs(config)
    rows, failures = [], []
    for (pt, ind), fit in fit_cells(observations, _cells(config), config.workers):
        if isinstance(fit, Exception):
            failures.append(_failure(pt, ind, fit))
            continue
        common = {
            "pavement_type": pt.value, "indicator": ind.value, "n_used": fit.n_used,
            "n_dropped": fit.n_dropped, "r_squared": fit.r_squared,
            "adj_r_squared": fit.adj_r_squared, "f_stat": fit.f_stat, "df1": fit.df1,
            "df2": fit.df2, "f_p_value": fit.f_p_value, "f_stars": fit.f_stars,
        }
        for c in fit.coefficients:
            rows.append({
                **common, "term": c.name, "beta": c.beta, "std_error": c.std_error,
                "t_stat": c.t_stat, "p_value": c.p_value, "stars": c.stars, "beta_std": c.beta_std,
            })
    return Report("fit", FIT_COLUMNS, rows, failures, config.settings(), _fit_text)


# -- diagnose ------------------------------------------------------------------

def _diag_columns():
    return ["pavement_type", "indicator", "n_used", "variable", "r_response"] + [
        f"r_{p}" for p in PREDICTORS
    ] + ["vif", "vif_flag"]


def _diag_text(report: Report, style: Style) -> str:
    blocks = []
    groups: dict[tuple, list[dict]] = {}
    for r in report.rows:
        groups.setdefault((r["pavement_type"], r["indicator"]), []).append(r)
    labels = ["response"] + list(PREDICTORS)
    for (pt, ind), rows in groups.items():
        body = []
        for i, r in enumerate(rows):
            cells = [r["variable"]]
            for j, lab in enumerate(labels):
                cells.append(fmt_num(r[f"r_{lab}"], 2) + r["stars"].get(lab, "") if j <= i else "")
            vif = r["vif"]
            vtxt = fmt_num(vif, 2) if vif is not None else ""
            if r["vif_flag"]:
                vtxt = style.red(vtxt + " !")
            cells.append(vtxt)
            body.append(cells)
        headers = ["", ind.lower()] + list(PREDICTORS) + ["VIF"]
        block = [
            style.bold(f"Correlations and VIF, {ind} model, {pt} pavements (n = {rows[0]['n_used']})"),
            table(headers, body),
            "* p < 0.05; ** p < 0.01",
        ]
        block += [style.yellow(f"warning: {w}") for w in rows[0]["warnings"]]
        blocks.append("\n".join(block))
    return "\n\n".join(blocks) + "\n" + failures_text(report, style)


def _corr_stars(p: float) -> str:
    return "**" if p < 0.01 else ("*" if p < 0.05 else "")


def cmd_diagnose(config: RunConfig) -> Report:
    observations = load_inputs(config)
    rows, failures = [], []
    for pt, ind in _cells(config):
        spec = _spec(ind)
        try:
            X, y, _ = listwise(spec, _rows_for(observations, pt))
            columns = {ind.column: y, **{p: X[:, k] for k, p in enumerate(PREDICTORS)}}
            rep = diagnose(columns, PREDICTORS)
        except PavemetricsError as exc:
            failures.append(_failure(pt, ind, exc))
            continue
        names = rep.variable_names
        labels = ["response"] + list(PREDICTORS)
        vifs = {e.name: e for e in rep.vif}
        for i, name in enumerate(names):
            row = {
                "pavement_type": pt.value, "indicator": ind.value, "n_used": rep.n,
                "variable": name,
                "vif": vifs[name].vif if name in vifs else None,
                "vif_flag": vifs[name].flagged if name in vifs else None,
            }
            stars = {}
            for j, lab in enumerate(labels):
                row[f"r_{lab}"] = float(rep.correlation_matrix[i, j])
                if i != j:
                    stars[lab] = _corr_stars(rep.correlation_p_values[i, j])
            row["stars"] = stars
            row["warnings"] = list(rep.warnings)
            rows.append(row)
    warnings = [
        f"{r['pavement_type']} {r['indicator']}: {w}"
        for r in rows if r["variable"] == r["indicator"].lower() for w in r["warnings"]
    ]
    return Report("diagnose", _diag_columns(), rows, failures, config.settings(), _diag_text, warnings)


# -- validate ------------------------------------------------------------------

VALIDATE_COLUMNS = [
    "pavement_type", "indicator", "source", "n", "mean_measured", "mean_estimated",
    "t_stat", "p_value", "alpha", "decision",
]


def _validate_text(report: Report, style: Style) -> str:
    body = []
    for r in report.rows:
        decision = r["decision"]
        if decision == "Reject H0":
            decision = style.red(decision)
        body.append([
            r["pavement_type"], r["indicator"], str(r["n"]), fmt_num(r["mean_measured"], 2),
            fmt_num(r["mean_estimated"], 2), fmt_p(r["p_value"]), decision,
        ])
    alpha = report.settings.get("alpha")
    source = "refitted models" if report.settings.get("refit") else "published models"
    head = style.bold(f"Paired comparison of measured and estimated indicators ({source}, alpha = {alpha:g})")
    return "\n".join([head, table(
        ["pavement", "indicator", "n", "measured", "estimated", "p-value", "test result"], body,
        "llrrrrl",
    )]) + "\n" + failures_text(report, style)


def cmd_validate(config: RunConfig) -> Report:
    observations = load_inputs(config)
    source = "refit" if config.refit else "published"
    rows, failures, pairs = [], [], []
    fits = {}
    if config.refit:
        fits = dict(fit_cells(observations, _cells(config), config.workers))
    for pt, ind in _cells(config):
        spec = _spec(ind)
        obs = [o for o in observations if o.pavement_type is pt]
        X, y, _ = listwise(spec, [o.as_row() for o in obs])
        kept = [o for o in obs if o.measured(ind) is not None and o.soil_type is not None]
        try:
            if config.refit:
                fit = fits[(pt, ind)]
                if isinstance(fit, Exception):
                    raise fit
                est = fit.predict(X) if len(y) else np.empty(0)
            else:
                b = np.asarray(published_model(ind, pt).betas())
                est = b[0] + X @ b[1:] if len(y) else np.empty(0)
            cmp = paired_t_test(y, est, alpha=config.alpha, label=f"{pt.value} {ind.value}")
        except PavemetricsError as exc:
            failures.append(_failure(pt, ind, exc))
            continue
        rows.append({
            "pavement_type": pt.value, "indicator": ind.value, "source": source, "n": cmp.n,
            "mean_measured": cmp.mean_measured, "mean_estimated": cmp.mean_estimated,
            "t_stat": cmp.t_stat, "p_value": cmp.p_value, "alpha": cmp.alpha,
            "decision": cmp.decision.label,
        })
        for o, m, e in zip(kept, y, est):
            pairs.append([pt.value, ind.value, o.section_id, o.year, repr(float(m)), repr(float(e))])
    if config.pairs is not None:
        with open(config.pairs, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["pavement_type", "indicator", "section_id", "year", "measured", "estimated"])
            w.writerows(pairs)
    return Report("validate", VALIDATE_COLUMNS, rows, failures, config.settings(), _validate_text)


# -- summarize -----------------------------------------------------------------

SUMMARY_COLUMNS = ["pavement_type", "variable", "unit", "n", "min", "max", "mean", "std"]


def _summary_text(report: Report, style: Style) -> str:
    blocks = []
    for pt in PAVEMENT_ORDER:
        rows = [r for r in report.rows if r["pavement_type"] == pt.value]
        if not rows:
            continue
        body = [
            [r["variable"], r["unit"], str(r["n"]), fmt_num(r["min"]), fmt_num(r["max"]),
             fmt_num(r["mean"]), fmt_num(r["std"])]
            for r in rows
        ]
        blocks.append(style.bold(f"{pt.value} pavements") + "\n" + table(
            ["variable", "unit", "n", "min", "max", "mean", "std. dev."], body, "llrrrrr"))
    return "\n\n".join(blocks) + "\n" + failures_text(report, style)


def cmd_summarize(config: RunConfig) -> Report:
    observations = load_inputs(config)
    rows, failures = [], []
    for pt in config.pavement_types:
        try:
            summary = dataio.summarize(observations, pt)
        except PavemetricsError as exc:
            failures.append({"pavement_type": pt.value, "error": str(exc)})
            continue
        for s in summary:
            rows.append({
                "pavement_type": pt.value, "variable": s.variable, "unit": s.unit, "n": s.n,
                "min": s.min, "max": s.max, "mean": s.mean, "std": s.sample_std,
            })
    return Report("summarize", SUMMARY_COLUMNS, rows, failures, config.settings(), _summary_text)


# -- predict -------------------------------------------------------------------

PREDICT_COLUMNS = ["row", "pavement_type", "indicator", "value", "warnings"]


def _predict_text(report: Report, style: Style) -> str:
    body = [
        [str(r["row"]), r["pavement_type"], r["indicator"], fmt_num(r["value"]),
         style.yellow(r["warnings"]) if r["warnings"] else ""]
        for r in report.rows
    ]
    return table(["row", "pavement", "indicator", "value", "outside calibration range"], body,
                 "rllrl") + "\n" + failures_text(report, style)


def _input_from(record: dict) -> PredictorInput:
    def num(key):
        v = record.get(key)
        if v is None or (isinstance(v, str) and not v.strip()):
            return None
        return float(v)

    ffs = num("ffs")
    if ffs is None:
        limit = num("speed_limit")
        if limit is None:
            raise ConfigError("either ffs or speed_limit is required")
        ffs = ffs_from_speed_limit(limit)
    missing = [k for k in ("aadt", "precipitation", "temperature") if num(k) is None]
    if missing:
        raise ConfigError(f"missing {', '.join(missing)}")
    soil = (record.get("soil_type") or "").strip().upper()
    if soil not in ("A", "B"):
        raise ConfigError(f"soil_type must be A or B, got {soil!r}")
    return PredictorInput(num("aadt"), ffs, num("precipitation"), num("temperature"), soil)


def cmd_predict(config: RunConfig) -> Report:
    if config.batch is not None:
        if not os.path.exists(config.batch):
            raise DataFormatError(f"file not found: {config.batch}")
        with open(config.batch, newline="", encoding="utf-8-sig") as fh:
            records = list(csv.DictReader(fh))
    else:
        records = [{
            "aadt": config.aadt, "ffs": config.ffs, "speed_limit": config.speed_limit,
            "precipitation": config.precipitation, "temperature": config.temperature,
            "soil_type": config.soil,
        }]
    rows, failures = [], []
    for k, rec in enumerate(records, start=1):
        label = (rec.get("id") or "").strip() or k
        try:
            inp = _input_from(rec)
            pts = config.pavement_types
            if (rec.get("pavement_type") or "").strip():
                pts = [PavementType(rec["pavement_type"].strip().upper())]
            results = [predict(ind, pt, inp) for pt in pts for ind in config.indicators]
        except (PavemetricsError, ValueError) as exc:
            failures.append({"row": label, "error": str(exc)})
            continue
        for r in results:
            rows.append({
                "row": label, "pavement_type": r.pavement_type.value, "indicator": r.indicator.value,
                "value": r.value, "warnings": ";".join(r.extrapolation_warnings),
            })
    return Report("predict", PREDICT_COLUMNS, rows, failures, config.settings(), _predict_text)


# -- synth ---------------------------------------------------------------------

def cmd_synth(config: RunConfig) -> int:
    if config.out is None:
        raise ConfigError("synth requires --out")
    seed = 0 if config.seed is None else config.seed
    if config.panel:
        sections = (dataio.load_sections(config.sections).records if config.sections
                    else synthetic.bundled_sections())
        obs = synthetic.panel_observations(sections, seed=seed, noise=config.noise)
    else:
        obs = synthetic.random_observations(config.rows, seed=seed, noise=config.noise)
    dataio.write_observations(config.out, obs)
    return 0


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sections", type=Path)
    common.add_argument("--observations", type=Path)
    common.add_argument("--pavement", default="both", type=str.lower, choices=["ac", "jpcp", "both"])
    common.add_argument("--indicator", default="all", type=str.lower, choices=["psi", "pdi", "pqi", "iri", "all"])
    common.add_argument("--alpha", type=float, default=0.05)
    common.add_argument("--format", default="text", choices=["text", "csv", "json"])
    common.add_argument("--out", type=Path)
    common.add_argument("--refit", action="store_true", help="validate against models fitted to the data")
    common.add_argument("--seed", type=int)
    common.add_argument("--issues", type=Path, help="write ingestion issues (line,severity,field,message)")
    common.add_argument("--workers", type=int, default=8)

    parser = argparse.ArgumentParser(prog="pavemetrics", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("fit", parents=[common], help="fit the eight regression models")
    sub.add_parser("diagnose", parents=[common], help="correlation matrices and VIF")
    v = sub.add_parser("validate", parents=[common], help="paired t-tests of measured vs estimated")
    v.add_argument("--pairs", type=Path, help="write measured/estimated pairs as CSV")
    sub.add_parser("summarize", parents=[common], help="descriptive statistics per pavement type")
    p = sub.add_parser("predict", parents=[common], help="predict with the published models")
    p.add_argument("--batch", type=Path, help="CSV of inputs, one row per prediction")
    p.add_argument("--aadt", type=float)
    p.add_argument("--ffs", type=float)
    p.add_argument("--speed-limit", type=float, dest="speed_limit")
    p.add_argument("--precipitation", type=float)
    p.add_argument("--temperature", type=float)
    p.add_argument("--soil", type=str.upper, choices=["A", "B"])
    s = sub.add_parser("synth", parents=[common], help="write a synthetic observations file")
    s.add_argument("--rows", type=int, default=1000)
    s.add_argument("--noise", type=float, default=1.0)
    s.add_argument("--panel", action="store_true", help="section-year panel over the inventory")
    return parser


_DISPATCH = {
    "fit": cmd_fit,
    "diagnose": cmd_diagnose,
    "validate": cmd_validate,
    "summarize": cmd_summarize,
    "predict": cmd_predict,
}


def run(config: RunConfig) -> int:
    if config.command == "synth":
        return cmd_synth(config)
    report = _DISPATCH[config.command](config)
    style = Style(False) if config.out is not None else Style.for_stream(sys.stdout)
    write_output(render(report, config.format, style), config.out)
    if report.failures and config.format != "text":
        for f in report.failures:
            _warn(" ".join(str(v) for v in f.values()))
    return report.exit_code


def main(argv=None) -> int:
    try:
        args = vars(build_parser().parse_args(argv))
    except SystemExit as exc:
        # argparse exits with 2 on bad flags; 2 is reserved for partial failures
        return 1 if exc.code else 0
    try:
        config = RunConfig(**args)
        return run(config)
    except (DataFormatError, ConfigError, OSError) as exc:
        _warn(str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
