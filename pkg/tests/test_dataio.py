import math

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from pavemetrics.dataio import (
    OBSERVATION_COLUMNS,
    SECTION_COLUMNS,
    attach_sections,
    format_issues,
    load_observations,
    load_sections,
    summarize,
    write_observations,
    write_sections,
)
from pavemetrics.errors import DataFormatError, InsufficientDataError
from pavemetrics.registry import PavementType, calibration_ranges

HEADER = ",".join(OBSERVATION_COLUMNS)


def _obs_file(tmp_path, *lines, header=HEADER):
    p = tmp_path / "obs.csv"
    p.write_text("\n".join([header, *lines]) + "\n")
    return p


def test_bundled_sections(sections_csv):
    res = load_sections(sections_csv)
    assert len(res.records) == 20 and res.issues == ()
    types = [s.pavement_type for s in res.records]
    assert types.count(PavementType.AC) == 14 and types.count(PavementType.JPCP) == 6
    compound = [s for s in res.records if "+" in s.base_thickness]
    assert compound and all(s.base_thickness_total > 0 for s in compound)


def test_header_only(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text(",".join(SECTION_COLUMNS) + "\n")
    res = load_sections(p)
    assert res.records == () and res.issues == () and res.rows_in == 0


def test_bad_length_row(tmp_path, sections_csv):
    lines = sections_csv.read_text().splitlines()
    cells = lines[5].split(",")
    cells[SECTION_COLUMNS.index("length")] = "-1"
    lines[5] = ",".join(cells)
    p = tmp_path / "s.csv"
    p.write_text("\n".join(lines) + "\n")
    res = load_sections(p)
    assert len(res.records) == 19
    assert [(i.line, i.field) for i in res.issues] == [(6, "length")]


def test_missing_file_and_header(tmp_path):
    with pytest.raises(DataFormatError):
        load_observations(tmp_path / "nope.csv")
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(DataFormatError):
        load_observations(empty)
    with pytest.raises(DataFormatError):
        load_observations(_obs_file(tmp_path, header="section_id,year,aadt"))


def test_derived_ffs(tmp_path):
    res = load_observations(_obs_file(tmp_path, "X,2010,5000,70,,45,63,3.5,,,,AC,B"))
    (o,) = res.records
    assert o.ffs == pytest.approx(75.6, abs=1e-12) and o.ffs_source == "derived"


def test_rejections_and_warnings(tmp_path):
    res = load_observations(_obs_file(
        tmp_path,
        "X,2010,5000,,60,45,63,6.2,,,,AC,B",    # psi above 5
        "X,2010,5000,,,45,63,3.0,,,,AC,B",      # no speed information
        "X,2010,0,,60,45,63,3.0,,,,AC,B",       # aadt not positive
        "X,1950,5000,,60,45,63,3.0,,,,AC,B",    # year out of range
        "X,2010,5000,,60,45,63,,,,,AC,B",       # prediction only
    ))
    assert [i.field for i in res.errors] == ["psi", "ffs", "aadt", "year"]
    assert len(res.records) == 1 and not res.records[0].usable_for_fit
    assert len(res.warnings) == 1 and res.warnings[0].line == 6
    assert format_issues(res.issues).splitlines()[0] == "line,severity,field,message"


def test_no_cross_derivation(tmp_path):
    (o,) = load_observations(_obs_file(tmp_path, "X,2010,5000,,60,45,63,,,,90,AC,B")).records
    assert o.iri == 90 and o.psi is None


row_cell = st.one_of(
    st.just(""), st.just("abc"), st.just("-3"), st.just("0"),
    st.floats(0.5, 200, allow_nan=False).map(lambda v: f"{v:.3f}"),
)


@settings(suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.lists(st.tuples(*[row_cell] * 6), max_size=25))
def test_rows_accounted(tmp_path, rows):
    lines = [f"S{k},2010,{a},{sl},{f},{pr},60,{psi},,,{iri},AC,A"
             for k, (a, sl, f, pr, psi, iri) in enumerate(rows)]
    res = load_observations(_obs_file(tmp_path, *lines))
    assert res.rows_in == len(rows) == len(res.records) + len(res.errors)


def test_roundtrip(tmp_path, fixture_csv, sections_csv):
    obs = load_observations(fixture_csv).records
    out = tmp_path / "o.csv"
    write_observations(out, obs)
    assert load_observations(out).records == obs
    secs = load_sections(sections_csv).records
    out = tmp_path / "s.csv"
    write_sections(out, secs)
    assert load_sections(out).records == secs


def test_attach_sections(fixture_csv, sections_csv):
    obs = load_observations(fixture_csv).records
    secs = load_sections(sections_csv).records
    merged, unknown = attach_sections(obs, secs)
    assert unknown == []
    assert all(o.pavement_type is not None and o.soil_type is not None for o in merged)


def _envelope_rows(pt):
    env = calibration_ranges(pt)
    lo = {k: r.min for k, r in env.items()}
    hi = {k: r.max for k, r in env.items()}
    mid = {k: (r.min + r.max) / 2 for k, r in env.items()}
    lines = []
    for i, v in enumerate((lo, mid, hi)):
        lines.append(",".join(str(x) for x in (
            f"S{i}", 2010, 10 ** v["log10_aadt"], "", v["ffs"], v["precipitation"], v["temperature"],
            v["psi"], v["pdi"], v["pqi"], v["iri"], pt, "A")))
    return lines


def test_summary_reproduces_envelope(tmp_path):
    obs = load_observations(_obs_file(tmp_path, *_envelope_rows("AC"))).records
    env = calibration_ranges("AC")
    rows = summarize(obs, "AC")
    assert [r.variable for r in rows] == ["psi", "pdi", "pqi", "iri", "log10_aadt", "ffs", "precipitation", "temperature"]
    for r in rows:
        assert f"{r.min:.1f}" == f"{env[r.variable].min:.1f}"
        assert f"{r.max:.1f}" == f"{env[r.variable].max:.1f}"
        assert r.min <= r.mean <= r.max
    iri = next(r for r in rows if r.variable == "iri")
    assert (iri.min, iri.max) == (43.9, 112.9)


def test_summary_constant_and_insufficient(tmp_path):
    lines = [f"S{i},2010,5000,,60,45,63,3.0,,,,JPCP,B" for i in range(3)]
    obs = load_observations(_obs_file(tmp_path, *lines)).records
    rows = {r.variable: r for r in summarize(obs, "JPCP")}
    assert rows["psi"].sample_std == 0 and rows["psi"].n == 3
    assert rows["iri"].n == 0 and rows["iri"].mean is None
    assert rows["log10_aadt"].mean == pytest.approx(math.log10(5000))
    with pytest.raises(InsufficientDataError):
        summarize(obs, "AC")
