import math

from pavemetrics.reports import Report, Style, fmt_num, fmt_p, to_csv, to_json


class _Tty:
    def isatty(self):
        return True


def test_style_honours_env(monkeypatch):
    monkeypatch.delenv("PAVEMETRICS_NO_COLOR", raising=False)
    assert Style.for_stream(_Tty()).red("x") == "\033[31mx\033[0m"
    monkeypatch.setenv("PAVEMETRICS_NO_COLOR", "1")
    assert Style.for_stream(_Tty()).red("x") == "x"


def test_number_formats():
    assert fmt_num(0.12345) == "0.123"
    assert fmt_num(math.inf) == "inf"
    assert fmt_p(0.0123) == "0.012"
    assert fmt_p(0.000123) == "1.230e-04"
    assert fmt_p(1e-16) == "<1e-15"
    assert fmt_p(0.0) == "<1e-15"


def test_non_finite_serialisation():
    rep = Report("diagnose", ["variable", "vif"], [{"variable": "x", "vif": math.inf}])
    assert to_csv(rep).splitlines()[1] == "x,inf"
    assert '"vif": "inf"' in to_json(rep)
