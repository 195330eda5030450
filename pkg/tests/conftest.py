import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=1000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

os.environ["PAVEMETRICS_NO_COLOR"] = "1"

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"
PKG_DATA = Path(__file__).resolve().parents[1] / "src" / "pavemetrics" / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def sections_csv():
    return PKG_DATA / "sections.csv"


@pytest.fixture(scope="session")
def fixture_csv():
    return PKG_DATA / "observations_synthetic.csv"


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(test_acceptance.RESULTS):
        terminalreporter.write_line(test_acceptance.RESULTS[k][1])
