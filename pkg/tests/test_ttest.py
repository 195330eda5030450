import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from pavemetrics.errors import StatError
from pavemetrics.statcore import Decision, paired_t_test


def test_identical_series(rng):
    a = rng.normal(size=8)
    res = paired_t_test(a, a.copy())
    assert res.p_value == 1.0 and res.decision is Decision.DO_NOT_REJECT


def test_constant_shift(rng):
    a = rng.normal(size=8)
    res = paired_t_test(a, a + 5)
    assert res.p_value == 0.0 and res.decision is Decision.REJECT
    assert res.decision.label == "Reject H0"


def test_engineered_p_047():
    n = 30
    t_target = stats.t.isf(0.47 / 2, n - 1)
    e = np.random.default_rng(4).normal(size=n)
    e = (e - e.mean()) / e.std(ddof=1)
    d = e + t_target / np.sqrt(n)
    b = np.linspace(70, 90, n)
    res = paired_t_test(b + d, b, alpha=0.05)
    assert res.p_value == pytest.approx(0.47, abs=1e-9)
    assert res.decision.label == "Do not reject H0"


@given(st.integers(0, 100_000))
def test_matches_scipy(seed):
    r = np.random.default_rng(seed)
    n = int(r.integers(2, 40))
    a, b = r.normal(size=n), r.normal(0.3, 1.0, size=n)
    res = paired_t_test(a, b)
    ref = stats.ttest_rel(a, b)
    assert res.t_stat == pytest.approx(ref.statistic, rel=1e-9)
    assert res.p_value == pytest.approx(ref.pvalue, rel=1e-8, abs=1e-14)
    assert (res.decision is Decision.REJECT) == (res.p_value < 0.05)


@given(st.integers(0, 100_000), st.floats(-1e3, 1e3))
def test_shift_invariance_and_swap(seed, c):
    r = np.random.default_rng(seed)
    a, b = r.normal(size=10), r.normal(size=10)
    base = paired_t_test(a, b)
    assert paired_t_test(a + c, b + c).t_stat == pytest.approx(base.t_stat, rel=1e-6, abs=1e-9)
    assert paired_t_test(b, a).t_stat == pytest.approx(-base.t_stat, rel=1e-12)


def test_errors():
    with pytest.raises(StatError):
        paired_t_test([1.0, 2.0], [1.0])
    with pytest.raises(StatError):
        paired_t_test([1.0], [1.0])
    with pytest.raises(StatError):
        paired_t_test([1.0, 2.0], [1.0, 3.0], alpha=1.5)
