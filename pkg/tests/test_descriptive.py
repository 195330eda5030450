import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pavemetrics.errors import StatError
from pavemetrics.statcore import correlation_matrix, descriptive_stats, pearson_r

from .oracles import pearson

finite = st.floats(-1e6, 1e6, allow_nan=False)


def test_descriptive_examples():
    s = descriptive_stats([3, 3, 3])
    assert (s.min, s.max, s.mean, s.sample_std) == (3, 3, 3, 0)
    s = descriptive_stats([1, 2, 3, 4])
    assert (s.min, s.max, s.mean) == (1, 4, 2.5)
    assert s.sample_std == pytest.approx(math.sqrt(5 / 3), rel=1e-12)
    s = descriptive_stats([-1, 1])
    assert s.mean == 0 and s.sample_std == pytest.approx(math.sqrt(2), rel=1e-12)


@pytest.mark.parametrize("bad", [[1.0], [], [1.0, math.nan], [1.0, math.inf]])
def test_descriptive_errors(bad):
    with pytest.raises(StatError):
        descriptive_stats(bad)


@given(st.lists(finite, min_size=2, max_size=40))
def test_mean_within_range(xs):
    s = descriptive_stats(xs)
    assert s.min <= s.mean <= s.max


def test_pearson_examples(rng):
    x = rng.normal(size=10)
    assert pearson_r(x, x) == pytest.approx(1.0, abs=1e-15)
    assert pearson_r(x, -x) == pytest.approx(-1.0, abs=1e-15)
    assert pearson_r([1, 2, 3, 4], [2, 1, 4, 3]) == pytest.approx(0.6, abs=1e-15)


def test_pearson_errors():
    with pytest.raises(StatError):
        pearson_r([1, 1, 1], [1, 2, 3])
    with pytest.raises(StatError):
        pearson_r([1, 2, 3], [1, 2])


@given(st.integers(0, 10_000), st.floats(0.01, 100), st.floats(-100, 100))
def test_pearson_affine_invariant(seed, scale, shift):
    r = np.random.default_rng(seed)
    x, y = r.normal(size=15), r.normal(size=15)
    assert pearson_r(scale * x + shift, y) == pytest.approx(pearson_r(x, y), abs=1e-10)
    assert -1 <= pearson_r(x, y) <= 1


def test_correlation_matrix_examples(rng):
    x = rng.normal(size=12)
    assert np.array_equal(correlation_matrix({"a": x, "b": x.copy()}), np.ones((2, 2)))
    # orthogonal after centring
    a = np.array([1.0, -1.0, 1.0, -1.0])
    b = np.array([1.0, 1.0, -1.0, -1.0])
    m = correlation_matrix({"a": a, "b": b})
    assert np.allclose(m, np.eye(2), atol=1e-15)


def test_correlation_matrix_against_oracle(rng):
    cols = {k: rng.normal(size=20) for k in "xyz"}
    cols["z"] = cols["z"] + 0.5 * cols["x"]
    m = correlation_matrix(cols)
    names = list(cols)
    for i, a in enumerate(names):
        assert m[i, i] == 1.0
        for j, b in enumerate(names):
            assert m[i, j] == m[j, i]
            if i != j:
                assert m[i, j] == pytest.approx(pearson(cols[a], cols[b]), abs=1e-12)
