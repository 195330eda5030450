import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pavemetrics.errors import DomainError
from pavemetrics.indices import (
    Indicator,
    IndexValue,
    ffs_from_speed_limit,
    iri_from_psi,
    pdi_from_adv,
    pqi_from_psi_pdi,
    psi_from_iri,
)

# expected values below were computed with mpmath at 40 digits


@pytest.mark.parametrize("iri, expected, tol", [
    (0.0, 5.0, 0.0),
    (100.0, 3.7634568590, 1e-9),
    (37.086, 4.4999963535, 1e-9),
])
def test_psi_from_iri(iri, expected, tol):
    assert psi_from_iri(iri) == pytest.approx(expected, abs=tol)


def test_psi_from_iri_spec_examples():
    assert psi_from_iri(100) == pytest.approx(3.7634, abs=1e-4)
    assert psi_from_iri(37.086) == pytest.approx(4.5, abs=1e-4)


@pytest.mark.parametrize("bad", [-0.1, math.inf, math.nan])
def test_psi_from_iri_domain(bad):
    with pytest.raises(DomainError):
        psi_from_iri(bad)


def test_iri_from_psi():
    assert iri_from_psi(5.0) == 0.0
    assert iri_from_psi(4.5) == pytest.approx(37.08571476868, abs=1e-9)
    assert iri_from_psi(3.7634) == pytest.approx(100.0, abs=0.05)


@pytest.mark.parametrize("bad", [0.0, -1.0, 5.0001])
def test_iri_from_psi_domain(bad):
    with pytest.raises(DomainError):
        iri_from_psi(bad)


def test_pdi_from_adv():
    assert pdi_from_adv(0) == 5.0
    assert pdi_from_adv(5.0) == 0.0
    assert pdi_from_adv(1.2) == pytest.approx(3.8, abs=1e-12)
    for bad in (-0.01, 5.01):
        with pytest.raises(DomainError):
            pdi_from_adv(bad)


def test_pqi_from_psi_pdi():
    # 1.158 + 0.138 * 22.5 = 4.263 exactly in decimal arithmetic
    assert pqi_from_psi_pdi(4.5, 5.0) == pytest.approx(4.263, abs=1e-12)
    assert pqi_from_psi_pdi(0, 0) == 1.158
    assert pqi_from_psi_pdi(3.0, 4.0) == pytest.approx(2.814, abs=1e-12)
    with pytest.raises(DomainError):
        pqi_from_psi_pdi(5.1, 1.0)
    with pytest.raises(DomainError):
        pqi_from_psi_pdi(1.0, -0.1)


def test_ffs_branches():
    assert ffs_from_speed_limit(70) == pytest.approx(75.6, abs=1e-12)
    assert ffs_from_speed_limit(50) == pytest.approx(51.5, abs=1e-12)
    assert ffs_from_speed_limit(55) == pytest.approx(62.4, abs=1e-12)
    with pytest.raises(DomainError):
        ffs_from_speed_limit(0)


def test_ffs_discontinuity_is_kept():
    assert ffs_from_speed_limit(50.0) == pytest.approx(51.5)
    assert ffs_from_speed_limit(math.nextafter(50.0, 100.0)) == pytest.approx(58.0)


@given(st.floats(0, 2000), st.floats(0, 2000))
def test_psi_strictly_decreasing(a, b):
    if a < b and psi_from_iri(b) > 0:
        # exp resolution can merge extremely close arguments
        if b - a > 1e-9 * max(1.0, b):
            assert psi_from_iri(a) > psi_from_iri(b)


@given(st.floats(0, 500))
def test_iri_psi_round_trip(x):
    assert iri_from_psi(psi_from_iri(x)) == pytest.approx(x, rel=1e-9, abs=1e-10)


@given(st.floats(0, 5), st.floats(0, 5))
def test_pqi_floor(psi, pdi):
    v = pqi_from_psi_pdi(psi, pdi)
    assert v >= 1.158
    if psi * pdi == 0:
        assert v == 1.158
    elif 0.138 * psi * pdi > math.ulp(1.158):
        assert v > 1.158


@given(st.floats(0.01, 5), st.floats(0, 5), st.floats(0, 5))
def test_pqi_monotone(psi, pdi_a, pdi_b):
    lo, hi = sorted((pdi_a, pdi_b))
    assert pqi_from_psi_pdi(psi, lo) <= pqi_from_psi_pdi(psi, hi)


def test_index_value_ranges():
    IndexValue(Indicator.PSI, 5.0)
    IndexValue(Indicator.IRI, 0.0)
    for kind, v in [(Indicator.PSI, 0.0), (Indicator.PSI, 6.2), (Indicator.PDI, 5.1), (Indicator.IRI, -1)]:
        with pytest.raises(DomainError):
            IndexValue(kind, v)
