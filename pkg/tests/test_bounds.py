"""Sharp constants, the bound sandwich, and the minimizing-class report."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rpenergy.bounds import (
    PROP5_OMITTED_REASON,
    HomotopyClassData,
    bounds_report,
    constant_C,
    constant_D,
    prop5_ratio,
    pu_predicate,
    upper_constant_identity,
)
from rpenergy.spherical_geometry import sphere_volume


def test_constant_spot_values():
    assert constant_C(2) == pytest.approx(1.0, abs=1e-14)
    assert constant_C(3) == pytest.approx(0.75 * math.pi, abs=1e-14)
    assert constant_C(4) == pytest.approx(4.0 * math.pi / 3.0, abs=1e-13)
    assert constant_D(3) == pytest.approx(0.75 * math.pi, abs=1e-14)
    assert constant_D(4) == pytest.approx(16.0 / 9.0, abs=1e-14)


def test_constant_validation():
    with pytest.raises(ValueError):
        constant_C(1)
    with pytest.raises(ValueError):
        constant_D(2)
    with pytest.raises(ValueError):
        prop5_ratio(2)
    with pytest.raises(ValueError):
        upper_constant_identity(2)


@pytest.mark.parametrize("n", range(3, 13))
def test_telescoping(n):
    prod = constant_C(2)
    for j in range(3, n + 1):
        prod *= constant_D(j)
    assert abs(prod - constant_C(n)) <= 1e-11 * constant_C(n)


@pytest.mark.parametrize("n", range(3, 13))
def test_upper_constant_identity(n):
    lhs, rhs = upper_constant_identity(n)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, lhs)


def test_upper_constant_identity_spot_values():
    assert upper_constant_identity(3) == pytest.approx((math.pi, math.pi), abs=1e-13)
    assert upper_constant_identity(4) == pytest.approx((2.0 * math.pi, 2.0 * math.pi), abs=1e-13)


def test_prop5_ratio_values():
    assert prop5_ratio(3) == pytest.approx(4.0 / 3.0, abs=1e-15)
    assert prop5_ratio(4) == pytest.approx(9.0 / 8.0, abs=1e-15)
    assert prop5_ratio(100) == pytest.approx(99.0 ** 2 / (100.0 * 98.0), abs=1e-15)
    # the hyperplane sandwich tightens as n grows
    ratios = [prop5_ratio(n) for n in range(3, 40)]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert all(r > 1.0 for r in ratios)


@pytest.mark.parametrize("n", range(2, 13))
def test_sandwich_ordering(n):
    data = HomotopyClassData(n=n, area_star=2.0 * math.pi,
                             beta=3.0 if n >= 3 else None)
    rep = bounds_report(data)
    assert rep.lower_thm1 <= rep.upper_thm1 + 1e-12
    if n == 2:
        # 2 (n-1)/n = 1: the theorem pins the energy exactly
        assert rep.lower_thm1 == pytest.approx(rep.upper_thm1, abs=1e-12)
        assert rep.lower_thm1 == pytest.approx(2.0 * math.pi, abs=1e-12)
    else:
        assert rep.lower_thm1 < rep.upper_thm1
        assert rep.lower_prop5 < rep.upper_prop5


def test_identity_class_equality_case():
    # the equality case: both lower bounds coincide at 3 pi^2 / 2 for n = 3
    rep = bounds_report(HomotopyClassData(n=3, area_star=2.0 * math.pi,
                                          length_star=math.pi))
    target = 1.5 * math.pi ** 2
    assert rep.lower_thm1 == pytest.approx(target, abs=1e-12)
    assert rep.lower_thm2 == pytest.approx(target, abs=1e-12)
    assert rep.upper_thm1 == pytest.approx(2.0 * math.pi ** 2, abs=1e-12)
    assert rep.pu_consistent is True


def test_report_beta_only():
    rep = bounds_report(HomotopyClassData(n=5, beta=10.0))
    assert rep.lower_thm1 is None
    assert rep.lower_thm2 is None
    assert rep.pu_consistent is None
    assert rep.lower_prop5 == pytest.approx(10.0 * constant_D(5), abs=1e-12)
    assert rep.upper_prop5 == pytest.approx(10.0 * constant_D(5) * prop5_ratio(5), abs=1e-12)


def test_report_beta_omitted_in_dimension_two():
    rep = bounds_report(HomotopyClassData(n=2, beta=1.0))
    assert rep.lower_prop5 is None
    assert rep.upper_prop5 is None
    assert rep.D_n is None
    assert rep.prop5_reason == PROP5_OMITTED_REASON


def test_to_dict_order_and_omission():
    rep = bounds_report(HomotopyClassData(n=3, area_star=2.0 * math.pi))
    d = rep.to_dict()
    assert list(d)[:3] == ["n", "sigma_n", "C_n"]
    assert "lower_thm2" not in d
    assert "pu_consistent" not in d
    assert "prop5_reason" not in d
    assert d["ratios"] == {"thm1": 4.0 / 3.0, "prop5": 4.0 / 3.0}
    full = bounds_report(HomotopyClassData(n=3, area_star=2.0 * math.pi,
                                           length_star=math.pi, beta=1.0)).to_dict()
    assert list(full) == ["n", "sigma_n", "C_n", "D_n", "lower_thm1", "upper_thm1",
                          "lower_thm2", "lower_prop5", "upper_prop5",
                          "pu_consistent", "ratios"]


def test_report_validation():
    with pytest.raises(ValueError):
        bounds_report(HomotopyClassData(n=3))
    with pytest.raises(ValueError):
        HomotopyClassData(n=3, area_star=-1.0)
    with pytest.raises(ValueError):
        HomotopyClassData(n=3, length_star=-0.5)
    with pytest.raises(ValueError):
        HomotopyClassData(n=1, area_star=1.0)


def test_report_sigma_matches_geometry():
    for n in (2, 3, 7):
        rep = bounds_report(HomotopyClassData(n=n, area_star=1.0))
        assert rep.sigma_n == sphere_volume(n)
        assert rep.C_n == constant_C(n)


@settings(max_examples=200, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=12),
    a=st.floats(min_value=1e-6, max_value=1e3, allow_nan=False),
    ell=st.floats(min_value=1e-6, max_value=60.0, allow_nan=False),
)
def test_pu_predicate_matches_bound_comparison(n, a, ell):
    # the isosystolic predicate holds exactly when the area lower bound
    # dominates the length lower bound
    rep = bounds_report(HomotopyClassData(n=n, area_star=a, length_star=ell))
    algebraic = rep.lower_thm1 >= rep.lower_thm2 - 1e-9 * rep.C_n
    assert pu_predicate(a, ell) == algebraic == rep.pu_consistent
