import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import _oracles as o
from edge_spectra.errors import DomainError
from edge_spectra.specfun import (
    HalfIntOrder,
    LogScaledValue,
    bessel_i_half,
    bessel_ratio,
    bessel_ratio_grid,
    log_i_half_grid,
)


def i_of(twice_nu, x):
    return bessel_i_half(HalfIntOrder(twice_nu), x).value


class TestHalfIntOrder:
    def test_rejects_even(self):
        with pytest.raises(DomainError):
            HalfIntOrder(2)

    def test_rejects_below_minus_half(self):
        with pytest.raises(DomainError):
            HalfIntOrder(-3)

    def test_from_nu(self):
        assert HalfIntOrder.from_nu(3.5).twice_order == 7
        with pytest.raises(DomainError):
            HalfIntOrder.from_nu(0.75)


class TestLogScaledValue:
    def test_zero_encoding(self):
        z = LogScaledValue(float("-inf"), 0)
        assert z.value == 0.0
        with pytest.raises(DomainError):
            LogScaledValue(1.0, 0)
        with pytest.raises(DomainError):
            LogScaledValue(1.0, 2)


class TestBesselIHalf:
    def test_frozen_values_at_one(self):
        assert abs(i_of(1, 1.0) - o.I_HALF_1) / o.I_HALF_1 < 1e-13
        assert abs(i_of(3, 1.0) - o.I_3HALF_1) / o.I_3HALF_1 < 1e-13
        assert abs(i_of(5, 1.0) - o.I_5HALF_1) / o.I_5HALF_1 < 1e-13

    def test_small_argument_leading_order(self):
        x = 1e-8
        lead = math.sqrt(2.0 * x / math.pi) * (1.0 + x * x / 6.0)
        assert abs(i_of(1, x) - lead) / lead < 1e-12

    def test_closed_form_agreement_on_grid(self):
        # rel 1e-10 for nu in {1/2, 3/2, 5/2} across x in [0.1, 50]
        for twice_nu in (1, 3, 5):
            for x in np.linspace(0.1, 50.0, 100):
                ref = o.closed_form_i(twice_nu, float(x))
                got = bessel_i_half(HalfIntOrder(twice_nu), float(x))
                assert got.sign == 1
                assert abs(got.value - ref) / ref < 1e-10

    def test_accuracy_against_mpmath_extremes(self):
        # the stress corners: huge order at tiny argument, large argument
        for twice_nu in (1, 9, 101, 401):
            for x in (1e-6, 1e-3, 1.0, 100.0, 700.0):
                got = bessel_i_half(HalfIntOrder(twice_nu), x)
                ref = o.mp_besseli(twice_nu / 2.0, x)
                rel = abs((got.log_magnitude - float(o.mp.log(ref))))
                # compare in log space; 1e-12 relative on the value
                assert rel <= 1e-12 * max(1.0, abs(float(o.mp.log(ref))))

    def test_recurrence_residual(self):
        # I_{nu-1} - I_{nu+1} = (2 nu / x) I_nu, relative to I_{nu-1}
        for twice_nu in (3, 5, 9, 41):
            nu = twice_nu / 2.0
            for x in (0.3, 1.0, 7.0, 60.0):
                lo = i_of(twice_nu - 2, x)
                mid = i_of(twice_nu, x)
                hi = i_of(twice_nu + 2, x)
                resid = abs(lo - hi - (2.0 * nu / x) * mid) / lo
                assert resid <= 1e-9

    def test_positivity(self):
        for twice_nu in (1, 7, 31):
            for x in (1e-6, 0.5, 20.0):
                v = bessel_i_half(HalfIntOrder(twice_nu), x)
                assert v.sign == 1 and math.isfinite(v.log_magnitude)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            bessel_i_half(HalfIntOrder(1), 0.0)
        with pytest.raises(DomainError):
            bessel_i_half(HalfIntOrder(1), -1.0)
        with pytest.raises(DomainError):
            bessel_i_half(HalfIntOrder(-1), 1.0)


class TestBesselRatio:
    def test_frozen_values(self):
        r = bessel_ratio(HalfIntOrder(1), 1.0)
        assert abs(r - o.RATIO_HALF_1) / o.RATIO_HALF_1 < 1e-13
        r = bessel_ratio(HalfIntOrder(1), 0.01)
        assert abs(r - o.RATIO_HALF_001) / o.RATIO_HALF_001 < 1e-13
        r = bessel_ratio(HalfIntOrder(1), 100.0)
        assert abs(r - o.RATIO_HALF_100) / o.RATIO_HALF_100 < 1e-13

    def test_small_argument_divergence(self):
        # ratio I_nu/I_{nu+1} ~ (2 nu + 2)/x (1 + O(x^2))
        r = bessel_ratio(HalfIntOrder(1), 1e-4)
        assert abs(r * 1e-4 / 3.0 - 1.0) < 1e-6

    def test_ratio_consistency_with_logs(self):
        for twice_nu in (1, 5, 21):
            for x in (0.05, 1.0, 30.0, 500.0):
                r = bessel_ratio(HalfIntOrder(twice_nu), x)
                li = bessel_i_half(HalfIntOrder(twice_nu), x).log_magnitude
                lj = bessel_i_half(HalfIntOrder(twice_nu + 2), x).log_magnitude
                assert abs(r * math.exp(lj - li) - 1.0) <= 1e-10

    def test_grid_matches_scalar(self):
        xs = np.array([1e-5, 0.02, 1.0, 9.0, 250.0])
        grid = bessel_ratio_grid(HalfIntOrder(3), xs)
        for x, g in zip(xs, grid):
            assert g == pytest.approx(bessel_ratio(HalfIntOrder(3), float(x)), rel=1e-14)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            bessel_ratio(HalfIntOrder(1), -2.0)
        with pytest.raises(DomainError):
            bessel_ratio(HalfIntOrder(-1), 1.0)


class TestLogGrid:
    def test_matches_scalar_path(self):
        xs = np.array([1e-6, 0.3, 4.0, 77.0])
        lg = log_i_half_grid(HalfIntOrder(9), xs)
        for x, l in zip(xs, lg):
            assert l == pytest.approx(
                bessel_i_half(HalfIntOrder(9), float(x)).log_magnitude, rel=1e-14, abs=1e-13
            )


@given(
    st.integers(min_value=1, max_value=30).map(lambda k: 2 * k + 1),
    st.floats(min_value=1e-4, max_value=200.0),
)
def test_recurrence_property(twice_nu, x):
    nu = twice_nu / 2.0
    lo = i_of(twice_nu - 2, x)
    mid = i_of(twice_nu, x)
    hi = i_of(twice_nu + 2, x)
    assert abs(lo - hi - (2.0 * nu / x) * mid) / lo <= 1e-9


@given(
    st.integers(min_value=0, max_value=40).map(lambda k: 2 * k + 1),
    st.floats(min_value=1e-5, max_value=400.0),
)
def test_ratio_positive_and_consistent(twice_nu, x):
    r = bessel_ratio(HalfIntOrder(twice_nu), x)
    assert r > 0.0
    li = bessel_i_half(HalfIntOrder(twice_nu), x).log_magnitude
    lj = bessel_i_half(HalfIntOrder(twice_nu + 2), x).log_magnitude
    assert abs(r * math.exp(lj - li) - 1.0) <= 1e-10
