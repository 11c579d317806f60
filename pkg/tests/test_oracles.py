"""The frozen oracle constants must be reproducible from the oracle code."""

import math

import mpmath as mp

import _oracles as o


def test_edge_roots_reproduce():
    assert abs(float(o.mp_edge_root(1, 1)) - o.KAPPA_1_1) < 1e-15
    assert abs(float(o.mp_edge_root(1, 10)) - o.KAPPA_1_10) < 1e-13
    assert abs(o.bisect_edge_root(1.0, 1.0) - o.KAPPA_1_1) < 1e-12


def test_bulk_root_reproduces():
    assert abs(o.bisect_bulk_root(1.0, 1.0, 1) - o.K1_1_1) < 1e-12
    assert abs(o.bisect_bulk_root(2.0, 1.0, 2) - o.K2_EPS2_C1) < 1e-12


def test_bessel_references_reproduce():
    assert abs(float(o.mp_besseli(0.5, 1)) - o.I_HALF_1) < 1e-16
    assert abs(float(o.mp_besseli(1.5, 1)) - o.I_3HALF_1) < 1e-16
    assert abs(float(o.mp_besseli(2.5, 1)) - o.I_5HALF_1) < 1e-16
    ratio = float(o.mp_besseli(0.5, 1) / o.mp_besseli(1.5, 1))
    assert abs(ratio - o.RATIO_HALF_1) < 1e-14
    assert abs(float(mp.log(o.mp_besseli(0.5, 1) / o.mp_besseli(1.5, 1))) - o.ALPHA_STAR_J12) < 1e-15


def test_closed_forms_match_mpmath():
    # cancellation at small x grows with the order, hence the 1e-10 bar
    for twice_nu in (1, 3, 5, 7):
        for x in (0.5, 1.0, 3.0, 10.0):
            got = o.closed_form_i(twice_nu, x)
            ref = float(o.mp_besseli(twice_nu / 2.0, x))
            assert abs(got - ref) / ref < 1e-10


def test_gap_roots_reproduce():
    assert abs(float(o.mp_gap_root(1.0, 1, 1, 1)) - o.E_ROOT_A1_K1) < 1e-15
    assert abs(float(o.mp_gap_root(1.0, 1, 1, 2)) - o.E_ROOT_A1_K2) < 1e-15
    assert abs(float(o.mp_gap_root(0.5, 1, 1, 1)) - o.E_ROOT_A05_K1) < 1e-15


def test_density_ratio_reproduces():
    # boundary density m(I_{1/2}(mR0)^2 + I_{3/2}(mR0)^2)/R0 over the
    # r -> 0 limit 2 m^2 / pi of phi1^2, both at E = 0
    for m, frozen in ((1.0, o.DENSITY_RATIO_M1), (5.0, o.DENSITY_RATIO_M5)):
        num = m * (float(o.mp_besseli(0.5, m)) ** 2 + float(o.mp_besseli(1.5, m)) ** 2)
        den = 2.0 * m * m / math.pi
        assert abs(num / den - frozen) / frozen < 1e-13


def test_theorem_bound_spot_reproduces():
    val = 1.1 * (10.0 * (0.5 + math.pi ** 2 / 1600.0 - 1.0 / 1.1))
    assert abs(val - o.THEOREM_BOUND_SPOT) < 1e-12
