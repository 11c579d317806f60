import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import _oracles as o
from edge_spectra.errors import DomainError, UnsupportedRegimeError
from edge_spectra.robin1d import (
    RobinProblem,
    SpectralRoot,
    asymptotic_kappa,
    bulk_residual,
    edge_residual,
    kappa_M,
    kappa_m,
    solve_bulk_modes,
    solve_edge_mode,
)


class TestTypes:
    def test_robin_problem_validation(self):
        with pytest.raises(DomainError):
            RobinProblem(0.0, 1.0)
        with pytest.raises(DomainError):
            RobinProblem(1.0, math.inf)

    def test_spectral_root_validation(self):
        with pytest.raises(DomainError):
            SpectralRoot("edge", -1.0)
        with pytest.raises(DomainError):
            SpectralRoot("weird", 1.0)
        r = SpectralRoot("edge", 2.0)
        assert r.eigenvalue == -4.0
        assert SpectralRoot("bulk", 2.0, 1).eigenvalue == 4.0


class TestEdgeMode:
    def test_unit_case_frozen(self):
        root = solve_edge_mode(RobinProblem(1.0, 1.0))
        assert root.kind == "edge"
        assert abs(root.kappa_or_k - o.KAPPA_1_1) < 1e-12
        assert abs(root.kappa_or_k - 1.199679) < 1e-6

    def test_neumann_limit_absent(self):
        assert solve_edge_mode(RobinProblem(1.0, 0.0)) is None
        assert solve_edge_mode(RobinProblem(1.0, -3.0)) is None

    def test_large_c(self):
        root = solve_edge_mode(RobinProblem(1.0, 100.0))
        assert abs(root.kappa_or_k / 100.0 - 1.0) < 1e-4
        assert edge_residual(RobinProblem(1.0, 100.0), root.kappa_or_k) <= 1e-12 * 100.0

    def test_residual_bound_on_grid(self):
        for eps in (0.1, 1.0, 10.0):
            for c in np.logspace(-3, 3, 13):
                p = RobinProblem(eps, float(c))
                k = solve_edge_mode(p).kappa_or_k
                assert edge_residual(p, k) <= 1e-12 * max(1.0, c)

    def test_monotone_in_c(self):
        for eps in (0.1, 1.0, 10.0):
            ks = [solve_edge_mode(RobinProblem(eps, float(c))).kappa_or_k
                  for c in np.logspace(-3, 2, 40)]
            assert all(b > a for a, b in zip(ks, ks[1:]))


class TestBulkModes:
    def test_first_root_frozen(self):
        roots = solve_bulk_modes(RobinProblem(1.0, 1.0), 1)
        assert abs(roots[0].kappa_or_k - o.K1_1_1) < 1e-12

    def test_near_neumann_bracket(self):
        p = RobinProblem(1.0, 1e-6)
        k1 = solve_bulk_modes(p, 1)[0].kappa_or_k
        assert math.pi / 2 < k1 < math.pi
        assert abs(k1 - math.pi / 2) < 1e-5  # perturbation ~ c/(pi/2)
        assert bulk_residual(p, k1) <= 1e-12

    def test_second_root_eps2(self):
        p = RobinProblem(2.0, 1.0)
        k2 = solve_bulk_modes(p, 2)[1].kappa_or_k
        assert 3 * math.pi / 4 < k2 < math.pi
        assert abs(k2 - o.K2_EPS2_C1) < 1e-12
        assert bulk_residual(p, k2) <= 1e-12

    def test_sorted_and_bracketed(self):
        p = RobinProblem(0.7, 3.0)
        roots = solve_bulk_modes(p, 5)
        ks = [r.kappa_or_k for r in roots]
        assert ks == sorted(ks)
        for n, k in enumerate(ks, start=1):
            assert (2 * n - 1) * math.pi / (2 * 0.7) < k < n * math.pi / 0.7
            assert bulk_residual(p, k) <= 1e-12 * max(1.0, 3.0)

    def test_nonpositive_c_unsupported(self):
        with pytest.raises(UnsupportedRegimeError):
            solve_bulk_modes(RobinProblem(1.0, 0.0), 1)
        with pytest.raises(UnsupportedRegimeError):
            solve_bulk_modes(RobinProblem(1.0, -1.0), 1)


class TestBounds:
    def test_kappa_m_frozen(self):
        assert abs(kappa_m(RobinProblem(1.0, 1.0)) - o.KAPPA_M_1_1) < 1e-14

    def test_kappa_m_small_c_limit(self):
        # eps*c/tanh(eps*c) -> 1, so the bound tends to 1.1 tanh(1.1)
        val = kappa_m(RobinProblem(1.0, 1e-12))
        assert abs(val - o.KAPPA_M_SMALL_C) < 1e-10

    def test_kappa_m_saturated(self):
        assert kappa_m(RobinProblem(1.0, 100.0)) == pytest.approx(o.KAPPA_M_1_100, abs=1e-9)

    def test_kappa_M_values(self):
        assert abs(kappa_M(RobinProblem(1.0, 1.0)) - o.TANH_1) < 1e-15
        assert kappa_M(RobinProblem(1.0, 1e-7)) == pytest.approx(1e-14, rel=1e-6)
        assert abs(kappa_M(RobinProblem(0.1, 10.0)) - 10.0 * math.tanh(1.0)) < 1e-14

    def test_domain_errors(self):
        for fn in (kappa_m, kappa_M):
            with pytest.raises(DomainError):
                fn(RobinProblem(1.0, 0.0))

    def test_sandwich_on_grid(self):
        # strict ordering kappa_M < kappa < kappa_m; at eps*c beyond ~19 both
        # tanh factors saturate to 1.0 in doubles and the three numbers merge,
        # so strictness is only asserted below that
        for eps in (0.1, 1.0, 10.0):
            for c in np.logspace(-3, 3, 19):
                p = RobinProblem(eps, float(c))
                k = solve_edge_mode(p).kappa_or_k
                lo, hi = kappa_M(p), kappa_m(p)
                if eps * c < 18.0:
                    assert lo < k < hi
                else:
                    assert lo <= k <= hi


class TestAsymptotics:
    def test_regimes(self):
        reg, val = asymptotic_kappa(RobinProblem(1.0, 100.0))
        assert reg == "large_ec" and val == 100.0
        reg, val = asymptotic_kappa(RobinProblem(1.0, 1e-4))
        assert reg == "small_ec" and val == pytest.approx(0.01)
        reg, val = asymptotic_kappa(RobinProblem(1.0, 1.0))
        assert reg == "intermediate" and abs(val - o.KAPPA_1_1) < 1e-12

    def test_convergence_invariants(self):
        k = solve_edge_mode(RobinProblem(1.0, 100.0)).kappa_or_k
        assert abs(k / 100.0 - 1.0) <= 1e-3
        k = solve_edge_mode(RobinProblem(1.0, 1e-4)).kappa_or_k
        assert abs(k / math.sqrt(1e-4) - 1.0) <= 1e-2


@given(
    st.floats(min_value=0.05, max_value=20.0),
    st.floats(min_value=1e-3, max_value=1e3),
)
def test_edge_root_properties(eps, c):
    p = RobinProblem(eps, c)
    root = solve_edge_mode(p)
    assert root is not None
    k = root.kappa_or_k
    assert edge_residual(p, k) <= 1e-12 * max(1.0, c)
    assert kappa_M(p) <= k <= kappa_m(p)


@given(
    st.floats(min_value=0.2, max_value=5.0),
    st.floats(min_value=1e-2, max_value=50.0),
    st.integers(min_value=1, max_value=4),
)
def test_bulk_root_properties(eps, c, n):
    p = RobinProblem(eps, c)
    roots = solve_bulk_modes(p, n)
    k = roots[-1].kappa_or_k
    assert (2 * n - 1) * math.pi / (2 * eps) < k < n * math.pi / eps
    assert bulk_residual(p, k) <= 1e-12 * max(1.0, c)
