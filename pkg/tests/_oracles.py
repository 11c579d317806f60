"""Independent oracles and values frozen from them.

Every constant below was produced by the oracle functions in this module
(mpmath at 40 significant digits, plain bisection, closed forms) and then
frozen.  The oracles never touch the production code paths: edge/bulk roots
come from naive wide-bracket bisection, Bessel references from mpmath, and
the interval eigenvalues from the transcendental roots themselves.
``test_oracles.py`` re-derives a sample of the frozen constants at runtime so
the freezing stays auditable.
"""

from __future__ import annotations

import math

import mpmath as mp

mp.mp.dps = 40

# --- frozen: 1D Robin interval -------------------------------------------------
KAPPA_1_1 = 1.19967864025773383        # edge root of k*tanh(k) = 1
KAPPA_SQ_1_1 = 1.43922883989064515
KAPPA_1_10 = 10.000000041223069        # edge root of k*tanh(k) = 10
KAPPA_SQ_1_10 = 100.0000008244613844
K1_1_1 = 2.79838604578388714           # first bulk root of k*tan(k) = -1
K1_SQ_1_1 = 7.83096446123797967
K2_EPS2_C1 = 2.97969595378966316       # second bulk root at eps=2, c=1
KAPPA_M_1_1 = 1.25496885543508036      # (0.1 + 1/tanh 1) tanh(0.1 + 1/tanh 1)
KAPPA_M_SMALL_C = 0.880548923936692677  # c->0+ limit at eps=1: 1.1 tanh(1.1)
KAPPA_M_1_100 = 100.1                  # tanh saturated at double precision
TANH_1 = 0.761594155955764888
TANH_1_SQ = 0.580025632519172

# edge/bulk roots on the (eps, c) cross-validation grid
EDGE_GRID = {
    (0.5, 0.5): 1.0436268955915372, (0.5, 1.0): 1.5434046384182084,
    (0.5, 2.0): 2.3993572805154677, (0.5, 5.0): 5.0636280836365867,
    (1.0, 0.5): 0.77170231920910422, (1.0, 1.0): 1.1996786402577338,
    (1.0, 2.0): 2.0653381389747047, (1.0, 5.0): 5.0004536081839099,
    (2.0, 0.5): 0.59983932012886692, (2.0, 1.0): 1.0326690694873524,
    (2.0, 2.0): 2.0013351488399776, (2.0, 5.0): 5.0000000206115346,
}
BULK1_GRID = {
    (0.5, 0.5): 6.1201527671935786, (0.5, 1.0): 5.9501726433765588,
    (0.5, 2.0): 5.5967720915677743, (0.5, 5.0): 4.6371145684901471,
    (1.0, 0.5): 2.9750863216882794, (1.0, 1.0): 2.7983860457838871,
    (1.0, 2.0): 2.4587141759996246, (1.0, 5.0): 1.941107825747881,
    (2.0, 0.5): 1.3991930228919436, (2.0, 1.0): 1.2293570879998123,
    (2.0, 2.0): 1.0215043062412018, (2.0, 5.0): 0.87170084913127705,
}

# --- frozen: collar bounds -----------------------------------------------------
MU0_BALL3 = 8.85465841879664556        # kappa_m(eps=0.1, c=1/0.9)
MU0_SQ_BALL3 = 78.4049757135663114
UPPER_BALL3 = -0.00679267843868235201  # -kappa_M(eps=0.1, c=1/1.1)^2

# --- frozen: modified Bessel ---------------------------------------------------
I_HALF_1 = 0.937674888245487647
I_3HALF_1 = 0.2935253263474798
I_5HALF_1 = 0.0570989092030482474
I_7HALF_1 = 0.00803078033223856303
RATIO_HALF_1 = 3.19452804946532511     # I_{1/2}(1)/I_{3/2}(1)
RATIO_HALF_001 = 300.00199999428574    # I_{1/2}(0.01)/I_{3/2}(0.01)
RATIO_HALF_100 = 1.0101010101010101    # I_{1/2}(100)/I_{3/2}(100)

# --- frozen: Dirac ball (m = R0 = 1 unless stated) ------------------------------
ALPHA_STAR_J12 = 1.16143936157119563   # ln(I_{1/2}(1)/I_{3/2}(1))
ALPHA_STAR_J32 = 1.63717891313202621   # ln(I_{3/2}(1)/I_{5/2}(1))
LN_3_2 = 0.405465108108164382
E_ROOT_A1_K1 = -0.1731127128575528     # F(E) = e^1, kappa = 1
E_ROOT_A1_K2 = -0.85359787383966497    # F(E) = e^1, kappa = 2
E_ROOT_A05_K1 = -0.85248542156659154   # F(E) = e^0.5, kappa = 1
E_ROOT_A2_K3 = 0.037786155015432448    # F(E) = e^2, kappa = 3
E_SWAPPED_AM1_K1 = 0.1731127128575528  # swapped family, alpha = -1 (calibrated)
DENSITY_RATIO_M1 = 1.51643312877842842  # exact boundary/centre density, zero mode
DENSITY_RATIO_M5 = 361.233240142588437
LEVEL_COUNTS_CAL = {1.0: 2, 2.0: 6, 3.0: 19, 4.0: 54, 5.0: 147}
DEGW_COUNTS_CAL = {1.0: 6, 2.0: 42, 3.0: 380, 4.0: 2970, 5.0: 21756}

# --- frozen: trial-state bound --------------------------------------------------
THEOREM_BOUND_SPOT = -4.43214646974251066  # Lambda=m=10, sigma=0, eps=1, delta=0.1
THEOREM_BOUND_LAM_1E3 = 568.534853675      # same data at Lambda = 1e-3
IDENTITY_RHS = {0.25: 18.0, 0.5: 3.0, 1.0: 0.75, 2.0: 0.28125, 4.0: 0.12890625}


# --- oracle implementations ------------------------------------------------------

def bisect_edge_root(eps: float, c: float, tol: float = 1e-13) -> float:
    """Plain interval-halving on k*tanh(eps*k) - c with a crude wide bracket."""
    f = lambda k: k * math.tanh(eps * k) - c
    lo, hi = 0.0, c + 10.0 / eps + 10.0
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if f(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bisect_bulk_root(eps: float, c: float, n: int, tol: float = 1e-13) -> float:
    f = lambda k: k * math.tan(eps * k) + c
    lo = (2 * n - 1) * math.pi / (2 * eps)
    hi = n * math.pi / eps
    a, b = lo + 1e-12 * (hi - lo), hi - 1e-12 * (hi - lo)
    while f(a) > 0.0:
        a = lo + (a - lo) * 0.5
    while b - a > tol:
        mid = 0.5 * (a + b)
        if f(mid) <= 0.0:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


def mp_edge_root(eps, c):
    """High-precision edge root via mpmath bisection."""
    eps, c = mp.mpf(eps), mp.mpf(c)
    f = lambda k: k * mp.tanh(eps * k) - c
    return mp.findroot(f, [mp.mpf("1e-14"), c + 10 / eps + 10], solver="bisect",
                       tol=mp.mpf("1e-35"))


def mp_besseli(nu, x):
    return mp.besseli(mp.mpf(nu), mp.mpf(x))


def closed_form_i(twice_nu: int, x: float) -> float:
    """sinh/cosh closed forms for nu in {1/2, 3/2, 5/2, 7/2}.

    Only trustworthy away from small x for the higher orders (catastrophic
    cancellation); tests restrict the argument range accordingly.
    """
    pref = math.sqrt(2.0 / (math.pi * x))
    sh, ch = math.sinh(x), math.cosh(x)
    if twice_nu == 1:
        return pref * sh
    if twice_nu == 3:
        return pref * (ch - sh / x)
    if twice_nu == 5:
        return pref * ((1.0 + 3.0 / x ** 2) * sh - 3.0 * ch / x)
    if twice_nu == 7:
        return pref * ((1.0 + 15.0 / x ** 2) * ch - (6.0 / x + 15.0 / x ** 3) * sh)
    raise ValueError(f"no closed form wired for twice_nu={twice_nu}")


def mp_gap_spectral_function(E, m, R0, kappa):
    """High-precision primary-family spectral function."""
    E, m, R0 = mp.mpf(E), mp.mpf(m), mp.mpf(R0)
    z = R0 * mp.sqrt(m * m - E * E)
    return mp.sqrt((m + E) / (m - E)) * mp.besseli(kappa - mp.mpf(1) / 2, z) / mp.besseli(
        kappa + mp.mpf(1) / 2, z
    )


def mp_gap_root(alpha, m, R0, kappa):
    """High-precision calibrated-convention gap root F(E) = e^alpha."""
    g = mp.e ** mp.mpf(alpha)
    f = lambda E: mp_gap_spectral_function(E, m, R0, kappa) - g
    m_ = mp.mpf(m)
    return mp.findroot(f, [-m_ + mp.mpf("1e-20"), m_ - mp.mpf("1e-20")],
                       solver="bisect", tol=mp.mpf("1e-30"))
