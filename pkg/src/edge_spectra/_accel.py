"""Optional numba acceleration with a pure-numpy fallback.

The kernels are hot loops (Sturm pivot sweeps, the radial RK4 shooter) whose
Python-level versions are correct but slow.  numba failures of any kind fall
back silently; results are identical either way since no fastmath is used.
"""

from __future__ import annotations

import sys

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except Exception as exc:  # llvmlite/LLVM breakage shows up as ImportError subclasses
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def deco(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return deco

    print(f"numba unavailable ({type(exc).__name__}); using slow fallbacks", file=sys.stderr)


@njit(cache=True)
def sturm_counts(diag, e2, mass, xs, pivmin):
    """Number of pencil eigenvalues of (B, M) strictly below each shift in xs.

    Counts negative pivots of the LDL^T factorization of B - x*M (Sylvester
    inertia).  A pivot smaller than pivmin in magnitude is replaced by
    -pivmin, which counts an exact hit as "below" and avoids overflow in the
    next division.
    """
    n = diag.shape[0]
    m = xs.shape[0]
    counts = np.zeros(m, dtype=np.int64)
    for j in range(m):
        x = xs[j]
        q = diag[0] - x * mass[0]
        cnt = 0
        if q < 0.0:
            cnt += 1
        for i in range(1, n):
            if abs(q) < pivmin:
                q = -pivmin
            q = diag[i] - x * mass[i] - e2[i - 1] / q
            if q < 0.0:
                cnt += 1
        counts[j] = cnt
    return counts


@njit(cache=True)
def rk4_shoot(k, E, m, R0, r0, y1, y2, rtol):
    """Adaptive RK4 for the coupled radial system with per-step renormalization.

    The system is
        phi1' = ((k-1)/r) phi1 + (E+m) phi2
        phi2' = -((1+k)/r) phi2 + (m-E) phi1
    integrated from r0 to R0 with step doubling for error control.  After each
    accepted step the vector is scaled to unit max-norm and the log of the
    scale is accumulated, so the common exponential growth never overflows.

    Returns (phi1, phi2, logscale, steps, status); status 0 means success,
    1 means the step size underflowed (stiff blowup).
    """
    r = r0
    h = 0.01 * r0
    logscale = 0.0
    steps = 0
    a1 = k - 1.0
    a2 = -(1.0 + k)
    b1 = E + m
    b2 = m - E
    while r < R0:
        if h > R0 - r:
            h = R0 - r
        # one full step
        p1, p2 = y1, y2
        f1a = a1 / r * p1 + b1 * p2
        f2a = a2 / r * p2 + b2 * p1
        rr = r + 0.5 * h
        q1 = p1 + 0.5 * h * f1a
        q2 = p2 + 0.5 * h * f2a
        f1b = a1 / rr * q1 + b1 * q2
        f2b = a2 / rr * q2 + b2 * q1
        q1 = p1 + 0.5 * h * f1b
        q2 = p2 + 0.5 * h * f2b
        f1c = a1 / rr * q1 + b1 * q2
        f2c = a2 / rr * q2 + b2 * q1
        rr = r + h
        q1 = p1 + h * f1c
        q2 = p2 + h * f2c
        f1d = a1 / rr * q1 + b1 * q2
        f2d = a2 / rr * q2 + b2 * q1
        full1 = p1 + h / 6.0 * (f1a + 2.0 * f1b + 2.0 * f1c + f1d)
        full2 = p2 + h / 6.0 * (f2a + 2.0 * f2b + 2.0 * f2c + f2d)
        # two half steps
        hh = 0.5 * h
        u1, u2 = p1, p2
        rcur = r
        for _ in range(2):
            g1a = a1 / rcur * u1 + b1 * u2
            g2a = a2 / rcur * u2 + b2 * u1
            rm = rcur + 0.5 * hh
            v1 = u1 + 0.5 * hh * g1a
            v2 = u2 + 0.5 * hh * g2a
            g1b = a1 / rm * v1 + b1 * v2
            g2b = a2 / rm * v2 + b2 * v1
            v1 = u1 + 0.5 * hh * g1b
            v2 = u2 + 0.5 * hh * g2b
            g1c = a1 / rm * v1 + b1 * v2
            g2c = a2 / rm * v2 + b2 * v1
            re = rcur + hh
            v1 = u1 + hh * g1c
            v2 = u2 + hh * g2c
            g1d = a1 / re * v1 + b1 * v2
            g2d = a2 / re * v2 + b2 * v1
            u1 = u1 + hh / 6.0 * (g1a + 2.0 * g1b + 2.0 * g1c + g1d)
            u2 = u2 + hh / 6.0 * (g2a + 2.0 * g2b + 2.0 * g2c + g2d)
            rcur = rcur + hh
        scale = max(abs(u1), abs(u2))
        if scale == 0.0:
            scale = 1e-300
        err = max(abs(full1 - u1), abs(full2 - u2)) / scale
        if err < rtol or h <= 1e-15 * R0:
            if h <= 1e-15 * R0 and err >= rtol:
                return u1, u2, logscale, steps, 1
            r = r + h
            y1 = u1 / scale
            y2 = u2 / scale
            logscale += np.log(scale)
            steps += 1
            if err > 0.0:
                fac = 0.9 * (rtol / err) ** 0.2
            else:
                fac = 5.0
            if fac > 5.0:
                fac = 5.0
            if fac < 0.2:
                fac = 0.2
            h = h * fac
        else:
            fac = 0.9 * (rtol / err) ** 0.25
            if fac < 0.2:
                fac = 0.2
            h = h * fac
    return y1, y2, logscale, steps, 0
