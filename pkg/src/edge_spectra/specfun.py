r"""Half-integer-order modified Bessel functions, log-scaled.

The gap spectral condition of the Dirac ball only ever needs ratios
:math:`I_{\nu}(x)/I_{\nu+1}(x)` and log differences of :math:`I_\nu`.  Raw
values underflow badly in the high-channel regime (orders up to ~200 at
arguments of order one), so everything here is computed either as a ratio via
the Gauss continued fraction or as ``log I_nu`` built by a downward ladder of
such ratios from the closed-form ``log I_{1/2}``.  Upward recurrence in the
order is never used; it is unstable for I.

Closed sinh/cosh forms exist for every half-integer order but suffer
catastrophic cancellation at small argument for nu >= 3/2; they are reserved
for tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "HalfIntOrder",
    "LogScaledValue",
    "bessel_i_half",
    "bessel_ratio",
    "log_i_half_grid",
]

_CF_TOL = 1e-15
_CF_MAXIT = 200000


@dataclass(frozen=True)
class HalfIntOrder:
    """A half-integer order nu = twice_order/2 with twice_order odd, >= -1."""

    twice_order: int

    def __post_init__(self):
        if self.twice_order % 2 == 0:
            raise DomainError(f"twice_order must be odd, got {self.twice_order}")
        if self.twice_order < -1:
            raise DomainError(f"twice_order must be >= -1, got {self.twice_order}")

    @property
    def nu(self) -> float:
        return self.twice_order / 2.0

    @classmethod
    def from_nu(cls, nu: float) -> "HalfIntOrder":
        t = round(2.0 * nu)
        if abs(2.0 * nu - t) > 1e-12:
            raise DomainError(f"{nu} is not a half-integer")
        return cls(int(t))


@dataclass(frozen=True)
class LogScaledValue:
    """A real number stored as sign * exp(log_magnitude).

    sign == 0 encodes an exact zero, in which case log_magnitude is -inf.
    """

    log_magnitude: float
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or +1, got {self.sign}")
        if self.sign == 0 and self.log_magnitude != float("-inf"):
            raise DomainError("sign 0 requires log_magnitude == -inf")

    @property
    def value(self) -> float:
        """The represented number in double precision (may over/underflow)."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)


def _check_x(x) -> None:
    if not np.all(np.asarray(x) > 0.0):
        raise DomainError("argument x must be > 0")


def _ratio_cf_scalar(nu: float, x: float) -> float:
    """I_nu(x)/I_{nu+1}(x) by the Gauss continued fraction, modified Lentz.

    The fraction is R = b1 + 1/(b2 + 1/(b3 + ...)) with b_j = 2(nu+j)/x.
    All partial numerators are 1 and all b_j > 0, so the fraction is free of
    zero pivots for x > 0; the tiny-guard is kept anyway.
    """
    tiny = 1e-300
    b = 2.0 * (nu + 1.0) / x
    f = b if b != 0.0 else tiny
    c, d = f, 0.0
    for j in range(2, _CF_MAXIT):
        b = 2.0 * (nu + j) / x
        d = b + d
        if d == 0.0:
            d = tiny
        c = b + 1.0 / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < _CF_TOL:
            return f
    raise DomainError(f"continued fraction failed to converge for nu={nu}, x={x}")


def _ratio_cf_grid(nu: float, x: np.ndarray) -> np.ndarray:
    """Vectorized Gauss continued fraction for I_nu(x)/I_{nu+1}(x)."""
    x = np.asarray(x, dtype=float)
    tiny = 1e-300
    b = 2.0 * (nu + 1.0) / x
    f = np.where(b != 0.0, b, tiny)
    c = f.copy()
    d = np.zeros_like(x)
    active = np.ones(x.shape, dtype=bool)
    for j in range(2, _CF_MAXIT):
        b = 2.0 * (nu + j) / x
        d = b + d
        d[d == 0.0] = tiny
        c = b + 1.0 / c
        c[c == 0.0] = tiny
        d = 1.0 / d
        delta = c * d
        f = np.where(active, f * delta, f)
        active &= np.abs(delta - 1.0) >= _CF_TOL
        if not active.any():
            return f
    raise DomainError("continued fraction failed to converge on grid")


def _log_sinh(x: float) -> float:
    # series below 1e-4 avoids the log1p(-exp(..)) cancellation at small x
    if x < 1e-4:
        return math.log(x) + math.log1p(x * x / 6.0 * (1.0 + x * x / 20.0))
    return x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0)


def _log_i_onehalf(x: float) -> float:
    """log I_{1/2}(x) = log sqrt(2/(pi x)) + log sinh x, stable for all x > 0."""
    return 0.5 * math.log(2.0 / (math.pi * x)) + _log_sinh(x)


def bessel_i_half(order: HalfIntOrder, x: float) -> LogScaledValue:
    """Modified Bessel function I_nu(x) for half-integer nu >= 1/2, log-scaled.

    Parameters
    ----------
    order : HalfIntOrder
        The order nu; must be >= 1/2.
    x : float
        Argument, must be > 0.

    Returns
    -------
    LogScaledValue
        sign is always +1 since I_nu(x) > 0 for x > 0.

    Notes
    -----
    Built as log I_{1/2}(x) minus a ladder of log ratios, each ratio from an
    independent continued-fraction evaluation, so no recurrence instability
    accumulates.  Relative accuracy is ~1e-13 over nu <= 401/2 and
    x in [1e-6, 700].
    """
    _check_x(x)
    if order.twice_order < 1:
        raise DomainError(f"order must be >= 1/2, got {order.nu}")
    x = float(x)
    log_i = _log_i_onehalf(x)
    for k in range((order.twice_order - 1) // 2):
        log_i -= math.log(_ratio_cf_scalar(0.5 + k, x))
    return LogScaledValue(log_magnitude=log_i, sign=1)


def bessel_ratio(order: HalfIntOrder, x: float) -> float:
    """Ratio I_nu(x)/I_{nu+1}(x) for half-integer nu >= 1/2, x > 0.

    Computed directly from the continued fraction; two possibly-underflowed
    values are never divided.
    """
    _check_x(x)
    if order.twice_order < 1:
        raise DomainError(f"order must be >= 1/2, got {order.nu}")
    return _ratio_cf_scalar(order.nu, float(x))


def bessel_ratio_grid(order: HalfIntOrder, x: np.ndarray) -> np.ndarray:
    """Vectorized :func:`bessel_ratio` over an array of arguments."""
    _check_x(x)
    if order.twice_order < 1:
        raise DomainError(f"order must be >= 1/2, got {order.nu}")
    return _ratio_cf_grid(order.nu, x)


def log_i_half_grid(order: HalfIntOrder, x: np.ndarray) -> np.ndarray:
    """log I_nu(x) over an array of positive arguments (sign is always +)."""
    _check_x(x)
    if order.twice_order < 1:
        raise DomainError(f"order must be >= 1/2, got {order.nu}")
    x = np.asarray(x, dtype=float)
    out = 0.5 * np.log(2.0 / (np.pi * x)) + _log_sinh_grid(x)
    for k in range((order.twice_order - 1) // 2):
        out -= np.log(_ratio_cf_grid(0.5 + k, x))
    return out


def _log_sinh_grid(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    small = x < 1e-4
    out = np.empty_like(x)
    xs = x[small]
    out[small] = np.log(xs) + np.log1p(xs * xs / 6.0 * (1.0 + xs * xs / 20.0))
    xl = x[~small]
    out[~small] = xl + np.log1p(-np.exp(-2.0 * xl)) - math.log(2.0)
    return out
