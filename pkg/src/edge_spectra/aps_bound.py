r"""Trial-state machinery for nonlocal spectral boundary conditions.

Given a boundary eigenmode with eigenvalue -Lambda (Lambda > 0) of the
boundary operator, a collar-supported trial state with profile
``exp(k tan(pi (R0 - r) / (2 eps)))`` and ``k = -2 eps Lambda / pi`` obeys the
boundary relation ``psi_dot = Lambda psi`` and gives the explicit energy bound

    (1+delta) ||xi||^2 [ Lambda (1/2 + pi^2/(16 eps^2 Lambda^2) - 1/(1+delta))
                         + (Lambda^2 - m^2 + sigma_max) eps ].

A negative value certifies an eigenvalue below the mass gap.  The scan over
Lambda reports certificate windows only: a positive bound proves nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import DomainError

__all__ = [
    "ApsInput",
    "SphereSpec",
    "theorem_bound",
    "ansatz_k",
    "ansatz_profile",
    "integral_identity_check",
    "xi_bound",
    "sphere_helpers",
    "threshold_scan",
]


@dataclass(frozen=True)
class ApsInput:
    """Inputs of the trial-state bound."""

    Lambda: float
    m: float
    epsilon: float
    delta: float
    sigma_max: float = 0.0
    xi_norm_sq: float = 1.0

    def __post_init__(self):
        if not self.Lambda > 0.0:
            raise DomainError("Lambda must be positive")
        if not self.m > 0.0:
            raise DomainError("m must be positive")
        if not self.epsilon > 0.0:
            raise DomainError("epsilon must be positive")
        if not (0.0 <= self.delta < 1.0):
            raise DomainError("delta must lie in [0, 1)")
        if self.sigma_max < 0.0:
            raise DomainError("sigma_max must be >= 0")
        if not self.xi_norm_sq > 0.0:
            raise DomainError("xi_norm_sq must be positive")


@dataclass(frozen=True)
class SphereSpec:
    """n-sphere of radius rho with level index l."""

    n: int
    rho: float
    l: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if not self.rho > 0.0:
            raise DomainError("rho must be positive")
        if self.l < 0:
            raise DomainError("l must be >= 0")


def xi_bound(inp: ApsInput) -> float:
    """(Lambda^2 - m^2 + sigma_max) * ||xi||^2, the boundary-mode energy bound."""
    return (inp.Lambda ** 2 - inp.m ** 2 + inp.sigma_max) * inp.xi_norm_sq


def theorem_bound(inp: ApsInput) -> float:
    """The trial-state energy bound, verbatim; negative certifies an edge state."""
    lam, eps, delta = inp.Lambda, inp.epsilon, inp.delta
    bracket = lam * (0.5 + math.pi ** 2 / (16.0 * eps ** 2 * lam ** 2) - 1.0 / (1.0 + delta))
    bracket += (lam ** 2 - inp.m ** 2 + inp.sigma_max) * eps
    return (1.0 + delta) * inp.xi_norm_sq * bracket


def ansatz_k(Lambda: float, epsilon: float) -> float:
    """Profile decay constant k = -2 eps Lambda / pi."""
    if not (Lambda > 0.0 and epsilon > 0.0):
        raise DomainError("Lambda and epsilon must be positive")
    return -2.0 * epsilon * Lambda / math.pi


def ansatz_profile(Lambda: float, epsilon: float, R0: float, r_grid) -> np.ndarray:
    """Collar-supported trial profile exp(k tan(pi (R0-r)/(2 eps))).

    Equals 1 at r = R0 with slope Lambda; vanishes (to double-precision
    underflow) toward the inner collar edge; clamped to 0 outside (R0-eps, R0].
    """
    k = ansatz_k(Lambda, epsilon)
    r = np.asarray(r_grid, dtype=float)
    out = np.zeros_like(r)
    inside = (r > R0 - epsilon) & (r <= R0)
    t = math.pi / (2.0 * epsilon) * (R0 - r[inside])
    # t in [0, pi/2): tan grows to +inf, k < 0, so the exponent dives to -inf
    out[inside] = np.exp(k * np.tan(t))
    return out


class IdentityCheck(NamedTuple):
    lhs: float
    rhs: float


def integral_identity_check(k: float) -> IdentityCheck:
    """Quadrature check of int_0^{pi/2} (1+tan^2 t)^2 exp(-2k tan t) dt.

    The substitution u = tan t turns it into int_0^inf (1+u^2) e^{-2ku} du,
    removing the pole; the tail is truncated where the integrand is below
    1e-300.  The closed form is 1/(2k) + 1/(4k^3).
    """
    if k <= 0.0:
        raise DomainError("the integral diverges for k <= 0")
    rhs = 1.0 / (2.0 * k) + 1.0 / (4.0 * k ** 3)
    # (1+u^2) e^{-2ku} < 1e-300 once 2ku - 2 log u > 690
    u_max = (690.0 + 30.0) / (2.0 * k) + 10.0
    lhs, _ = quad(lambda u: (1.0 + u * u) * math.exp(-2.0 * k * u), 0.0, u_max,
                  epsabs=0.0, epsrel=1e-12, limit=400)
    return IdentityCheck(lhs=lhs, rhs=rhs)


class SphereHelpers(NamedTuple):
    dirac_pair: tuple[float, float]
    lowest_connection: float


def sphere_helpers(s: SphereSpec) -> SphereHelpers:
    """Boundary-operator eigenvalue pair +-(l + n/2)/rho and the lowest
    connection-Laplacian eigenvalue n/(4 rho^2) for the n-sphere."""
    lam = (s.l + s.n / 2.0) / s.rho
    return SphereHelpers(dirac_pair=(lam, -lam), lowest_connection=s.n / (4.0 * s.rho ** 2))


class ThresholdWindow(NamedTuple):
    epsilon: float
    window: Optional[tuple[float, float]]
    min_bound: float
    certificate: bool


def threshold_scan(
    m: float,
    sigma_max: float,
    epsilon_grid: Sequence[float],
    delta: float,
    n_lambda: int = 400,
) -> list[ThresholdWindow]:
    """For each collar width, scan Lambda for a negative-bound window.

    Lambda runs over a log grid in [1e-3 m, 10 m].  The reported window is
    the (min, max) of scan points with a negative bound; `certificate` is
    False when no scan point is negative, which proves nothing either way.
    """
    if not epsilon_grid:
        raise DomainError("epsilon_grid must be nonempty")
    lambdas = np.exp(np.linspace(math.log(1e-3 * m), math.log(10.0 * m), n_lambda))
    results = []
    for eps in epsilon_grid:
        vals = np.array(
            [
                theorem_bound(
                    ApsInput(Lambda=float(l), m=m, epsilon=float(eps), delta=delta,
                             sigma_max=sigma_max)
                )
                for l in lambdas
            ]
        )
        neg = vals < 0.0
        if neg.any():
            window = (float(lambdas[neg].min()), float(lambdas[neg].max()))
            cert = True
        else:
            window = None
            cert = False
        results.append(
            ThresholdWindow(
                epsilon=float(eps),
                window=window,
                min_bound=float(vals.min()),
                certificate=cert,
            )
        )
    return results
