r"""Analytic lower/upper bounds for the collar problem.

A collar of width ``eps`` next to the boundary at radius ``R0`` carries a
metric weight ``w(r)`` whose square-root variation across the collar is
pinched by a factor ``delta`` in (0, 1).  The scalar bounds reduce to the 1D
interval problem at effective Robin constants ``mu_bar/(1-delta)`` (lower
bound) and ``mu_under/(1+delta)`` (edge-existence certificate).  The gauge
constant C reuses the same edge root at a composite Robin constant.

All formulas extend continuously to delta = 0, which is the tightest valid
choice for a flat weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal, NamedTuple, Optional

import numpy as np

from .errors import CollarTooWideError, DomainError
from .robin1d import RobinProblem, kappa_M, kappa_m, solve_edge_mode

__all__ = [
    "CollarGeometry",
    "WeightFunction",
    "GaugeBoundInput",
    "compute_delta",
    "lower_bound_mu0",
    "upper_bound_edge",
    "sandwich_report",
    "gauge_bound_C",
    "gauge_bound_forms",
]

DELTA_GRID_POINTS = 10_000

# thresholds for the asymptotic regime tags; the source analysis only gives
# "much greater"/"much less", these cutoffs make runs reproducible
LARGE_REGIME_MIN_MU_R0 = 10.0
SMALL_REGIME_MAX_MU_R0 = 0.1


@dataclass(frozen=True)
class CollarGeometry:
    """Collar data: boundary radius R0, width eps < R0, pinch delta, mu range."""

    R0: float
    epsilon: float
    delta: float
    mu_bar: float
    mu_under: float

    def __post_init__(self):
        if not self.R0 > 0.0:
            raise DomainError("R0 must be positive")
        if not (0.0 < self.epsilon < self.R0):
            raise DomainError("epsilon must satisfy 0 < epsilon < R0")
        if not (0.0 <= self.delta < 1.0):
            raise DomainError("delta must lie in [0, 1)")
        if self.mu_under > self.mu_bar:
            raise DomainError("mu_under must be <= mu_bar")


@dataclass(frozen=True)
class WeightFunction:
    """Strictly positive radial weight w(r) modelling the metric density.

    ``evaluate`` must accept numpy arrays.  For a d-ball, w(r) = r^(d-1).
    """

    evaluate: Callable[[np.ndarray], np.ndarray]
    name: str = "custom"

    @classmethod
    def flat(cls) -> "WeightFunction":
        return cls(evaluate=lambda r: np.ones_like(np.asarray(r, dtype=float)), name="flat")

    @classmethod
    def radial_power(cls, exponent: float, name: Optional[str] = None) -> "WeightFunction":
        return cls(
            evaluate=lambda r, _p=exponent: np.asarray(r, dtype=float) ** _p,
            name=name or f"r^{exponent:g}",
        )


@dataclass(frozen=True)
class GaugeBoundInput:
    """Data entering the gauge-field lower-bound constant C."""

    K_bar: float
    lambda_min: float
    lambda_tilde_max: float
    delta: float
    epsilon: float

    def __post_init__(self):
        if self.K_bar < 0.0:
            raise DomainError("K_bar must be >= 0")
        if not self.lambda_min > 0.0 or not self.lambda_tilde_max > 0.0:
            raise DomainError("metric eigenvalue data must be positive")
        if not (0.0 <= self.delta < 1.0):
            raise DomainError("delta must lie in [0, 1)")
        if not self.epsilon > 0.0:
            raise DomainError("epsilon must be positive")


def compute_delta(w: WeightFunction, geom: CollarGeometry) -> float:
    """Metric pinch: max over the collar of |sqrt(w(r)/w(R0)) - 1|.

    Evaluated on a uniform grid of 10^4 points including both endpoints.
    Raises CollarTooWideError when the pinch reaches 1, in which case the
    collar must be shrunk before any bound applies.
    """
    r = np.linspace(geom.R0 - geom.epsilon, geom.R0, DELTA_GRID_POINTS)
    wr = np.asarray(w.evaluate(r), dtype=float)
    if not np.all(wr > 0.0):
        raise DomainError("weight function must be strictly positive on the collar")
    w0 = float(w.evaluate(np.asarray([geom.R0]))[0])
    delta = float(np.max(np.abs(np.sqrt(wr / w0) - 1.0)))
    if delta >= 1.0:
        raise CollarTooWideError(
            f"metric pinch delta={delta:.6g} >= 1; shrink the collar width"
        )
    return delta


def lower_bound_mu0(geom: CollarGeometry) -> float:
    """mu0 such that the quadratic form is >= -mu0^2 ||.||^2.

    mu0 = kappa_m(eps, mu_bar/(1-delta)); returns 0 when mu_bar <= 0 since the
    operator is already nonnegative there.
    """
    if geom.mu_bar <= 0.0:
        return 0.0
    c = geom.mu_bar / (1.0 - geom.delta)
    return kappa_m(RobinProblem(epsilon=geom.epsilon, c=c))


def upper_bound_edge(geom: CollarGeometry) -> Optional[float]:
    """Negative upper bound -kappa_M(mu_under/(1+delta))^2 on the edge state.

    A negative return certifies at least one negative eigenvalue.  Returns
    None when mu_under <= 0: the trial-state construction then gives no
    certificate.
    """
    if geom.mu_under <= 0.0:
        return None
    c = geom.mu_under / (1.0 + geom.delta)
    return -kappa_M(RobinProblem(epsilon=geom.epsilon, c=c)) ** 2


class SandwichReport(NamedTuple):
    lower: float
    upper: Optional[float]
    regime: Literal["large", "small", "intermediate"]
    asymptotic_bounds: Optional[tuple[float, float]]


def sandwich_report(geom: CollarGeometry) -> SandwichReport:
    """Two-sided enclosure of the lowest eigenvalue plus a regime tag.

    lower = -mu0^2 and upper = -kappa_M(mu_under/(1+delta))^2.  In the large
    regime (mu_under*R0 >= 10) the delta-free pair (-mu_bar^2, -mu_under^2) is
    attached; in the small regime (mu_bar*R0 <= 0.1) the attached pair is the
    small-size limit (-mu_bar/(eps(1-delta)), -mu_under/(eps(1+delta))).
    """
    lower = -lower_bound_mu0(geom) ** 2
    upper = upper_bound_edge(geom)
    if geom.mu_under * geom.R0 >= LARGE_REGIME_MIN_MU_R0:
        regime = "large"
        asym = (-geom.mu_bar ** 2, -geom.mu_under ** 2)
    elif geom.mu_bar * geom.R0 <= SMALL_REGIME_MAX_MU_R0:
        regime = "small"
        asym = (
            -geom.mu_bar / (geom.epsilon * (1.0 - geom.delta)),
            -geom.mu_under / (geom.epsilon * (1.0 + geom.delta)),
        )
    else:
        regime = "intermediate"
        asym = None
    return SandwichReport(lower=lower, upper=upper, regime=regime, asymptotic_bounds=asym)


class GaugeBoundForms(NamedTuple):
    robin_constant: float
    first_power: float
    squared: float


def gauge_bound_forms(inp: GaugeBoundInput) -> GaugeBoundForms:
    """Both candidate forms of the gauge constant C at the composite Robin constant.

    The edge root kappa is solved at c = K_bar*lambda_tilde_max /
    (lambda_min*(1-delta)).  The first-power form is kappa itself; the squared
    form kappa^2 matches the dimensions of the scalar bound.  Both are
    reported; no intent is guessed between them.
    """
    if inp.K_bar == 0.0:
        return GaugeBoundForms(robin_constant=0.0, first_power=0.0, squared=0.0)
    c = inp.K_bar * inp.lambda_tilde_max / (inp.lambda_min * (1.0 - inp.delta))
    root = solve_edge_mode(RobinProblem(epsilon=inp.epsilon, c=c))
    kappa = root.kappa_or_k
    return GaugeBoundForms(robin_constant=c, first_power=kappa, squared=kappa * kappa)


def gauge_bound_C(inp: GaugeBoundInput) -> float:
    """The squared-form gauge constant C (see :func:`gauge_bound_forms`)."""
    return gauge_bound_forms(inp).squared
