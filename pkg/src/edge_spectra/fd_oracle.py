r"""Brute-force finite-difference oracle for the interval and radial problems.

Everything the transcendental solvers produce can be checked against a
second-order discretization solved by Sturm-sequence bisection.  The
discretization is vertex-centered with ghost-point boundary elimination; the
half-weight scaling of the two boundary rows makes the stencil matrix B
symmetric, at the price of a diagonal mass matrix M (trapezoid cells, times
the radial weight for weighted problems).  Eigenvalues are those of the
pencil (B, M), equivalently of the similarity-transformed symmetric matrix
M^(-1/2) B M^(-1/2); counting negative LDL^T pivots of B - x M gives exact
Sturm counts without forming any square roots.

The weighted radial operator -(1/w)(w u')' + a(r) u uses midpoint fluxes
(finite volume), which keeps every weight evaluation inside the collar and
preserves the O(h^2) eigenvalue convergence measured by
:func:`convergence_study`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.linalg import solve_banded

from ._accel import sturm_counts
from .collar_bounds import CollarGeometry, WeightFunction
from .errors import DomainError
from .robin1d import RobinProblem

__all__ = [
    "TridiagonalOperator",
    "ConvergenceReport",
    "build_interval",
    "build_radial",
    "lowest_eigenvalues",
    "lowest_eigenpair",
    "negative_count",
    "convergence_study",
]

EIG_ABS_TOL = 1e-12


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal pencil (B, M) with grid spacing h.

    ``mass`` is the diagonal of the SPD mass matrix M; None means identity,
    i.e. an ordinary symmetric tridiagonal eigenproblem.
    """

    diag: np.ndarray
    offdiag: np.ndarray
    h: float
    meta: str
    mass: Optional[np.ndarray] = None
    grid: Optional[np.ndarray] = None

    def __post_init__(self):
        n = len(self.diag)
        if n < 2:
            raise DomainError("need at least 2 nodes")
        if len(self.offdiag) != n - 1:
            raise DomainError("offdiag must have length N-1")
        if self.mass is not None and (len(self.mass) != n or not np.all(self.mass > 0)):
            raise DomainError("mass must be positive with length N")

    @property
    def n(self) -> int:
        return len(self.diag)

    def mass_diag(self) -> np.ndarray:
        if self.mass is None:
            return np.ones(self.n)
        return self.mass


def build_interval(p: RobinProblem, N: int) -> TridiagonalOperator:
    """Discretize -phi'' on [0, eps], Neumann at 0, Robin phi'(eps)=c phi(eps).

    Central differences with second-order ghost elimination at both ends; the
    half-weight scaling of the boundary rows yields the symmetric B with the
    trapezoid mass M = h*diag(1/2, 1, ..., 1, 1/2).
    """
    if N < 3:
        raise DomainError("N must be >= 3")
    return _build_weighted(
        r_lo=0.0,
        r_hi=p.epsilon,
        w=None,
        mu=p.c,
        angular=None,
        N=N,
        meta=f"-phi'' on [0,{p.epsilon!r}], Neumann(0), Robin(c={p.c!r})",
    )


def build_radial(
    w: WeightFunction,
    geom: CollarGeometry,
    mu: float,
    angular_term: Optional[Callable[[np.ndarray], np.ndarray]],
    N: int,
) -> TridiagonalOperator:
    """Discretize -(1/w)(w u')' + a(r) u on the collar [R0-eps, R0].

    Neumann at the inner end, Robin u'(R0) = mu u(R0) at the outer end.  With
    w identically one and no angular term this produces bit-for-bit the same
    arrays as :func:`build_interval`.
    """
    if N < 3:
        raise DomainError("N must be >= 3")
    return _build_weighted(
        r_lo=geom.R0 - geom.epsilon,
        r_hi=geom.R0,
        w=w.evaluate,
        mu=mu,
        angular=angular_term,
        N=N,
        meta=(
            f"-(1/w)(w u')'+a on [{geom.R0 - geom.epsilon!r},{geom.R0!r}], "
            f"w={w.name}, Neumann(inner), Robin(mu={mu!r})"
        ),
    )


def _build_weighted(r_lo, r_hi, w, mu, angular, N, meta) -> TridiagonalOperator:
    h = (r_hi - r_lo) / (N - 1)
    r = r_lo + h * np.arange(N)
    if w is None:
        w_node = np.ones(N)
        w_mid = np.ones(N - 1)
    else:
        w_node = np.asarray(w(r), dtype=float)
        w_mid = np.asarray(w(r[:-1] + 0.5 * h), dtype=float)
        if not (np.all(w_node > 0) and np.all(w_mid > 0)):
            raise DomainError("weight must be strictly positive on the grid")
    a_node = np.zeros(N) if angular is None else np.asarray(angular(r), dtype=float)

    e = -w_mid / h
    d = np.empty(N)
    d[1:-1] = (w_mid[:-1] + w_mid[1:]) / h + a_node[1:-1] * w_node[1:-1] * h
    d[0] = w_mid[0] / h + a_node[0] * w_node[0] * (h / 2.0)
    d[-1] = w_mid[-1] / h - w_node[-1] * mu + a_node[-1] * w_node[-1] * (h / 2.0)

    m = w_node * h
    m[0] *= 0.5
    m[-1] *= 0.5
    return TridiagonalOperator(diag=d, offdiag=e, h=h, meta=meta, mass=m, grid=r)


def _count_below(T: TridiagonalOperator, xs: np.ndarray) -> np.ndarray:
    e2 = np.ascontiguousarray(T.offdiag * T.offdiag)
    pivmin = np.finfo(float).tiny / np.finfo(float).eps * max(1.0, float(e2.max(initial=0.0)))
    return sturm_counts(
        np.ascontiguousarray(T.diag, dtype=float),
        e2.astype(float),
        np.ascontiguousarray(T.mass_diag(), dtype=float),
        np.ascontiguousarray(xs, dtype=float),
        pivmin,
    )


def negative_count(T: TridiagonalOperator) -> int:
    """Exact number of negative eigenvalues (Sturm count at 0)."""
    return int(_count_below(T, np.array([0.0]))[0])


def _gershgorin(T: TridiagonalOperator) -> tuple[float, float]:
    e = np.abs(T.offdiag)
    radius = np.zeros(T.n)
    radius[:-1] += e
    radius[1:] += e
    m = T.mass_diag()
    lo = float(np.min((T.diag - radius) / m))
    hi = float(np.max((T.diag + radius) / m))
    return lo, hi


def lowest_eigenvalues(T: TridiagonalOperator, k: int) -> list[float]:
    """The k smallest pencil eigenvalues by synchronized Sturm bisection.

    Each eigenvalue is bisected to absolute tolerance 1e-12*max(1, |lambda|);
    all k brackets advance together so every sweep costs one pass over the
    matrix per shift.
    """
    if not (1 <= k <= T.n):
        raise DomainError("need 1 <= k <= N")
    lo, hi = _gershgorin(T)
    los = np.full(k, lo)
    his = np.full(k, hi)
    targets = np.arange(1, k + 1)
    for _ in range(300):
        mids = 0.5 * (los + his)
        cnt = _count_below(T, mids)
        go_down = cnt >= targets
        his[go_down] = mids[go_down]
        los[~go_down] = mids[~go_down]
        if np.all(his - los <= EIG_ABS_TOL * np.maximum(1.0, np.abs(mids))):
            break
    return list(0.5 * (los + his))


def lowest_eigenpair(T: TridiagonalOperator) -> tuple[float, np.ndarray]:
    """Lowest eigenvalue and its eigenvector (inverse iteration, M-normalized)."""
    lam = lowest_eigenvalues(T, 1)[0]
    n = T.n
    m = T.mass_diag()
    shift = lam - 1e-8 * max(1.0, abs(lam))
    ab = np.zeros((3, n))
    ab[0, 1:] = T.offdiag
    ab[1, :] = T.diag - shift * m
    ab[2, :-1] = T.offdiag
    rng = np.random.default_rng(0)
    v = rng.standard_normal(n)
    v /= math.sqrt(float(v @ (m * v)))
    for _ in range(3):
        v = solve_banded((1, 1), ab, m * v)
        v /= math.sqrt(float(v @ (m * v)))
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    return lam, v


@dataclass(frozen=True)
class ConvergenceReport:
    """Richardson order estimate over a doubling sequence of grids.

    ``conclusive`` is False when the eigenvalue differences are not monotone
    (e.g. the eigenvalue is exact at every grid); estimated_order is NaN then.
    """

    grid_sizes: list[int]
    eigenvalues: list[float]
    estimated_order: float
    extrapolated: float
    conclusive: bool = True


def convergence_study(
    build: Callable[[int], TridiagonalOperator], grids: Sequence[int]
) -> ConvergenceReport:
    """Measure eigenvalue convergence order over doubling grids.

    Needs >= 3 grids, each at least doubling.  The order estimate is
    log2 of the ratio of successive eigenvalue differences on the finest
    triple; the extrapolated value removes the measured-order error term.
    """
    grids = list(grids)
    if len(grids) < 3:
        raise DomainError("need at least 3 grids")
    for a, b in zip(grids, grids[1:]):
        if b < 2 * a:
            raise DomainError("grids must at least double")
    lams = [lowest_eigenvalues(build(N), 1)[0] for N in grids]
    d12 = lams[-2] - lams[-3]
    d23 = lams[-1] - lams[-2]
    if d12 == 0.0 or d23 == 0.0 or (d12 > 0) != (d23 > 0) or abs(d23) >= abs(d12):
        return ConvergenceReport(
            grid_sizes=grids,
            eigenvalues=lams,
            estimated_order=float("nan"),
            extrapolated=lams[-1],
            conclusive=False,
        )
    ratio = d12 / d23
    order = math.log2(ratio)
    extrapolated = lams[-1] + d23 / (ratio - 1.0)
    return ConvergenceReport(
        grid_sizes=grids,
        eigenvalues=lams,
        estimated_order=order,
        extrapolated=extrapolated,
        conclusive=True,
    )
