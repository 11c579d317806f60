r"""Exact solver for the reduced 1D spectral problem on an interval.

The problem is ``-phi'' = E phi`` on ``[0, eps]`` with a Neumann condition
``phi'(0) = 0`` and a Robin condition ``phi'(eps) = c phi(eps)``.  For c > 0
the spectrum consists of one negative edge eigenvalue ``E0 = -kappa^2`` with
``kappa tanh(eps kappa) = c`` and a ladder of positive bulk eigenvalues
``E_n = k_n^2`` with ``k tan(eps k) = -c``.

``kappa_m`` and ``kappa_M`` are the analytic upper/lower bounds that sandwich
the edge root; the exact solver uses them as its initial bracket, which makes
the sandwich structurally load-bearing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple, Optional

from .errors import DomainError, UnsupportedRegimeError

__all__ = [
    "RobinProblem",
    "SpectralRoot",
    "solve_edge_mode",
    "solve_bulk_modes",
    "kappa_m",
    "kappa_M",
    "asymptotic_kappa",
]


@dataclass(frozen=True)
class RobinProblem:
    """Interval width eps and Robin constant c of the reduced 1D problem."""

    epsilon: float
    c: float

    def __post_init__(self):
        if not (self.epsilon > 0.0) or not math.isfinite(self.epsilon):
            raise DomainError(f"epsilon must be positive and finite, got {self.epsilon}")
        if not math.isfinite(self.c):
            raise DomainError(f"c must be finite, got {self.c}")


@dataclass(frozen=True)
class SpectralRoot:
    """One solved root: kind 'edge' (eigenvalue -kappa^2) or 'bulk' (+k_n^2)."""

    kind: Literal["edge", "bulk"]
    kappa_or_k: float
    index: int = 0

    def __post_init__(self):
        if self.kind not in ("edge", "bulk"):
            raise DomainError(f"unknown root kind {self.kind!r}")
        if not self.kappa_or_k > 0.0:
            raise DomainError("kappa_or_k must be positive")
        if self.index < 0:
            raise DomainError("index must be nonnegative")

    @property
    def eigenvalue(self) -> float:
        s = -1.0 if self.kind == "edge" else 1.0
        return s * self.kappa_or_k ** 2


def _t_over_tanh(t: float) -> float:
    # t/tanh(t), stable limit 1 at t -> 0
    if abs(t) < 1e-8:
        return 1.0 + t * t / 3.0
    return t / math.tanh(t)


def kappa_m(p: RobinProblem) -> float:
    """Analytic upper bound for the edge root kappa, c > 0."""
    if p.c <= 0.0:
        raise DomainError("kappa_m requires c > 0")
    a = 0.1 + _t_over_tanh(p.epsilon * p.c)
    return a * math.tanh(a) / p.epsilon


def kappa_M(p: RobinProblem) -> float:
    """Analytic lower bound c*tanh(eps*c) for the edge root kappa, c > 0."""
    if p.c <= 0.0:
        raise DomainError("kappa_M requires c > 0")
    return p.c * math.tanh(p.epsilon * p.c)


def _edge_fn(kappa: float, eps: float, c: float) -> float:
    return kappa * math.tanh(eps * kappa) - c


def _edge_dfn(kappa: float, eps: float) -> float:
    t = math.tanh(eps * kappa)
    return t + eps * kappa * (1.0 - t * t)


def _bisect_then_newton(fn, dfn, lo: float, hi: float) -> float:
    """Bisection to width 1e-14*(hi-lo), then 3 Newton polish steps."""
    flo, fhi = fn(lo), fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo > 0.0 or fhi < 0.0:
        raise DomainError("root not bracketed")
    width_tol = 1e-14 * (hi - lo)
    while hi - lo > width_tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if fn(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(3):
        d = dfn(x)
        if d == 0.0:
            break
        step = fn(x) / d
        x_new = x - step
        if lo <= x_new <= hi:
            x = x_new
    return x


def solve_edge_mode(p: RobinProblem) -> Optional[SpectralRoot]:
    """The unique edge root kappa > 0 of kappa*tanh(eps*kappa) = c, or None.

    For c <= 0 the operator is nonnegative and has no edge mode; absence is a
    result, not an error.  The initial bracket is [kappa_M, kappa_m], widened
    defensively if floating-point saturation ever spoils the sign condition.
    """
    if p.c <= 0.0:
        return None
    eps, c = p.epsilon, p.c
    lo, hi = kappa_M(p), kappa_m(p)
    # tanh saturates to 1.0 in doubles for eps*kappa >~ 19; then the root is c
    if _edge_fn(lo, eps, c) > 0.0:
        lo = max(lo * 0.5, 1e-300)
        while _edge_fn(lo, eps, c) > 0.0 and lo > 1e-290:
            lo *= 0.5
    if _edge_fn(hi, eps, c) < 0.0:
        while _edge_fn(hi, eps, c) < 0.0:
            hi *= 2.0
    kappa = _bisect_then_newton(
        lambda k: _edge_fn(k, eps, c), lambda k: _edge_dfn(k, eps), lo, hi
    )
    return SpectralRoot(kind="edge", kappa_or_k=kappa, index=0)


def solve_bulk_modes(p: RobinProblem, n_max: int) -> list[SpectralRoot]:
    """First n_max positive roots of k*tan(eps*k) = -c, ascending.

    Root n lives strictly inside ((2n-1)pi/(2 eps), n pi/eps).  Only c > 0 is
    supported; the bracketing below relies on it.
    """
    if p.c <= 0.0:
        raise UnsupportedRegimeError(
            "bulk bracketing assumes c > 0; other regimes are out of scope"
        )
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    eps, c = p.epsilon, p.c
    fn = lambda k: k * math.tan(eps * k) + c

    def dfn(k: float) -> float:
        t = math.tan(eps * k)
        return t + eps * k * (1.0 + t * t)

    roots = []
    for n in range(1, n_max + 1):
        lo = (2 * n - 1) * math.pi / (2.0 * eps)
        hi = n * math.pi / eps
        span = hi - lo
        # step inside the open bracket; fn -> -inf at lo+ and fn -> c > 0 at hi-
        a = lo + 1e-13 * span
        b = hi - 1e-13 * span
        while fn(a) > 0.0:
            a = lo + (a - lo) * 0.125
        k = _bisect_then_newton(fn, dfn, a, b)
        roots.append(SpectralRoot(kind="bulk", kappa_or_k=k, index=n))
    return roots


class AsymptoticKappa(NamedTuple):
    regime: Literal["large_ec", "small_ec", "intermediate"]
    approx: float


def asymptotic_kappa(p: RobinProblem) -> AsymptoticKappa:
    """Closed-form kappa in the extreme regimes, exact solve in between.

    eps*c >= 10 gives kappa ~ c; eps*c <= 0.01 gives kappa ~ sqrt(c/eps); the
    intermediate band falls through to :func:`solve_edge_mode`.
    """
    if p.c <= 0.0:
        raise DomainError("asymptotic_kappa requires c > 0")
    ec = p.epsilon * p.c
    if ec >= 10.0:
        return AsymptoticKappa("large_ec", p.c)
    if ec <= 0.01:
        return AsymptoticKappa("small_ec", math.sqrt(p.c / p.epsilon))
    root = solve_edge_mode(p)
    return AsymptoticKappa("intermediate", root.kappa_or_k)


def edge_residual(p: RobinProblem, kappa: float) -> float:
    """|kappa tanh(eps kappa) - c|, the defining residual of an edge root."""
    return abs(_edge_fn(kappa, p.epsilon, p.c))


def bulk_residual(p: RobinProblem, k: float) -> float:
    """|k tan(eps k) + c|, the defining residual of a bulk root."""
    return abs(k * math.tan(p.epsilon * k) + p.c)
