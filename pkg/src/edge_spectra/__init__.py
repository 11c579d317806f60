"""Edge-state spectra of Robin-type boundary conditions.

Exact transcendental solvers for the reduced 1D interval problem, analytic
sandwich bounds for collar geometries, an independent finite-difference
oracle, trial-state bounds for nonlocal spectral boundary conditions, and the
gap spectrum of the Dirac operator on a 3-ball with chiral-angle boundary
data.
"""

__version__ = "0.1.0"

from . import aps_bound, collar_bounds, dirac_ball, fd_oracle, robin1d, specfun
from .errors import (
    CollarTooWideError,
    DomainError,
    EdgeSpectraError,
    IntegrationFailureError,
    UnsupportedRegimeError,
)

__all__ = [
    "__version__",
    "aps_bound",
    "collar_bounds",
    "dirac_ball",
    "fd_oracle",
    "robin1d",
    "specfun",
    "EdgeSpectraError",
    "DomainError",
    "UnsupportedRegimeError",
    "CollarTooWideError",
    "IntegrationFailureError",
]
