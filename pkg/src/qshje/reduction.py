"""Variable changes that remove first-derivative terms from the separated equations.

Each reduction multiplies the separated solution by a weight w(q) so that the
result solves a Schroedinger-form equation y'' = c(q) y:

    radial spherical      X = r R(r)                  on r in (0, inf)
    polar spherical       T = sin^(1/2)(theta) T0     on theta in (0, pi)
    radial cylindrical    H = sqrt(rho) G(rho)        on rho in (0, inf)
    identity              unchanged                   (Cartesian axes, phi, z)
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .domain import Effective1DProblem
from .errors import GridDomainError
from .ode_engine import Grid1D, SolutionPair
from .schwarzian import differentiate


class ReductionKind(Enum):
    RADIAL_SPHERICAL = "radial-spherical"
    POLAR_SPHERICAL = "polar-spherical"
    RADIAL_CYLINDRICAL = "radial-cylindrical"
    IDENTITY = "identity"


_DOMAINS = {
    ReductionKind.RADIAL_SPHERICAL: (0.0, np.inf),
    ReductionKind.POLAR_SPHERICAL: (0.0, np.pi),
    ReductionKind.RADIAL_CYLINDRICAL: (0.0, np.inf),
    ReductionKind.IDENTITY: (-np.inf, np.inf),
}


def _check_domain(kind: ReductionKind, q: np.ndarray) -> None:
    lo, hi = _DOMAINS[kind]
    if np.any(q <= lo) or np.any(q >= hi):
        raise GridDomainError(f"{kind.value} reduction needs coordinates strictly inside ({lo}, {hi})")


def _weight(kind: ReductionKind, q: np.ndarray) -> np.ndarray:
    if kind is ReductionKind.RADIAL_SPHERICAL:
        return q
    if kind is ReductionKind.POLAR_SPHERICAL:
        return np.sqrt(np.sin(q))
    if kind is ReductionKind.RADIAL_CYLINDRICAL:
        return np.sqrt(q)
    return np.ones_like(q)


def reduce_wavefunction(kind: ReductionKind, values: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Separated solution -> reduced (Schroedinger-form) solution."""
    q = grid.points
    _check_domain(kind, q)
    return _weight(kind, q) * np.asarray(values, dtype=float)


def restore_wavefunction(kind: ReductionKind, values: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Reduced solution -> separated solution; exact inverse of `reduce_wavefunction`."""
    q = grid.points
    _check_domain(kind, q)
    return np.asarray(values, dtype=float) / _weight(kind, q)


@dataclass(frozen=True)
class ReducedEquationResiduals:
    """|-(hbar^2/2m) y'' + (v_eff - e_eff) y| per pair member on the interior subgrid."""

    start: int
    stop: int
    first: np.ndarray
    second: np.ndarray

    @property
    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.first)), np.max(np.abs(self.second))))


def reduced_equation_check(
    pair: SolutionPair, problem: Effective1DProblem | None = None
) -> ReducedEquationResiduals:
    """Finite-difference check that both pair members solve the reduced equation.

    Second derivatives come from the shared `differentiate` kernel, so this is
    independent of the integrator state and of the closed-form Schwarzian route.
    """
    problem = problem or pair.problem
    grid = pair.grid
    c = problem.constants
    q_int = None
    res = []
    for y in (pair.y1, pair.y2):
        bundle = differentiate(y, grid, max_order=2)
        q_int = grid.points[bundle.start : bundle.stop]
        v = np.asarray(problem.v_eff(q_int), dtype=float)
        r = -(c.hbar**2 / (2.0 * c.mass)) * bundle.d2 + (v - problem.e_eff) * bundle.f
        res.append(np.abs(r))
        start, stop = bundle.start, bundle.stop
    return ReducedEquationResiduals(start=start, stop=stop, first=res[0], second=res[1])
