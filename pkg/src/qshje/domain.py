"""Physical constants, quantum numbers, potentials and the effective 1-D problems.

Separating the stationary Schroedinger equation in Cartesian, spherical or
cylindrical coordinates leaves one second-order ODE per coordinate, each of the
form y'' = c(q) y with c(q) = (2m/hbar^2) (V_eff(q) - E_eff). This module owns
the V_eff / E_eff bookkeeping for every coordinate of every symmetry class.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import GridDomainError

ArrayLike = "np.ndarray | float"


@dataclass(frozen=True)
class PhysConstants:
    """hbar and particle mass, natural units by default."""

    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self) -> None:
        # hbar = 0 is allowed so quantum terms can be evaluated at the
        # classical limit with otherwise fixed data; solving is guarded.
        if not (self.hbar >= 0.0 and np.isfinite(self.hbar)):
            raise ValueError(f"hbar must be nonnegative and finite, got {self.hbar}")
        if not (self.mass > 0.0 and np.isfinite(self.mass)):
            raise ValueError(f"mass must be positive and finite, got {self.mass}")


class SymmetryClass(Enum):
    CARTESIAN = "cartesian"
    SPHERICAL = "spherical"
    CYLINDRICAL = "cylindrical"

    @property
    def coordinate_labels(self) -> tuple[str, str, str]:
        return {
            SymmetryClass.CARTESIAN: ("x", "y", "z"),
            SymmetryClass.SPHERICAL: ("r", "theta", "phi"),
            SymmetryClass.CYLINDRICAL: ("rho", "phi", "z"),
        }[self]


def lambda_from_ell(ell: int) -> int:
    """Angular separation constant lambda = ell (ell + 1)."""
    if not isinstance(ell, (int, np.integer)) or isinstance(ell, bool):
        raise ValueError(f"ell must be an integer, got {ell!r}")
    if ell < 0:
        raise ValueError(f"ell must be >= 0, got {ell}")
    return int(ell) * (int(ell) + 1)


@dataclass(frozen=True)
class QuantumNumbers:
    """Separation constants of the three symmetry classes.

    energy is the full 3-D energy E. axis_energies holds the Cartesian
    per-axis energies E_q (their sum must equal energy). beta is the axial
    separation constant of the cylindrical class; m_ell and m_phi are the
    azimuthal integers of the spherical and cylindrical classes.
    """

    ell: int = 0
    m_ell: int = 0
    m_phi: int = 0
    beta: float = 0.0
    energy: float = 0.0
    axis_energies: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        lambda_from_ell(self.ell)  # validates ell
        if abs(self.m_ell) > self.ell:
            raise ValueError(f"|m_ell| must be <= ell, got m_ell={self.m_ell}, ell={self.ell}")

    @property
    def lam(self) -> int:
        return lambda_from_ell(self.ell)

    def check_axis_energies(self, labels: tuple[str, ...], rtol: float = 1e-12) -> None:
        missing = [q for q in labels if q not in self.axis_energies]
        if missing:
            raise ValueError(f"missing axis energies for {missing}")
        total = sum(self.axis_energies[q] for q in labels)
        scale = max(abs(self.energy), abs(total), 1.0)
        if abs(total - self.energy) > rtol * scale:
            raise ValueError(
                f"axis energies sum to {total!r}, expected energy {self.energy!r}"
            )


class PotentialSpec:
    """Symbolic potential description, evaluable at any coordinate."""

    kind = "abstract"

    def evaluate(self, q, constants: PhysConstants):
        raise NotImplementedError

    def parameters(self) -> dict:
        return {}


@dataclass(frozen=True)
class ZeroPotential(PotentialSpec):
    kind = "zero"

    def evaluate(self, q, constants: PhysConstants):
        return np.zeros_like(np.asarray(q, dtype=float))


@dataclass(frozen=True)
class HarmonicPotential(PotentialSpec):
    """V(q) = (1/2) m omega^2 q^2."""

    omega: float
    kind = "harmonic"

    def evaluate(self, q, constants: PhysConstants):
        q = np.asarray(q, dtype=float)
        return 0.5 * constants.mass * self.omega**2 * q * q

    def parameters(self) -> dict:
        return {"omega": self.omega}


@dataclass(frozen=True)
class CoulombPotential(PotentialSpec):
    """V(r) = -k / r, declared only away from the origin."""

    strength: float = 1.0
    kind = "coulomb"

    def evaluate(self, q, constants: PhysConstants):
        q = np.asarray(q, dtype=float)
        if np.any(q == 0.0):
            raise GridDomainError("Coulomb potential evaluated at the origin")
        return -self.strength / q

    def parameters(self) -> dict:
        return {"strength": self.strength}


@dataclass(frozen=True)
class PowerLawPotential(PotentialSpec):
    """V(q) = c * q**p."""

    coefficient: float
    exponent: float
    kind = "power"

    def evaluate(self, q, constants: PhysConstants):
        q = np.asarray(q, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            v = self.coefficient * np.power(q, self.exponent)
        if not np.all(np.isfinite(v)):
            raise GridDomainError(
                f"power-law potential (p={self.exponent}) not finite on the requested points"
            )
        return v

    def parameters(self) -> dict:
        return {"coefficient": self.coefficient, "exponent": self.exponent}


class TabulatedPotential(PotentialSpec):
    """Cubic-spline interpolant of sampled values; evaluation outside the table is an error."""

    kind = "tabulated"

    def __init__(self, points, values):
        points = np.asarray(points, dtype=float)
        values = np.asarray(values, dtype=float)
        if points.ndim != 1 or points.shape != values.shape or points.size < 4:
            raise ValueError("tabulated potential needs matching 1-D arrays of >= 4 samples")
        if np.any(np.diff(points) <= 0):
            raise ValueError("tabulated potential abscissae must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("tabulated potential values must be finite")
        self.points = points
        self.values = values
        self._spline = CubicSpline(points, values)

    def evaluate(self, q, constants: PhysConstants):
        q = np.asarray(q, dtype=float)
        if np.any(q < self.points[0]) or np.any(q > self.points[-1]):
            raise GridDomainError("tabulated potential evaluated outside its table")
        return self._spline(q)

    def parameters(self) -> dict:
        return {"n_samples": int(self.points.size)}


def fictive_radial_potential(spec: PotentialSpec, ell: int, constants: PhysConstants, r):
    """V(r) + lambda hbar^2 / (2 m r^2) seen by the reduced radial solution X = r R."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise GridDomainError("radial coordinate must satisfy r > 0")
    lam = lambda_from_ell(ell)
    c = constants
    return spec.evaluate(r, c) + lam * c.hbar**2 / (2.0 * c.mass * r * r)


def fictive_polar_potential(m_ell: int, constants: PhysConstants, theta):
    """(hbar^2/2m) (m_ell^2 - 1/4) / sin^2(theta) seen by T = sin^(1/2)(theta) T0."""
    theta = np.asarray(theta, dtype=float)
    if np.any(theta <= 0.0) or np.any(theta >= np.pi):
        raise GridDomainError("polar angle must lie strictly inside (0, pi)")
    c = constants
    s = np.sin(theta)
    return c.hbar**2 * (m_ell**2 - 0.25) / (2.0 * c.mass * s * s)


def polar_energy(ell: int, constants: PhysConstants) -> float:
    """Effective energy (lambda + 1/4) hbar^2 / (2m) of the reduced polar equation."""
    lam = lambda_from_ell(ell)
    c = constants
    return (lam + 0.25) * c.hbar**2 / (2.0 * c.mass)


def fictive_cylindrical_potential(
    spec: PotentialSpec, m_phi: int, beta: float, constants: PhysConstants, rho
):
    """V(rho) + (m_phi^2 - 1/4) hbar^2/(2 m rho^2) - beta hbar^2/(2m) for H = sqrt(rho) G."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0.0):
        raise GridDomainError("cylindrical radius must satisfy rho > 0")
    c = constants
    centrifugal = (m_phi**2 - 0.25) * c.hbar**2 / (2.0 * c.mass * rho * rho)
    return spec.evaluate(rho, c) + centrifugal - beta * c.hbar**2 / (2.0 * c.mass)


@dataclass(frozen=True)
class Effective1DProblem:
    """One separated coordinate equation in Schroedinger form.

    The pair equation is -(hbar^2/2m) y'' + (v_eff(q) - e_eff) y = 0,
    equivalently y'' = curvature(q) y.
    """

    label: str
    v_eff: Callable
    e_eff: float
    constants: PhysConstants
    domain: tuple[float, float] = (-np.inf, np.inf)
    description: str = ""

    def check_domain(self, q) -> None:
        q = np.asarray(q, dtype=float)
        lo, hi = self.domain
        if np.any(q <= lo) or np.any(q >= hi):
            raise GridDomainError(
                f"coordinate {self.label!r} must lie strictly inside ({lo}, {hi})"
            )

    def curvature(self, q):
        """(2m/hbar^2) (v_eff(q) - e_eff)."""
        c = self.constants
        if c.hbar == 0.0:
            raise ValueError("curvature is undefined at hbar = 0")
        return 2.0 * c.mass / c.hbar**2 * (np.asarray(self.v_eff(q), dtype=float) - self.e_eff)


def cartesian_axis_problem(
    label: str, spec: PotentialSpec, axis_energy: float, constants: PhysConstants
) -> Effective1DProblem:
    return Effective1DProblem(
        label=label,
        v_eff=lambda q, _s=spec, _c=constants: _s.evaluate(q, _c),
        e_eff=float(axis_energy),
        constants=constants,
        description=f"cartesian axis {label}",
    )


def spherical_radial_problem(
    spec: PotentialSpec, ell: int, energy: float, constants: PhysConstants
) -> Effective1DProblem:
    return Effective1DProblem(
        label="r",
        v_eff=lambda r, _s=spec, _l=ell, _c=constants: fictive_radial_potential(_s, _l, _c, r),
        e_eff=float(energy),
        constants=constants,
        domain=(0.0, np.inf),
        description=f"spherical radial, ell={ell}",
    )


def spherical_polar_problem(ell: int, m_ell: int, constants: PhysConstants) -> Effective1DProblem:
    if abs(m_ell) > ell:
        raise ValueError(f"|m_ell| must be <= ell, got m_ell={m_ell}, ell={ell}")
    return Effective1DProblem(
        label="theta",
        v_eff=lambda t, _m=m_ell, _c=constants: fictive_polar_potential(_m, _c, t),
        e_eff=polar_energy(ell, constants),
        constants=constants,
        domain=(0.0, np.pi),
        description=f"spherical polar, ell={ell}, m_ell={m_ell}",
    )


def azimuthal_problem(m: int, constants: PhysConstants, label: str = "phi") -> Effective1DProblem:
    """Azimuthal equation F'' + m^2 F = 0 as a zero-potential problem."""
    c = constants
    return Effective1DProblem(
        label=label,
        v_eff=lambda q: np.zeros_like(np.asarray(q, dtype=float)),
        e_eff=m**2 * c.hbar**2 / (2.0 * c.mass),
        constants=constants,
        description=f"azimuthal, m={m}",
    )


def cylindrical_radial_problem(
    spec: PotentialSpec, m_phi: int, beta: float, energy: float, constants: PhysConstants
) -> Effective1DProblem:
    return Effective1DProblem(
        label="rho",
        v_eff=lambda rho, _s=spec, _m=m_phi, _b=beta, _c=constants: fictive_cylindrical_potential(
            _s, _m, _b, _c, rho
        ),
        e_eff=float(energy),
        constants=constants,
        domain=(0.0, np.inf),
        description=f"cylindrical radial, m_phi={m_phi}, beta={beta}",
    )


def axial_problem(beta: float, constants: PhysConstants) -> Effective1DProblem:
    """Axial equation U'' - beta U = 0 as a zero-potential problem."""
    c = constants
    return Effective1DProblem(
        label="z",
        v_eff=lambda q: np.zeros_like(np.asarray(q, dtype=float)),
        e_eff=-float(beta) * c.hbar**2 / (2.0 * c.mass),
        constants=constants,
        description=f"axial, beta={beta}",
    )
