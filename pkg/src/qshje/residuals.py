"""Pointwise residual evaluation of the component and assembled equations.

Every stationary Hamilton-Jacobi equation handled here is checked as
left-hand side minus right-hand side at grid nodes. Massful component
equations read

    (1/2m)(dS/dq)^2 + (hbar^2/4m){S;q} + v_eff(q) - e_eff

and the angular/axial ones are the same expression scaled by 2m, which puts
them in the mass-free form (dS)^2 + (hbar^2/2){S;q} + 2m(v_eff - e_eff).
The Schwarzian convention is {S;q} = S'''/S' - (3/2)(S''/S')^2 throughout;
with that convention the quantum correction enters with a plus sign.

Assembled three-dimensional equations combine nodal component data with the
metric weights of the symmetry class and, for curvilinear classes, the
residual quantum terms proportional to hbar^2/8m.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .domain import (
    Effective1DProblem,
    PhysConstants,
    PotentialSpec,
    QuantumNumbers,
    SymmetryClass,
    axial_problem,
    azimuthal_problem,
    cartesian_axis_problem,
    cylindrical_radial_problem,
    spherical_polar_problem,
    spherical_radial_problem,
)
from .errors import GridDomainError, QshjeError
from .reduced_action import ReducedActionComponent, TotalReducedAction


@dataclass(frozen=True)
class ComponentEquation:
    """One separated equation: its effective 1-D data, overall scale, and a
    human-readable formula string used in table headers."""

    name: str
    formula: str
    problem: Effective1DProblem
    scale: float

    @property
    def constants(self) -> PhysConstants:
        return self.problem.constants


def cartesian_axis_equation(
    potential: PotentialSpec, axis_energy: float, constants: PhysConstants, label: str
) -> ComponentEquation:
    problem = cartesian_axis_problem(label, potential, axis_energy, constants)
    formula = (
        f"(dS_{label})^2/(2m) + (hbar^2/(4m))*{{S_{label};{label}}}"
        f" + V_{label}({label}) - E_{label}"
    )
    return ComponentEquation(f"cartesian-axis-{label}", formula, problem, 1.0)


def spherical_radial_equation(
    potential: PotentialSpec, ell: int, energy: float, constants: PhysConstants
) -> ComponentEquation:
    problem = spherical_radial_problem(potential, ell, energy, constants)
    formula = (
        "(dS_r)^2/(2m) + (hbar^2/(4m))*{S_r;r} + V(r)"
        " + l(l+1)*hbar^2/(2m r^2) - E"
    )
    return ComponentEquation("radial-spherical", formula, problem, 1.0)


def spherical_polar_equation(
    ell: int, m_ell: int, constants: PhysConstants
) -> ComponentEquation:
    problem = spherical_polar_problem(ell, m_ell, constants)
    formula = (
        "(dS_theta)^2 + (hbar^2/2)*{S_theta;theta}"
        " + (m_l^2 - 1/4)*hbar^2/sin^2(theta) - (l(l+1) + 1/4)*hbar^2"
    )
    return ComponentEquation("polar-spherical", formula, problem, 2.0 * constants.mass)


def azimuthal_equation(
    m: int, constants: PhysConstants, label: str = "phi"
) -> ComponentEquation:
    problem = azimuthal_problem(m, constants, label)
    formula = f"(dS_{label})^2 + (hbar^2/2)*{{S_{label};{label}}} - m^2*hbar^2"
    return ComponentEquation("azimuthal", formula, problem, 2.0 * constants.mass)


def cylindrical_radial_equation(
    potential: PotentialSpec, m_phi: int, beta: float, energy: float, constants: PhysConstants
) -> ComponentEquation:
    problem = cylindrical_radial_problem(potential, m_phi, beta, energy, constants)
    formula = (
        "(dS_rho)^2/(2m) + (hbar^2/(4m))*{S_rho;rho} + V(rho)"
        " + (m_phi^2 - 1/4)*hbar^2/(2m rho^2) - beta*hbar^2/(2m) - E"
    )
    return ComponentEquation("radial-cylindrical", formula, problem, 1.0)


def axial_equation(beta: float, constants: PhysConstants) -> ComponentEquation:
    problem = axial_problem(beta, constants)
    formula = "(dS_z)^2 + (hbar^2/2)*{S_z;z} + beta*hbar^2"
    return ComponentEquation("axial", formula, problem, 2.0 * constants.mass)


def component_residual(
    component: ReducedActionComponent,
    equation: ComponentEquation,
    constants: PhysConstants | None = None,
) -> np.ndarray:
    """Left minus right of one separated equation at every grid node.

    The Schwarzian samples belong to the component (closed form, built from
    its own pair), while the effective potential and energy come from the
    equation under test. A pair generated at a different energy therefore
    shows a flat residual equal to the energy offset.
    """
    c = constants if constants is not None else equation.constants
    q = component.grid.points
    equation.problem.check_domain(q)
    v = np.asarray(equation.problem.v_eff(q), dtype=float)
    kinetic = component.ds * component.ds / (2.0 * c.mass)
    quantum = (c.hbar * c.hbar / (4.0 * c.mass)) * component.schwarzian
    return equation.scale * (kinetic + quantum + v - equation.problem.e_eff)


@dataclass(frozen=True)
class AssembledEquation:
    """Full 3-D equation data: symmetry class, potential, constants of
    motion, and the formula string for reports."""

    name: str
    formula: str
    symmetry: SymmetryClass
    potential: PotentialSpec | None
    axis_potentials: dict[str, PotentialSpec] | None
    quantum_numbers: QuantumNumbers
    constants: PhysConstants

    def potential_at(self, snapped: tuple[float, ...]) -> float:
        if self.symmetry is SymmetryClass.CARTESIAN:
            assert self.axis_potentials is not None
            return float(
                sum(
                    self.axis_potentials[lab].evaluate(val, self.constants)
                    for lab, val in zip(("x", "y", "z"), snapped)
                )
            )
        assert self.potential is not None
        return float(self.potential.evaluate(snapped[0], self.constants))


_ASSEMBLED_FORMULAS = {
    SymmetryClass.CARTESIAN: (
        "sum_q [ (dS_q)^2/(2m) + (hbar^2/(4m))*{S_q;q} + V_q(q) ] - E"
    ),
    SymmetryClass.SPHERICAL: (
        "(1/(2m))[(dS_r)^2 + (dS_theta)^2/r^2 + (dS_phi)^2/(r^2 sin^2 theta)]"
        " + (hbar^2/(4m))[{S_r;r} + {S_theta;theta}/r^2 + {S_phi;phi}/(r^2 sin^2 theta)]"
        " - hbar^2/(8m r^2) - hbar^2/(8m r^2 sin^2 theta) + V(r) - E"
    ),
    SymmetryClass.CYLINDRICAL: (
        "(1/(2m))[(dS_rho)^2 + (dS_phi)^2/rho^2 + (dS_z)^2]"
        " + (hbar^2/(4m))[{S_rho;rho} + {S_phi;phi}/rho^2 + {S_z;z}]"
        " - hbar^2/(8m rho^2) + V(rho) - E"
    ),
}


def assembled_equation_for(
    symmetry: SymmetryClass,
    quantum_numbers: QuantumNumbers,
    constants: PhysConstants,
    potential: PotentialSpec | None = None,
    axis_potentials: dict[str, PotentialSpec] | None = None,
) -> AssembledEquation:
    if symmetry is SymmetryClass.CARTESIAN:
        if axis_potentials is None or set(axis_potentials) != {"x", "y", "z"}:
            raise ValueError("cartesian assembly needs axis_potentials for x, y, z")
        quantum_numbers.check_axis_energies(("x", "y", "z"))
    elif potential is None:
        raise ValueError(f"{symmetry.value} assembly needs a radial potential")
    return AssembledEquation(
        name=f"assembled-{symmetry.value}",
        formula=_ASSEMBLED_FORMULAS[symmetry],
        symmetry=symmetry,
        potential=potential,
        axis_potentials=dict(axis_potentials) if axis_potentials else None,
        quantum_numbers=quantum_numbers,
        constants=constants,
    )


@dataclass(frozen=True)
class SpinTerms:
    """Residual quantum terms of the assembled curvilinear equations."""

    ter1: float
    ter2: float | None
    normalized_coefficient: float

    def total(self) -> float:
        return self.ter1 + (self.ter2 if self.ter2 is not None else 0.0)


def spin_terms(symmetry: SymmetryClass, point, constants: PhysConstants) -> SpinTerms:
    """Terms -hbar^2/8mr^2 (and the sin^2 theta partner) left over after the
    separation constants cancel in assembly; absent for cartesian symmetry."""
    h2 = constants.hbar * constants.hbar
    if symmetry is SymmetryClass.SPHERICAL:
        r, theta = float(point[0]), float(point[1])
        if r <= 0.0:
            raise GridDomainError("spherical radius must be positive")
        s = np.sin(theta)
        if s == 0.0:
            raise GridDomainError("polar angle on the axis: sin(theta) = 0")
        # normalizing by the same rounded reference keeps the quotient exact:
        # scaling a float by 1/4 never rounds
        ref = h2 / (2.0 * constants.mass * r * r)
        ter1 = -0.25 * ref
        ter2 = ter1 / (s * s)
        coeff = -ter1 / ref if ref != 0.0 else 0.25
        return SpinTerms(ter1, ter2, coeff)
    if symmetry is SymmetryClass.CYLINDRICAL:
        rho = float(point[0])
        if rho <= 0.0:
            raise GridDomainError("cylindrical radius must be positive")
        ref = h2 / (2.0 * constants.mass * rho * rho)
        ter1 = -0.25 * ref
        coeff = -ter1 / ref if ref != 0.0 else 0.25
        return SpinTerms(ter1, None, coeff)
    raise QshjeError("cartesian symmetry has no residual quantum terms")


def assembled_residual(
    total: TotalReducedAction,
    equation: AssembledEquation,
    point,
    mode: str = "quantum",
    constants: PhysConstants | None = None,
) -> float:
    """Full 3-D equation at one point, from nodal component data.

    mode selects which terms enter: "quantum" is the complete equation,
    "classical" drops every hbar-carrying correction and returns
    (1/2m)(grad S)^2 + V - E, "quantum-terms" returns only the corrections.
    constants, when given, rescales hbar in the corrections while the dS and
    Schwarzian samples stay fixed.
    """
    if mode not in ("quantum", "classical", "quantum-terms"):
        raise ValueError(f"unknown mode {mode!r}")
    c = constants if constants is not None else equation.constants
    _, snapped = total.snap_point(point)

    quantum = 0.0
    if mode != "classical":
        quantum = (c.hbar * c.hbar / (4.0 * c.mass)) * total.schwarzian_sum(point)
        if equation.symmetry is not SymmetryClass.CARTESIAN:
            quantum += spin_terms(equation.symmetry, snapped, c).total()
    if mode == "quantum-terms":
        return quantum

    kinetic = total.gradient_squared(point) / (2.0 * equation.constants.mass)
    v = equation.potential_at(snapped)
    e = equation.quantum_numbers.energy
    return kinetic + quantum + v - e


def component_weighted_sum(
    total: TotalReducedAction, residuals: dict[str, np.ndarray], point
) -> float:
    """Metric-weighted sum of per-component residuals at a snapped point.

    Algebraically identical to assembled_residual in quantum mode when each
    residual came from the matching component equation; exposing both routes
    keeps the assembly identity testable instead of tautological.
    """
    idx, snapped = total.snap_point(point)
    labels = total.symmetry.coordinate_labels
    vals = [float(residuals[lab][i]) for lab, i in zip(labels, idx)]
    two_m = 2.0 * total.constants.mass
    if total.symmetry is SymmetryClass.SPHERICAL:
        r, theta, _ = snapped
        s2 = np.sin(theta) ** 2
        return vals[0] + vals[1] / (two_m * r * r) + vals[2] / (two_m * r * r * s2)
    if total.symmetry is SymmetryClass.CYLINDRICAL:
        rho, _, _ = snapped
        return vals[0] + vals[1] / (two_m * rho * rho) + vals[2] / two_m
    return sum(vals)


def probe_axis_values(points: np.ndarray, per_coordinate: int) -> list[float]:
    """Log-placed values inside the stencil-valid interior of one grid,
    snapped to nodes and deduplicated."""
    if per_coordinate < 2:
        raise ValueError("need at least 2 probe values per coordinate")
    pts = np.asarray(points, dtype=float)
    lo, hi = pts[2], pts[-3]
    if lo > 0.0:
        raw = np.geomspace(lo, hi, per_coordinate)
    else:
        raw = lo + (hi - lo) * (np.geomspace(1.0, 10.0, per_coordinate) - 1.0) / 9.0
    idx = sorted({int(np.clip(np.argmin(np.abs(pts - v)), 2, pts.size - 3)) for v in raw})
    return [float(pts[i]) for i in idx]


def probe_lattice(total: TotalReducedAction, per_coordinate: int = 5) -> list[tuple[float, ...]]:
    """Deterministic probe points: log-placed per coordinate, combined."""
    axes = [
        probe_axis_values(total.components[label].grid.points, per_coordinate)
        for label in total.symmetry.coordinate_labels
    ]
    return [tuple(p) for p in itertools.product(*axes)]


@dataclass(frozen=True)
class ResidualReport:
    """Summary of one equation's residual samples over a coordinate grid."""

    equation: str
    formula: str
    coords: np.ndarray
    residual: np.ndarray
    max_abs: float
    rms: float
    scale_ref: float
    normalized_max: float


def make_report(
    equation: ComponentEquation,
    component: ReducedActionComponent,
    window: tuple[int, int] | None = None,
) -> ResidualReport:
    res = component_residual(component, equation)
    start, stop = window if window is not None else (0, component.grid.n)
    body = res[start:stop]
    c = equation.constants
    span = component.grid.points[-1] - component.grid.points[0]
    scale_ref = equation.scale * max(
        abs(equation.problem.e_eff), c.hbar * c.hbar / (2.0 * c.mass * span * span)
    )
    max_abs = float(np.max(np.abs(body)))
    return ResidualReport(
        equation=equation.name,
        formula=equation.formula,
        coords=component.grid.points[start:stop],
        residual=body,
        max_abs=max_abs,
        rms=float(np.sqrt(np.mean(body * body))),
        scale_ref=scale_ref,
        normalized_max=max_abs / scale_ref,
    )


@dataclass(frozen=True)
class LimitScanResult:
    """Fitted scaling of the quantum corrections against hbar."""

    hbar_values: tuple[float, ...]
    magnitudes: tuple[float, ...]
    slope: float
    intercept: float
    points: tuple[tuple[float, ...], ...]
    wrong_order_gaps: tuple[float, ...] | None = None
    wrong_order_slope: float | None = None


def _fit_loglog(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    usable = y > 0.0
    if int(np.count_nonzero(usable)) < 3:
        raise QshjeError("classical-limit fit needs at least 3 nonzero magnitudes")
    coeffs = np.polyfit(np.log(x[usable]), np.log(y[usable]), 1)
    return float(coeffs[0]), float(coeffs[1])


def classical_limit_scan(
    total: TotalReducedAction,
    equation: AssembledEquation,
    hbar_values,
    points: list[tuple[float, ...]] | None = None,
    wrong_order: bool = False,
    mapper=None,
) -> LimitScanResult:
    """Magnitude of the hbar-carrying corrections versus hbar, data fixed.

    Every correction carries an explicit hbar^2 prefactor, so the fitted
    log-log slope is 2. With wrong_order=True the scan additionally zeroes
    the angular gradients before deleting the corrections; the leftover gap
    to the true classical equation is the angular kinetic energy, which does
    not shrink with hbar.
    """
    hv = np.asarray(sorted(set(float(h) for h in hbar_values), reverse=True), dtype=float)
    if hv.size < 4:
        raise QshjeError("scan needs at least 4 distinct hbar values")
    if np.any(hv <= 0.0):
        raise QshjeError("hbar values must be positive")
    if hv[0] / hv[-1] < 10.0:
        raise QshjeError("hbar values must span at least a factor of 10")
    if points is None:
        points = probe_lattice(total, per_coordinate=3)
    run = mapper if mapper is not None else map

    mags = []
    for h in hv:
        c = PhysConstants(hbar=float(h), mass=equation.constants.mass)
        vals = list(
            run(
                lambda p, _c=c: abs(
                    assembled_residual(total, equation, p, mode="quantum-terms", constants=_c)
                ),
                points,
            )
        )
        mags.append(max(vals))
    slope, intercept = _fit_loglog(hv, np.asarray(mags))

    gaps_out = None
    gap_slope = None
    if wrong_order:
        if equation.symmetry is not SymmetryClass.SPHERICAL:
            raise QshjeError("the wrong-order comparison is defined for spherical symmetry")
        two_m = 2.0 * equation.constants.mass
        gaps = []
        for p in points:
            idx, snapped = total.snap_point(p)
            r, theta, _ = snapped
            ds_t = float(total.components["theta"].ds[idx[1]])
            ds_p = float(total.components["phi"].ds[idx[2]])
            s2 = np.sin(theta) ** 2
            # zeroing the angular momenta first removes these gradient terms
            # from the would-be classical equation; the gap survives hbar -> 0
            gaps.append((ds_t * ds_t / (r * r) + ds_p * ds_p / (r * r * s2)) / two_m)
        gaps_arr = np.asarray([max(gaps)] * hv.size)
        gap_slope = 0.0
        if np.all(gaps_arr > 0.0):
            gap_slope, _ = _fit_loglog(hv, gaps_arr)
        gaps_out = tuple(float(g) for g in gaps_arr)

    return LimitScanResult(
        hbar_values=tuple(float(h) for h in hv),
        magnitudes=tuple(float(v) for v in mags),
        slope=slope,
        intercept=intercept,
        points=tuple(points),
        wrong_order_gaps=gaps_out,
        wrong_order_slope=gap_slope,
    )
