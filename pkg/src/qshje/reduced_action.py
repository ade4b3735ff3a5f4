"""Reduced-action components built on solution pairs.

For a pair (y1, y2) with constant Wronskian W and mixing constants (mu, nu)
with mu nu != 1, the reduced action of one coordinate is

    S(q) = hbar arctan( (mu y1 + y2) / (y1 + nu y2) ) + e hbar

with the closed-form conjugate momentum

    dS/dq = hbar (1 - mu nu) W / (a^2 + b^2),  a = mu y1 + y2,  b = y1 + nu y2.

S is constructed by trapezoid integration of dS/dq anchored to the arctan value
at the grid anchor node; the pointwise arctan is kept as a branch cross-check
mod pi hbar. The continuity product amplitude^2 * dS/dq equals
hbar (1 - mu nu) W identically.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .domain import PhysConstants, QuantumNumbers, SymmetryClass
from .errors import GridDomainError, QshjeError
from .ode_engine import Grid1D, SolutionPair
from .schwarzian import DerivativeBundle, mixed_solutions, schwarzian_closed_form


@dataclass
class ReducedActionComponent:
    """One coordinate's reduced action and its derived samples."""

    label: str
    pair: SolutionPair
    mu: float
    nu: float
    phase_e: float
    s: np.ndarray
    ds: np.ndarray
    amplitude: np.ndarray
    schwarzian: np.ndarray
    branch_residual: float
    _spline: CubicSpline | None = field(default=None, repr=False)

    @property
    def grid(self) -> Grid1D:
        return self.pair.grid

    @property
    def constants(self) -> PhysConstants:
        return self.pair.problem.constants

    def continuity_values(self) -> np.ndarray:
        """amplitude^2 * dS/dq, constant = hbar (1 - mu nu) W."""
        return self.amplitude * self.amplitude * self.ds

    def continuity_drift(self) -> float:
        vals = self.continuity_values()
        ref = self.constants.hbar * (1.0 - self.mu * self.nu) * self.pair.wronskian
        return float(np.max(np.abs(vals - ref)) / abs(ref))

    def derivative_bundle(self) -> DerivativeBundle:
        """Exact closed-form (S, S', S'', S''') on the full grid.

        S'' and S''' follow from differentiating dS = C/D analytically, with
        D'' substituted through the pair's equation.
        """
        a, b, da, db = mixed_solutions(self.pair, self.mu, self.nu)
        d = a * a + b * b
        c = np.asarray(self.pair.problem.curvature(self.grid.points), dtype=float)
        dp = 2.0 * (a * da + b * db)
        dpp = 2.0 * (da * da + db * db) + 2.0 * c * d
        cst = self.constants.hbar * (1.0 - self.mu * self.nu) * self.pair.wronskian
        d2s = -cst * dp / (d * d)
        d3s = cst * (2.0 * dp * dp / (d**3) - dpp / (d * d))
        return DerivativeBundle(
            self.grid, 0, self.grid.n, self.s, self.ds, d2s, d3s, orders=()
        )


def build_component(
    label: str, pair: SolutionPair, mu: float, nu: float, phase_e: float = 0.0
) -> ReducedActionComponent:
    """Construct the reduced action of one coordinate from a solution pair."""
    hbar = pair.problem.constants.hbar
    a, b, da, db = mixed_solutions(pair, mu, nu)
    d = a * a + b * b
    if np.any(d <= 0.0):
        raise QshjeError("mixed-basis amplitude vanishes on the grid; change (mu, nu)")

    cst = hbar * (1.0 - mu * nu) * pair.wronskian
    ds = cst / d
    if np.any(ds == 0.0) or np.any(np.sign(ds) != np.sign(ds[0])):
        raise QshjeError("conjugate momentum changed sign; inconsistent pair data")

    q = pair.grid.points
    anchor = pair.grid.midpoint_index
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (ds[1:] + ds[:-1]) * np.diff(q))])
    s = cum - cum[anchor] + hbar * np.arctan2(a[anchor], b[anchor]) + phase_e * hbar

    # branch-insensitive cross-check of the unwrapped arctan: with
    # theta = (S - e hbar)/hbar, sin(theta) b - cos(theta) a = 0 mod pi.
    theta = (s - phase_e * hbar) / hbar
    branch = float(np.max(np.abs(np.sin(theta) * b - np.cos(theta) * a) / np.sqrt(d)))
    if branch > 0.05:
        raise QshjeError(
            f"unwrapped action disagrees with arctan branch by {branch:.2e}; grid too coarse"
        )

    comp = ReducedActionComponent(
        label=label,
        pair=pair,
        mu=float(mu),
        nu=float(nu),
        phase_e=float(phase_e),
        s=s,
        ds=ds,
        amplitude=np.sqrt(d),
        schwarzian=schwarzian_closed_form(pair, mu, nu),
        branch_residual=branch,
    )
    drift = comp.continuity_drift()
    if drift > 1e-8:
        raise QshjeError(f"continuity product drifted by {drift:.2e} (expected exact)")
    return comp


def conjugate_momentum(component: ReducedActionComponent, at) -> float | np.ndarray:
    """dS/dq interpolated (cubic) at coordinates inside the component grid."""
    at_arr = np.asarray(at, dtype=float)
    pts = component.grid.points
    if np.any(at_arr < pts[0]) or np.any(at_arr > pts[-1]):
        raise GridDomainError(f"requested coordinate outside the grid [{pts[0]}, {pts[-1]}]")
    if component._spline is None:
        component._spline = CubicSpline(pts, component.ds)
    out = component._spline(at_arr)
    return float(out) if np.isscalar(at) else out


@dataclass
class TotalReducedAction:
    """Additive reduced action of one symmetry class: three components plus
    per-class metric weights for gradient-squared and Schwarzian sums.

    Point evaluation snaps each coordinate to its nearest grid node, so values
    are exact nodal samples (no interpolation error enters residuals).
    """

    symmetry: SymmetryClass
    components: dict[str, ReducedActionComponent]
    quantum_numbers: QuantumNumbers
    constants: PhysConstants

    def component(self, label: str) -> ReducedActionComponent:
        return self.components[label]

    def snap_point(self, point) -> tuple[tuple[int, ...], tuple[float, ...]]:
        """Nearest grid node per coordinate, in symmetry label order."""
        labels = self.symmetry.coordinate_labels
        idx = []
        snapped = []
        for label, value in zip(labels, point):
            pts = self.components[label].grid.points
            if value < pts[0] or value > pts[-1]:
                raise GridDomainError(
                    f"coordinate {label}={value!r} outside grid [{pts[0]}, {pts[-1]}]"
                )
            i = int(np.argmin(np.abs(pts - value)))
            idx.append(i)
            snapped.append(float(pts[i]))
        return tuple(idx), tuple(snapped)

    def metric_weights(self, snapped: tuple[float, ...]) -> tuple[float, float, float]:
        """Inverse-metric factors applied to the 2nd and 3rd coordinate terms."""
        if self.symmetry is SymmetryClass.SPHERICAL:
            r, theta, _ = snapped
            return 1.0, 1.0 / (r * r), 1.0 / (r * r * np.sin(theta) ** 2)
        if self.symmetry is SymmetryClass.CYLINDRICAL:
            rho, _, _ = snapped
            return 1.0, 1.0 / (rho * rho), 1.0
        return 1.0, 1.0, 1.0

    def _terms(self, point, attr: str) -> tuple[float, float, float]:
        idx, snapped = self.snap_point(point)
        labels = self.symmetry.coordinate_labels
        vals = [float(getattr(self.components[lab], attr)[i]) for lab, i in zip(labels, idx)]
        w = self.metric_weights(snapped)
        return tuple(v * wi for v, wi in zip(vals, w))  # type: ignore[return-value]

    def gradient_squared(self, point) -> float:
        """(grad S)^2 with the class metric, from nodal dS values."""
        idx, snapped = self.snap_point(point)
        labels = self.symmetry.coordinate_labels
        ds = [float(self.components[lab].ds[i]) for lab, i in zip(labels, idx)]
        w = self.metric_weights(snapped)
        return sum(d * d * wi for d, wi in zip(ds, w))

    def schwarzian_sum(self, point) -> float:
        """Metric-weighted sum of the per-coordinate Schwarzians."""
        return sum(self._terms(point, "schwarzian"))


def assemble_total(
    components: dict[str, ReducedActionComponent],
    symmetry: SymmetryClass,
    quantum_numbers: QuantumNumbers,
) -> TotalReducedAction:
    labels = symmetry.coordinate_labels
    if set(components) != set(labels):
        raise ValueError(
            f"{symmetry.value} needs components for {labels}, got {sorted(components)}"
        )
    constants = components[labels[0]].constants
    for lab in labels:
        c = components[lab].constants
        if c != constants:
            raise ValueError("components carry different physical constants")
    return TotalReducedAction(symmetry, dict(components), quantum_numbers, constants)
