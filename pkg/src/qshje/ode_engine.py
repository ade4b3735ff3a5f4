"""Solution pairs of the separated coordinate equations.

Every reduced-action component is built on two real, linearly independent
solutions (y1, y2) of y'' = c(q) y sampled on a shared grid, together with
their first derivatives and the (constant) Wronskian W = y1 y2' - y2 y1'.
Analytic constructors cover the azimuthal and axial equations; everything else
goes through a fixed-step RK4 propagator seeded at a grid anchor.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .domain import Effective1DProblem, PhysConstants, azimuthal_problem, axial_problem
from .errors import SolverFailure

_OVERFLOW_LIMIT = 1e160


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(np.asarray(a, dtype=float))
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Grid1D:
    """Strictly increasing 1-D coordinate grid with at least 9 points."""

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = _readonly(self.points)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size < 9:
            raise ValueError(f"grid needs >= 9 points in one dimension, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("grid points must be finite")
        d = np.diff(pts)
        if np.any(d <= 0.0):
            raise ValueError("grid points must be strictly increasing")
        uniform = bool(np.max(d) - np.min(d) <= 1e-9 * np.max(d))
        object.__setattr__(self, "_uniform", uniform)

    @classmethod
    def uniform(cls, lo: float, hi: float, n: int) -> "Grid1D":
        return cls(np.linspace(float(lo), float(hi), int(n)))

    @property
    def n(self) -> int:
        return int(self.points.size)

    @property
    def is_uniform(self) -> bool:
        return self._uniform  # type: ignore[attr-defined]

    @property
    def spacing(self) -> float:
        """Uniform spacing; raises for nonuniform grids."""
        if not self.is_uniform:
            raise ValueError("grid is not uniform")
        return float((self.points[-1] - self.points[0]) / (self.n - 1))

    @property
    def midpoint_index(self) -> int:
        return self.n // 2


@dataclass(frozen=True)
class SolutionPair:
    """Two independent solutions of one coordinate equation on a grid.

    Derivatives come from the constructor (analytic formula or integrator
    state), never from re-differencing the samples. `problem` records the
    effective 1-D equation the pair solves; the closed-form Schwarzian uses
    its curvature to substitute second derivatives.
    """

    grid: Grid1D
    y1: np.ndarray
    y2: np.ndarray
    dy1: np.ndarray
    dy2: np.ndarray
    wronskian: float
    provenance: str
    problem: Effective1DProblem

    def __post_init__(self) -> None:
        n = self.grid.n
        for name in ("y1", "y2", "dy1", "dy2"):
            a = _readonly(getattr(self, name))
            if a.shape != (n,):
                raise ValueError(f"{name} must have shape ({n},), got {a.shape}")
            object.__setattr__(self, name, a)
        if self.wronskian == 0.0 or not np.isfinite(self.wronskian):
            raise ValueError(f"Wronskian must be nonzero and finite, got {self.wronskian}")
        if self.provenance not in ("analytic-catalog", "numerical"):
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def wronskian_samples(self) -> np.ndarray:
        return self.y1 * self.dy2 - self.y2 * self.dy1

    def wronskian_drift(self) -> float:
        """max |W(q) - W| / |W| over the grid."""
        w = self.wronskian_samples()
        return float(np.max(np.abs(w - self.wronskian)) / abs(self.wronskian))


def analytic_azimuthal(m: int, grid: Grid1D, constants: PhysConstants | None = None) -> SolutionPair:
    """Pair (sin m phi, cos m phi) with W = -m; m = 0 routes to the degenerate pair."""
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool):
        raise ValueError(f"azimuthal number must be an integer, got {m!r}")
    constants = constants or PhysConstants()
    if m == 0:
        return analytic_azimuthal_degenerate(grid, constants)
    phi = grid.points
    fm = float(m)
    return SolutionPair(
        grid=grid,
        y1=np.sin(fm * phi),
        y2=np.cos(fm * phi),
        dy1=fm * np.cos(fm * phi),
        dy2=-fm * np.sin(fm * phi),
        wronskian=-fm,
        provenance="analytic-catalog",
        problem=azimuthal_problem(int(m), constants),
    )


def analytic_azimuthal_degenerate(grid: Grid1D, constants: PhysConstants | None = None) -> SolutionPair:
    """m = 0 pair (1, phi) with W = 1."""
    constants = constants or PhysConstants()
    phi = grid.points
    return SolutionPair(
        grid=grid,
        y1=np.ones_like(phi),
        y2=phi.copy(),
        dy1=np.zeros_like(phi),
        dy2=np.ones_like(phi),
        wronskian=1.0,
        provenance="analytic-catalog",
        problem=azimuthal_problem(0, constants),
    )


def analytic_axial(beta: float, grid: Grid1D, constants: PhysConstants | None = None) -> SolutionPair:
    """Pair for U'' = beta U.

    beta > 0: (exp(sqrt(beta) z), exp(-sqrt(beta) z)), W = -2 sqrt(beta);
    beta < 0: (sin(k z), cos(k z)) with k = sqrt(-beta), W = -k;
    beta = 0: (1, z), W = 1.
    """
    constants = constants or PhysConstants()
    beta = float(beta)
    if not np.isfinite(beta):
        raise ValueError(f"beta must be finite, got {beta}")
    z = grid.points
    problem = axial_problem(beta, constants)
    if beta > 0.0:
        k = np.sqrt(beta)
        with np.errstate(over="ignore"):
            up, dn = np.exp(k * z), np.exp(-k * z)
        if not (np.all(np.isfinite(up)) and np.all(np.isfinite(dn))):
            raise SolverFailure("axial exponential overflows on this grid")
        return SolutionPair(grid, up, dn, k * up, -k * dn, -2.0 * k, "analytic-catalog", problem)
    if beta < 0.0:
        k = np.sqrt(-beta)
        return SolutionPair(
            grid,
            np.sin(k * z),
            np.cos(k * z),
            k * np.cos(k * z),
            -k * np.sin(k * z),
            -k,
            "analytic-catalog",
            problem,
        )
    return SolutionPair(
        grid,
        np.ones_like(z),
        z.copy(),
        np.zeros_like(z),
        np.ones_like(z),
        1.0,
        "analytic-catalog",
        problem,
    )


def _rk4_sweep(curvature, q_nodes: np.ndarray, state0: np.ndarray, substeps: int):
    """Propagate u'' = c(q) u from q_nodes[0] through all nodes.

    state has shape (2, k): row 0 the values, row 1 the derivatives of k
    simultaneous solutions. Returns (values, derivatives) at every node.
    """
    state = state0.astype(float).copy()
    us = [state[0].copy()]
    dus = [state[1].copy()]

    def f(q, s):
        return np.vstack((s[1], curvature(q) * s[0]))

    for i in range(len(q_nodes) - 1):
        q = q_nodes[i]
        h_cell = (q_nodes[i + 1] - q_nodes[i]) / substeps
        for _ in range(substeps):
            k1 = f(q, state)
            k2 = f(q + 0.5 * h_cell, state + 0.5 * h_cell * k1)
            k3 = f(q + 0.5 * h_cell, state + 0.5 * h_cell * k2)
            k4 = f(q + h_cell, state + h_cell * k3)
            state = state + (h_cell / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            q = q + h_cell
        if np.any(np.abs(state) > _OVERFLOW_LIMIT):
            raise SolverFailure(
                f"solution magnitude exceeded {_OVERFLOW_LIMIT:g} near q = {q_nodes[i + 1]!r} "
                "(classically forbidden growth); shrink the domain or move the anchor"
            )
        us.append(state[0].copy())
        dus.append(state[1].copy())
    return np.array(us), np.array(dus)


def solve_pair(
    problem: Effective1DProblem,
    grid: Grid1D,
    seeds: Sequence[Sequence[float]] = ((1.0, 0.0), (0.0, 1.0)),
    anchor_index: int | None = None,
    substeps: int = 1,
    wronskian_tol: float = 1e-6,
) -> SolutionPair:
    """Integrate two solutions of the effective equation outward from an anchor node.

    Parameters
    ----------
    problem : Effective1DProblem
        Coordinate equation y'' = curvature(q) y.
    grid : Grid1D
        Output nodes; the fixed RK4 step is the node spacing divided by `substeps`.
    seeds : two (value, derivative) pairs
        Initial data of (y1, y2) at the anchor node. Defaults (1,0), (0,1).
    anchor_index : int, optional
        Node index of the seed data; defaults to the grid midpoint node.
    substeps : int
        RK4 substeps per grid cell (error shrinks ~16x per doubling).
    wronskian_tol : float
        Maximum tolerated relative Wronskian drift before failing.
    """
    problem.check_domain(grid.points)
    seeds = np.asarray(seeds, dtype=float)
    if seeds.shape != (2, 2):
        raise ValueError(f"seeds must be two (value, derivative) pairs, got shape {seeds.shape}")
    w0 = seeds[0, 0] * seeds[1, 1] - seeds[1, 0] * seeds[0, 1]
    if w0 == 0.0:
        raise ValueError("seed conditions are linearly dependent (zero Wronskian)")
    if substeps < 1:
        raise ValueError("substeps must be >= 1")
    idx = grid.midpoint_index if anchor_index is None else int(anchor_index)
    if not 0 <= idx < grid.n:
        raise ValueError(f"anchor index {idx} outside grid of {grid.n} nodes")

    state0 = np.array([[seeds[0, 0], seeds[1, 0]], [seeds[0, 1], seeds[1, 1]]])
    pts = grid.points
    u_r, du_r = _rk4_sweep(problem.curvature, pts[idx:], state0, substeps)
    u_l, du_l = _rk4_sweep(problem.curvature, pts[idx::-1], state0, substeps)
    u = np.vstack((u_l[::-1][:-1], u_r))
    du = np.vstack((du_l[::-1][:-1], du_r))

    pair = SolutionPair(
        grid=grid,
        y1=u[:, 0],
        y2=u[:, 1],
        dy1=du[:, 0],
        dy2=du[:, 1],
        wronskian=float(w0),
        provenance="numerical",
        problem=problem,
    )
    drift = pair.wronskian_drift()
    if drift > wronskian_tol:
        raise SolverFailure(
            f"Wronskian drift {drift:.3e} exceeds tolerance {wronskian_tol:.1e}; "
            "refine the grid or raise substeps"
        )
    return pair


def pair_from_samples(
    grid: Grid1D,
    y1: np.ndarray,
    dy1: np.ndarray,
    y2: np.ndarray,
    dy2: np.ndarray,
    problem: Effective1DProblem,
    provenance: str = "analytic-catalog",
    wronskian: float | None = None,
    wronskian_tol: float = 1e-6,
) -> SolutionPair:
    """Assemble a pair from externally supplied samples (e.g. a known closed-form
    solution next to a numerically generated partner)."""
    if wronskian is None:
        i = grid.midpoint_index
        wronskian = float(y1[i] * dy2[i] - y2[i] * dy1[i])
    pair = SolutionPair(grid, y1, y2, dy1, dy2, float(wronskian), provenance, problem)
    drift = pair.wronskian_drift()
    if drift > wronskian_tol:
        raise SolverFailure(
            f"Wronskian drift {drift:.3e} of supplied samples exceeds {wronskian_tol:.1e}"
        )
    return pair
