"""Reduced-action solutions of the stationary quantum Hamilton-Jacobi
equation in Cartesian, spherical and cylindrical symmetry, with pointwise
verification of every component and assembled equation."""

from .domain import (
    CoulombPotential,
    Effective1DProblem,
    HarmonicPotential,
    PhysConstants,
    PotentialSpec,
    PowerLawPotential,
    QuantumNumbers,
    SymmetryClass,
    TabulatedPotential,
    ZeroPotential,
    axial_problem,
    azimuthal_problem,
    cartesian_axis_problem,
    cylindrical_radial_problem,
    lambda_from_ell,
    spherical_polar_problem,
    spherical_radial_problem,
)
from .config import (
    DEFAULT_HBAR_SCAN,
    ComponentConfig,
    GridSpec,
    OutputConfig,
    RunConfig,
    load_config,
    parse_config,
    potential_from_mapping,
)
from .errors import (
    ConfigError,
    DegenerateMobiusError,
    GridDomainError,
    QshjeError,
    SchwarzianNodeError,
    SolverFailure,
)
from .ode_engine import (
    Grid1D,
    SolutionPair,
    analytic_axial,
    analytic_azimuthal,
    pair_from_samples,
    solve_pair,
)
from .reduced_action import (
    ReducedActionComponent,
    TotalReducedAction,
    assemble_total,
    build_component,
    conjugate_momentum,
)
from .reduction import ReductionKind, reduce_wavefunction, restore_wavefunction
from .residuals import (
    AssembledEquation,
    ComponentEquation,
    LimitScanResult,
    ResidualReport,
    SpinTerms,
    assembled_equation_for,
    assembled_residual,
    axial_equation,
    azimuthal_equation,
    cartesian_axis_equation,
    classical_limit_scan,
    component_residual,
    component_weighted_sum,
    cylindrical_radial_equation,
    make_report,
    probe_axis_values,
    probe_lattice,
    spherical_polar_equation,
    spherical_radial_equation,
    spin_terms,
)
from .schwarzian import (
    DerivativeBundle,
    MobiusMap,
    differentiate,
    mixed_solutions,
    mobius_apply,
    mobius_transform_bundle,
    mobius_transform_samples,
    refit_mixing,
    schwarzian,
    schwarzian_closed_form,
    schwarzian_from_momentum,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_HBAR_SCAN",
    "AssembledEquation",
    "ComponentConfig",
    "ComponentEquation",
    "ConfigError",
    "CoulombPotential",
    "DegenerateMobiusError",
    "DerivativeBundle",
    "Effective1DProblem",
    "Grid1D",
    "GridDomainError",
    "GridSpec",
    "HarmonicPotential",
    "LimitScanResult",
    "MobiusMap",
    "OutputConfig",
    "PhysConstants",
    "PotentialSpec",
    "PowerLawPotential",
    "QshjeError",
    "QuantumNumbers",
    "ReducedActionComponent",
    "RunConfig",
    "ReductionKind",
    "ResidualReport",
    "SchwarzianNodeError",
    "SolutionPair",
    "SolverFailure",
    "SpinTerms",
    "SymmetryClass",
    "TabulatedPotential",
    "TotalReducedAction",
    "ZeroPotential",
    "analytic_axial",
    "analytic_azimuthal",
    "assemble_total",
    "assembled_equation_for",
    "assembled_residual",
    "axial_equation",
    "axial_problem",
    "azimuthal_equation",
    "azimuthal_problem",
    "build_component",
    "cartesian_axis_equation",
    "cartesian_axis_problem",
    "classical_limit_scan",
    "component_residual",
    "component_weighted_sum",
    "conjugate_momentum",
    "cylindrical_radial_equation",
    "cylindrical_radial_problem",
    "differentiate",
    "lambda_from_ell",
    "load_config",
    "make_report",
    "mixed_solutions",
    "mobius_apply",
    "mobius_transform_bundle",
    "mobius_transform_samples",
    "pair_from_samples",
    "parse_config",
    "potential_from_mapping",
    "probe_axis_values",
    "probe_lattice",
    "reduce_wavefunction",
    "refit_mixing",
    "restore_wavefunction",
    "schwarzian",
    "schwarzian_closed_form",
    "schwarzian_from_momentum",
    "solve_pair",
    "spherical_polar_equation",
    "spherical_polar_problem",
    "spherical_radial_equation",
    "spherical_radial_problem",
    "spin_terms",
]
