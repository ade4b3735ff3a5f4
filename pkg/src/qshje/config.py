"""Run configuration: YAML schema, validation, and typed accessors.

A run file names a symmetry class, the potential, the constants of motion,
and one block per coordinate component with its mixing constants and grid.
Validation errors carry the dotted path of the offending field.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import yaml

from .domain import (
    CoulombPotential,
    HarmonicPotential,
    PhysConstants,
    PotentialSpec,
    PowerLawPotential,
    QuantumNumbers,
    SymmetryClass,
    TabulatedPotential,
    ZeroPotential,
)
from .errors import ConfigError
from .ode_engine import Grid1D

DEFAULT_HBAR_SCAN = (1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125)

_RADIAL_LABELS = {"r", "rho"}


def _expect_mapping(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{path}: expected a mapping, got {type(value).__name__}")
    return value


def _get(mapping: dict, key: str, path: str, required: bool = True, default=None):
    if key not in mapping:
        if required:
            raise ConfigError(f"{path}.{key}: missing required field")
        return default
    return mapping[key]


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    v = float(value)
    if not np.isfinite(v):
        raise ConfigError(f"{path}: must be finite, got {value!r}")
    return v


def _integer(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    count: int

    def build(self) -> Grid1D:
        return Grid1D.uniform(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class ComponentConfig:
    label: str
    mu: float
    nu: float
    phase: float
    grid: GridSpec
    source: str = "numeric"
    substeps: int = 1
    solve_energy: float | None = None
    seeds: tuple[tuple[float, float], tuple[float, float]] = ((1.0, 0.0), (0.0, 1.0))


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "out"
    fmt: str = "csv"


@dataclass(frozen=True)
class RunConfig:
    symmetry: SymmetryClass
    constants: PhysConstants
    quantum_numbers: QuantumNumbers
    potential: PotentialSpec | None
    axis_potentials: dict[str, PotentialSpec]
    components: dict[str, ComponentConfig]
    tolerance: float
    hbar_scan: tuple[float, ...]
    probe_per_coordinate: int
    output: OutputConfig = field(default_factory=OutputConfig)

    @property
    def has_full_set(self) -> bool:
        return set(self.components) == set(self.symmetry.coordinate_labels)


def potential_from_mapping(mapping, path: str) -> PotentialSpec:
    m = _expect_mapping(mapping, path)
    kind = _get(m, "kind", path)
    if kind == "zero":
        return ZeroPotential()
    if kind == "harmonic":
        return HarmonicPotential(omega=_number(_get(m, "omega", path), f"{path}.omega"))
    if kind == "coulomb":
        return CoulombPotential(strength=_number(_get(m, "strength", path), f"{path}.strength"))
    if kind == "power":
        return PowerLawPotential(
            coefficient=_number(_get(m, "coefficient", path), f"{path}.coefficient"),
            exponent=_number(_get(m, "exponent", path), f"{path}.exponent"),
        )
    if kind == "tabulated":
        pts = _get(m, "points", path)
        vals = _get(m, "values", path)
        try:
            return TabulatedPotential(pts, vals)
        except ValueError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    raise ConfigError(
        f"{path}.kind: unknown potential kind {kind!r} "
        "(expected zero, harmonic, coulomb, power or tabulated)"
    )


def _grid_spec(mapping, path: str, label: str) -> GridSpec:
    m = _expect_mapping(mapping, path)
    lo = _number(_get(m, "min", path), f"{path}.min")
    hi = _number(_get(m, "max", path), f"{path}.max")
    count = _integer(_get(m, "count", path), f"{path}.count")
    if lo >= hi:
        raise ConfigError(f"{path}: min must be < max, got [{lo}, {hi}]")
    if count < 9:
        raise ConfigError(f"{path}.count: need at least 9 grid points, got {count}")
    if label in _RADIAL_LABELS and lo <= 0.0:
        raise ConfigError(
            f"{path}.min: radial coordinate {label!r} requires min > 0, got {lo}"
        )
    if label == "theta" and not (0.0 < lo and hi < np.pi):
        raise ConfigError(
            f"{path}: polar grid must lie strictly inside (0, pi), got [{lo}, {hi}]"
        )
    return GridSpec(lo, hi, count)


def _component_config(label: str, mapping, path: str) -> ComponentConfig:
    m = _expect_mapping(mapping, path)
    mu = _number(_get(m, "mu", path), f"{path}.mu")
    nu = _number(_get(m, "nu", path), f"{path}.nu")
    if mu * nu == 1.0:
        raise ConfigError(f"{path}: mu*nu = 1 is a degenerate mixing")
    phase = _number(_get(m, "phase", path, required=False, default=0.0), f"{path}.phase")
    grid = _grid_spec(_get(m, "grid", path), f"{path}.grid", label)
    source = _get(m, "source", path, required=False, default="numeric")
    if source not in ("numeric", "analytic"):
        raise ConfigError(f"{path}.source: expected 'numeric' or 'analytic', got {source!r}")
    substeps = _integer(_get(m, "substeps", path, required=False, default=1), f"{path}.substeps")
    if substeps < 1:
        raise ConfigError(f"{path}.substeps: must be >= 1, got {substeps}")
    solve_energy = _get(m, "solve_energy", path, required=False)
    if solve_energy is not None:
        solve_energy = _number(solve_energy, f"{path}.solve_energy")
    seeds_raw = _get(m, "seeds", path, required=False)
    seeds = ((1.0, 0.0), (0.0, 1.0))
    if seeds_raw is not None:
        try:
            arr = np.asarray(seeds_raw, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{path}.seeds: expected a 2x2 array of numbers") from exc
        if arr.shape != (2, 2) or not np.all(np.isfinite(arr)):
            raise ConfigError(f"{path}.seeds: expected a finite 2x2 array, got shape {arr.shape}")
        if arr[0, 0] * arr[1, 1] - arr[0, 1] * arr[1, 0] == 0.0:
            raise ConfigError(f"{path}.seeds: seed vectors are linearly dependent")
        seeds = ((float(arr[0, 0]), float(arr[0, 1])), (float(arr[1, 0]), float(arr[1, 1])))
    return ComponentConfig(
        label=label,
        mu=mu,
        nu=nu,
        phase=phase,
        grid=grid,
        source=source,
        substeps=substeps,
        solve_energy=solve_energy,
        seeds=seeds,
    )


def parse_config(data: dict, source_name: str = "config") -> RunConfig:
    root = _expect_mapping(data, source_name)

    sym_raw = _get(root, "symmetry", source_name)
    try:
        symmetry = SymmetryClass(sym_raw)
    except ValueError:
        raise ConfigError(
            f"{source_name}.symmetry: unknown symmetry {sym_raw!r} "
            "(expected cartesian, spherical or cylindrical)"
        ) from None

    cmap = _expect_mapping(
        _get(root, "constants", source_name, required=False, default={}), f"{source_name}.constants"
    )
    try:
        constants = PhysConstants(
            hbar=_number(_get(cmap, "hbar", "constants", required=False, default=1.0), "constants.hbar"),
            mass=_number(_get(cmap, "mass", "constants", required=False, default=1.0), "constants.mass"),
        )
    except ValueError as exc:
        raise ConfigError(f"{source_name}.constants: {exc}") from exc
    if constants.hbar == 0.0:
        raise ConfigError(f"{source_name}.constants.hbar: must be positive for a run")

    qmap = _expect_mapping(
        _get(root, "quantum_numbers", source_name, required=False, default={}),
        f"{source_name}.quantum_numbers",
    )
    axis_energies = _expect_mapping(
        _get(qmap, "axis_energies", "quantum_numbers", required=False, default={}),
        "quantum_numbers.axis_energies",
    )
    try:
        quantum_numbers = QuantumNumbers(
            ell=_integer(_get(qmap, "ell", "quantum_numbers", required=False, default=0), "quantum_numbers.ell"),
            m_ell=_integer(_get(qmap, "m_ell", "quantum_numbers", required=False, default=0), "quantum_numbers.m_ell"),
            m_phi=_integer(_get(qmap, "m_phi", "quantum_numbers", required=False, default=0), "quantum_numbers.m_phi"),
            beta=_number(_get(qmap, "beta", "quantum_numbers", required=False, default=0.0), "quantum_numbers.beta"),
            energy=_number(_get(qmap, "energy", "quantum_numbers", required=False, default=0.0), "quantum_numbers.energy"),
            axis_energies={
                str(k): _number(v, f"quantum_numbers.axis_energies.{k}")
                for k, v in axis_energies.items()
            },
        )
    except ValueError as exc:
        raise ConfigError(f"{source_name}.quantum_numbers: {exc}") from exc

    labels = symmetry.coordinate_labels
    potential = None
    axis_potentials: dict[str, PotentialSpec] = {}
    if symmetry is SymmetryClass.CARTESIAN:
        pmap = _expect_mapping(
            _get(root, "potentials", source_name, required=False, default={}),
            f"{source_name}.potentials",
        )
        for key, sub in pmap.items():
            if key not in labels:
                raise ConfigError(f"{source_name}.potentials.{key}: unknown axis (expected x, y, z)")
            axis_potentials[key] = potential_from_mapping(sub, f"potentials.{key}")
    else:
        praw = _get(root, "potential", source_name, required=False)
        potential = (
            potential_from_mapping(praw, "potential") if praw is not None else ZeroPotential()
        )

    comp_map = _expect_mapping(_get(root, "components", source_name), f"{source_name}.components")
    if not comp_map:
        raise ConfigError(f"{source_name}.components: at least one component is required")
    components: dict[str, ComponentConfig] = {}
    for key, sub in comp_map.items():
        if key not in labels:
            raise ConfigError(
                f"{source_name}.components.{key}: not a coordinate of {symmetry.value} "
                f"(expected one of {list(labels)})"
            )
        components[key] = _component_config(key, sub, f"components.{key}")

    if symmetry is SymmetryClass.CARTESIAN:
        for key in components:
            axis_potentials.setdefault(key, ZeroPotential())
            if key not in quantum_numbers.axis_energies:
                raise ConfigError(
                    f"{source_name}.quantum_numbers.axis_energies: missing energy for axis {key!r}"
                )
        if set(components) == set(labels):
            try:
                quantum_numbers.check_axis_energies(labels)
            except ValueError as exc:
                raise ConfigError(f"{source_name}.quantum_numbers: {exc}") from exc

    tolerance = _number(
        _get(root, "tolerance", source_name, required=False, default=1e-6), f"{source_name}.tolerance"
    )
    if tolerance <= 0.0:
        raise ConfigError(f"{source_name}.tolerance: must be positive, got {tolerance}")

    scan_raw = _get(root, "hbar_scan", source_name, required=False)
    if scan_raw is None:
        hbar_scan = DEFAULT_HBAR_SCAN
    else:
        if not isinstance(scan_raw, (list, tuple)):
            raise ConfigError(f"{source_name}.hbar_scan: expected a list of numbers")
        hbar_scan = tuple(
            _number(v, f"{source_name}.hbar_scan[{i}]") for i, v in enumerate(scan_raw)
        )
        if any(v <= 0.0 for v in hbar_scan):
            raise ConfigError(f"{source_name}.hbar_scan: all values must be positive")

    probe = _integer(
        _get(root, "probe_points_per_coordinate", source_name, required=False, default=5),
        f"{source_name}.probe_points_per_coordinate",
    )
    if probe < 2:
        raise ConfigError(f"{source_name}.probe_points_per_coordinate: must be >= 2, got {probe}")

    omap = _expect_mapping(
        _get(root, "output", source_name, required=False, default={}), f"{source_name}.output"
    )
    fmt = _get(omap, "format", "output", required=False, default="csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"{source_name}.output.format: expected 'csv' or 'json', got {fmt!r}")
    output = OutputConfig(
        directory=str(_get(omap, "directory", "output", required=False, default="out")),
        fmt=fmt,
    )

    return RunConfig(
        symmetry=symmetry,
        constants=constants,
        quantum_numbers=quantum_numbers,
        potential=potential,
        axis_potentials=axis_potentials,
        components=components,
        tolerance=tolerance,
        hbar_scan=hbar_scan,
        probe_per_coordinate=probe,
        output=output,
    )


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file {path!r} is not valid YAML: {exc}") from exc
    if data is None:
        raise ConfigError(f"config file {path!r} is empty")
    return parse_config(data, source_name="config")
