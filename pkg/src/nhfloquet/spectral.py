"""
PT-phase diagnostics built on the analytic dispersion.

The real-quasienergy ratio R is the Brillouin-zone fraction where
|cos E(k)| < 1, evaluated on a midpoint grid. Sweeps over a parameter plane
evaluate independent cells and return them in row-major order regardless of
how many worker processes were used.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bloch import ModelParams, cos_quasienergy, quasienergy
from .errors import ConfigError
from .parallel import parallel_map

DEFAULT_N_POINTS = 4096
REALITY_TOL = 1e-9
GAP_TOL = 1e-9
PARAM_NAMES = ("j1", "j2", "gamma")


@dataclass(frozen=True)
class KGrid:
    """Midpoint grid k_m = -pi + (m + 1/2) 2pi/n; avoids k = 0, +-pi for even n."""

    n_points: int = DEFAULT_N_POINTS

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 64:
            raise ConfigError(f"n_points must be an integer >= 64, got {self.n_points!r}")

    @property
    def nodes(self) -> np.ndarray:
        return midpoint_nodes(self.n_points)


def midpoint_nodes(n: int) -> np.ndarray:
    return -np.pi + (np.arange(n) + 0.5) * (2 * np.pi / n)


class PtPhase(str, enum.Enum):
    PT_INVARIANT = "PT_INVARIANT"
    PT_BROKEN = "PT_BROKEN"
    PT_MIXED = "PT_MIXED"


@dataclass(frozen=True)
class PtDiagnostics:
    r_ratio: float
    dissipation_gap: float
    phase: PtPhase


def gap_functions(params: ModelParams, k):
    """(cos E - 1, cos E + 1); zeros mark band touching at E = 0 and E = pi."""
    c = cos_quasienergy(params, k)
    return c - 1.0, c + 1.0


def real_ratio(params: ModelParams, grid: KGrid | None = None, reality_tol: float = REALITY_TOL) -> float:
    """Fraction of grid nodes with real quasienergy; nodes within the tolerance band count 1/2."""
    grid = grid or KGrid()
    mag = np.abs(cos_quasienergy(params, grid.nodes))
    real = np.count_nonzero(mag < 1.0 - reality_tol)
    boundary = np.count_nonzero(np.abs(mag - 1.0) <= reality_tol)
    return (real + 0.5 * boundary) / grid.n_points


def dissipation_gap(params: ModelParams, grid: KGrid | None = None) -> float:
    """min over the grid of |Im E(k)|."""
    grid = grid or KGrid()
    e = quasienergy(params, grid.nodes).e_plus
    return float(np.min(np.abs(np.imag(e))))


def classify_pt(params: ModelParams, grid: KGrid | None = None) -> PtDiagnostics:
    grid = grid or KGrid()
    r = real_ratio(params, grid)
    gap = dissipation_gap(params, grid)
    if r >= 1.0 - 1.0 / grid.n_points:
        phase = PtPhase.PT_INVARIANT
    elif r <= 1.0 / grid.n_points:
        phase = PtPhase.PT_BROKEN
    else:
        phase = PtPhase.PT_MIXED
    return PtDiagnostics(r, gap, phase)


@dataclass(frozen=True)
class Axis:
    """A swept parameter: ``steps`` evenly spaced values from start to stop inclusive."""

    name: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.name not in PARAM_NAMES:
            raise ConfigError(f"axis name must be one of {PARAM_NAMES}, got {self.name!r}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ConfigError(f"axis {self.name} needs steps >= 2, got {self.steps!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ConfigError(f"axis {self.name} has a non-finite endpoint")
        if self.name == "gamma" and min(self.start, self.stop) < 0:
            raise ConfigError("gamma axis must stay >= 0")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.steps))


def axis_cells(axis1: Axis, axis2: Axis | None, fixed: ModelParams) -> list[tuple[tuple[float, ...], ModelParams]]:
    """Row-major list of (axis values, params) over the Cartesian product."""
    if axis2 is not None and axis1.name == axis2.name:
        raise ConfigError(f"sweep axes must differ, both are {axis1.name!r}")
    axes = [axis1] if axis2 is None else [axis1, axis2]
    cells = []
    for combo in itertools.product(*(a.values for a in axes)):
        changes = {a.name: float(v) for a, v in zip(axes, combo)}
        cells.append((tuple(float(v) for v in combo), fixed.replace(**changes)))
    return cells


class PtCell(NamedTuple):
    values: tuple[float, ...]
    r_ratio: float
    dissipation_gap: float
    phase: PtPhase


def _pt_cell(args) -> PtDiagnostics:
    params, n_points = args
    return classify_pt(params, KGrid(n_points))


def sweep_pt_diagram(
    axis1: Axis,
    axis2: Axis | None,
    fixed: ModelParams,
    grid: KGrid | None = None,
    workers: int = 1,
) -> list[PtCell]:
    """R and dissipation gap over a one- or two-parameter grid (row-major)."""
    grid = grid or KGrid()
    cells = axis_cells(axis1, axis2, fixed)
    results = parallel_map(_pt_cell, [(p, grid.n_points) for _, p in cells], workers)
    return [PtCell(v, d.r_ratio, d.dissipation_gap, d.phase) for (v, _), d in zip(cells, results)]
