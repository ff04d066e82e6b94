"""
Bipartite entanglement of the evolved Gaussian state and its scaling laws.

The entropy of a block X follows from the eigenvalues z of the correlation
matrix restricted to X, S = -sum[z ln z + (1 - z) ln(1 - z)]. Steady-state
values are window averages of the stroboscopic trace; the gradient g of
S(L, L/2) versus L separates area-law (g = 0) from volume-law (g > 0) phases.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .bloch import ModelParams
from .dynamics import LatticeSpec, iter_frames
from .errors import FitDegenerateError, InvalidArgumentError, NHFloquetError, SpectrumRangeError, WindowError
from .numerics import hermitian_eigs, linear_least_squares
from .parallel import parallel_map
from .spectral import Axis, axis_cells

ZETA_CLIP = 1e-12
ZETA_RANGE_TOL = 1e-8
G_FLOOR = 0.005
DEFAULT_SIZES = (40, 80, 120, 160)
DEFAULT_PERIODS = 1000
DEFAULT_WINDOW = (800, 1000)


@dataclass(frozen=True)
class SubsystemSpec:
    """Contiguous block of ``length_cells`` unit cells starting at ``start_cell`` (1-based)."""

    length_cells: int
    start_cell: int = 1

    def check(self, l_cells: int) -> None:
        if not 1 <= self.length_cells <= l_cells - 1:
            raise InvalidArgumentError(f"subsystem length must be in 1..{l_cells - 1}, got {self.length_cells}")
        if self.start_cell < 1 or self.start_cell + self.length_cells - 1 > l_cells:
            raise InvalidArgumentError(
                f"subsystem cells {self.start_cell}..{self.start_cell + self.length_cells - 1} exceed L = {l_cells}"
            )

    def sites(self) -> slice:
        first = 2 * (self.start_cell - 1)
        return slice(first, first + 2 * self.length_cells)


def entropy_from_spectrum(zeta) -> float:
    zeta = np.asarray(zeta, dtype=float)
    if zeta.size and (zeta.min() < -ZETA_RANGE_TOL or zeta.max() > 1 + ZETA_RANGE_TOL):
        raise SpectrumRangeError(f"correlation eigenvalues span [{zeta.min():.3e}, {zeta.max():.3e}]")
    # clip only inside the logs: weighting ln(1e-12) by the clipped value itself
    # would add 2.8e-11 per empty mode and break S(l) = S(L - l) at large L
    w = np.clip(zeta, 0.0, 1.0)
    z = np.clip(zeta, ZETA_CLIP, 1 - ZETA_CLIP)
    return float(-np.sum(w * np.log(z) + (1 - w) * np.log1p(-z)))


def entanglement_entropy(c: np.ndarray, sub: SubsystemSpec) -> float:
    """Von Neumann entropy (nats) of the block ``sub`` of the correlation matrix ``c``."""
    l_cells = c.shape[0] // 2
    sub.check(l_cells)
    s = sub.sites()
    return entropy_from_spectrum(hermitian_eigs(c[s, s], hermiticity_tol=1e-8).eigenvalues)


def frame_entropy(frame: np.ndarray, sub: SubsystemSpec) -> float:
    """Same as ``entanglement_entropy(correlation(frame), sub)`` without forming the full matrix."""
    sub.check(frame.shape[0] // 2)
    rows = frame[sub.sites()]
    return entropy_from_spectrum(hermitian_eigs(rows.conj() @ rows.T, hermiticity_tol=1e-8).eigenvalues)


def profile_entropies(frame: np.ndarray) -> np.ndarray:
    """S(l) for l = 1..L-1 with blocks anchored at cell 1."""
    l_cells = frame.shape[0] // 2
    return np.array([frame_entropy(frame, SubsystemSpec(l)) for l in range(1, l_cells)])


@dataclass(frozen=True)
class EntanglementTrace:
    periods: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.periods) != len(self.values):
            raise InvalidArgumentError("periods and values differ in length")


def entanglement_trace(
    params: ModelParams,
    lattice: LatticeSpec,
    n_periods: int,
    sub: SubsystemSpec | None = None,
    first_period: int = 0,
) -> EntanglementTrace:
    """S(lT) for l = first_period..n_periods; the default block is half the chain."""
    sub = sub or SubsystemSpec(lattice.l_cells // 2)
    sub.check(lattice.l_cells)
    periods, values = [], []
    for period, frame in iter_frames(params, lattice, n_periods):
        if period >= first_period:
            periods.append(period)
            values.append(frame_entropy(frame, sub))
    return EntanglementTrace(np.array(periods), np.array(values))


def steady_state_ee(trace: EntanglementTrace, window_start: int, window_end: int) -> tuple[float, float]:
    """Mean and sample standard deviation over periods window_start..window_end inclusive."""
    periods = np.asarray(trace.periods)
    if not window_start < window_end:
        raise WindowError(f"window start {window_start} must precede end {window_end}")
    if window_start not in periods or window_end not in periods:
        raise WindowError(
            f"window {window_start}..{window_end} not covered by trace periods "
            f"{periods.min() if periods.size else None}..{periods.max() if periods.size else None}"
        )
    mask = (periods >= window_start) & (periods <= window_end)
    vals = np.asarray(trace.values)[mask]
    return float(np.mean(vals)), float(np.std(vals, ddof=1))


def _check_window(periods: int, window: tuple[int, int]) -> None:
    start, end = window
    if not 0 <= start < end <= periods:
        raise WindowError(f"window {window} must satisfy 0 <= start < end <= periods = {periods}")


class SizePoint(NamedTuple):
    l_cells: int
    s_mean: float
    s_std: float


def _size_cell(args) -> SizePoint:
    params, L, periods, window = args
    trace = entanglement_trace(params, LatticeSpec(L), window[1], first_period=window[0])
    mean, std = steady_state_ee(trace, *window)
    return SizePoint(L, mean, std)


def ee_vs_system_size(
    params: ModelParams,
    sizes: Sequence[int] = DEFAULT_SIZES,
    periods: int = DEFAULT_PERIODS,
    window: tuple[int, int] = DEFAULT_WINDOW,
    workers: int = 1,
) -> list[SizePoint]:
    """Steady-state S(L, L/2) for each L at half filling."""
    sizes = [int(L) for L in sizes]
    if any(L % 2 for L in sizes):
        raise InvalidArgumentError(f"all sizes must be even, got {sizes}")
    if sizes != sorted(sizes):
        raise InvalidArgumentError(f"sizes must be ascending, got {sizes}")
    _check_window(periods, window)
    return parallel_map(_size_cell, [(params, L, periods, tuple(window)) for L in sizes], workers)


def ee_vs_subsystem(
    params: ModelParams,
    l_cells: int,
    periods: int = DEFAULT_PERIODS,
    window: tuple[int, int] = DEFAULT_WINDOW,
) -> list[tuple[int, float]]:
    """Window-averaged S(L, l) for l = 1..L-1 from a single evolution."""
    if l_cells % 2:
        raise InvalidArgumentError(f"L must be even, got {l_cells}")
    _check_window(periods, window)
    total = np.zeros(l_cells - 1)
    count = 0
    for period, frame in iter_frames(params, LatticeSpec(l_cells), window[1]):
        if period >= window[0]:
            total += profile_entropies(frame)
            count += 1
    return [(l, float(s)) for l, s in zip(range(1, l_cells), total / count)]


@dataclass(frozen=True)
class ScalingFit:
    g: float
    s0: float
    g_stderr: float
    rss: float


@dataclass(frozen=True)
class ProfileFit:
    g0: float
    g1: float
    g2: float
    rss: float


def fit_volume_law(points) -> ScalingFit:
    """Least-squares S = g L + s0 over (L, S_mean) points."""
    pts = [(float(p[0]), float(p[1])) for p in points]
    if len({L for L, _ in pts}) < 3:
        raise FitDegenerateError("volume-law fit needs at least 3 distinct sizes")
    sizes = np.array([L for L, _ in pts])
    coef, rss, stderr = linear_least_squares([sizes, np.ones_like(sizes)], [s for _, s in pts])
    return ScalingFit(g=float(coef[0]), s0=float(coef[1]), g_stderr=float(stderr[0]), rss=rss)


def fit_subsystem_profile(points, l_cells: int) -> ProfileFit:
    """Fit S(l) = g0 sin(pi l/L) + g1 ln sin(pi l/L) + g2 over 2 <= l <= L-2."""
    pts = [(int(l), float(s)) for l, s in points if 2 <= l <= l_cells - 2]
    if len(pts) < 4:
        raise FitDegenerateError(f"profile fit needs >= 4 points with 2 <= l <= L-2, got {len(pts)}")
    x = np.sin(np.pi * np.array([l for l, _ in pts]) / l_cells)
    coef, rss, _ = linear_least_squares([x, np.log(x), np.ones_like(x)], [s for _, s in pts])
    return ProfileFit(*(float(c) for c in coef), rss=rss)


class EntanglementPhase(str, enum.Enum):
    AREA_LAW = "AREA_LAW"
    VOLUME_LAW = "VOLUME_LAW"


def classify_entanglement(fit: ScalingFit, g_floor: float = G_FLOOR) -> EntanglementPhase:
    """Area law unless g clears both the absolute floor and three standard errors."""
    if fit.g < max(g_floor, 3 * fit.g_stderr):
        return EntanglementPhase.AREA_LAW
    return EntanglementPhase.VOLUME_LAW


FAILED = "FAILED"


class EntanglementCell(NamedTuple):
    values: tuple[float, ...]
    g: float
    label: str


def _diagram_cell(args) -> tuple[float, str]:
    params, sizes, periods, window = args
    try:
        points = ee_vs_system_size(params, sizes, periods, window)
        fit = fit_volume_law([(p.l_cells, p.s_mean) for p in points])
    except NHFloquetError:
        return math.nan, FAILED
    return fit.g, classify_entanglement(fit).value


def sweep_entanglement_diagram(
    axis1: Axis,
    axis2: Axis | None,
    fixed: ModelParams,
    sizes: Sequence[int] = DEFAULT_SIZES,
    periods: int = DEFAULT_PERIODS,
    window: tuple[int, int] = DEFAULT_WINDOW,
    workers: int = 1,
) -> list[EntanglementCell]:
    """Gradient g and phase label for each cell; failed cells are kept with label FAILED."""
    cells = axis_cells(axis1, axis2, fixed)
    _check_window(periods, window)
    args = [(p, tuple(sizes), periods, tuple(window)) for _, p in cells]
    results = parallel_map(_diagram_cell, args, workers)
    return [EntanglementCell(v, g, label) for (v, _), (g, label) in zip(cells, results)]
