"""
Real-space Floquet operator and non-unitary stroboscopic evolution of a
Slater-determinant state.

Sites are flattened as 2*(n-1) + s for unit cell n = 1..L and sublattice
s = 0 (A), 1 (B). An N-fermion Gaussian state is stored as a 2L x N
isometry ``frame`` whose columns are its occupied orbitals. Each period the
frame is multiplied by the single-particle Floquet matrix and re-orthonormalized
by QR, which keeps the many-body state normalized however strongly gain and
loss amplify or suppress individual orbitals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .bloch import ModelParams
from .errors import InvalidArgumentError
from .numerics import exp_two_level, qr_decompose


@dataclass(frozen=True)
class LatticeSpec:
    """L unit cells under periodic boundaries holding N fermions (default N = L)."""

    l_cells: int
    n_fermions: int | None = None

    def __post_init__(self):
        if int(self.l_cells) != self.l_cells or self.l_cells < 2:
            raise InvalidArgumentError(f"need at least 2 unit cells, got {self.l_cells!r}")
        n = self.l_cells if self.n_fermions is None else self.n_fermions
        if int(n) != n or not 1 <= n <= 2 * self.l_cells:
            raise InvalidArgumentError(
                f"filling must satisfy 1 <= N <= 2L = {2 * self.l_cells}, got {n!r}"
            )
        object.__setattr__(self, "n_fermions", int(n))

    @property
    def n_sites(self) -> int:
        return 2 * self.l_cells


def site_index(cell: int, sublattice: str) -> int:
    """0-based flat index of site (cell, sublattice) with cell counted from 1."""
    return 2 * (cell - 1) + {"A": 0, "B": 1}[sublattice]


def _block_diagonal(block: np.ndarray, pairs: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=np.complex128)
    a, b = pairs[:, 0], pairs[:, 1]
    out[a, a] = block[0, 0]
    out[a, b] = block[0, 1]
    out[b, a] = block[1, 0]
    out[b, b] = block[1, 1]
    return out


def half_period_propagators(params: ModelParams, lattice: LatticeSpec) -> tuple[np.ndarray, np.ndarray]:
    """exp(-i H1) and exp(-i H2) as dense 2L x 2L matrices.

    H1 couples (A_n, B_n); H2 couples (B_n, A_{n+1}) with periodic wrap. Within
    a pair the generator is J sx + i g sz in the ordered basis, so the H2 pair
    (B first) carries -i g on its first site.
    """
    L = lattice.l_cells
    cells = np.arange(L)
    intra = np.column_stack([2 * cells, 2 * cells + 1])
    inter = np.column_stack([2 * cells + 1, (2 * cells + 2) % (2 * L)])
    b1 = exp_two_level([params.j1, 0.0, 1j * params.gamma])
    b2 = exp_two_level([params.j2, 0.0, -1j * params.gamma])
    n = lattice.n_sites
    return _block_diagonal(b1, intra, n), _block_diagonal(b2, inter, n)


def real_space_floquet(params: ModelParams, lattice: LatticeSpec) -> np.ndarray:
    """Single-particle Floquet matrix exp(-i H2) exp(-i H1) under PBC."""
    u1, u2 = half_period_propagators(params, lattice)
    return u2 @ u1


def initial_isometry(lattice: LatticeSpec) -> np.ndarray:
    """Charge-density-wave frame: column j occupies B site of cell j.

    For N > L the remaining columns fill A sites from cell 1 onward.
    """
    L, N = lattice.l_cells, lattice.n_fermions
    rows = [2 * j + 1 for j in range(min(N, L))] + [2 * j for j in range(N - L)]
    frame = np.zeros((lattice.n_sites, N), dtype=np.complex128)
    frame[rows, np.arange(N)] = 1.0
    return frame


def evolve_one_period(u: np.ndarray, frame: np.ndarray) -> np.ndarray:
    """Q factor of U @ frame, i.e. the renormalized frame after one period."""
    if u.shape[1] != frame.shape[0]:
        raise InvalidArgumentError(f"shape mismatch {u.shape} @ {frame.shape}")
    q, _ = qr_decompose(u @ frame)
    return q


def correlation(frame: np.ndarray) -> np.ndarray:
    """C_ij = <c_i^dag c_j> = (frame frame^dag)_ji for the state encoded by ``frame``."""
    frame = np.asarray(frame)
    return frame.conj() @ frame.T


def iter_frames(
    params: ModelParams,
    lattice: LatticeSpec,
    n_periods: int,
    frame: np.ndarray | None = None,
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (period, frame) for period = 0..n_periods, starting from the CDW state."""
    u = real_space_floquet(params, lattice)
    frame = initial_isometry(lattice) if frame is None else np.asarray(frame, dtype=np.complex128)
    yield 0, frame
    for period in range(1, n_periods + 1):
        frame = evolve_one_period(u, frame)
        yield period, frame


def stroboscopic_run(
    params: ModelParams,
    lattice: LatticeSpec,
    n_periods: int,
    observers: Iterable[int],
    frame: np.ndarray | None = None,
) -> list[np.ndarray]:
    """Correlation snapshots at the requested periods, in the order requested."""
    if n_periods < 1:
        raise InvalidArgumentError(f"n_periods must be >= 1, got {n_periods!r}")
    observers = [int(p) for p in observers]
    bad = [p for p in observers if not 0 <= p <= n_periods]
    if bad:
        raise InvalidArgumentError(f"observer periods {bad} outside 0..{n_periods}")
    wanted = set(observers)
    snaps = {}
    for period, f in iter_frames(params, lattice, n_periods, frame):
        if period in wanted:
            c = correlation(f)
            c.setflags(write=False)
            snaps[period] = c
    return [snaps[p] for p in observers]
