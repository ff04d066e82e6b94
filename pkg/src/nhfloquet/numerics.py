"""
Dense complex linear-algebra kernels.

Everything here is a pure function of its inputs. The two-level exponential
and the complex arccos are closed-form; QR, Hermitian eigenvalues and linear
least squares wrap LAPACK through numpy and add the conventions and failure
checks the rest of the package depends on.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import (
    DegenerateStateError,
    FitDegenerateError,
    InvalidArgumentError,
    NonHermitianInputError,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

# Below this |E| the ratio sin(E)/E is replaced by its series.
SERIES_CROSSOVER = 1e-8
# QR rank test: smallest |R_ii| must exceed this fraction of the largest.
QR_RANK_RTOL = 1e-13


def _require_finite(*arrays) -> None:
    for a in arrays:
        if not np.all(np.isfinite(a)):
            raise InvalidArgumentError("input contains non-finite entries")


def sinc_complex(e):
    """sin(e)/e for complex e, with the removable singularity at 0 filled in."""
    e = np.asarray(e, dtype=np.complex128)
    small = np.abs(e) < SERIES_CROSSOVER
    safe = np.where(small, 1.0, e)
    return np.where(small, 1.0 - e * e / 6.0, np.sin(safe) / safe)


def pauli_dot(d) -> np.ndarray:
    """d . sigma for d of shape (..., 3); returns shape (..., 2, 2)."""
    d = np.asarray(d, dtype=np.complex128)
    return np.einsum("...i,ijk->...jk", d, PAULI)


def exp_two_level(d) -> np.ndarray:
    """
    Closed-form exp(-i d.sigma) for complex 3-vectors.

    With E the principal square root of d.d (not |d|), the exponential is
    cos(E) I - i sin(E)/E d.sigma. Near E = 0, which happens at exceptional
    points where d.d vanishes without d vanishing, the series
    I - i d.sigma - (d.sigma)^2 / 2 is used instead.

    Parameters
    ----------
    d : array_like, shape (..., 3)
        Complex generator coefficients; leading axes are broadcast.

    Returns
    -------
    numpy.ndarray, shape (..., 2, 2)
    """
    d = np.asarray(d, dtype=np.complex128)
    if d.shape[-1] != 3:
        raise InvalidArgumentError(f"expected trailing dimension 3, got {d.shape}")
    _require_finite(d)
    e2 = np.einsum("...i,...i->...", d, d)
    e = np.sqrt(e2)
    small = np.abs(e) < SERIES_CROSSOVER
    # (d.sigma)^2 = (d.d) I, so the series term is diagonal
    cos_part = np.where(small, 1.0 - e2 / 2.0, np.cos(e))
    ratio = np.where(small, 1.0, np.sin(np.where(small, 1.0, e)) / np.where(small, 1.0, e))
    eye = np.eye(2, dtype=np.complex128)
    return cos_part[..., None, None] * eye - 1j * ratio[..., None, None] * pauli_dot(d)


def complex_arccos(z):
    """
    Principal complex arccos, -i log(z + i sqrt(1 - z^2)), with Re in [0, pi].

    Real arguments outside [-1, 1] land on the +i side of the cut for z > 1
    (so cosh(2) maps to 2i). The log argument is taken from whichever of
    z +/- i sqrt(1 - z^2) has the larger modulus; their product is 1, which
    avoids cancellation when |z| is large.
    """
    z = np.asarray(z, dtype=np.complex128)
    _require_finite(z)
    # adding +0.0 clears negative zeros so the sqrt branch is the textbook one
    w = 1.0 - z * z
    w = np.asarray(w.real + 0.0) + 1j * np.asarray(w.imag + 0.0)
    s = np.sqrt(w)
    plus = z + 1j * s
    minus = z - 1j * s
    arg = np.where(np.abs(plus) >= np.abs(minus), plus, 1.0 / np.where(minus == 0, 1.0, minus))
    out = -1j * np.log(arg)
    # real inputs in [-1, 1] carry only rounding noise in the imaginary part
    inside = (z.imag == 0) & (np.abs(z.real) <= 1.0)
    out = np.where(inside, np.arccos(np.clip(z.real, -1.0, 1.0)) + 0j, out)
    if out.ndim == 0:
        return complex(out)
    return out


def qr_decompose(m) -> tuple[np.ndarray, np.ndarray]:
    """
    Thin QR with a real, nonnegative R diagonal.

    Raises DegenerateStateError when the smallest |R_ii| is below
    1e-13 times the largest, i.e. the columns are numerically dependent.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < m.shape[1]:
        raise InvalidArgumentError(f"QR needs a tall matrix, got shape {m.shape}")
    _require_finite(m)
    q, r = np.linalg.qr(m, mode="reduced")
    diag = np.diagonal(r)
    mags = np.abs(diag)
    if mags.max() == 0.0 or mags.min() <= QR_RANK_RTOL * mags.max():
        raise DegenerateStateError(
            f"rank-deficient matrix in QR (|R_ii| range {mags.min():.3e}..{mags.max():.3e})"
        )
    phase = diag / mags
    q = q * phase
    r = phase.conj()[:, None] * r
    # make the diagonal exactly real
    idx = np.arange(r.shape[0])
    r[idx, idx] = mags
    return q, r


class HermitianSpectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None


def hermitian_eigs(m, hermiticity_tol: float = 1e-10, vectors: bool = False) -> HermitianSpectrum:
    """Ascending eigenvalues of the Hermitian part of ``m`` after a hermiticity check."""
    m = np.asarray(m, dtype=np.complex128)
    _require_finite(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgumentError(f"square matrix required, got {m.shape}")
    violation = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if violation > hermiticity_tol:
        raise NonHermitianInputError(
            f"max |M - M^H| = {violation:.3e} exceeds tolerance {hermiticity_tol:.1e}"
        )
    h = 0.5 * (m + m.conj().T)
    if vectors:
        w, v = np.linalg.eigh(h)
        return HermitianSpectrum(w, v)
    return HermitianSpectrum(np.linalg.eigvalsh(h))


class LeastSquaresResult(NamedTuple):
    coefficients: np.ndarray
    rss: float
    stderr: np.ndarray


def linear_least_squares(basis, targets) -> LeastSquaresResult:
    """
    Ordinary least squares on a list of basis-function evaluations.

    ``basis`` is a sequence of arrays, one per basis function, each holding
    that function evaluated at every sample. Standard errors use the
    unbiased residual variance rss / (n - p); with n == p they are infinite.
    """
    design = np.column_stack([np.asarray(b, dtype=float) for b in basis])
    y = np.asarray(targets, dtype=float)
    _require_finite(design, y)
    n, p = design.shape
    if y.shape != (n,):
        raise InvalidArgumentError(f"targets shape {y.shape} does not match {n} samples")
    if n < p:
        raise FitDegenerateError(f"{n} samples cannot determine {p} coefficients")
    coef, _, rank, sv = np.linalg.lstsq(design, y, rcond=None)
    if rank < p or sv[-1] <= 1e-12 * sv[0]:
        raise FitDegenerateError("design matrix is rank deficient")
    resid = y - design @ coef
    rss = float(resid @ resid)
    dof = n - p
    if dof == 0:
        stderr = np.full(p, np.inf)
    else:
        cov = np.linalg.inv(design.T @ design) * (rss / dof)
        stderr = np.sqrt(np.clip(np.diagonal(cov), 0.0, None))
    return LeastSquaresResult(coef, rss, stderr)
