"""
Momentum-space description of the periodically quenched non-Hermitian SSH chain.

One driving period applies H1 = J1 sx + i g sz for the first half and
H2(k) = J2 cos(k) sx + J2 sin(k) sy + i g sz for the second, so the Bloch
Floquet operator is exp(-i H2(k)) exp(-i H1). All couplings are the
dimensionless half-period products (hopping or gain/loss times T / 2hbar).
Functions taking ``k`` accept scalars or arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NumericalError
from .numerics import SIGMA_X, complex_arccos, exp_two_level, pauli_dot, sinc_complex

# Largest imaginary part of the raw cos E that is treated as rounding noise.
COS_REALITY_TOL = 1e-10


@dataclass(frozen=True)
class ModelParams:
    """Couplings (J1, J2, gamma) of one Floquet protocol; gamma >= 0."""

    j1: float
    j2: float
    gamma: float

    def __post_init__(self):
        for name in ("j1", "j2", "gamma"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidArgumentError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.gamma < 0:
            raise InvalidArgumentError(f"gamma must be >= 0, got {self.gamma!r}")

    def replace(self, **changes) -> "ModelParams":
        fields = {"j1": self.j1, "j2": self.j2, "gamma": self.gamma}
        fields.update(changes)
        return ModelParams(**fields)


def wrap_k(k):
    """Fold quasimomenta into [-pi, pi)."""
    k = np.asarray(k, dtype=float)
    out = np.mod(k + np.pi, 2 * np.pi) - np.pi
    return float(out) if out.ndim == 0 else out


def h1_vector(params: ModelParams, k=0.0) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    d = np.zeros(k.shape + (3,), dtype=np.complex128)
    d[..., 0] = params.j1
    d[..., 2] = 1j * params.gamma
    return d


def h2_vector(params: ModelParams, k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    d = np.empty(k.shape + (3,), dtype=np.complex128)
    d[..., 0] = params.j2 * np.cos(k)
    d[..., 1] = params.j2 * np.sin(k)
    d[..., 2] = 1j * params.gamma
    return d


def bloch_h1(params: ModelParams) -> np.ndarray:
    """First-half Bloch Hamiltonian, J1 sx + i gamma sz (k independent)."""
    return pauli_dot(h1_vector(params))


def bloch_h2(params: ModelParams, k) -> np.ndarray:
    """Second-half Bloch Hamiltonian, J2 (cos k sx + sin k sy) + i gamma sz."""
    return pauli_dot(h2_vector(params, k))


def bloch_floquet(params: ModelParams, k) -> np.ndarray:
    """U(k) = exp(-i H2(k)) exp(-i H1)."""
    u1 = exp_two_level(h1_vector(params, k))
    u2 = exp_two_level(h2_vector(params, k))
    return u2 @ u1


def symmetric_frame_floquet(params: ModelParams, k) -> np.ndarray:
    """exp(-i H1/2) exp(-i H2(k)) exp(-i H1/2), similar to ``bloch_floquet``."""
    half = exp_two_level(0.5 * h1_vector(params, k))
    u2 = exp_two_level(h2_vector(params, k))
    return half @ u2 @ half


def sl2_inverse(u: np.ndarray) -> np.ndarray:
    """Inverse of a unit-determinant 2x2 matrix, i.e. its adjugate.

    Every operator built from traceless generators has det = 1 exactly, and
    the adjugate avoids the cancellation a general inverse suffers when the
    entries are as large as exp(4 gamma).
    """
    inv = np.empty_like(u)
    inv[..., 0, 0] = u[..., 1, 1]
    inv[..., 1, 1] = u[..., 0, 0]
    inv[..., 0, 1] = -u[..., 0, 1]
    inv[..., 1, 0] = -u[..., 1, 0]
    return inv


def pt_violation(u: np.ndarray) -> np.ndarray:
    """max |sx conj(U) sx - U^-1| over the trailing 2x2 axes, for det U = 1."""
    mirrored = SIGMA_X @ np.conj(u) @ SIGMA_X
    return np.max(np.abs(mirrored - sl2_inverse(u)), axis=(-2, -1))


def check_pt_symmetry(params: ModelParams, k):
    """Largest entrywise deviation of the symmetric-frame operator from PT U PT = U^-1."""
    out = pt_violation(symmetric_frame_floquet(params, k))
    return float(out) if out.ndim == 0 else out


def cos_quasienergy_raw(params: ModelParams, k) -> np.ndarray:
    """
    cos E(k) = cos E1 cos E2 - (n1 . n2) sin E1 sin E2 with complex intermediates.

    E1 = sqrt(J1^2 - g^2), E2 = sqrt(J2^2 - g^2). The products n_i sin E_i are
    evaluated as (coupling vector) * sin(E_i)/E_i so exceptional points
    (E_i = 0) carry no 0/0. Both the sqrt branch and the sign of E_i drop out.
    """
    k = np.asarray(k, dtype=float)
    g = params.gamma
    e1 = np.sqrt(complex(params.j1**2 - g * g))
    e2 = np.sqrt(complex(params.j2**2 - g * g))
    # n1 sinE1 . n2 sinE2 = (J1 J2 cos k + (i g)^2) sinc(E1) sinc(E2)
    dot = params.j1 * params.j2 * np.cos(k) - g * g
    return np.cos(e1) * np.cos(e2) - dot * sinc_complex(e1) * sinc_complex(e2)


def cos_quasienergy(params: ModelParams, k):
    """Real cos E(k); raises if the discarded imaginary part is not rounding noise."""
    raw = cos_quasienergy_raw(params, k)
    worst = np.max(np.abs(raw.imag)) if raw.size else 0.0
    if worst > COS_REALITY_TOL:
        raise NumericalError(f"cos E has imaginary part {worst:.3e}")
    out = raw.real
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class QuasienergyPair:
    """The two Floquet bands +/-E at given k (scalars or arrays)."""

    e_plus: complex | np.ndarray
    e_minus: complex | np.ndarray
    cos_e: float | np.ndarray


def quasienergy(params: ModelParams, k) -> QuasienergyPair:
    cos_e = cos_quasienergy(params, k)
    e_plus = complex_arccos(cos_e)
    return QuasienergyPair(e_plus=e_plus, e_minus=-e_plus, cos_e=cos_e)
