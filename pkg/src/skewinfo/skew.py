"""Wigner-Yanase skew information of operators and channels."""

from __future__ import annotations

import numpy as np

from .errors import NotPure, ShapeMismatch
from .linalg import BlockVector, as_matrix, commutator, frobenius_norm
from .quantum import DensityMatrix, KrausChannel, UnitaryChannel

CLAMP_TOL = 1e-12


def _clamp(value: float) -> float:
    if value < 0.0 and value >= -CLAMP_TOL:
        return 0.0
    return value


def _check_dims(rho: DensityMatrix, d: int) -> None:
    if rho.dim != d:
        raise ShapeMismatch(f"operator acts on dim {d}, state has dim {rho.dim}")


def skew_operator(rho: DensityMatrix, a) -> float:
    """``I_rho(A) = |[sqrt(rho), A]|_F^2 / 2``.

    ``A`` may be any square operator of matching size; Kraus operators and
    unitaries are not Hermitian in general.
    """
    a = as_matrix(a, square=True)
    _check_dims(rho, a.shape[0])
    return _clamp(0.5 * frobenius_norm(commutator(rho.sqrt_rho, a)) ** 2)


def commutator_block(rho: DensityMatrix, ch: KrausChannel) -> BlockVector:
    """The stacked commutators ``([sqrt(rho), K_1], ..., [sqrt(rho), K_n])``.

    Half its squared norm is the skew information of the channel.
    """
    _check_dims(rho, ch.dim)
    return BlockVector(tuple(commutator(rho.sqrt_rho, k) for k in ch.kraus))


def skew_channel(rho: DensityMatrix, ch: KrausChannel) -> float:
    _check_dims(rho, ch.dim)
    return _clamp(sum(skew_operator(rho, k) for k in ch.kraus))


def fidelity_pure(psi: DensityMatrix, ch: KrausChannel) -> float:
    """``F = sum_i |<psi|K_i|psi>|^2`` for a pure input state."""
    _check_dims(psi, ch.dim)
    v = psi.state_vector()
    f = sum(abs(np.vdot(v, k @ v)) ** 2 for k in ch.kraus)
    return float(min(max(f, 0.0), 1.0))


def unitary_variance_pure(psi: DensityMatrix, u: UnitaryChannel) -> float:
    """Variance ``<(U U^dag + U^dag U)/2> - <U><U^dag>`` in a pure state."""
    _check_dims(psi, u.dim)
    if not psi.is_pure():
        raise NotPure("variance identity needs a pure state")
    v = psi.state_vector()
    uu = u.u
    sym = 0.5 * (uu @ uu.conj().T + uu.conj().T @ uu)
    mean = np.vdot(v, uu @ v)
    mean_dag = np.vdot(v, uu.conj().T @ v)
    return float((np.vdot(v, sym @ v) - mean * mean_dag).real)
