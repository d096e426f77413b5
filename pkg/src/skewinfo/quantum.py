"""States, Kraus channels and unitary channels, plus the preset qubit
channels and the Bloch-vector state family.

Basis convention: ``|0> = (1, 0)^T``, ``|1> = (0, 1)^T``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BlochVectorTooLong,
    NotCPTP,
    NotPSD,
    NotPure,
    NotUnitary,
    ParamOutOfRange,
    ShapeMismatch,
    ValidationError,
)
from .linalg import as_matrix, dagger, frobenius_norm, hermitian_eigen, is_hermitian, psd_sqrt

CPTP_TOL = 1e-8
UNITARY_TOL = 1e-10
TRACE_TOL = 1e-10
PURE_TOL = 1e-9

IDENTITY2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated quantum state with its principal square root cached.

    Build it with :meth:`from_matrix` (or :func:`bloch_state`) rather than
    the raw constructor, which trusts its arguments.
    """

    rho: np.ndarray
    sqrt_rho: np.ndarray
    eigenvalues: np.ndarray = field(repr=False)

    @classmethod
    def from_matrix(cls, m) -> DensityMatrix:
        rho = as_matrix(m, square=True)
        if not is_hermitian(rho):
            raise ValidationError("density matrix is not Hermitian")
        rho = 0.5 * (rho + dagger(rho))
        tr = np.trace(rho).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"density matrix has trace {tr!r}, expected 1")
        try:
            sqrt_rho = psd_sqrt(rho)
        except NotPSD as exc:
            raise ValidationError(str(exc)) from exc
        eig = hermitian_eigen(rho).eigenvalues
        return cls(rho, sqrt_rho, eig)

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    def is_pure(self, tol: float = PURE_TOL) -> bool:
        return abs(self.eigenvalues[-1] - 1.0) <= tol

    def state_vector(self) -> np.ndarray:
        """The ket ``|psi>`` of a pure state (defined up to global phase)."""
        if not self.is_pure():
            raise NotPure(f"largest eigenvalue {self.eigenvalues[-1]:.12g} is not 1")
        return hermitian_eigen(self.rho).eigenvectors[:, -1]


@dataclass(frozen=True, eq=False)
class KrausChannel:
    name: str
    kraus: tuple

    def __post_init__(self):
        ops = tuple(as_matrix(k, square=True) for k in self.kraus)
        if not ops:
            raise ShapeMismatch("a channel needs at least one Kraus operator")
        if any(k.shape != ops[0].shape for k in ops):
            raise ShapeMismatch(f"Kraus operators of channel {self.name!r} differ in shape")
        object.__setattr__(self, "kraus", ops)
        err = completeness_error(ops)
        if err > CPTP_TOL:
            raise NotCPTP(f"channel {self.name!r}: |sum K^dag K - I| = {err:.3e}")

    @property
    def n(self) -> int:
        return len(self.kraus)

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]


@dataclass(frozen=True, eq=False)
class UnitaryChannel:
    name: str
    u: np.ndarray

    def __post_init__(self):
        u = as_matrix(self.u, square=True)
        err = frobenius_norm(dagger(u) @ u - np.eye(u.shape[0]))
        if err > UNITARY_TOL:
            raise NotUnitary(f"{self.name!r}: |U^dag U - I| = {err:.3e}")
        object.__setattr__(self, "u", u)

    @property
    def dim(self) -> int:
        return self.u.shape[0]


def completeness_error(kraus: Sequence[np.ndarray]) -> float:
    d = kraus[0].shape[0]
    total = sum(dagger(k) @ k for k in kraus)
    return frobenius_norm(total - np.eye(d))


def bloch_state(r) -> DensityMatrix:
    """Qubit state ``(I + r . sigma) / 2``."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ShapeMismatch(f"Bloch vector must have 3 components, got {r.shape}")
    if np.linalg.norm(r) > 1 + 1e-12:
        raise BlochVectorTooLong(f"|r| = {np.linalg.norm(r):.15g} > 1")
    rho = 0.5 * (IDENTITY2 + r[0] * SIGMA_X + r[1] * SIGMA_Y + r[2] * SIGMA_Z)
    return DensityMatrix.from_matrix(rho)


def _check_q(q: float) -> float:
    q = float(q)
    if not 0.0 <= q < 1.0:
        raise ParamOutOfRange(f"q must lie in [0, 1), got {q}")
    return q


def phase_damping(q: float) -> KrausChannel:
    q = _check_q(q)
    a1 = np.diag([1.0, np.sqrt(1 - q)]).astype(np.complex128)
    a2 = np.diag([0.0, np.sqrt(q)]).astype(np.complex128)
    return KrausChannel("phase_damping", (a1, a2))


def amplitude_damping(q: float) -> KrausChannel:
    q = _check_q(q)
    b1 = np.diag([1.0, np.sqrt(1 - q)]).astype(np.complex128)
    b2 = np.array([[0.0, np.sqrt(q)], [0.0, 0.0]], dtype=np.complex128)
    return KrausChannel("amplitude_damping", (b1, b2))


def bit_flip(q: float) -> KrausChannel:
    # q is the probability of *no* flip
    q = _check_q(q)
    return KrausChannel("bit_flip", (np.sqrt(q) * IDENTITY2, np.sqrt(1 - q) * SIGMA_X))


PRESETS = {
    "phase_damping": phase_damping,
    "amplitude_damping": amplitude_damping,
    "bit_flip": bit_flip,
}


def pauli_rotation_unitary(axis: str, angle: float) -> UnitaryChannel:
    """``exp(i * angle * sigma_axis)``, evaluated in closed form."""
    try:
        sigma = PAULI[axis]
    except KeyError:
        raise ValueError(f"axis must be one of x, y, z; got {axis!r}") from None
    u = np.cos(angle) * IDENTITY2 + 1j * np.sin(angle) * sigma
    return UnitaryChannel(f"R{axis}({angle:.6g})", u)


def apply_channel(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    if ch.dim != rho.dim:
        raise ShapeMismatch(f"channel acts on dim {ch.dim}, state has dim {rho.dim}")
    out = sum(k @ rho.rho @ dagger(k) for k in ch.kraus)
    return DensityMatrix.from_matrix(out)


def as_kraus(u: UnitaryChannel) -> KrausChannel:
    return KrausChannel(u.name, (u.u,))


def identity_channel(d: int = 2) -> KrausChannel:
    return KrausChannel("identity", (np.eye(d, dtype=np.complex128),))
