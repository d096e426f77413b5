"""Dense complex linear algebra used by the skew-information code.

Matrices are plain ``numpy.ndarray`` objects with dtype ``complex128``. The
eigensolver is a cyclic complex Jacobi method, which is plenty for the
dimensions involved here (d <= 16) and converges unconditionally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NoConvergence, NotHermitian, NotPSD, ShapeMismatch

MAX_SWEEPS = 100
OFFDIAG_RTOL = 1e-14
HERMITIAN_RTOL = 1e-10
NEG_EIG_TOL = 1e-10
# Eigenvalues below this (relative) are round-off, not spectrum.
ROUNDOFF_FLOOR = 64 * np.finfo(float).eps


def as_matrix(x, *, square: bool = False) -> np.ndarray:
    """Coerce ``x`` to a finite complex 2-D array."""
    m = np.array(x, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ShapeMismatch(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def dagger(x: np.ndarray) -> np.ndarray:
    return np.conj(x).T


def frobenius_norm(x) -> float:
    x = np.asarray(x, dtype=np.complex128)
    return float(np.sqrt(np.vdot(x, x).real))


def _scale(x: np.ndarray) -> float:
    return max(1.0, frobenius_norm(x))


def is_hermitian(a, rtol: float = HERMITIAN_RTOL) -> bool:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return frobenius_norm(a - dagger(a)) <= rtol * _scale(a)


def commutator(x, y) -> np.ndarray:
    """Return ``XY - YX``."""
    x = as_matrix(x, square=True)
    y = as_matrix(y, square=True)
    if x.shape != y.shape:
        raise ShapeMismatch(f"commutator of {x.shape} and {y.shape} matrices")
    return x @ y - y @ x


@dataclass(frozen=True)
class HermitianEigen:
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # columns orthonormal

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)


def hermitian_eigen(a) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Pivots are visited in row-major order ``(0,1), (0,2), ..., (d-2,d-1)``.
    Each rotation first removes the phase of ``a[p, q]`` and then applies a
    real Givens rotation, so the whole sweep is deterministic.

    Raises:
        NotHermitian: if ``a`` deviates from its adjoint beyond 1e-10 (relative).
        NoConvergence: if the off-diagonal mass is still above threshold
            after ``MAX_SWEEPS`` sweeps.
    """
    a = as_matrix(a, square=True)
    if not is_hermitian(a):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    d = a.shape[0]
    w = 0.5 * (a + dagger(a))
    v = np.eye(d, dtype=np.complex128)
    threshold = OFFDIAG_RTOL * frobenius_norm(a)

    def off_norm(m):
        return frobenius_norm(m - np.diag(np.diag(m)))

    for _ in range(MAX_SWEEPS):
        if off_norm(w) <= threshold:
            break
        for p, q in itertools.combinations(range(d), 2):
            apq = w[p, q]
            mag = abs(apq)
            if mag == 0.0:
                continue
            phase = apq / mag
            theta = (w[q, q].real - w[p, p].real) / (2.0 * mag)
            t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.hypot(theta, 1.0))
            c = 1.0 / np.hypot(t, 1.0)
            s = t * c
            rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
            idx = [p, q]
            w[:, idx] = w[:, idx] @ rot
            w[idx, :] = dagger(rot) @ w[idx, :]
            v[:, idx] = v[:, idx] @ rot
            w[p, q] = w[q, p] = 0.0
            w[p, p] = w[p, p].real
            w[q, q] = w[q, q].real
    else:
        if off_norm(w) > threshold:
            raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")

    evals = np.real(np.diag(w)).copy()
    order = np.argsort(evals, kind="stable")
    return HermitianEigen(evals[order], v[:, order])


def psd_sqrt(a) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix.

    Eigenvalues in ``[-1e-10, 0)`` are treated as zero, as are positive ones
    below the round-off floor of the decomposition.

    Raises:
        NotPSD: if an eigenvalue is below -1e-10.
    """
    a = as_matrix(a, square=True)
    eig = hermitian_eigen(a)
    lam = eig.eigenvalues
    if lam[0] < -NEG_EIG_TOL:
        raise NotPSD(f"smallest eigenvalue {lam[0]:.3e} is negative")
    floor = ROUNDOFF_FLOOR * a.shape[0] * _scale(a)
    lam = np.where(lam < floor, 0.0, lam)
    v = eig.eigenvectors
    s = (v * np.sqrt(lam)) @ dagger(v)
    return 0.5 * (s + dagger(s))


@dataclass(frozen=True)
class BlockVector:
    """A column of equally shaped matrices, treated as one vector.

    The inner product is the sum of the blockwise Frobenius inner products.
    """

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(np.asarray(b, dtype=np.complex128) for b in self.blocks)
        if not blocks:
            raise ShapeMismatch("a block vector needs at least one block")
        shape = blocks[0].shape
        if any(b.shape != shape for b in blocks):
            raise ShapeMismatch("blocks of a block vector must share one shape")
        object.__setattr__(self, "blocks", blocks)

    @property
    def shape(self):
        return (len(self.blocks),) + self.blocks[0].shape

    def norm_sq(self) -> float:
        return float(sum(np.vdot(b, b).real for b in self.blocks))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq()))

    def _check(self, other: BlockVector):
        if self.shape != other.shape:
            raise ShapeMismatch(f"block vectors of shape {self.shape} and {other.shape}")

    def __add__(self, other: BlockVector) -> BlockVector:
        self._check(other)
        return BlockVector(tuple(x + y for x, y in zip(self.blocks, other.blocks)))

    def __sub__(self, other: BlockVector) -> BlockVector:
        self._check(other)
        return BlockVector(tuple(x - y for x, y in zip(self.blocks, other.blocks)))

    def __mul__(self, c) -> BlockVector:
        return BlockVector(tuple(c * b for b in self.blocks))

    __rmul__ = __mul__


def _block_sum(a: Sequence[BlockVector]) -> BlockVector:
    total = a[0]
    for x in a[1:]:
        total = total + x
    return total


def _check_family(a: Sequence[BlockVector]) -> None:
    if len(a) < 3:
        raise ValueError("need at least three block vectors")
    shape = a[0].shape
    if any(x.shape != shape for x in a):
        raise ShapeMismatch("block vectors must share one shape")


def block_norm_identity_residuals(a: Sequence[BlockVector]) -> list[tuple[float, float]]:
    """Both sides of the three pair-sum norm identities for the family ``a``.

    Returns ``[(lhs, rhs), ...]`` for

        |sum a|^2 + (N-2) sum |a_s|^2       = sum_{s<t} |a_s + a_t|^2
        N sum |a_s|^2                       = |sum a|^2 + sum_{s<t} |a_s - a_t|^2
        (2N-2) sum |a_s|^2                  = sum_{s<t} |a_s - a_t|^2 + sum_{s<t} |a_s + a_t|^2
    """
    _check_family(a)
    n = len(a)
    sq = sum(x.norm_sq() for x in a)
    total = _block_sum(a).norm_sq()
    pairs = list(itertools.combinations(a, 2))
    plus = sum((x + y).norm_sq() for x, y in pairs)
    minus = sum((x - y).norm_sq() for x, y in pairs)
    return [
        (total + (n - 2) * sq, plus),
        (n * sq, total + minus),
        ((2 * n - 2) * sq, minus + plus),
    ]


def block_norm_identities_check(a: Sequence[BlockVector], rtol: float = 1e-9) -> bool:
    return all(
        abs(lhs - rhs) <= rtol * max(abs(lhs), abs(rhs))
        for lhs, rhs in block_norm_identity_residuals(a)
    )


def hlawka_sides(a: Sequence[BlockVector]) -> tuple[float, float]:
    """``(sum |a_s|, (sum_{s<t} |a_s + a_t| - |sum a|) / (N-2))``."""
    _check_family(a)
    n = len(a)
    lhs = sum(x.norm() for x in a)
    rhs = (sum((x + y).norm() for x, y in itertools.combinations(a, 2)) - _block_sum(a).norm()) / (n - 2)
    return lhs, rhs


def hlawka_holds(a: Sequence[BlockVector], rtol: float = 1e-9) -> bool:
    lhs, rhs = hlawka_sides(a)
    return rhs <= lhs + rtol * max(1.0, lhs)
