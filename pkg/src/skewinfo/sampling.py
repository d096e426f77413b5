"""Seeded random states, unitaries and channels for property checks."""

from __future__ import annotations

import numpy as np

from .linalg import dagger, hermitian_eigen, psd_sqrt
from .quantum import DensityMatrix, KrausChannel, UnitaryChannel


def ginibre(d: int, rng: np.random.Generator, cols: int | None = None) -> np.ndarray:
    cols = d if cols is None else cols
    return (rng.normal(size=(d, cols)) + 1j * rng.normal(size=(d, cols))) / np.sqrt(2)


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    g = ginibre(d, rng)
    return 0.5 * (g + dagger(g))


def random_unitary_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(ginibre(d, rng))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_unitary(d: int, rng: np.random.Generator) -> UnitaryChannel:
    return UnitaryChannel("random_unitary", random_unitary_matrix(d, rng))


def random_density_matrix(d: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    g = ginibre(d, rng, cols=rank or d)
    rho = g @ dagger(g)
    return DensityMatrix.from_matrix(rho / np.trace(rho).real)


def random_pure_state(d: int, rng: np.random.Generator) -> DensityMatrix:
    v = ginibre(d, rng, cols=1)[:, 0]
    v /= np.linalg.norm(v)
    return DensityMatrix.from_matrix(np.outer(v, v.conj()))


def random_kraus_ops(d: int, n: int, rng: np.random.Generator) -> list[np.ndarray]:
    """``n`` Kraus operators: ``n - 1`` random fragments, then a completion.

    The fragments are scaled so that ``sum G^dag G < I``; the last operator is
    ``V sqrt(I - sum G^dag G)`` with ``V`` Haar-random.
    """
    if n == 1:
        return [random_unitary_matrix(d, rng)]
    frags = [ginibre(d, rng) for _ in range(n - 1)]
    s = sum(dagger(g) @ g for g in frags)
    top = hermitian_eigen(s).eigenvalues[-1]
    scale = rng.uniform(0.2, 0.95) / top
    frags = [np.sqrt(scale) * g for g in frags]
    rest = np.eye(d) - sum(dagger(g) @ g for g in frags)
    last = random_unitary_matrix(d, rng) @ psd_sqrt(rest)
    return frags + [last]


def random_channel(d: int, n: int, rng: np.random.Generator) -> KrausChannel:
    return KrausChannel(f"random_{d}x{n}", tuple(random_kraus_ops(d, n, rng)))


def mix_kraus(ch: KrausChannel, u: np.ndarray) -> KrausChannel:
    """The equivalent Kraus set ``K'_j = sum_i u[j, i] K_i`` for unitary ``u``."""
    ops = [sum(u[j, i] * k for i, k in enumerate(ch.kraus)) for j in range(ch.n)]
    return KrausChannel(ch.name + "_mixed", tuple(ops))


def random_unital_channel(d: int, n: int, rng: np.random.Generator) -> KrausChannel:
    """A random mixture of ``n`` unitaries, so that ``sum K K^dag = I`` too."""
    p = rng.dirichlet(np.ones(n))
    ops = tuple(np.sqrt(pi) * random_unitary_matrix(d, rng) for pi in p)
    return KrausChannel(f"mixed_unitary_{d}x{n}", ops)
