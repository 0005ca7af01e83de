"""Seeded random states and channels for tests and property suites."""

from __future__ import annotations

import numpy as np

from .channels import ClassicalChannel, QuantumChannel
from .errors import BadParameter


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def haar_isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Haar-random ``rows x cols`` isometry (``rows >= cols``) via phase-fixed QR."""
    q, r = np.linalg.qr(_ginibre(rng, rows, cols))
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def haar_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    return haar_isometry(rng, d, d)


def random_pure_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_pure_state(rng: np.random.Generator, d: int) -> np.ndarray:
    v = random_pure_vector(rng, d)
    return np.outer(v, v.conj())


def random_density(rng: np.random.Generator, d: int, rank: int | None = None) -> np.ndarray:
    """Induced-measure mixed state of the given rank (full rank by default)."""
    g = _ginibre(rng, d, rank or d)
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def random_channel(
    rng: np.random.Generator, d_in: int, d_out: int | None = None, kraus_rank: int | None = None
) -> QuantumChannel:
    """Stinespring channel from a Haar isometry ``C^{d_in} -> C^{d_out} (x) C^{r}``."""
    d_out = d_out or d_in
    r = kraus_rank or d_in * d_out
    if d_out * r < d_in:
        raise BadParameter(f"Kraus rank {r} is too small to embed dimension {d_in}")
    v = haar_isometry(rng, d_out * r, d_in)
    kraus = v.reshape(d_out, r, d_in).transpose(1, 0, 2)
    return QuantumChannel(kraus)


def random_classical_channel(
    rng: np.random.Generator, n_in: int, n_out: int, sparsity: float = 0.0
) -> ClassicalChannel:
    """Dirichlet rows; each entry is zeroed with probability ``sparsity`` (one kept per row)."""
    w = rng.dirichlet(np.ones(n_out), size=n_in)
    if sparsity > 0:
        mask = rng.random(w.shape) < sparsity
        mask[np.arange(n_in), rng.integers(n_out, size=n_in)] = False
        w = np.where(mask, 0.0, w)
        w /= w.sum(axis=1, keepdims=True)
    return ClassicalChannel(w)


def random_distribution(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.dirichlet(np.ones(n))
