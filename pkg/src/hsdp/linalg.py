"""Dense Hermitian linear algebra at desk-scale dimensions.

The eigensolver is a cyclic complex Jacobi method: each rotation zeroes one
off-diagonal pair, sweeps repeat until the off-diagonal mass is at the
rounding floor. Convergence is unconditional and the accuracy is excellent
for the dimensions used here (d <= 64).

Inner loops that need thousands of decompositions (estimator refinement,
quadrature integrands) pass ``method="lapack"`` to use ``numpy.linalg.eigh``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import BadParameter, DimensionMismatch, NoConvergence, NonHermitian

HERMITICITY_TOL = 1e-10
EIG_TOL = 1e-10
MAX_SWEEPS = 64
METHODS = ("jacobi", "lapack")


class Spectrum(NamedTuple):
    """Ascending eigenvalues and the matching orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a square, finite, complex128 array (always a copy)."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise BadParameter("matrix has non-finite entries")
    return a


def hermitian_defect(h: np.ndarray) -> float:
    """Max-norm of ``h - h^dagger``."""
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def check_hermitian(m, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate Hermiticity and return the exactly symmetrized copy."""
    h = as_matrix(m)
    defect = hermitian_defect(h)
    if defect > tol:
        raise NonHermitian(f"||H - H^dagger||_max = {defect:.3e} exceeds {tol:.1e}")
    return 0.5 * (h + h.conj().T)


def _jacobi(a: np.ndarray, want_vectors: bool, max_sweeps: int):
    """In-place cyclic Jacobi on the Hermitian array ``a``.

    Returns the (unsorted) real diagonal and, if requested, the accumulated
    unitary whose columns are eigenvectors.
    """
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128) if want_vectors else None
    if n == 1:
        return a.real.diagonal().copy(), v
    scale = float(np.sqrt(np.sum(np.abs(a) ** 2)))
    if scale == 0.0:
        return np.zeros(n), v
    floor = 1e-15 * scale
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * sum(abs(a[p, q]) ** 2 for p, q in pairs))
        if off <= floor:
            return a.real.diagonal().copy(), v
        for p, q in pairs:
            apq = a[p, q]
            r = abs(apq)
            if r <= 1e-300:
                continue
            phase = apq / r
            app = a[p, p].real
            aqq = a[q, q].real
            theta = (aqq - app) / (2.0 * r)
            t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            # Columns p, q of the rotation: diag(1, conj(phase)) @ [[c, s], [-s, c]].
            g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
            idx = [p, q]
            a[:, idx] = a[:, idx] @ g
            a[idx, :] = g.conj().T @ a[idx, :]
            a[p, q] = a[q, p] = 0.0
            a[p, p] = a[p, p].real
            a[q, q] = a[q, q].real
            if v is not None:
                v[:, idx] = v[:, idx] @ g
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")


def _check_method(method: str) -> None:
    if method not in METHODS:
        raise BadParameter(f"unknown eigensolver {method!r}; expected one of {METHODS}")


def eig_hermitian(
    h, tol: float = HERMITICITY_TOL, max_sweeps: int = MAX_SWEEPS, method: str = "jacobi"
) -> Spectrum:
    """Full eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    h : array_like
        Square matrix; must satisfy ``||h - h^dagger||_max <= tol``.
    tol : float
        Hermiticity tolerance.
    max_sweeps : int
        Iteration cap; exceeding it raises :class:`NoConvergence`.
    method : {"jacobi", "lapack"}
        Hand-written Jacobi (default) or ``numpy.linalg.eigh``.

    Returns
    -------
    Spectrum
        Eigenvalues in ascending order and a unitary whose columns are the
        corresponding eigenvectors. Within a degenerate block the choice of
        basis is arbitrary.
    """
    _check_method(method)
    a = check_hermitian(h, tol)
    if method == "lapack":
        w, v = np.linalg.eigh(a)
        return Spectrum(w, v)
    w, v = _jacobi(a, True, max_sweeps)
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], v[:, order])


def eigvalsh(
    h, tol: float = HERMITICITY_TOL, max_sweeps: int = MAX_SWEEPS, method: str = "jacobi"
) -> np.ndarray:
    """Ascending eigenvalues only (skips eigenvector accumulation)."""
    _check_method(method)
    a = check_hermitian(h, tol)
    if method == "lapack":
        return np.linalg.eigvalsh(a)
    w, _ = _jacobi(a, False, max_sweeps)
    return np.sort(w)


def positive_part(h, tol: float = HERMITICITY_TOL, method: str = "jacobi") -> tuple[np.ndarray, float]:
    """Return ``(P, Tr P)`` with ``P`` the positive part of ``h``."""
    w, v = eig_hermitian(h, tol, method=method)
    keep = w > 0
    wp = np.where(keep, w, 0.0)
    p = (v * wp) @ v.conj().T
    return 0.5 * (p + p.conj().T), float(wp.sum())


def trace_positive(h, tol: float = HERMITICITY_TOL, method: str = "jacobi") -> float:
    """``Tr[(h)_+]``, the sum of the positive eigenvalues."""
    w = eigvalsh(h, tol, method=method)
    return float(w[w > 0].sum())


def min_eigenvalue(h, tol: float = HERMITICITY_TOL, method: str = "jacobi") -> float:
    return float(eigvalsh(h, tol, method=method)[0])


def max_eigenvalue(h, tol: float = HERMITICITY_TOL, method: str = "jacobi") -> float:
    return float(eigvalsh(h, tol, method=method)[-1])


def positive_projector(
    h, tol: float = HERMITICITY_TOL, cutoff: float = 0.0, method: str = "jacobi"
) -> np.ndarray:
    """Projector onto the eigenspace of ``h`` with eigenvalues above ``cutoff``."""
    w, v = eig_hermitian(h, tol, method=method)
    vp = v[:, w > cutoff]
    return vp @ vp.conj().T


def support_projector(
    h, tol: float = HERMITICITY_TOL, threshold: float = EIG_TOL, method: str = "jacobi"
) -> np.ndarray:
    """Projector onto the span of eigenvectors with eigenvalue above ``threshold``."""
    return positive_projector(h, tol, cutoff=threshold, method=method)


def psd_sqrt_pinv(h, threshold: float = EIG_TOL, method: str = "jacobi") -> np.ndarray:
    """``h^{-1/2}`` on the support of a PSD matrix, zero on its kernel."""
    w, v = eig_hermitian(h, method=method)
    inv = np.where(w > threshold, 1.0 / np.sqrt(np.clip(w, threshold, None)), 0.0)
    return (v * inv) @ v.conj().T
