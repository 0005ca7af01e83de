"""Contraction coefficients of the hockey-stick divergence and ball membership."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .channels import ClassicalChannel, QuantumChannel, choi
from .divergences import hs_classical, hs_divergence
from .errors import BadParameter, TooFewInputs
from .linalg import EIG_TOL, min_eigenvalue

DEFAULT_RESTARTS = 64
DEFAULT_ITERS = 200
DEFAULT_SEED = 0
CERT_SLACK = 1e-9
DOEBLIN_SLACK = 1e-10
POLISH_DECAY = 0.7
POLISH_ROUNDS = 8
POLISH_SWEEPS = 50
DEPOLARIZING_TOL = 1e-9


@dataclass(frozen=True)
class ContractionEstimate:
    """Bracket ``lower_bound <= eta_gamma <= upper_bound``.

    ``witness`` holds the orthonormal input vectors attaining ``lower_bound``.
    """

    gamma: float
    lower_bound: float
    upper_bound: float
    witness: tuple[np.ndarray, np.ndarray] | None
    restarts_used: int


@dataclass(frozen=True)
class ContainmentCertificate:
    verdict: str  # certified_in, certified_out or unknown
    # doeblin_choi, depolarizing_exact, gamma_choi, classical_necessary,
    # quantum_rank, estimator_witness or none
    reason: str
    numeric_evidence: float
    estimate: ContractionEstimate | None = None

    @property
    def is_in(self) -> bool:
        return self.verdict == "certified_in"

    @property
    def is_out(self) -> bool:
        return self.verdict == "certified_out"


def _check_gamma(gamma: float) -> None:
    if not gamma >= 1.0 or not np.isfinite(gamma):
        raise BadParameter(f"gamma must be finite and >= 1, got {gamma}")


def eta_classical_exact(w: ClassicalChannel, gamma: float) -> float:
    """Exact ``eta_gamma`` of a classical kernel: worst ordered pair of rows."""
    _check_gamma(gamma)
    if w.n_inputs < 2:
        raise TooFewInputs("a kernel needs at least two inputs")
    m = w.matrix
    return max(hs_classical(m[x], m[xp], gamma) for x, xp in permutations(range(w.n_inputs), 2))


def classical_delta_lower_bound(w: ClassicalChannel, gamma: float = 1.0) -> float:
    """``max over W(y|x) = 0 and x' != x of W(y|x')``; zero when no zero entry exists.

    Any ball ``B^{gamma, delta}`` containing ``w`` has ``delta`` at least this value.
    """
    _check_gamma(gamma)
    m = w.matrix
    best = 0.0
    for x, y in zip(*np.nonzero(m == 0.0)):
        others = np.delete(m[:, y], x)
        if others.size:
            best = max(best, float(others.max()))
    return best


def eta_upper_doeblin(channel: QuantumChannel) -> float:
    """``1 - d_out * lambda_min(Choi)`` clamped to ``[0, 1]``; valid for every gamma >= 1."""
    return float(np.clip(1.0 - channel.d_out * min_eigenvalue(choi(channel)), 0.0, 1.0))


def depolarizing_parameter(channel: QuantumChannel, tol: float = DEPOLARIZING_TOL) -> float | None:
    """Flip parameter ``p`` in ``[0, 1]`` if the channel acts as ``(1 - p) rho + p I/d``, else None.

    Decided entrywise on the Choi operator within ``tol``.
    """
    d = channel.d_in
    if channel.d_out != d or d < 2:
        return None
    c = choi(channel)
    p = float(d * c[1, 1].real)
    if not -tol <= p <= 1.0 + tol:
        return None
    p = min(max(p, 0.0), 1.0)
    omega = np.eye(d, dtype=np.complex128).reshape(-1)
    model = (1.0 - p) * np.outer(omega, omega) + (p / d) * np.eye(d * d)
    return p if float(np.abs(c - model).max()) <= tol else None


def eta_depolarizing(d: int, p: float, gamma: float) -> float:
    """Exact ``eta_gamma`` of ``depolarizing(d, p)``: ``((1 - p) - (gamma - 1) p / d)_+``."""
    _check_gamma(gamma)
    return max((1.0 - p) - (gamma - 1.0) * p / d, 0.0)


def _apply(kraus: np.ndarray, rho: np.ndarray) -> np.ndarray:
    out = np.einsum("kij,jl,kml->im", kraus, rho, kraus.conj())
    return 0.5 * (out + out.conj().T)


def _pair_value(kraus: np.ndarray, v1: np.ndarray, v2: np.ndarray, gamma: float) -> float:
    d = _apply(kraus, np.outer(v1, v1.conj())) - gamma * _apply(kraus, np.outer(v2, v2.conj()))
    return float(np.maximum(np.linalg.eigvalsh(d), 0.0).sum())


def _seesaw(kraus, v1, v2, gamma, iters):
    """Alternate the optimal measurement and the optimal orthonormal inputs."""
    best = _pair_value(kraus, v1, v2, gamma)
    for _ in range(iters):
        d = _apply(kraus, np.outer(v1, v1.conj())) - gamma * _apply(kraus, np.outer(v2, v2.conj()))
        w, u = np.linalg.eigh(d)
        proj = u[:, w > 0] @ u[:, w > 0].conj().T
        a = np.einsum("kji,jl,klm->im", kraus.conj(), proj, kraus)
        wa, ua = np.linalg.eigh(0.5 * (a + a.conj().T))
        n1, n2 = ua[:, -1], ua[:, 0]
        val = _pair_value(kraus, n1, n2, gamma)
        if val <= best + 1e-14:
            break
        v1, v2, best = n1, n2, val
    return v1, v2, best


def _orthonormal_pair(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    q, _ = np.linalg.qr(z)
    return q[:, 0], q[:, 1]


def _polish(kraus, v1, v2, gamma, step=0.1):
    """Coordinate perturbation of the pair with a shrinking step; keeps improving moves."""
    z = np.stack([v1, v2], axis=1)
    best = _pair_value(kraus, v1, v2, gamma)
    for _ in range(POLISH_ROUNDS):
        improved, sweeps = True, 0
        while improved and sweeps < POLISH_SWEEPS:
            improved, sweeps = False, sweeps + 1
            for idx in np.ndindex(z.shape):
                for delta in (step, -step, 1j * step, -1j * step):
                    trial = z.copy()
                    trial[idx] += delta
                    t1, t2 = _orthonormal_pair(trial)
                    val = _pair_value(kraus, t1, t2, gamma)
                    if val > best + 1e-15:
                        z, best, improved = np.stack([t1, t2], axis=1), val, True
        step *= POLISH_DECAY
    return z[:, 0], z[:, 1], best


def eta_quantum_lower(
    channel: QuantumChannel | ClassicalChannel,
    gamma: float,
    restarts: int = DEFAULT_RESTARTS,
    iters: int = DEFAULT_ITERS,
    seed: int = DEFAULT_SEED,
) -> ContractionEstimate:
    """Lower bound on ``eta_gamma`` from the best orthonormal input pair found.

    All ordered pairs of computational basis states are scored first, so
    ``restarts=0`` returns the best basis-pair value. Each restart draws a
    random orthonormal pair from the stream ``(seed, i)`` and refines it by
    alternating maximization; the overall best pair is then polished by
    coordinate perturbation. The upper bound comes from the Choi route only.
    """
    if isinstance(channel, ClassicalChannel):
        channel = channel.as_quantum()
    _check_gamma(gamma)
    d = channel.d_in
    if d < 2:
        raise TooFewInputs("orthogonal input pairs need d_in >= 2")
    kraus = channel.kraus
    eye = np.eye(d, dtype=np.complex128)
    best_val, best_pair = -1.0, None
    for i, j in permutations(range(d), 2):
        val = _pair_value(kraus, eye[i], eye[j], gamma)
        if val > best_val:
            best_val, best_pair = val, (eye[i], eye[j])
    for trial in range(max(restarts, 0)):
        rng = np.random.default_rng([seed, trial])
        z = rng.normal(size=(d, 2)) + 1j * rng.normal(size=(d, 2))
        v1, v2, val = _seesaw(kraus, *_orthonormal_pair(z), gamma, iters)
        if val > best_val:
            best_val, best_pair = val, (v1, v2)
    if restarts > 0:
        v1, v2, val = _polish(kraus, *best_pair, gamma)
        if val > best_val:
            best_pair = (v1, v2)
    v1, v2 = best_pair
    lower = hs_divergence(
        _apply(kraus, np.outer(v1, v1.conj())),
        _apply(kraus, np.outer(v2, v2.conj())),
        gamma,
        validate=False,
    )
    upper = min(1.0, eta_upper_doeblin(channel))
    return ContractionEstimate(gamma, float(min(lower, 1.0)), upper, (v1, v2), max(restarts, 0))


def quantum_necessary_bound(channel: QuantumChannel, phi) -> float:
    """``1 - min over rho orthogonal to phi of Tr[Pi_{N(phi)} N(rho)]``.

    Any ball ``B^{gamma, delta}`` containing the channel has ``delta`` at least this.
    """
    phi = np.asarray(phi, dtype=np.complex128)
    phi = phi / np.linalg.norm(phi)
    out = _apply(channel.kraus, np.outer(phi, phi.conj()))
    w, u = np.linalg.eigh(out)
    supp = u[:, w > EIG_TOL]
    proj = supp @ supp.conj().T
    heis = np.einsum("kji,jl,klm->im", channel.kraus.conj(), proj, channel.kraus)
    # Orthonormal basis of the complement of phi.
    q, _ = np.linalg.qr(np.column_stack([phi, np.eye(len(phi))]))
    comp = q[:, 1 : len(phi)]
    restricted = comp.conj().T @ heis @ comp
    return float(np.clip(1.0 - np.linalg.eigvalsh(0.5 * (restricted + restricted.conj().T))[0], 0.0, 1.0))


def _rank_witness(channel: QuantumChannel, restarts: int, seed: int) -> float:
    """Best necessary-condition value over sampled ``phi`` with rank-deficient output.

    Returns 0 unless the image spans the whole output space and some sampled
    ``phi`` has ``rank N(phi) < d_out``.
    """
    full = _apply(channel.kraus, np.eye(channel.d_in) / channel.d_in)
    if np.linalg.eigvalsh(full)[0] <= EIG_TOL:
        return 0.0
    candidates = list(np.eye(channel.d_in, dtype=np.complex128))
    for trial in range(max(restarts, 0)):
        rng = np.random.default_rng([seed, trial, 1])
        v = rng.normal(size=channel.d_in) + 1j * rng.normal(size=channel.d_in)
        candidates.append(v / np.linalg.norm(v))
    best = 0.0
    for phi in candidates:
        out = _apply(channel.kraus, np.outer(phi, phi.conj()))
        if np.linalg.eigvalsh(out)[0] <= EIG_TOL:
            best = max(best, quantum_necessary_bound(channel, phi), np.finfo(float).tiny)
    return best


def containment_check(
    channel: QuantumChannel | ClassicalChannel,
    gamma: float,
    delta: float,
    restarts: int = DEFAULT_RESTARTS,
    iters: int = DEFAULT_ITERS,
    seed: int = DEFAULT_SEED,
) -> ContainmentCertificate:
    """Decide ``N in B^{gamma, delta}`` where a sufficient or necessary rule fires.

    Rules, in order: the classical zero-entry necessary condition (classical
    kernels only); Doeblin/Choi sufficiency; the exact value for channels
    recognized as depolarizing (sufficiency only); an estimator witness above
    ``delta``; the gamma-scaled Choi sufficiency (only once the estimator has
    witnessed ``N not in B^{gamma, 0}``); and for ``delta = 0`` the rank
    condition on sampled pure inputs. Otherwise the verdict is ``unknown``.
    """
    _check_gamma(gamma)
    if not 0.0 <= delta <= 1.0:
        raise BadParameter(f"delta must lie in [0, 1], got {delta}")
    if isinstance(channel, ClassicalChannel):
        nec = classical_delta_lower_bound(channel, gamma)
        if nec > delta + CERT_SLACK:
            return ContainmentCertificate("certified_out", "classical_necessary", nec)
        channel = channel.as_quantum()
    lam = min_eigenvalue(choi(channel))
    doeblin = 1.0 - channel.d_out * lam
    if doeblin <= delta + DOEBLIN_SLACK:
        return ContainmentCertificate("certified_in", "doeblin_choi", doeblin)
    p = depolarizing_parameter(channel)
    if p is not None:
        exact = eta_depolarizing(channel.d_in, p, gamma)
        if exact <= delta + DOEBLIN_SLACK:
            return ContainmentCertificate("certified_in", "depolarizing_exact", exact)
    est = eta_quantum_lower(channel, gamma, restarts, iters, seed)
    if est.lower_bound > delta + CERT_SLACK:
        return ContainmentCertificate("certified_out", "estimator_witness", est.lower_bound, est)
    gamma_rule = 1.0 - gamma * lam
    if est.lower_bound > CERT_SLACK and gamma_rule <= delta + DOEBLIN_SLACK:
        return ContainmentCertificate("certified_in", "gamma_choi", gamma_rule, est)
    if delta == 0.0:
        rank_val = _rank_witness(channel, restarts, seed)
        if rank_val > 0.0:
            return ContainmentCertificate("certified_out", "quantum_rank", rank_val, est)
    return ContainmentCertificate("unknown", "none", est.lower_bound, est)
