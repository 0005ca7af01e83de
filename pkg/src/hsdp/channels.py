"""Density operators, Kraus channels, Choi operators and classical kernels."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadParameter,
    BadTrace,
    DimensionMismatch,
    KrausExplosion,
    NoFixedPointFound,
    NonUniqueFixedPoint,
    NotDistribution,
    NotPSD,
    NotTracePreserving,
)
from .linalg import EIG_TOL, HERMITICITY_TOL, check_hermitian, eigvalsh, positive_projector

TRACE_TOL = 1e-10
TP_TOL = 1e-9
STOCHASTIC_TOL = 1e-12
KRAUS_CAP = 4096
FIXED_POINT_GAP = 1e-8


def validate_density(
    m, herm_tol: float = HERMITICITY_TOL, eig_tol: float = EIG_TOL, method: str = "jacobi"
) -> np.ndarray:
    """Check that ``m`` is a density operator and return it as a Hermitian array.

    Raises NonHermitian, NotPSD (min eigenvalue below ``-eig_tol``) or
    BadTrace (``|Tr - 1| > 1e-10``).
    """
    h = check_hermitian(m, herm_tol)
    tr = float(np.trace(h).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise BadTrace(f"trace is {tr!r}, expected 1")
    lmin = float(eigvalsh(h, herm_tol, method=method)[0])
    if lmin < -eig_tol:
        raise NotPSD(f"minimum eigenvalue {lmin:.3e} is below -{eig_tol:.1e}")
    return h


def pure_state(vector) -> np.ndarray:
    """``|psi><psi|`` for a unit vector (normalization checked to 1e-10)."""
    v = np.asarray(vector, dtype=np.complex128).reshape(-1)
    n = float(np.linalg.norm(v))
    if abs(n - 1.0) > 1e-10:
        raise BadParameter(f"state vector has norm {n!r}, expected 1")
    return np.outer(v, v.conj())


def basis_state(d: int, i: int) -> np.ndarray:
    rho = np.zeros((d, d), dtype=np.complex128)
    rho[i, i] = 1.0
    return rho


def maximally_mixed(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.complex128) / d


@dataclass(frozen=True)
class QuantumChannel:
    """A CPTP map given by Kraus operators, stacked as ``(r, d_out, d_in)``.

    Trace preservation is checked at construction to 1e-9.
    """

    kraus: np.ndarray = field(repr=False)

    def __post_init__(self):
        k = np.array(self.kraus, dtype=np.complex128)
        if k.ndim == 2:
            k = k[None]
        if k.ndim != 3 or k.shape[0] == 0 or 0 in k.shape:
            raise DimensionMismatch(f"Kraus stack must be (r, d_out, d_in), got {k.shape}")
        if not np.all(np.isfinite(k)):
            raise BadParameter("Kraus operators have non-finite entries")
        gram = np.einsum("kji,kjl->il", k.conj(), k)
        defect = float(np.max(np.abs(gram - np.eye(k.shape[2]))))
        if defect > TP_TOL:
            raise NotTracePreserving(f"||sum K^dagger K - I||_max = {defect:.3e}")
        k.setflags(write=False)
        object.__setattr__(self, "kraus", k)

    @property
    def d_in(self) -> int:
        return self.kraus.shape[2]

    @property
    def d_out(self) -> int:
        return self.kraus.shape[1]

    @property
    def rank(self) -> int:
        return self.kraus.shape[0]

    def __call__(self, rho) -> np.ndarray:
        return apply_channel(self, rho, validate=False)

    def adjoint(self, m) -> np.ndarray:
        """Heisenberg-picture action ``sum K^dagger M K``."""
        m = np.asarray(m, dtype=np.complex128)
        return np.einsum("kji,jl,klm->im", self.kraus.conj(), m, self.kraus)

    def __repr__(self) -> str:
        return f"QuantumChannel(d_in={self.d_in}, d_out={self.d_out}, rank={self.rank})"


def _apply(kraus: np.ndarray, rho: np.ndarray) -> np.ndarray:
    out = np.einsum("kij,jl,kml->im", kraus, rho, kraus.conj())
    return 0.5 * (out + out.conj().T)


def apply_channel(channel: QuantumChannel, rho, validate: bool = True) -> np.ndarray:
    """``sum_i K_i rho K_i^dagger``.

    With ``validate`` the input and output are checked as density operators;
    without it any square matrix of the right size is accepted (linear action).
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (channel.d_in, channel.d_in):
        raise DimensionMismatch(f"channel expects {channel.d_in}x{channel.d_in} input, got {rho.shape}")
    if validate:
        rho = validate_density(rho)
    out = _apply(channel.kraus, rho)
    if validate:
        out = validate_density(out)
    return out


def identity_channel(d: int) -> QuantumChannel:
    return QuantumChannel(np.eye(d, dtype=np.complex128)[None])


def unitary_channel(u) -> QuantumChannel:
    return QuantumChannel(np.asarray(u, dtype=np.complex128)[None])


def replacer_channel(d_in: int, state) -> QuantumChannel:
    """The constant channel ``rho -> state``."""
    tau = validate_density(state)
    w, v = np.linalg.eigh(tau)
    kraus = [
        np.sqrt(wk) * np.outer(v[:, k], np.eye(d_in)[i])
        for k, wk in enumerate(w)
        if wk > 0
        for i in range(d_in)
    ]
    return QuantumChannel(np.array(kraus))


def compose(outer: QuantumChannel, inner: QuantumChannel, cap: int = KRAUS_CAP) -> QuantumChannel:
    """The channel ``outer o inner`` with Kraus set ``{A_j B_i}``."""
    if inner.d_out != outer.d_in:
        raise DimensionMismatch(f"inner output dim {inner.d_out} != outer input dim {outer.d_in}")
    r = outer.rank * inner.rank
    if r > cap:
        raise KrausExplosion(f"composition would have {r} Kraus operators (cap {cap})")
    k = np.einsum("aij,bjl->abil", outer.kraus, inner.kraus).reshape(r, outer.d_out, inner.d_in)
    return QuantumChannel(k)


def iterate(channel: QuantumChannel, n: int, cap: int = KRAUS_CAP) -> QuantumChannel:
    """``N^(n)``, the n-fold self-composition."""
    if n < 1:
        raise BadParameter(f"iteration count must be >= 1, got {n}")
    if channel.d_in != channel.d_out:
        raise DimensionMismatch("only channels with d_in == d_out can be iterated")
    out = channel
    for _ in range(n - 1):
        out = compose(channel, out, cap)
    return out


def apply_iterated(channel: QuantumChannel, rho, n: int) -> np.ndarray:
    """Apply ``channel`` ``n`` times without forming the composed Kraus set."""
    if n < 0:
        raise BadParameter(f"iteration count must be >= 0, got {n}")
    out = np.asarray(rho, dtype=np.complex128)
    for _ in range(n):
        out = apply_channel(channel, out, validate=False)
    return out


def choi(channel: QuantumChannel) -> np.ndarray:
    """Choi operator ``sum_ij |i><j| (x) N(|i><j|)`` on input (x) output."""
    # Row-major vec of K^T puts the input index first.
    vecs = np.transpose(channel.kraus, (0, 2, 1)).reshape(channel.rank, -1)
    g = vecs.T @ vecs.conj()
    return 0.5 * (g + g.conj().T)


def weyl_operators(d: int) -> list[np.ndarray]:
    """The ``d**2`` clock-and-shift unitaries ``X^a Z^b``."""
    omega = np.exp(2j * np.pi / d)
    shift = np.roll(np.eye(d), 1, axis=0)
    clock = np.diag(omega ** np.arange(d))
    return [
        np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
        for a in range(d)
        for b in range(d)
    ]


def depolarizing(d: int, p: float) -> QuantumChannel:
    """``rho -> (1 - p) rho + p I/d`` via Weyl-operator Kraus form."""
    if d < 2:
        raise BadParameter(f"dimension must be >= 2, got {d}")
    if not 0.0 <= p <= 1.0:
        raise BadParameter(f"depolarizing parameter must lie in [0, 1], got {p}")
    ws = weyl_operators(d)
    # Uniform Weyl twirl is the completely depolarizing map.
    weights = [1.0 - p + p / d**2] + [p / d**2] * (d**2 - 1)
    kraus = [np.sqrt(w) * u for w, u in zip(weights, ws) if w > 0]
    return QuantumChannel(np.array(kraus))


def measure_prepare(projector) -> QuantumChannel:
    """Qubit-output channel ``w -> Tr[Mw]|0><0| + (1 - Tr[Mw])|1><1|``."""
    m = check_hermitian(projector)
    d = m.shape[0]
    w, v = np.linalg.eigh(m)
    inside = w > 0.5
    kraus = []
    for col, flag in zip(v.T, inside):
        k = np.zeros((2, d), dtype=np.complex128)
        k[0 if flag else 1] = col.conj()
        kraus.append(k)
    return QuantumChannel(np.array(kraus))


def achievability_channel(gamma_prime: float, rho, sigma, p: float) -> QuantumChannel:
    """Depolarized measure-and-prepare channel built from the pair ``(rho, sigma)``.

    ``M`` projects onto the strictly positive eigenspace of
    ``rho - gamma_prime * sigma`` and is frozen at construction.
    """
    rho = validate_density(rho)
    sigma = validate_density(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"states have shapes {rho.shape} and {sigma.shape}")
    if gamma_prime < 1:
        raise BadParameter(f"gamma' must be >= 1, got {gamma_prime}")
    m = positive_projector(rho - gamma_prime * sigma, cutoff=EIG_TOL)
    return compose(depolarizing(2, p), measure_prepare(m))


def transfer_matrix(channel: QuantumChannel) -> np.ndarray:
    """Superoperator acting on row-major ``vec(rho)``: ``sum K (x) conj(K)``."""
    k = channel.kraus
    return np.einsum("kij,klm->iljm", k, k.conj()).reshape(channel.d_out**2, channel.d_in**2)


def fixed_point(channel: QuantumChannel) -> np.ndarray:
    """The unique density operator with ``N(sigma) = sigma``.

    Raises NonUniqueFixedPoint when the transfer matrix has more than one
    eigenvalue within 1e-8 of 1.
    """
    if channel.d_in != channel.d_out:
        raise DimensionMismatch("fixed points need d_in == d_out")
    d = channel.d_in
    w, v = np.linalg.eig(transfer_matrix(channel))
    dist = np.abs(w - 1.0)
    order = np.argsort(dist)
    if dist[order[0]] > 1e-6:
        raise NoFixedPointFound(f"closest transfer eigenvalue is {w[order[0]]!r}")
    if len(w) > 1 and dist[order[1]] <= FIXED_POINT_GAP:
        raise NonUniqueFixedPoint("eigenvalue 1 of the transfer matrix is degenerate")
    s = v[:, order[0]].reshape(d, d)
    tr = np.trace(s)
    if abs(tr) < 1e-12:
        raise NoFixedPointFound("fixed eigenvector is traceless")
    s = s / tr
    s = 0.5 * (s + s.conj().T)
    try:
        return validate_density(s, eig_tol=1e-8)
    except (NotPSD, BadTrace) as exc:
        raise NoFixedPointFound(str(exc)) from exc


@dataclass(frozen=True)
class ClassicalChannel:
    """Row-stochastic matrix ``W[x, y] = W(y|x)``."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        w = np.array(self.matrix, dtype=float)
        if w.ndim != 2 or 0 in w.shape:
            raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {w.shape}")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise NotDistribution("kernel entries must be finite and non-negative")
        rows = w.sum(axis=1)
        if np.max(np.abs(rows - 1.0)) > STOCHASTIC_TOL:
            raise NotDistribution(f"row sums deviate from 1 by {np.max(np.abs(rows - 1.0)):.3e}")
        w.setflags(write=False)
        object.__setattr__(self, "matrix", w)

    @property
    def n_inputs(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_outputs(self) -> int:
        return self.matrix.shape[1]

    def as_quantum(self) -> QuantumChannel:
        """Embedding with Kraus operators ``sqrt(W(y|x)) |y><x|``."""
        nx, ny = self.matrix.shape
        kraus = []
        for x in range(nx):
            for y in range(ny):
                if self.matrix[x, y] > 0:
                    k = np.zeros((ny, nx), dtype=np.complex128)
                    k[y, x] = np.sqrt(self.matrix[x, y])
                    kraus.append(k)
        return QuantumChannel(np.array(kraus))

    def __repr__(self) -> str:
        return f"ClassicalChannel({self.matrix.tolist()})"


def validate_distribution(p) -> np.ndarray:
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size == 0 or not np.all(np.isfinite(p)) or np.any(p < 0):
        raise NotDistribution("entries must be finite and non-negative")
    if abs(p.sum() - 1.0) > STOCHASTIC_TOL:
        raise NotDistribution(f"entries sum to {p.sum()!r}, expected 1")
    return p


def classical_apply(w: ClassicalChannel, p) -> np.ndarray:
    """Output distribution ``q(y) = sum_x p(x) W(y|x)``."""
    p = validate_distribution(p)
    if p.size != w.n_inputs:
        raise DimensionMismatch(f"kernel has {w.n_inputs} inputs, distribution has {p.size}")
    return p @ w.matrix


def bsc(alpha: float) -> ClassicalChannel:
    """Binary symmetric channel with flip probability ``alpha``."""
    return ClassicalChannel([[1 - alpha, alpha], [alpha, 1 - alpha]])
