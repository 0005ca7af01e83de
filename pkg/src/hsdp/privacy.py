"""Quantum local differential privacy: checks, composition and divergence bounds.

``gamma = e^epsilon`` throughout; logarithms are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .bounds import _ceil
from .channels import QuantumChannel
from .contraction import DEFAULT_ITERS, DEFAULT_RESTARTS, DEFAULT_SEED, ContainmentCertificate, containment_check
from .errors import BadRange, FixedPointNotFullRank


@dataclass(frozen=True)
class PrivacyParams:
    epsilon: float
    delta: float

    def __post_init__(self):
        if not (self.epsilon >= 0 and math.isfinite(self.epsilon)):
            raise BadRange(f"epsilon must be finite and >= 0, got {self.epsilon}")
        if not 0.0 <= self.delta <= 1.0:
            raise BadRange(f"delta must lie in [0, 1], got {self.delta}")

    @property
    def gamma(self) -> float:
        return math.exp(self.epsilon)


@dataclass(frozen=True)
class CompositionResult:
    epsilon_out: float
    delta_out: float
    rule: str  # homogeneous_min, heterogeneous_zeta, eps_delta_power or purification
    raw_ratio: float | None = None


def zeta_eps(eps: float) -> float:
    """``(e^eps - 1)/(e^eps + 1) = tanh(eps/2)``."""
    return math.tanh(0.5 * eps)


def eps_from_zeta(z: float) -> float:
    """Inverse of :func:`zeta_eps`: ``ln((1 + z)/(1 - z))``."""
    if not 0.0 <= z < 1.0:
        raise BadRange(f"zeta must lie in [0, 1), got {z}")
    return 2.0 * math.atanh(z)


def _log_zeta(eps: float) -> float:
    if eps == 0.0:
        return -math.inf
    return math.log(-math.expm1(-eps)) - math.log1p(math.exp(-eps))


def _check_eps(name: str, eps: float, positive: bool = False) -> None:
    ok = eps > 0 if positive else eps >= 0
    if not (ok and math.isfinite(eps)):
        raise BadRange(f"{name} must be finite and {'> 0' if positive else '>= 0'}, got {eps}")


def _check_unit(name: str, x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise BadRange(f"{name} must lie in [0, 1], got {x}")


def qldp_check(
    channel: QuantumChannel,
    eps: float,
    delta: float,
    restarts: int = DEFAULT_RESTARTS,
    iters: int = DEFAULT_ITERS,
    seed: int = DEFAULT_SEED,
) -> ContainmentCertificate:
    """``(eps, delta)``-QLDP is membership in ``B^{e^eps, delta}``."""
    _check_eps("epsilon", eps)
    return containment_check(channel, math.exp(eps), delta, restarts, iters, seed)


def compose_homogeneous(eps: float, n: int, eps_prime: float) -> CompositionResult:
    """``n``-fold chain of ``(eps, 0)`` mechanisms viewed at level ``eps_prime``."""
    _check_eps("epsilon", eps)
    if not 0.0 < eps_prime <= eps:
        raise BadRange(f"need 0 < eps' <= eps, got eps'={eps_prime}, eps={eps}")
    if n < 1:
        raise BadRange(f"n must be >= 1, got {n}")
    gp = math.exp(eps_prime)
    curve = 0.5 * max(zeta_eps(eps) ** n * (gp + 1.0) + 1.0 - gp, 0.0)
    linear = (-math.expm1(eps_prime - eps) / (1.0 + math.exp(-eps))) ** n
    return CompositionResult(eps_prime, min(curve, linear), "homogeneous_min")


def compose_heterogeneous(eps_list: Sequence[float]) -> CompositionResult:
    """Chain of ``(eps_i, 0)`` mechanisms; ``epsilon_out = ln((1 + P)/(1 - P))``, ``P = prod zeta(eps_i)``.

    Evaluated in log space so large ``eps_i`` do not lose precision.
    ``raw_ratio`` is ``(1 + P)/(1 - P)`` itself.
    """
    eps_list = [float(e) for e in eps_list]
    if not eps_list:
        raise BadRange("need at least one mechanism")
    for e in eps_list:
        _check_eps("epsilon_i", e)
    s = sum(_log_zeta(e) for e in eps_list)
    if s == -math.inf:
        return CompositionResult(0.0, 0.0, "heterogeneous_zeta", 1.0)
    eps_out = math.log1p(math.exp(s)) - math.log(-math.expm1(s))
    try:
        raw = math.exp(eps_out)
    except OverflowError:
        raw = math.inf
    return CompositionResult(eps_out, 0.0, "heterogeneous_zeta", raw)


def compose_eps_delta(eps: float, delta: float, n: int, eps_prime: float) -> CompositionResult:
    """``n``-fold chain of ``(eps, delta)`` mechanisms via the linear contraction factor."""
    _check_eps("epsilon", eps)
    _check_eps("epsilon'", eps_prime)
    _check_unit("delta", delta)
    if eps_prime > eps:
        raise BadRange(f"need eps' <= eps, got {eps_prime} > {eps}")
    if n < 1:
        raise BadRange(f"n must be >= 1, got {n}")
    g, gp = math.exp(eps), math.exp(eps_prime)
    factor = ((g - gp) + delta * (gp + 1.0)) / (g + 1.0)
    return CompositionResult(eps_prime, min(factor**n, 1.0), "eps_delta_power")


def purify_delta(eps: float, delta: float, eps_prime: float, lambda_min: float) -> int:
    """Iterations after which an ``(eps, delta)`` mechanism with a full-rank fixed point is ``(eps', 0)``.

    ``lambda_min`` is the smallest eigenvalue of the fixed point.
    """
    if lambda_min <= 0:
        raise FixedPointNotFullRank(f"fixed point has lambda_min = {lambda_min}")
    _check_eps("epsilon", eps, positive=True)
    if not 0.0 < delta < 1.0:
        raise BadRange(f"delta must lie in (0, 1), got {delta}")
    if not 0.0 < eps_prime < eps:
        raise BadRange(f"need 0 < eps' < eps, got eps'={eps_prime}, eps={eps}")
    if lambda_min > 1.0:
        raise BadRange(f"lambda_min must be <= 1, got {lambda_min}")
    f = (math.exp(eps) - 1.0 + 2.0 * delta) / (math.exp(eps) + 1.0)
    args = (math.expm1(eps_prime) * lambda_min / 2.0, lambda_min / 2.0)
    for x in args:
        if not 0.0 < x < 1.0:
            raise BadRange(f"logarithm argument {x} must lie in (0, 1)")
    need = max(math.log(x) / math.log(f) for x in args)
    return max(_ceil(need), 1)


def _check_bound_args(eps, delta, tau, lam):
    _check_eps("epsilon", eps, positive=True)
    _check_unit("delta", delta)
    _check_unit("tau", tau)
    if not 0.0 < lam <= 1.0:
        raise BadRange(f"lambda must lie in (0, 1], got {lam}")


def f_div_privacy_bound(gen, eps: float, delta: float, tau: float, lam: float) -> float:
    """Bound on ``D_f`` between outputs of an ``(eps, delta)``-QLDP channel.

    ``tau`` is the input trace distance and ``lam`` the smallest output eigenvalue
    over all inputs.
    """
    _check_bound_args(eps, delta, tau, lam)
    f = gen.f
    g = math.exp(eps)
    first = (f(g) + g * f(1.0 / g)) / (g - 1.0) * (g - 1.0 + 2.0 * delta) / (g + 1.0) * tau
    second = -(f(g) + f(1.0 / g)) / (g - 1.0) * delta
    x = g + delta / lam
    third = lam * (f(x) - f(g) + x * f(1.0 / x) - x * f(1.0 / g))
    return first + second + third


def re_ldp_bound(eps: float, delta: float, tau: float, lam: float) -> float:
    """Relative-entropy specialization of :func:`f_div_privacy_bound`, in closed form."""
    _check_bound_args(eps, delta, tau, lam)
    g = math.exp(eps)
    x = g + delta / lam
    return (
        eps * (g - 1.0 + 2.0 * delta) / (g + 1.0) * tau
        - eps * (g - 1.0 / g) / (g - 1.0) * delta
        + lam * ((x - 1.0) * math.log(x) + (1.0 - g + (delta / lam) / g) * eps)
    )


def dasgupta_bound(eps: float, delta: float, tau: float, m: float) -> float:
    """Earlier relative-entropy bound for ``(eps, delta)``-LDP, used for comparison.

    ``m`` is supplied by the caller.
    """
    _check_eps("epsilon", eps, positive=True)
    if not 0.0 <= delta < 1.0:
        raise BadRange(f"delta must lie in [0, 1), got {delta}")
    _check_unit("tau", tau)
    if not 0.0 < m <= 1.0:
        raise BadRange(f"m must lie in (0, 1], got {m}")
    g = math.exp(eps)
    lg = -math.log1p(-delta)
    slope = eps * (g - 1.0 + 2.0 * delta) / (g + 1.0) + delta * ((g + delta - 1.0) / g + lg)
    offset = delta * (g / (1.0 - delta) - (1.0 - delta) / g + 4.0 * (eps + lg + 1.0 / m))
    return slope * tau + offset
