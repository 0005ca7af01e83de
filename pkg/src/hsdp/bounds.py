"""Scalar bounds: strong data processing, F-curves, mixing times, reverse Pinsker.

All logarithms are natural. Mixing-time ceilings are clamped at zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import BadRange, ContractionNotStrict, DegenerateInterval, ZeroLambdaMin

UNBOUNDED = math.inf
CEIL_SLACK = 1e-10
LIMIT_EPS = 1e-9
FD_STEP = 1e-6
RANGE_SLACK = 1e-12


def _ceil(x: float) -> int:
    """Ceiling that absorbs rounding noise just above an integer."""
    return math.ceil(x - CEIL_SLACK)


def _unit(name: str, x: float) -> None:
    if not -RANGE_SLACK <= x <= 1.0 + RANGE_SLACK:
        raise BadRange(f"{name} must lie in [0, 1], got {x}")


def _at_least_one(name: str, x: float) -> None:
    if not x >= 1.0 or not math.isfinite(x):
        raise BadRange(f"{name} must be finite and >= 1, got {x}")


def hs_gamma_relation(gamma: float, gamma_prime: float, t: float) -> float:
    """Bound on ``E_gamma'`` from the symmetrized ``E_gamma`` value ``t`` (``gamma >= gamma'``)."""
    _at_least_one("gamma'", gamma_prime)
    if gamma < gamma_prime:
        raise BadRange(f"need gamma >= gamma', got {gamma} < {gamma_prime}")
    _unit("t", t)
    return (gamma - gamma_prime) / (gamma + 1.0) + (gamma_prime + 1.0) / (gamma + 1.0) * t


def zeroing_criterion(gamma: float, gamma_prime: float, lambda_min: float, e_val: float) -> bool:
    """True when ``E_gamma'(rho||sigma) = e_val`` forces ``E_gamma(rho||sigma) = 0``."""
    _at_least_one("gamma'", gamma_prime)
    if gamma < gamma_prime:
        raise BadRange(f"need gamma >= gamma', got {gamma} < {gamma_prime}")
    _unit("lambda_min", lambda_min)
    _unit("e_val", e_val)
    return e_val <= (gamma - gamma_prime) * lambda_min


def dmax_upper_from_hs(gamma: float, e_val: float, lambda_min: float) -> float:
    """``ln(gamma + E_gamma / lambda_min(sigma))``, an upper bound on ``D_max``."""
    _at_least_one("gamma", gamma)
    _unit("e_val", e_val)
    if not lambda_min > 0:
        raise ZeroLambdaMin(f"lambda_min must be > 0, got {lambda_min}")
    return math.log(gamma + e_val / lambda_min)


def linear_sdpi(gamma: float, gamma_prime: float, delta: float) -> float:
    """Contraction factor for ``E_gamma'`` of a channel in ``B^{gamma, delta}``."""
    _at_least_one("gamma", gamma)
    _at_least_one("gamma'", gamma_prime)
    _unit("delta", delta)
    return max(((gamma - gamma_prime) + delta * (gamma_prime + 1.0)) / (gamma + 1.0), delta)


@dataclass(frozen=True)
class SdpiParams:
    gamma: float
    gamma_prime: float
    delta: float
    t: float


def nonlinear_sdpi(gamma: float, gamma_prime: float, delta: float, t: float) -> float:
    """Upper bound on the output ``E_gamma'`` given the input value ``t``.

    ``max{((gamma + 2 delta - 1) t - (gamma' - 1)(1 - delta)) / (gamma + 1), delta t}``.
    """
    _at_least_one("gamma", gamma)
    _at_least_one("gamma'", gamma_prime)
    _unit("delta", delta)
    _unit("t", t)
    first = ((gamma + 2.0 * delta - 1.0) * t - (gamma_prime - 1.0) * (1.0 - delta)) / (gamma + 1.0)
    return max(first, delta * t)


def f_gamma_hetero(gammas: Sequence[float], gamma_prime: float, t: float) -> float:
    """F-curve bound for a chain of channels in ``B^{gamma_i, 0}``."""
    _at_least_one("gamma'", gamma_prime)
    _unit("t", t)
    gammas = [float(g) for g in gammas]
    if not gammas:
        raise BadRange("need at least one channel")
    for g in gammas:
        if g < gamma_prime:
            raise BadRange(f"every gamma_i must be >= gamma' = {gamma_prime}, got {g}")
    prod = math.prod((g - 1.0) / (g + 1.0) for g in gammas)
    return max(t * prod - 0.5 * (gamma_prime - 1.0) * (1.0 - prod), 0.0)


def f_gamma_homog(gamma: float, n: int, gamma_prime: float, t: float) -> float:
    """F-curve bound for ``n`` uses of one channel in ``B^{gamma, 0}``."""
    if n < 1:
        raise BadRange(f"n must be >= 1, got {n}")
    return f_gamma_hetero([gamma] * n, gamma_prime, t)


class HittingTimeParams(NamedTuple):
    """Affine recursion data for chains of channels in ``B^{gamma, delta}``, delta in (0, 1).

    ``k_star`` and ``T_star`` are evaluated at ``t = 1``.
    """

    gamma: float
    gamma_prime: float
    delta: float
    a: float
    b: float
    t_star: float
    k_star: int
    T_star: float


def _phi(a: float, b: float, t: float, k: int) -> float:
    if k == 0:
        return t
    c = b / (1.0 - a)
    return a**k * (t + c) - c


def _k_star(a: float, b: float, t_star: float, t: float) -> int:
    if t <= t_star:
        return 0
    num = t_star * (1.0 - a) + b
    den = t * (1.0 - a) + b
    k = max(math.ceil(math.log(num / den) / math.log(a)), 0)
    while _phi(a, b, t, k) > t_star:
        k += 1
    while k > 0 and _phi(a, b, t, k - 1) <= t_star:
        k -= 1
    return k


def hitting_params(gamma: float, gamma_prime: float, delta: float) -> HittingTimeParams:
    if not 1.0 < gamma_prime < gamma:
        raise BadRange(f"need 1 < gamma' < gamma, got gamma'={gamma_prime}, gamma={gamma}")
    if not 0.0 < delta < 1.0:
        raise BadRange(f"delta must lie in (0, 1), got {delta}")
    a = (gamma + 2.0 * delta - 1.0) / (gamma + 1.0)
    b = (gamma_prime - 1.0) * (1.0 - delta) / (gamma + 1.0)
    t_star = (gamma_prime - 1.0) / (gamma - 1.0)
    k = _k_star(a, b, t_star, 1.0)
    return HittingTimeParams(gamma, gamma_prime, delta, a, b, t_star, k, _phi(a, b, 1.0, k))


def phi_k(hp: HittingTimeParams, t: float, k: int) -> float:
    """``a^k (t + b/(1-a)) - b/(1-a)``; exactly ``t`` at ``k = 0``."""
    if k < 0:
        raise BadRange(f"k must be >= 0, got {k}")
    return _phi(hp.a, hp.b, t, k)


def k_star(hp: HittingTimeParams, t: float) -> int:
    """First ``k >= 0`` with ``phi_k(t) <= t_star``."""
    _unit("t", t)
    return _k_star(hp.a, hp.b, hp.t_star, t)


def g_n(hp: HittingTimeParams, t: float, n: int) -> float:
    """Piecewise bound on the F-curve of an ``n``-fold chain: affine phase then geometric."""
    if n < 1:
        raise BadRange(f"n must be >= 1, got {n}")
    k = k_star(hp, t)
    if n <= k:
        return phi_k(hp, t, n)
    return hp.delta ** (n - k) * phi_k(hp, t, k)


def _mixing_checks(gamma: float, gamma_prime: float, beta: float) -> None:
    if not gamma_prime > 1.0:
        raise BadRange(f"gamma' must be > 1, got {gamma_prime}")
    if gamma < gamma_prime:
        raise BadRange(f"need gamma >= gamma', got {gamma} < {gamma_prime}")
    _unit("beta", beta)


def mixing_time_nonlinear(gamma: float, gamma_prime: float, beta: float) -> int:
    """Mixing-time bound for a channel in ``B^{gamma, 0}``; finite even at ``beta = 0``."""
    _mixing_checks(gamma, gamma_prime, beta)
    num = math.log((gamma_prime + 1.0) / (2.0 * beta + gamma_prime - 1.0))
    den = math.log((gamma + 1.0) / (gamma - 1.0))
    return max(_ceil(num / den), 0)


def mixing_time_linear(gamma: float, gamma_prime: float, delta: float, beta: float) -> float:
    """Mixing-time bound from the linear contraction factor; ``UNBOUNDED`` at ``beta = 0``."""
    _mixing_checks(gamma, gamma_prime, beta)
    _unit("delta", delta)
    rate = (gamma - gamma_prime + (1.0 + gamma_prime) * delta) / (gamma + 1.0)
    if rate <= 0.0:
        return 1
    if rate >= 1.0:
        raise ContractionNotStrict(f"per-step factor {rate} is not below 1")
    if beta == 0.0:
        return UNBOUNDED
    return max(_ceil(math.log(1.0 / beta) / math.log(1.0 / rate)), 0)


def mixing_time_delta(gamma: float, gamma_prime: float, delta: float, beta: float) -> int:
    """Mixing-time bound for ``B^{gamma, delta}``, delta in (0, 1), via the hitting time at t = 1."""
    hp = hitting_params(gamma, gamma_prime, delta)
    if not 0.0 < beta < 1.0:
        raise BadRange(f"beta must lie in (0, 1), got {beta}")
    tail = _ceil(math.log(beta / hp.T_star) / math.log(delta))
    return hp.k_star + max(tail, 0)


def zeta(x: float) -> float:
    """``(x - 1)/(x + 1)``."""
    return (x - 1.0) / (x + 1.0)


class FullRankMixing(NamedTuple):
    steps: int
    hypothesis: str  # "plus" when (gamma'+1) lambda_min <= 1, else "minus"


def mixing_time_full_rank(a: float, gamma_prime: float, lambda_min: float) -> FullRankMixing:
    """Steps until ``E_gamma'`` to a full-rank fixed point reaches zero.

    ``a`` is the largest ``D_max`` between channel outputs and ``lambda_min``
    the smallest eigenvalue of the fixed point.
    """
    if not (a > 0 and math.isfinite(a)):
        raise BadRange(f"a must be positive and finite, got {a}")
    if not lambda_min > 0:
        raise BadRange(f"lambda_min must be > 0, got {lambda_min}")
    if not gamma_prime >= 1.0:
        raise BadRange(f"gamma' must be >= 1, got {gamma_prime}")
    arg = (gamma_prime - 1.0) * lambda_min
    if not 0.0 < arg < 1.0:
        raise BadRange(f"(gamma' - 1) * lambda_min = {arg} must lie in (0, 1)")
    steps = max(_ceil(math.log(arg) / math.log(zeta(math.exp(a)))), 0)
    hyp = "plus" if (gamma_prime + 1.0) * lambda_min <= 1.0 else "minus"
    return FullRankMixing(steps, hyp)


def hs_convexity_bound(gamma: float, gamma1: float, gamma2: float, e1: float, e2: float) -> float:
    """Chord through ``(gamma1, e1)`` and ``(gamma2, e2)`` evaluated at ``gamma``."""
    if not 1.0 <= gamma1 <= gamma <= gamma2:
        raise BadRange(f"need 1 <= gamma1 <= gamma <= gamma2, got {gamma1}, {gamma}, {gamma2}")
    _unit("e1", e1)
    _unit("e2", e2)
    if gamma1 == gamma2:
        if gamma != gamma1:
            raise DegenerateInterval("zero-width interval")
        return e1
    return (gamma - gamma2) / (gamma1 - gamma2) * e1 + (gamma1 - gamma) / (gamma1 - gamma2) * e2


def _deriv(f, x: float) -> float:
    h = FD_STEP * max(1.0, abs(x))
    if x - h <= 0:
        return (f(x + h) - f(x)) / h
    return (f(x + h) - f(x - h)) / (2.0 * h)


def _slope_at_inf(gen) -> float:
    """``lim f(x)/x`` as ``x -> inf``."""
    if gen.infinite_at_inf:
        return math.inf
    x = 1e12
    return gen.f(x) / x


def _f_at_zero(gen) -> float:
    if gen.infinite_at_zero:
        return math.inf
    return gen.f(0.0)


def _upper_chord(gen, g1: float, a: float, d1: float) -> float:
    """``d1 (f(e^a) - f(g1)) / (e^a - g1)`` with its limits."""
    if d1 == 0.0:
        return 0.0
    if math.isinf(a):
        return d1 * _slope_at_inf(gen)
    ea = math.exp(a)
    if abs(ea - g1) < LIMIT_EPS:
        return d1 * _deriv(gen.f, g1)
    return d1 * (gen.f(ea) - gen.f(g1)) / (ea - g1)


def _lower_chord(gen, g2: float, b: float, d2: float) -> float:
    """``e^b d2 (f(e^-b) - f(1/g2)) / (e^b - g2)`` with its limits."""
    if d2 == 0.0:
        return 0.0
    if math.isinf(b):
        return d2 * (_f_at_zero(gen) - gen.f(1.0 / g2))
    eb = math.exp(b)
    if abs(eb - g2) < LIMIT_EPS:
        return -d2 * _deriv(gen.f, 1.0 / g2) / g2
    return eb * d2 * (gen.f(1.0 / eb) - gen.f(1.0 / g2)) / (eb - g2)


def reverse_pinsker_general(gen, gamma1, gamma2, delta1, delta2, tau, a, b) -> float:
    """Upper bound on ``D_f(rho||sigma)`` from hockey-stick constraints.

    Hypotheses: ``E_gamma1(rho||sigma) <= delta1``, ``E_gamma2(sigma||rho) <= delta2``,
    ``E_1(rho||sigma) <= tau``, ``a = D_max(rho||sigma)``, ``b = D_max(sigma||rho)``.
    Removable singularities are replaced by their limits.
    """
    _at_least_one("gamma1", gamma1)
    _at_least_one("gamma2", gamma2)
    for name, v in (("delta1", delta1), ("delta2", delta2), ("tau", tau)):
        _unit(name, v)
    if a < math.log(gamma1) - RANGE_SLACK or b < math.log(gamma2) - RANGE_SLACK:
        raise BadRange("need a >= ln gamma1 and b >= ln gamma2")
    f = gen.f
    if abs(gamma1 - 1.0) < LIMIT_EPS:
        t1 = _deriv(f, 1.0) * (tau - delta1)
    else:
        t1 = f(gamma1) * (tau - delta1) / (gamma1 - 1.0)
    if abs(gamma2 - 1.0) < LIMIT_EPS:
        t3 = -_deriv(f, 1.0) * (tau - delta2)
    else:
        t3 = f(1.0 / gamma2) * (gamma2 * tau - delta2) / (gamma2 - 1.0)
    return t1 + _upper_chord(gen, gamma1, a, delta1) + t3 + _lower_chord(gen, gamma2, b, delta2)


def reverse_pinsker_sym(gen, gamma: float, delta: float, a: float, b: float) -> float:
    """Bound on ``D_f`` when both ``E_gamma(rho||sigma)`` and ``E_gamma(sigma||rho)`` are at most ``delta``."""
    _at_least_one("gamma", gamma)
    _unit("delta", delta)
    if a < math.log(gamma) - RANGE_SLACK or b < math.log(gamma) - RANGE_SLACK:
        raise BadRange("need e^a >= gamma and e^b >= gamma")
    f = gen.f
    base = ((gamma + delta) * f(1.0 / gamma) + (1.0 - delta) * f(gamma)) / (gamma + 1.0)
    return base + _lower_chord(gen, gamma, b, delta) + _upper_chord(gen, gamma, a, delta)


@dataclass(frozen=True)
class TightnessReport:
    gamma: float
    gamma_prime: float
    delta: float
    t: float
    channel_value: float
    bound: float
    gap: float
    passed: bool
    in_regime: bool
    stated_regime: bool


def equality_regime(gamma: float, gamma_prime: float, delta: float, t: float) -> bool:
    """Where the achievability channel meets the nonlinear bound.

    Its value is ``max(first branch, 0)`` while the bound is
    ``max(first branch, delta t)``; they coincide iff ``delta = 0`` or the
    first branch dominates, i.e. ``t >= (gamma' - 1)/(gamma - 1)``.
    """
    if delta == 0.0 or gamma_prime == 1.0:
        return True
    if gamma <= 1.0:
        return False
    return t >= (gamma_prime - 1.0) / (gamma - 1.0) - 1e-12


def tightness_check(gamma, gamma_prime, delta, rho, sigma, tol: float = 1e-9) -> TightnessReport:
    """Compare the achievability channel's output divergence with ``nonlinear_sdpi``.

    The channel uses depolarizing noise ``p = 2(1 - delta)/(gamma + 1)``, which
    places it in ``B^{gamma, delta}``. ``passed`` is binding only when
    ``in_regime`` holds.
    """
    from .channels import achievability_channel, apply_channel
    from .divergences import hs_divergence

    _at_least_one("gamma", gamma)
    _at_least_one("gamma'", gamma_prime)
    _unit("delta", delta)
    t = hs_divergence(rho, sigma, gamma_prime)
    p = 2.0 * (1.0 - delta) / (gamma + 1.0)
    ch = achievability_channel(gamma_prime, rho, sigma, p)
    value = hs_divergence(apply_channel(ch, rho), apply_channel(ch, sigma), gamma_prime)
    bound = nonlinear_sdpi(gamma, gamma_prime, delta, min(t, 1.0))
    gap = abs(bound - value)
    stated = delta == 0.0 or t >= (gamma_prime - 1.0) / (gamma + 1.0)
    return TightnessReport(
        gamma, gamma_prime, delta, t, value, bound, gap, gap <= tol,
        equality_regime(gamma, gamma_prime, delta, t), stated,
    )


def states_with_divergence(t: float, gamma_prime: float) -> tuple[np.ndarray, np.ndarray]:
    """Commuting qubit pair with ``E_gamma'(rho||sigma) = t``: ``rho = |0><0|``, ``sigma = diag(s, 1-s)``."""
    _unit("t", t)
    _at_least_one("gamma'", gamma_prime)
    s = (1.0 - t) / gamma_prime
    return np.diag([1.0, 0.0]).astype(complex), np.diag([s, 1.0 - s]).astype(complex)
