"""Hockey-stick divergence and the quantities built from it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
import scipy.linalg

from .channels import validate_density
from .errors import BadParameter, DimensionMismatch, Infinite, NotDistribution
from .linalg import EIG_TOL, eigvalsh, psd_sqrt_pinv, support_projector, trace_positive
from .quadrature import integrate

QUAD_TOL = 1e-8
SMOOTH_DMAX_CAP = math.exp(50.0)
SMOOTH_DMAX_ITERS = 200


class DivergenceValue(NamedTuple):
    value: float
    method: str  # closed_form, bisection or quadrature


def _pair(rho, sigma, validate: bool, method: str) -> tuple[np.ndarray, np.ndarray]:
    if validate:
        rho = validate_density(rho, method=method)
        sigma = validate_density(sigma, method=method)
    else:
        rho = np.asarray(rho, dtype=np.complex128)
        sigma = np.asarray(sigma, dtype=np.complex128)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"states have shapes {rho.shape} and {sigma.shape}")
    return rho, sigma


def hs_divergence(rho, sigma, gamma: float, validate: bool = True, method: str = "jacobi") -> float:
    """``Tr[(rho - gamma sigma)_+] - (1 - gamma)_+``.

    Parameters
    ----------
    rho, sigma : array_like
        Density operators of equal dimension.
    gamma : float
        Non-negative order.
    validate : bool
        Check both inputs as density operators first.
    method : {"jacobi", "lapack"}
        Eigensolver backend.
    """
    if not gamma >= 0 or not math.isfinite(gamma):
        raise BadParameter(f"gamma must be finite and >= 0, got {gamma}")
    rho, sigma = _pair(rho, sigma, validate, method)
    val = trace_positive(rho - gamma * sigma, tol=1e-8, method=method) - max(1.0 - gamma, 0.0)
    return max(val, 0.0)


def hs_classical(p, q, gamma: float) -> float:
    """``sum_x max(0, p(x) - gamma q(x))`` for probability vectors."""
    p = np.asarray(p, dtype=float).reshape(-1)
    q = np.asarray(q, dtype=float).reshape(-1)
    if p.shape != q.shape:
        raise DimensionMismatch(f"distributions have lengths {p.size} and {q.size}")
    if np.any(p < 0) or np.any(q < 0):
        raise NotDistribution("negative probability")
    if not gamma >= 0:
        raise BadParameter(f"gamma must be >= 0, got {gamma}")
    return max(float(np.maximum(p - gamma * q, 0.0).sum()) - max(1.0 - gamma, 0.0), 0.0)


def trace_distance(rho, sigma, validate: bool = True, method: str = "jacobi") -> float:
    """Normalized trace distance ``0.5 ||rho - sigma||_1``."""
    rho, sigma = _pair(rho, sigma, validate, method)
    w = eigvalsh(rho - sigma, tol=1e-8, method=method)
    return float(0.5 * np.abs(w).sum())


def hs_sym(rho, sigma, gamma: float, validate: bool = True, method: str = "jacobi") -> float:
    """``max{E_gamma(rho||sigma), E_gamma(sigma||rho)}``."""
    return max(
        hs_divergence(rho, sigma, gamma, validate, method),
        hs_divergence(sigma, rho, gamma, validate, method),
    )


def d_max(rho, sigma, validate: bool = True, method: str = "jacobi", eig_tol: float = EIG_TOL) -> float:
    """Max-relative entropy ``ln inf{l : rho <= l sigma}`` (natural log).

    Returns ``inf`` when ``rho`` has weight above ``eig_tol`` outside the
    support of ``sigma``.
    """
    rho, sigma = _pair(rho, sigma, validate, method)
    supp = support_projector(sigma, tol=1e-8, threshold=eig_tol, method=method)
    leak = float(np.trace(rho - supp @ rho @ supp).real)
    if leak > eig_tol:
        return math.inf
    s = psd_sqrt_pinv(sigma, threshold=eig_tol, method=method)
    lam = float(eigvalsh(s @ rho @ s, tol=1e-8, method=method)[-1])
    return max(math.log(lam), 0.0) if lam > 0 else 0.0


def smooth_d_max(rho, sigma, delta: float, validate: bool = True, method: str = "jacobi") -> float:
    """``ln gamma*`` with ``gamma* = inf{gamma >= 1 : E_gamma(rho||sigma) <= delta}``.

    Computed by bisection. Raises Infinite when no finite ``gamma`` below
    ``exp(50)`` meets the constraint.
    """
    if not 0.0 <= delta <= 1.0:
        raise BadParameter(f"delta must lie in [0, 1], got {delta}")
    rho, sigma = _pair(rho, sigma, validate, method)

    def e(g: float) -> float:
        return hs_divergence(rho, sigma, g, validate=False, method=method)

    if e(1.0) <= delta:
        return 0.0
    lo, hi = 1.0, 2.0
    while e(hi) > delta:
        lo, hi = hi, 2.0 * hi
        if hi > SMOOTH_DMAX_CAP:
            raise Infinite(f"E_gamma stays above {delta} up to gamma = exp(50)")
    for _ in range(SMOOTH_DMAX_ITERS):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if e(mid) > delta:
            lo = mid
        else:
            hi = mid
    return math.log(hi)


@dataclass(frozen=True)
class FGenerator:
    """Convex ``f`` with ``f(1) = 0`` described by its second derivative.

    ``f_second`` is the absolutely continuous part of ``f''``; ``atoms`` lists
    point masses ``(location, mass)`` of ``f''`` (kinks of ``f``).
    ``infinite_at_inf`` marks ``f(x)/x -> inf`` and ``infinite_at_zero`` marks
    ``f(0+) = inf``; these decide when support mismatch makes the divergence
    infinite.
    """

    name: str
    f: Callable[[float], float]
    f_second: Callable[[float], float]
    atoms: tuple[tuple[float, float], ...] = ()
    infinite_at_inf: bool = True
    infinite_at_zero: bool = True

    def __post_init__(self):
        if abs(self.f(1.0)) > 1e-12:
            raise BadParameter(f"generator {self.name!r} has f(1) = {self.f(1.0)!r}, expected 0")
        for x in np.logspace(-3, 3, 100):
            if self.f_second(float(x)) < -1e-9:
                raise BadParameter(f"generator {self.name!r} is not convex near x = {x:.4g}")
        for loc, mass in self.atoms:
            if loc <= 0 or mass < 0:
                raise BadParameter(f"generator {self.name!r} has an invalid atom {(loc, mass)}")


def _xlogx(x: float) -> float:
    return x * math.log(x) if x > 0 else 0.0


KL = FGenerator("kl", _xlogx, lambda x: 1.0 / x, infinite_at_inf=True, infinite_at_zero=False)
TOTAL_VARIATION = FGenerator(
    "total_variation",
    lambda x: 0.5 * abs(x - 1.0),
    lambda x: 0.0,
    atoms=((1.0, 1.0),),
    infinite_at_inf=False,
    infinite_at_zero=False,
)
CHI2 = FGenerator("chi2", lambda x: (x - 1.0) ** 2, lambda x: 2.0, infinite_at_inf=True, infinite_at_zero=False)


def hockey_stick_generator(gamma0: float) -> FGenerator:
    """``f(x) = (x - gamma0)_+`` whose divergence is ``E_gamma0``."""
    if gamma0 < 1:
        raise BadParameter(f"gamma0 must be >= 1, got {gamma0}")
    return FGenerator(
        f"hockey_stick_{gamma0:g}",
        lambda x: max(x - gamma0, 0.0),
        lambda x: 0.0,
        atoms=((float(gamma0), 1.0),),
        infinite_at_inf=False,
        infinite_at_zero=False,
    )


GENERATORS = {"kl": KL, "total_variation": TOTAL_VARIATION, "tv": TOTAL_VARIATION, "chi2": CHI2}


def get_generator(name: str) -> FGenerator:
    if name in GENERATORS:
        return GENERATORS[name]
    if name.startswith("hockey_stick_"):
        return hockey_stick_generator(float(name[len("hockey_stick_"):]))
    raise BadParameter(f"unknown generator {name!r}")


def _crossings(rho: np.ndarray, sigma: np.ndarray) -> list[float]:
    """Positive finite ``g`` with ``det(rho - g sigma) = 0``."""
    with np.errstate(all="ignore"):
        w = scipy.linalg.eigvals(rho, sigma)
    return sorted({float(z.real) for z in w if np.isfinite(z) and abs(z.imag) < 1e-9 and z.real > 0})


def _tp(m: np.ndarray) -> float:
    return float(np.maximum(np.linalg.eigvalsh(m), 0.0).sum())


def f_divergence(rho, sigma, gen: FGenerator, quad_tol: float = QUAD_TOL, validate: bool = True) -> float:
    """Integral-representation f-divergence.

    Evaluates ``int_1^inf f''(g) E_g(rho||sigma) + g^-3 f''(1/g) E_g(sigma||rho) dg``
    by adaptive quadrature, truncated where the hockey-stick terms vanish,
    plus the exact contribution of any atoms of ``f''``. Returns ``inf`` when
    the supports make the divergence infinite for this generator.
    """
    rho, sigma = _pair(rho, sigma, validate, "jacobi")
    a = d_max(rho, sigma, validate=False)
    b = d_max(sigma, rho, validate=False)
    if (math.isinf(a) and gen.infinite_at_inf) or (math.isinf(b) and gen.infinite_at_zero):
        return math.inf

    total = 0.0
    for loc, mass in gen.atoms:
        if loc >= 1.0:
            w = 0.5 if loc == 1.0 else 1.0
            total += w * mass * hs_divergence(rho, sigma, loc, validate=False, method="lapack")
        if loc <= 1.0:
            w = 0.5 if loc == 1.0 else 1.0
            total += w * mass * loc * hs_divergence(sigma, rho, 1.0 / loc, validate=False, method="lapack")

    breaks = _crossings(rho, sigma)
    inv_breaks = [1.0 / g for g in breaks]
    tol = 0.5 * quad_tol

    # rho-side term.
    if math.isfinite(a):
        if a > 0:
            def first(s: float) -> float:
                g = math.exp(s)
                return gen.f_second(g) * g * _tp(rho - g * sigma)

            pts = [0.0, a] + [math.log(g) for g in breaks if 1.0 < g < math.exp(a)]
            total += integrate(first, pts, tol)
    else:
        # g = 1/u; E_g(rho||sigma) = Tr[(u rho - sigma)_+] / u.
        def first_inv(u: float) -> float:
            if u <= 0.0:
                return 0.0
            return gen.f_second(1.0 / u) * u**-3 * _tp(u * rho - sigma)

        total += integrate(first_inv, [0.0, 1.0] + [u for u in inv_breaks if 0 < u < 1], tol)

    # sigma-side term, with u = 1/g: int_{e^-b}^1 f''(u) Tr[(u sigma - rho)_+] du.
    lo = math.exp(-b) if math.isfinite(b) else 0.0
    if lo < 1.0:
        def second(u: float) -> float:
            if u <= 0.0:
                return 0.0
            return gen.f_second(u) * _tp(u * sigma - rho)

        # Kinks sit where u equals a generalized eigenvalue itself.
        total += integrate(second, [lo, 1.0] + [g for g in breaks if lo < g < 1.0], tol)
    return max(total, 0.0)


def f_divergence_classical(p, q, gen: FGenerator) -> float:
    """Direct ``sum_x q(x) f(p(x)/q(x))`` with the usual conventions at zero."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    total = 0.0
    for pi, qi in zip(p, q):
        if qi > 0:
            total += qi * gen.f(pi / qi)
        elif pi > 0:
            if gen.infinite_at_inf:
                return math.inf
            # Recession slope lim f(x)/x, approximated far out.
            x = 1e12
            total += pi * gen.f(x) / x
    return total
