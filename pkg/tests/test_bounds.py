import math

import numpy as np
import pytest

from hsdp.bounds import (
    UNBOUNDED,
    dmax_upper_from_hs,
    equality_regime,
    f_gamma_hetero,
    f_gamma_homog,
    g_n,
    hitting_params,
    hs_convexity_bound,
    hs_gamma_relation,
    k_star,
    linear_sdpi,
    mixing_time_delta,
    mixing_time_full_rank,
    mixing_time_linear,
    mixing_time_nonlinear,
    nonlinear_sdpi,
    phi_k,
    reverse_pinsker_general,
    reverse_pinsker_sym,
    states_with_divergence,
    tightness_check,
    zeroing_criterion,
)
from hsdp.channels import basis_state
from hsdp.divergences import KL, CHI2, TOTAL_VARIATION, d_max, f_divergence, hs_divergence, trace_distance
from hsdp.errors import BadRange, ContractionNotStrict, ZeroLambdaMin


def test_hs_gamma_relation():
    assert hs_gamma_relation(3.0, 3.0, 0.4) == pytest.approx(0.4)
    assert hs_gamma_relation(6.0, 2.5, 0.0) == pytest.approx(0.5)
    assert hs_gamma_relation(6.0, 2.5, 1.0) == pytest.approx(1.0)
    with pytest.raises(BadRange):
        hs_gamma_relation(2.0, 3.0, 0.1)


def test_zeroing_criterion():
    assert zeroing_criterion(2.0, 2.0, 0.3, 0.0)
    assert not zeroing_criterion(2.0, 2.0, 0.3, 0.01)
    assert zeroing_criterion(4.0, 2.0, 0.1, 0.15)
    assert not zeroing_criterion(4.0, 2.0, 0.0, 0.1)
    # Commuting cross-check: E_2 = 0.15 with lambda_min(sigma) = 0.25 forces E_4 = 0.
    rho, sigma = np.diag([0.65, 0.35]), np.diag([0.25, 0.75])
    e2 = hs_divergence(rho, sigma, 2.0)
    assert e2 == pytest.approx(0.15)
    assert zeroing_criterion(4.0, 2.0, 0.25, e2)
    assert hs_divergence(rho, sigma, 4.0) == 0.0


def test_dmax_upper_from_hs():
    assert dmax_upper_from_hs(3.0, 0.0, 0.2) == pytest.approx(math.log(3))
    assert dmax_upper_from_hs(1.0, 0.15, 0.3) == pytest.approx(math.log(1.5))
    assert dmax_upper_from_hs(1.0, 0.3, 0.3) == pytest.approx(math.log(2))
    assert d_max(np.diag([0.6, 0.4]), np.diag([0.3, 0.7])) <= math.log(2) + 1e-12
    with pytest.raises(ZeroLambdaMin):
        dmax_upper_from_hs(2.0, 0.1, 0.0)


def test_linear_and_nonlinear_examples():
    assert linear_sdpi(6.0, 2.5, 0.01) == pytest.approx(0.505, abs=1e-12)
    assert linear_sdpi(2.0, 3.0, 0.2) == pytest.approx(0.2)
    assert linear_sdpi(3.0, 1.0, 0.0) == pytest.approx(0.5)
    assert nonlinear_sdpi(6.0, 2.5, 0.01, 1.0) == pytest.approx(0.505, abs=1e-12)
    assert nonlinear_sdpi(6.0, 2.5, 0.01, 0.3) == pytest.approx(0.003, abs=1e-12)
    assert nonlinear_sdpi(6.0, 2.5, 0.0, 0.25) == 0.0


def test_sdpi_identities_on_random_parameters():
    rng = np.random.default_rng(0)
    for _ in range(500):
        g = float(rng.uniform(1.0, 20.0))
        gp = float(rng.uniform(1.0, g))
        delta = float(rng.uniform(0.0, 1.0))
        assert nonlinear_sdpi(g, gp, delta, 1.0) == pytest.approx(linear_sdpi(g, gp, delta), abs=1e-12)
        ts = np.linspace(0, 1, 21)
        vals = [nonlinear_sdpi(g, gp, delta, t) for t in ts]
        assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))
        assert all(v <= linear_sdpi(g, gp, delta) * t + 1e-12 for v, t in zip(vals, ts))
        if gp > 1.0 and 0 < delta < 1:
            t_star = (gp - 1) / (g - 1)
            first = ((g + 2 * delta - 1) * t_star - (gp - 1) * (1 - delta)) / (g + 1)
            assert first == pytest.approx(delta * t_star, abs=1e-12)


def test_f_gamma_examples():
    assert f_gamma_hetero([5.0], 1.0, 0.6) == pytest.approx(0.6 * 4 / 6)
    assert f_gamma_hetero([3.0, 3.0], 2.0, 1.0) == 0.0
    assert f_gamma_hetero([5.0], 2.0, 1.0) == pytest.approx(0.5)
    assert f_gamma_homog(5.0, 1, 2.0, 0.7) == f_gamma_hetero([5.0], 2.0, 0.7)
    assert f_gamma_homog(8.0, 3, 3.0, 1.0) == 0.0
    assert f_gamma_homog(8.0, 2, 3.0, 1.0) == pytest.approx(0.5 * (49 / 81 * 4 - 2))
    assert f_gamma_homog(4.0, 3, 2.0, 0.9) == f_gamma_hetero([4.0] * 3, 2.0, 0.9)


def test_hitting_params_example():
    hp = hitting_params(6.0, 2.5, 0.01)
    assert hp.a == pytest.approx(5.02 / 7)
    assert hp.b == pytest.approx(1.5 * 0.99 / 7)
    assert hp.t_star == pytest.approx(0.3)
    assert hp.b / (1 - hp.a) == pytest.approx(0.75, abs=1e-12)
    assert hp.k_star == 2 and k_star(hp, 1.0) == 2
    assert hp.T_star == pytest.approx(hp.a**2 * 1.75 - 0.75)
    assert hp.T_star == pytest.approx(0.150014, abs=1e-6)
    assert g_n(hp, 1.0, 3) == pytest.approx(0.01 * hp.T_star)
    assert phi_k(hp, 0.4, 0) == 0.4


def test_g_n_semigroup_and_monotonicity():
    rng = np.random.default_rng(1)
    for _ in range(10):
        g = float(rng.uniform(2.0, 10.0))
        gp = float(rng.uniform(1.05, g - 0.5))
        delta = float(rng.uniform(0.01, 0.9))
        hp = hitting_params(g, gp, delta)
        for t in np.linspace(0, 1, 101):
            vals = [g_n(hp, t, n) for n in range(1, 22)]
            assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))
            for m in range(1, 21):
                assert abs(g_n(hp, g_n(hp, t, m), 1) - g_n(hp, t, m + 1)) <= 1e-10


def test_mixing_time_examples():
    assert mixing_time_nonlinear(8.0, 3.0, 0.0) == 3
    assert mixing_time_nonlinear(8.0, 3.0, 0.5) == 2
    assert mixing_time_nonlinear(8.0, 3.0, 1.0) == 0
    assert mixing_time_linear(8.0, 3.0, 0.0, 0.1) == 4
    assert mixing_time_linear(8.0, 3.0, 0.0, 0.0) is UNBOUNDED
    assert mixing_time_linear(8.0, 3.0, 0.0, 0.5) == 2
    assert mixing_time_delta(6.0, 2.5, 0.01, 0.2) == 2
    assert mixing_time_delta(6.0, 2.5, 0.01, 0.01) == 3
    hp = hitting_params(6.0, 2.5, 0.01)
    assert mixing_time_delta(6.0, 2.5, 0.01, hp.T_star) == 2
    with pytest.raises(ContractionNotStrict):
        mixing_time_linear(3.0, 1.5, 1.0, 0.1)


def test_mixing_times_nonincreasing_in_beta():
    betas = np.linspace(0.01, 0.99, 50)
    for fn in (lambda b: mixing_time_nonlinear(8.0, 3.0, b),
               lambda b: mixing_time_linear(8.0, 3.0, 0.05, b),
               lambda b: mixing_time_delta(6.0, 2.5, 0.1, b)):
        vals = [fn(b) for b in betas]
        assert all(y <= x for x, y in zip(vals, vals[1:]))


def test_full_rank_mixing():
    res = mixing_time_full_rank(math.log(3), 2.0, 0.25)
    assert res.steps == 2 and res.hypothesis == "plus"
    res = mixing_time_full_rank(math.log(3), 3.0, 0.25)
    assert res.steps == 1 and res.hypothesis == "plus"
    assert mixing_time_full_rank(math.log(3), 1.0001, 0.25).steps > mixing_time_full_rank(math.log(3), 1.1, 0.25).steps


def test_convexity_bound():
    assert hs_convexity_bound(1.5, 1.5, 4.0, 0.3, 0.1) == pytest.approx(0.3)
    assert hs_convexity_bound(2.0, 1.0, 4.0, 0.3, 0.0) == pytest.approx(0.2)
    assert hs_convexity_bound(4.0, 1.0, 4.0, 0.3, 0.1) == pytest.approx(0.1)
    assert hs_convexity_bound(2.0, 2.0, 2.0, 0.1, 0.1) == pytest.approx(0.1)
    with pytest.raises(BadRange):
        hs_convexity_bound(5.0, 1.0, 4.0, 0.3, 0.1)


def test_reverse_pinsker_sym_examples():
    assert reverse_pinsker_sym(KL, 2.0, 0.0, math.log(2), math.log(2)) == pytest.approx(math.log(2) / 3)
    for gen in (KL, CHI2):
        g = 3.0
        assert reverse_pinsker_sym(gen, g, 0.0, 2.0, 2.0) == pytest.approx((g * gen.f(1 / g) + gen.f(g)) / (g + 1))
    a, b, delta = 1.2, 0.9, 0.2
    ea, eb = math.exp(a), math.exp(b)
    expected = (eb * KL.f(1 / eb) / (eb - 1) + KL.f(ea) / (ea - 1)) * delta
    assert reverse_pinsker_sym(KL, 1.0, delta, a, b) == pytest.approx(expected, rel=1e-6)


def test_reverse_pinsker_sym_is_general_special_case():
    rng = np.random.default_rng(2)
    for _ in range(50):
        g = float(rng.uniform(1.0, 5.0))
        delta = float(rng.uniform(0.0, 1.0))
        a, b = math.log(g) + float(rng.uniform(0, 2)), math.log(g) + float(rng.uniform(0, 2))
        tau = (g - 1 + 2 * delta) / (g + 1)
        for gen in (KL, CHI2, TOTAL_VARIATION):
            sym = reverse_pinsker_sym(gen, g, delta, a, b)
            gen_val = reverse_pinsker_general(gen, g, g, delta, delta, tau, a, b)
            assert sym == pytest.approx(gen_val, rel=1e-9, abs=1e-9)


def test_reverse_pinsker_limit_at_gamma_one():
    # At gamma1 = gamma2 = 1 with delta_i = tau only the chord terms remain.
    tau, a, b = 0.3, 1.0, 0.8
    val = reverse_pinsker_general(KL, 1.0, 1.0, tau, tau, tau, a, b)
    ea, eb = math.exp(a), math.exp(b)
    expected = tau * (KL.f(ea) / (ea - 1) + eb * KL.f(1 / eb) / (eb - 1))
    assert val == pytest.approx(expected, rel=1e-9)
    assert reverse_pinsker_general(KL, 2.0, 2.0, 0.0, 0.0, 0.0, math.log(2), math.log(2)) == 0.0


def test_reverse_pinsker_sound_on_commuting_pairs():
    rng = np.random.default_rng(3)
    for _ in range(100):
        d = int(rng.integers(2, 5))
        p, q = rng.dirichlet(np.ones(d)), rng.dirichlet(np.ones(d))
        rho, sigma = np.diag(p), np.diag(q)
        a, b = d_max(rho, sigma), d_max(sigma, rho)
        g1 = float(rng.uniform(1.0, math.exp(a)))
        g2 = float(rng.uniform(1.0, math.exp(b)))
        d1, d2 = hs_divergence(rho, sigma, g1), hs_divergence(sigma, rho, g2)
        tau = trace_distance(rho, sigma)
        for gen in (KL, CHI2, TOTAL_VARIATION):
            bound = reverse_pinsker_general(gen, g1, g2, d1, d2, tau, a, b)
            assert f_divergence(rho, sigma, gen) <= bound + 1e-8 + 1e-7


def test_reverse_pinsker_example_dominates_witness():
    # Commuting witness with E_2 both ways <= 0.05, trace distance <= 0.3, D_max both ways <= ln 4.
    rho, sigma = np.diag([0.45, 0.55]), np.diag([0.55, 0.45])
    assert hs_divergence(rho, sigma, 2.0) <= 0.05 and hs_divergence(sigma, rho, 2.0) <= 0.05
    assert trace_distance(rho, sigma) <= 0.3
    val = reverse_pinsker_general(KL, 2.0, 2.0, 0.05, 0.05, 0.3, math.log(4), math.log(4))
    assert math.isfinite(val)
    assert f_divergence(rho, sigma, KL) <= val


def test_tightness_examples():
    rho, sigma = basis_state(2, 0), basis_state(2, 1)
    rep = tightness_check(4.0, 2.0, 0.0, rho, sigma)
    assert rep.channel_value == pytest.approx(0.4) and rep.gap <= 1e-10
    rho, sigma = states_with_divergence(0.2, 2.0)
    rep = tightness_check(4.0, 2.0, 0.0, rho, sigma)
    assert rep.channel_value == 0.0 and rep.bound == 0.0
    rep = tightness_check(4.0, 2.0, 0.2, basis_state(2, 0), basis_state(2, 1))
    assert rep.gap <= 1e-10 and rep.in_regime


def test_tightness_over_corrected_regime():
    for g, gp in ((4.0, 2.0), (6.0, 2.5), (10.0, 1.5)):
        for delta in (0.0, 0.1, 0.5, 1.0):
            lo = 0.0 if delta == 0 else (gp - 1) / (g - 1)
            for t in np.linspace(lo, 1.0, 20):
                rho, sigma = states_with_divergence(float(t), gp)
                rep = tightness_check(g, gp, delta, rho, sigma)
                assert rep.in_regime and rep.passed, rep


def test_tightness_gap_below_corrected_threshold():
    # Between (gamma'-1)/(gamma+1) and (gamma'-1)/(gamma-1) the channel sits strictly below the bound.
    rho, sigma = states_with_divergence(0.25, 2.0)
    rep = tightness_check(4.0, 2.0, 0.2, rho, sigma)
    assert rep.stated_regime and not rep.in_regime
    assert rep.bound == pytest.approx(0.05) and rep.channel_value == pytest.approx(0.01)
    assert not equality_regime(4.0, 2.0, 0.2, 0.25)


def test_states_with_divergence():
    for t in (0.0, 0.3, 1.0):
        rho, sigma = states_with_divergence(t, 2.5)
        assert hs_divergence(rho, sigma, 2.5) == pytest.approx(t, abs=1e-12)
