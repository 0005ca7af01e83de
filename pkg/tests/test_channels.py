import numpy as np
import pytest

from hsdp.channels import (
    ClassicalChannel,
    QuantumChannel,
    achievability_channel,
    apply_channel,
    apply_iterated,
    basis_state,
    bsc,
    choi,
    classical_apply,
    compose,
    depolarizing,
    fixed_point,
    identity_channel,
    iterate,
    maximally_mixed,
    replacer_channel,
    unitary_channel,
    validate_density,
)
from hsdp.divergences import hs_divergence, trace_distance
from hsdp.errors import (
    BadTrace,
    DimensionMismatch,
    KrausExplosion,
    NonUniqueFixedPoint,
    NotDistribution,
    NotPSD,
    NotTracePreserving,
)
from hsdp.sampling import random_channel, random_classical_channel, random_density, random_distribution


def partial_trace_output(gamma, d_in, d_out):
    return np.einsum("ibic->bc", gamma.reshape(d_in, d_out, d_in, d_out))


def test_validate_density():
    validate_density(np.eye(2) / 2)
    with pytest.raises(BadTrace):
        validate_density(np.diag([0.6, 0.5]))
    with pytest.raises(NotPSD):
        validate_density(np.array([[0.5, 0.6], [0.6, 0.5]]))


def test_identity_channel_action():
    rho = random_density(np.random.default_rng(0), 3)
    assert np.allclose(apply_channel(identity_channel(3), rho), rho)


def test_depolarizing_action():
    rho = random_density(np.random.default_rng(1), 2)
    assert np.allclose(apply_channel(depolarizing(2, 1.0), rho), np.eye(2) / 2)
    assert np.allclose(apply_channel(depolarizing(2, 0.5), basis_state(2, 0)), np.diag([0.75, 0.25]))
    assert np.allclose(apply_channel(depolarizing(2, 0.0), rho), rho)


def test_non_trace_preserving_rejected():
    with pytest.raises(NotTracePreserving):
        QuantumChannel(np.array([[[1.0, 0.0], [0.0, 0.5]]]))


def test_compose_and_mismatch():
    rng = np.random.default_rng(2)
    n = random_channel(rng, 2, 2, 2)
    rho = random_density(rng, 2)
    assert np.allclose(compose(identity_channel(2), n)(rho), n(rho))
    a, b = random_channel(rng, 2, 2, 2), random_channel(rng, 2, 3, 2)
    with pytest.raises(DimensionMismatch):
        compose(b, b)
    assert compose(b, a).d_out == 3
    with pytest.raises(KrausExplosion):
        compose(random_channel(rng, 2, 2, 4), random_channel(rng, 2, 2, 4), cap=8)


def test_choi_examples():
    g = choi(identity_channel(2))
    omega = np.array([1, 0, 0, 1.0])
    assert np.allclose(g, np.outer(omega, omega))
    for p in (0.0, 0.3, 0.5, 1.0):
        w = np.linalg.eigvalsh(choi(depolarizing(2, p)))
        assert np.allclose(w, sorted([2 * (1 - p) + p / 2, p / 2, p / 2, p / 2]))
    assert np.linalg.eigvalsh(choi(depolarizing(2, 0.5)))[0] == pytest.approx(0.25)
    g = choi(replacer_channel(2, basis_state(2, 0)))
    assert np.allclose(g, np.kron(np.eye(2), np.diag([1.0, 0.0])))


def test_choi_of_composition_is_psd_with_identity_marginal():
    rng = np.random.default_rng(4)
    for _ in range(20):
        a, b = random_channel(rng, 2, 3, 2), random_channel(rng, 3, 2, 3)
        g = choi(compose(b, a))
        assert np.linalg.eigvalsh(g)[0] >= -1e-12
        # Tracing out the output leaves the identity on the input.
        assert np.allclose(np.einsum("ibjb->ij", g.reshape(2, 2, 2, 2)), np.eye(2))


def test_channel_output_is_a_state():
    rng = np.random.default_rng(5)
    for i in range(1000):
        d_in, d_out = 2 + i % 5, 2 + (i // 5) % 5
        n = random_channel(rng, d_in, d_out, max(1 + i % 3, -(-d_in // d_out)))
        out = n(random_density(rng, d_in))
        assert abs(np.trace(out) - 1) <= 1e-10
        assert np.linalg.eigvalsh(out)[0] >= -1e-10


def test_iterate_semigroup():
    rng = np.random.default_rng(6)
    n = random_channel(rng, 2, 2, 2)
    rho = random_density(rng, 2)
    assert np.allclose(iterate(n, 5)(rho), iterate(n, 2)(iterate(n, 3)(rho)), atol=1e-9)
    assert np.allclose(apply_iterated(n, rho, 5), iterate(n, 5)(rho), atol=1e-9)
    assert np.allclose(apply_iterated(n, rho, 0), rho)


def test_iterated_depolarizing_is_depolarizing():
    p = 0.3
    two = iterate(depolarizing(2, p), 2)
    target = depolarizing(2, 1 - (1 - p) ** 2)
    for i in range(2):
        rho = basis_state(2, i)
        assert np.allclose(two(rho), target(rho))


def test_unitary_channel():
    x = np.array([[0, 1], [1, 0]])
    assert np.allclose(unitary_channel(x)(basis_state(2, 0)), basis_state(2, 1))


def test_achievability_channel_examples():
    rho, sigma = basis_state(2, 0), basis_state(2, 1)
    a = achievability_channel(2.0, rho, sigma, 0.0)
    assert np.allclose(a(rho), rho)
    assert np.allclose(a(sigma), sigma)
    gamma = 4.0
    a = achievability_channel(2.0, rho, sigma, 2 / (gamma + 1))
    assert hs_divergence(a(rho), a(sigma), 2.0) == pytest.approx(0.4, abs=1e-12)
    a = achievability_channel(1.0, rho, rho, 0.3)
    assert np.allclose(a(rho), a(rho))


def test_fixed_points():
    assert np.allclose(fixed_point(depolarizing(3, 0.2)), maximally_mixed(3))
    eta = 0.3
    k = np.array([[[1, 0], [0, np.sqrt(1 - eta)]], [[0, np.sqrt(eta)], [0, 0]]])
    amp = QuantumChannel(k)
    sigma = fixed_point(amp)
    assert np.allclose(sigma, np.diag([1.0, 0.0]), atol=1e-10)
    assert trace_distance(amp(sigma), sigma) <= 1e-8
    with pytest.raises(NonUniqueFixedPoint):
        fixed_point(unitary_channel(np.array([[0, 1], [1, 0]])))


def test_random_fixed_point_is_fixed():
    rng = np.random.default_rng(8)
    for _ in range(10):
        n = random_channel(rng, 3, 3, 2)
        sigma = fixed_point(n)
        assert trace_distance(n(sigma), sigma, validate=False) <= 1e-8


def test_classical_apply_examples():
    p = np.array([0.3, 0.7])
    assert np.allclose(classical_apply(ClassicalChannel(np.eye(2)), p), p)
    assert np.allclose(classical_apply(bsc(0.1), [1.0, 0.0]), [0.9, 0.1])
    w = ClassicalChannel(np.array([[0.5, 0.5], [0.2, 0.8]]))
    assert np.allclose(classical_apply(w, [0.4, 0.6]), [0.32, 0.68])
    with pytest.raises(NotDistribution):
        ClassicalChannel(np.array([[0.5, 0.4], [0.2, 0.8]]))


def test_classical_embedding_matches_kernel():
    rng = np.random.default_rng(9)
    for _ in range(50):
        w = random_classical_channel(rng, 3, 4, sparsity=0.3)
        p = random_distribution(rng, 3)
        out = w.as_quantum()(np.diag(p))
        assert np.allclose(out, np.diag(classical_apply(w, p)), atol=1e-14)
