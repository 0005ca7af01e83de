import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsdp.errors import NonHermitian
from hsdp.linalg import (
    check_hermitian,
    eig_hermitian,
    eigvalsh,
    max_eigenvalue,
    min_eigenvalue,
    positive_part,
    support_projector,
)


def random_hermitian(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return 0.5 * (a + a.conj().T)


def charpoly_eigenvalues(h):
    """Independent route: roots of det(x I - h)."""
    return np.sort(np.roots(np.poly(h)).real)


def test_diagonal_input():
    w, v = eig_hermitian(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [1, 2, 3])
    assert np.allclose(np.abs(v), np.eye(3)[:, [1, 2, 0]])


def test_pauli_x():
    assert np.allclose(eigvalsh(np.array([[0, 1], [1, 0]])), [-1, 1])


@pytest.mark.parametrize("d", [2, 3, 4])
def test_matches_characteristic_polynomial(d):
    rng = np.random.default_rng(d)
    for _ in range(50):
        h = random_hermitian(rng, d)
        assert np.allclose(eigvalsh(h), charpoly_eigenvalues(h), atol=1e-9)


def test_reconstruction_on_many_matrices():
    rng = np.random.default_rng(7)
    for i in range(1000):
        d = 1 + i % 8
        h = random_hermitian(rng, d)
        w, v = eig_hermitian(h)
        assert np.all(np.diff(w) >= -1e-12)
        assert np.abs(v @ np.diag(w) @ v.conj().T - h).max() <= 1e-10 * max(1.0, np.abs(h).max())
        assert np.abs(v.conj().T @ v - np.eye(d)).max() <= 1e-10


def test_jacobi_agrees_with_lapack():
    rng = np.random.default_rng(3)
    for d in range(2, 9):
        h = random_hermitian(rng, d)
        assert np.allclose(eigvalsh(h), eigvalsh(h, method="lapack"), atol=1e-10)


def test_positive_part_examples():
    p, tr = positive_part(np.diag([0.5, -0.3]))
    assert np.allclose(p, np.diag([0.5, 0.0]))
    assert tr == pytest.approx(0.5)
    _, tr = positive_part(np.diag([0.6, 0.4]) - 1.5 * np.diag([0.3, 0.7]))
    assert tr == pytest.approx(0.15, abs=1e-12)


def test_positive_part_of_psd_is_identity():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    h = a @ a.conj().T
    p, tr = positive_part(h)
    assert np.allclose(p, h, atol=1e-12)
    assert tr == pytest.approx(np.trace(h).real)


def test_min_eigenvalue_examples():
    assert min_eigenvalue(np.eye(3)) == pytest.approx(1.0)
    assert min_eigenvalue(np.diag([0.2, 0.8])) == pytest.approx(0.2)


def test_non_hermitian_rejected():
    with pytest.raises(NonHermitian):
        check_hermitian(np.array([[0, 1], [0, 0]]))


def test_support_projector_rank():
    p = support_projector(np.diag([0.5, 0.5, 0.0]))
    assert np.allclose(p, np.diag([1, 1, 0]))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_trace_splits_into_positive_and_negative_parts(d, seed):
    h = random_hermitian(np.random.default_rng(seed), d)
    pos, tr_pos = positive_part(h)
    _, tr_neg = positive_part(-h)
    assert abs(np.trace(h).real - (tr_pos - tr_neg)) <= 1e-9
    again, _ = positive_part(pos)
    assert np.allclose(again, pos, atol=1e-10)
    assert min_eigenvalue(h) <= np.trace(h).real / d + 1e-12 <= max_eigenvalue(h) + 2e-12
