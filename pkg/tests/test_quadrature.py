import math

import numpy as np
import pytest

from hsdp.errors import QuadratureFailure
from hsdp.quadrature import G_WEIGHTS, K_WEIGHTS, NODES, gk15, integrate


def exact_monomial(k):
    return 0.0 if k % 2 else 2.0 / (k + 1)


def test_kronrod_rule_is_exact_to_degree_22():
    for k in range(23):
        assert K_WEIGHTS @ NODES**k == pytest.approx(exact_monomial(k), abs=1e-14)


def test_gauss_rule_is_exact_to_degree_13():
    for k in range(14):
        assert G_WEIGHTS @ NODES**k == pytest.approx(exact_monomial(k), abs=1e-14)
    assert abs(G_WEIGHTS @ NODES**14 - exact_monomial(14)) > 1e-6


def test_gk15_error_estimate_vanishes_for_low_degree():
    k, err = gk15(lambda x: 3 * x**2 + x, 0.0, 2.0)
    assert k == pytest.approx(10.0, abs=1e-13)
    assert err < 1e-13


@pytest.mark.parametrize(
    "f, pts, exact",
    [
        (math.sin, [0.0, math.pi], 2.0),
        (lambda x: abs(x - 0.3), [0.0, 1.0], 0.045 + 0.245),
        (math.sqrt, [0.0, 1.0], 2.0 / 3.0),
        (lambda x: x**29, [0.0, 1.0], 1.0 / 30.0),
        (lambda x: math.log(x) if x > 0 else 0.0, [0.0, 1.0], -1.0),
    ],
)
def test_integrate(f, pts, exact):
    assert integrate(f, pts, 1e-10) == pytest.approx(exact, abs=1e-9)


def test_breakpoints_help():
    assert integrate(lambda x: abs(x - 0.3), [0.0, 0.3, 1.0], 1e-12) == pytest.approx(0.29, abs=1e-14)


def test_empty_range():
    assert integrate(math.exp, [1.0]) == 0.0


def test_interval_cap():
    with pytest.raises(QuadratureFailure):
        integrate(lambda x: np.sign(math.sin(1.0 / x)) if x > 0 else 0.0, [0.0, 1.0], 1e-14, max_intervals=20)
