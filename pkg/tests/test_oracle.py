import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperpairs.bessel import j_int
from hyperpairs.errors import DomainError
from hyperpairs.identities import XiSpec
from hyperpairs.numerics import PFQParams, half
from hyperpairs.oracle import (
    DEFAULT_RULE,
    QuadratureRule,
    bessel_j_series,
    cos_power_integral,
    cos_power_quadrature,
    quadrature_coeff,
    quadrature_euler,
    quadrature_xi,
)


def test_rule_validation():
    for kw in ({"panel_order": 1}, {"panels": 0}, {"interval": (1.0, 1.0)}):
        with pytest.raises(DomainError):
            QuadratureRule(**kw)


@pytest.mark.parametrize("rule", [DEFAULT_RULE, QuadratureRule(8, 3, (0.0, 2.0)), QuadratureRule(2, 1)])
def test_weights_sum_to_length(rule):
    lo, hi = rule.interval
    assert abs(rule.weights.sum() - (hi - lo)) <= 1e-14 * (hi - lo)
    assert len(rule.nodes) == rule.panel_order * rule.panels


def test_nodes_are_read_only():
    with pytest.raises(ValueError):
        DEFAULT_RULE.nodes[0] = 0.0


@pytest.mark.parametrize("order", [2, 5, 16, 64])
def test_polynomial_exactness(order):
    rule = QuadratureRule(order, 1, (-1.0, 1.0))
    for deg in range(2 * order):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert abs(rule.integrate(rule.nodes**deg) - exact) <= 1e-14 * max(1.0, exact)


@settings(max_examples=30)
@given(st.integers(0, 12), st.floats(-6, 6))
def test_bessel_series_independent_of_library(N, x):
    assert bessel_j_series(N, np.array([x]))[0] == pytest.approx(j_int(N, x), rel=1e-12, abs=1e-15)


def test_quadrature_coeff_trivial():
    assert abs(quadrature_coeff(1, 0, 0, 1.0)) < 1e-14
    assert quadrature_coeff(0, 0, 0, 1e-12) == pytest.approx(1.0, abs=1e-14)


def test_oracle_self_convergence():
    fine = DEFAULT_RULE.refined()
    for L, N, p, k in [(2, 4, 0, 0.5), (9, 3, 1, 5.0), (10, 10, 0, 5.0)]:
        assert abs(quadrature_coeff(L, N, p, k) - quadrature_coeff(L, N, p, k, fine)) < 1e-11
    spec = XiSpec(1, 0, 0.6, 0.4)
    assert abs(quadrature_xi(spec) - quadrature_xi(spec, fine)) < 1e-11


def test_quadrature_xi_trivial():
    assert quadrature_xi(XiSpec(0, 0, 0.0, 0.0)) == pytest.approx(4 * math.pi, rel=1e-15)
    # with no dressing only p-weighted sphere area remains: 4 pi / 3
    assert quadrature_xi(XiSpec(0, 1, 0.0, 0.0)) == pytest.approx(4 * math.pi / 3, rel=1e-14)


def test_quadrature_euler_trivial():
    one = PFQParams((), (), 0.0)
    assert quadrature_euler(one, half(1), 0.0) == pytest.approx(2.0, rel=1e-15)
    assert quadrature_euler(one, 2, 0.0) == pytest.approx(0.5, rel=1e-15)
    # 0F0(-w y) = exp(-w y)
    w = 1.3
    assert quadrature_euler(one, 1, w) == pytest.approx((1 - math.exp(-w)) / w, rel=1e-14)
    with pytest.raises(DomainError):
        quadrature_euler(one, 0, 1.0)


def test_cos_power_examples():
    assert cos_power_integral(0, 0) == pytest.approx(math.pi)
    assert cos_power_integral(2, 1) == 0.0
    assert cos_power_integral(4, 2) == pytest.approx(math.pi / 4)
    assert cos_power_integral(2, 4) == 0.0
    with pytest.raises(DomainError):
        cos_power_integral(-1, 0)


def test_cos_power_closed_form_matches_quadrature():
    for m in range(21):
        for n in range(24):
            assert abs(cos_power_integral(m, n) - cos_power_quadrature(m, n)) < 1e-12
