import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperpairs.bessel import j_int
from hyperpairs.errors import DomainError
from hyperpairs.legendre import CoefficientSpec, coeff, coeff_a, coeff_a_p1, legendre_p, reconstruct
from hyperpairs.oracle import quadrature_coeff


def test_legendre_p_low_orders():
    assert legendre_p(0, 0.3) == 1.0
    assert legendre_p(1, 0.3) == 0.3
    x = 0.7
    assert legendre_p(4, x) == pytest.approx((35 * x**4 - 30 * x**2 + 3) / 8, rel=1e-15)


@settings(max_examples=50)
@given(st.integers(min_value=0, max_value=30), st.floats(min_value=-1, max_value=1))
def test_legendre_p_matches_numpy(L, x):
    c = np.zeros(L + 1)
    c[L] = 1
    assert legendre_p(L, x) == pytest.approx(np.polynomial.legendre.legval(x, c), abs=1e-13)


def test_legendre_p_domain():
    with pytest.raises(DomainError):
        legendre_p(2, 1.5)
    with pytest.raises(DomainError):
        legendre_p(-1, 0.2)


def test_spec_validation():
    with pytest.raises(DomainError):
        CoefficientSpec(0, 0, 2, 1.0)
    with pytest.raises(DomainError):
        CoefficientSpec(-1, 0, 0, 1.0)
    with pytest.raises(DomainError):
        CoefficientSpec(0, 0, 0, -1.0)
    with pytest.raises(DomainError):
        coeff_a(CoefficientSpec(1, 0, 1, 1.0))
    with pytest.raises(DomainError):
        coeff_a_p1(CoefficientSpec(1, 0, 0, 1.0))


@pytest.mark.parametrize("k", [0.5, 2.0, 7.3])
def test_parity_annihilation(k):
    for L in range(12):
        for N in range(12):
            a0 = coeff_a(CoefficientSpec(L, N, 0, k))
            a1 = coeff_a_p1(CoefficientSpec(L, N, 1, k))
            if (L + N) % 2:
                assert a0 == 0.0
            else:
                assert a1 == 0.0


def test_small_examples():
    assert coeff_a(CoefficientSpec(1, 0, 0, 3.0)) == 0.0
    assert coeff_a(CoefficientSpec(0, 0, 0, 0.0)) == 1.0
    assert coeff_a(CoefficientSpec(0, 0, 0, 1e-9)) == pytest.approx(1.0, abs=1e-15)
    assert coeff_a_p1(CoefficientSpec(0, 0, 1, 0.8)) == 0.0
    # x J0(0) = x = P_1
    assert coeff_a_p1(CoefficientSpec(1, 0, 1, 0.0)) == 1.0


@pytest.mark.parametrize(
    "L, N, p, k",
    [(2, 4, 0, 0.5), (1, 0, 1, 0.5), (2, 1, 1, 2.0), (0, 0, 0, 1.3), (7, 3, 0, 4.0), (9, 10, 1, 5.0)],
)
def test_against_quadrature(L, N, p, k):
    closed = coeff(CoefficientSpec(L, N, p, k))
    ref = quadrature_coeff(L, N, p, k)
    assert abs(closed - ref) <= max(1e-13, 1e-11 * abs(ref))


@pytest.mark.parametrize("p", [0, 1])
@pytest.mark.parametrize("N", [0, 1])
@pytest.mark.parametrize("k", [0.3, 2.0, 5.0])
def test_reduced_forms_match_general(p, N, k):
    for L in range(15):
        spec = CoefficientSpec(L, N, p, k)
        r = coeff(spec, reduced=True)
        g = coeff(spec, reduced=False)
        assert abs(r - g) <= 1e-12 * abs(g) + 1e-300


@pytest.mark.parametrize(
    "N, p, k, x",
    [(0, 0, 1.0, 0.0), (2, 0, 2.0, 0.6), (1, 1, 1.5, 0.4), (3, 1, 2.0, -0.9), (4, 0, 2.0, 1.0)],
)
def test_reconstruct_points(N, p, k, x):
    expect = x**p * j_int(N, k * x)
    assert reconstruct(N, p, k, x, 20) == pytest.approx(expect, abs=1e-10)


@pytest.mark.parametrize("N", [0, 1, 3])
@pytest.mark.parametrize("p", [0, 1])
def test_reconstruct_error_shrinks(N, p):
    k = 2.0
    xs = np.linspace(-1, 1, 101)
    errors = []
    for L_max in (4, 8, 12, 16, 20):
        errors.append(max(abs(x**p * j_int(N, k * x) - reconstruct(N, p, k, x, L_max)) for x in xs))
    # once the truncation error reaches rounding level it can wobble by an ulp
    for a, b in zip(errors, errors[1:]):
        assert b <= a + 4e-16


def test_reconstruct_domain():
    with pytest.raises(DomainError):
        reconstruct(0, 0, 1.0, 1.2, 5)
