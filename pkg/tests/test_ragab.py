"""Historical regression fixture: a 2F3 of x^2/16 expanded in 2F2 * 1F1 pairs.

Off by default; run with ``pytest --run-ragab``. The summand carries a
factor (-x^2/2)^r; without the 2^-r the two sides differ at order x^2.
"""
import math

import pytest

from hyperpairs.numerics import HalfInt, PFQParams, eval_pfq, half, pochhammer

pytestmark = pytest.mark.ragab


def lhs(a, b, c, x):
    # b and c are integers so b/2 and c/2 stay half-integers
    return eval_pfq(PFQParams((half(b + 1), half(b)), (a + half(1), half(c + 1), half(c)), x * x / 16))


def rhs(a, b, c, x, terms=40):
    total = []
    for r in range(terms):
        coef = (
            pochhammer(a, r) * pochhammer(b, r) * pochhammer(c - b, r)
            / (math.factorial(r) * pochhammer(a + a, r) * pochhammer(c, 2 * r) * pochhammer(c + (r - 1), r))
        )
        f22 = eval_pfq(PFQParams((a + r, b + r), (a + a + r, c + 2 * r), x))
        f11 = eval_pfq(PFQParams((b + r,), (c + 2 * r,), -x / 2))
        total.append(float(coef) * (-x * x / 2) ** r * f22 * f11)
    return math.fsum(total)


@pytest.mark.parametrize(
    "a, b, c, x",
    [(HalfInt.of(1), 1, 2, 1.0), (half(3), 2, 5, 2.3), (half(1), 3, 4, 0.7), (HalfInt.of(2), 1, 3, -1.5)],
)
def test_expansion(a, b, c, x):
    assert rhs(a, b, c, x) == pytest.approx(lhs(a, b, c, x), rel=1e-13)
