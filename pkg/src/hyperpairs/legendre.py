"""Legendre polynomials and the Fourier-Legendre coefficients of x**p J_N(kx).

``coeff(spec)`` returns the coefficient of P_L in

    x**p * J_N(k x) = sum_L a^p_{LN}(k) P_L(x),    p in {0, 1},

from the closed forms in terms of regularized 2F3 functions. The
coefficient vanishes unless L + N + p is even.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .numerics import (
    DEFAULT_POLICY,
    PFQParams,
    TruncationPolicy,
    binom_int,
    eval_pfq,
    eval_pfq_regularized,
    gamma_half,
    half,
    rec_gamma_half,
    reduce_phase,
)

__all__ = [
    "legendre_p",
    "CoefficientSpec",
    "coeff",
    "coeff_a",
    "coeff_a_p1",
    "reconstruct",
]

_SQRT_PI = gamma_half(half(1))


def legendre_p(L: int, x: float) -> float:
    """P_L(x) by the three-term recurrence."""
    if L < 0:
        raise DomainError(f"Legendre degree must be >= 0, got {L}")
    if abs(x) > 1:
        raise DomainError(f"legendre_p needs |x| <= 1, got {x!r}")
    p_prev, p = 1.0, x
    if L == 0:
        return p_prev
    for n in range(1, L):
        p_prev, p = p, ((2 * n + 1) * x * p - n * p_prev) / (n + 1)
    return p


@dataclass(frozen=True)
class CoefficientSpec:
    L: int
    N: int
    p: int
    k: float

    def __post_init__(self):
        if self.L < 0 or self.N < 0:
            raise DomainError(f"need L >= 0 and N >= 0, got L={self.L}, N={self.N}")
        if self.p not in (0, 1):
            raise DomainError(f"cosine-power weight p must be 0 or 1, got {self.p}")
        if not self.k >= 0:
            raise DomainError(f"argument scale k must be >= 0, got {self.k!r}")
        object.__setattr__(self, "k", float(self.k))

    @property
    def vanishes(self) -> bool:
        return (self.L + self.N + self.p) % 2 == 1


def _sign(quarter_turns: int) -> float:
    return reduce_phase(quarter_turns).value


def _a0_general(L, N, k, policy):
    F = eval_pfq_regularized(
        PFQParams((half(L + 1), half(L + 2)), (half(2 * L + 3), half(L - N + 2), half(L + N + 2)), -k * k / 4),
        policy,
    )
    pref = _SQRT_PI * math.ldexp(2 * L + 1, -2 * L - 1) * k**L * math.factorial(L)
    return _sign(L - N) * pref * F


def _a0_reduced(L, N, k, policy):
    # N = 0 and N = 1: one upper parameter cancels a lower one, leaving a 1F2.
    if N == 0:
        F = eval_pfq(PFQParams((half(L + 1),), (half(L + 2), half(2 * L + 3)), -k * k / 4), policy)
        b = binom_int(L, L // 2)
    else:
        F = eval_pfq(PFQParams((half(L + 2),), (half(L + 3), half(2 * L + 3)), -k * k / 4), policy)
        b = binom_int(L, (L - 1) // 2)
    pref = _SQRT_PI * math.ldexp(2 * L + 1, -2 * L - 1) * k**L / gamma_half(half(2 * L + 3))
    return _sign(L - N) * pref * b * F


def _a1_general(L, N, k, policy):
    arg = -k * k / 4
    total = 0.0
    if L > 0:
        # j_{L-1} branch; its explicit factor L removes it at L = 0.
        F1 = eval_pfq_regularized(
            PFQParams((half(L + 1), half(L)), (half(2 * L + 1), half(L - N + 1), half(L + N + 1)), arg),
            policy,
        )
        total += _sign(L - 1 - N) * math.ldexp(L, 2 - 2 * L) * k ** (L - 1) * math.factorial(L - 1) * F1
    F2 = eval_pfq_regularized(
        PFQParams((half(L + 2), half(L + 3)), (half(2 * L + 5), half(L - N + 3), half(L + N + 3)), arg),
        policy,
    )
    total += _sign(L + 1 - N) * math.ldexp(L + 1, -2 * L - 2) * k ** (L + 1) * math.factorial(L + 1) * F2
    return 0.5 * _SQRT_PI * total


def _a1_reduced(L, N, k, policy):
    arg = -k * k / 4
    total = 0.0
    if N == 0:
        F2 = eval_pfq_regularized(PFQParams((half(L + 2),), (half(2 * L + 5), half(L + 3)), arg), policy)
        total += (
            _sign(L + 1) * math.ldexp(L + 1, -2 * L - 2) * rec_gamma_half(half(L + 3))
            * k ** (L + 1) * math.factorial(L + 1) * F2
        )
        if L > 0:
            F1 = eval_pfq_regularized(PFQParams((half(L),), (half(2 * L + 1), half(L + 1)), arg), policy)
            total += (
                _sign(L - 1) * math.ldexp(L, 2 - 2 * L) * rec_gamma_half(half(L + 1))
                * k ** (L - 1) * math.factorial(L - 1) * F1
            )
    else:
        if L > 0:
            F1 = eval_pfq_regularized(PFQParams((half(L + 1),), (half(2 * L + 1), half(L + 2)), arg), policy)
            total += (
                _sign(L - 2) * math.ldexp(L, 2 - 2 * L) * rec_gamma_half(half(L))
                * k ** (L - 1) * math.factorial(L - 1) * F1
            )
        F2 = eval_pfq_regularized(PFQParams((half(L + 3),), (half(2 * L + 5), half(L + 4)), arg), policy)
        total += (
            _sign(L) * math.ldexp(L + 1, -2 * L - 2) * rec_gamma_half(half(L + 2))
            * k ** (L + 1) * math.factorial(L + 1) * F2
        )
    return 0.5 * _SQRT_PI * total


def _k_zero_limit(spec: CoefficientSpec) -> float:
    # x**p * J_N(0) = x**p * delta_{N0} = P_p(x) * delta_{N0}
    return 1.0 if spec.N == 0 and spec.L == spec.p else 0.0


def coeff_a(
    spec: CoefficientSpec, policy: TruncationPolicy = DEFAULT_POLICY, *, reduced: bool = True
) -> float:
    """Coefficient of P_L in J_N(kx).

    With ``reduced=True`` orders N = 0, 1 use the 1F2 forms; otherwise the
    general regularized 2F3 form is used for every N.
    """
    if spec.p != 0:
        raise DomainError("coeff_a handles p = 0; use coeff_a_p1 for p = 1")
    if spec.vanishes:
        return 0.0
    if spec.k == 0:
        return _k_zero_limit(spec)
    if reduced and spec.N in (0, 1):
        return _a0_reduced(spec.L, spec.N, spec.k, policy)
    return _a0_general(spec.L, spec.N, spec.k, policy)


def coeff_a_p1(
    spec: CoefficientSpec, policy: TruncationPolicy = DEFAULT_POLICY, *, reduced: bool = True
) -> float:
    """Coefficient of P_L in x J_N(kx), a combination of the j_{L-1} and
    j_{L+1} spherical-Bessel pieces."""
    if spec.p != 1:
        raise DomainError("coeff_a_p1 handles p = 1; use coeff_a for p = 0")
    if spec.vanishes:
        return 0.0
    if spec.k == 0:
        return _k_zero_limit(spec)
    if reduced and spec.N in (0, 1):
        return _a1_reduced(spec.L, spec.N, spec.k, policy)
    return _a1_general(spec.L, spec.N, spec.k, policy)


def coeff(spec: CoefficientSpec, policy: TruncationPolicy = DEFAULT_POLICY, *, reduced: bool = True) -> float:
    """Dispatch on ``spec.p``."""
    if spec.p == 0:
        return coeff_a(spec, policy, reduced=reduced)
    return coeff_a_p1(spec, policy, reduced=reduced)


def reconstruct(
    N: int, p: int, k: float, x: float, L_max: int, policy: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """Partial Fourier-Legendre sum approximating ``x**p * J_N(k x)``."""
    if abs(x) > 1:
        raise DomainError(f"reconstruct needs |x| <= 1, got {x!r}")
    if L_max < 0:
        raise DomainError("L_max must be >= 0")
    terms = []
    p_prev, p_cur = 0.0, 1.0
    for L in range(L_max + 1):
        if L == 1:
            p_prev, p_cur = p_cur, x
        elif L > 1:
            p_prev, p_cur = p_cur, ((2 * L - 1) * x * p_cur - (L - 1) * p_prev) / L
        c = coeff(CoefficientSpec(L, N, p, k), policy)
        if c:
            terms.append(c * p_cur)
    return math.fsum(terms)
