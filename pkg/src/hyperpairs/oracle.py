"""Brute-force reference values by composite Gauss-Legendre quadrature.

Nothing here calls the closed forms it is used to check: coefficients are
integrated from an independent numpy Bessel series, Xi from the generalized
Bessel window sum, and Euler integrals from the un-lifted series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre as npleg

from .bessel import GeneralizedBesselArgs, generalized_j
from .errors import DomainError
from .numerics import DEFAULT_POLICY, HalfInt, PFQParams, TruncationPolicy, binom_int, eval_pfq

__all__ = [
    "QuadratureRule",
    "DEFAULT_RULE",
    "bessel_j_series",
    "quadrature_coeff",
    "quadrature_xi",
    "quadrature_euler",
    "cos_power_integral",
    "cos_power_quadrature",
]


@lru_cache(maxsize=None)
def _reference_nodes(order: int):
    x, w = npleg.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class QuadratureRule:
    """Composite Gauss-Legendre rule with equal panels."""

    panel_order: int = 64
    panels: int = 4
    interval: tuple = (-1.0, 1.0)
    _nodes: np.ndarray = field(init=False, repr=False, compare=False)
    _weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.panel_order < 2:
            raise DomainError("panel_order must be >= 2")
        if self.panels < 1:
            raise DomainError("panels must be >= 1")
        lo, hi = map(float, self.interval)
        if not hi > lo:
            raise DomainError(f"interval must have hi > lo, got {self.interval}")
        object.__setattr__(self, "interval", (lo, hi))
        x, w = _reference_nodes(self.panel_order)
        edges = np.linspace(lo, hi, self.panels + 1)
        half_width = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        nodes = (mid[:, None] + half_width[:, None] * x[None, :]).ravel()
        weights = (half_width[:, None] * w[None, :]).ravel()
        if abs(weights.sum() - (hi - lo)) > 1e-14 * (hi - lo):
            raise ArithmeticError("Gauss-Legendre weights do not sum to the interval length")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "_nodes", nodes)
        object.__setattr__(self, "_weights", weights)

    @property
    def nodes(self) -> np.ndarray:
        return self._nodes

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    def on(self, lo: float, hi: float) -> "QuadratureRule":
        return QuadratureRule(self.panel_order, self.panels, (lo, hi))

    def refined(self) -> "QuadratureRule":
        """Same rule with twice as many panels."""
        return QuadratureRule(self.panel_order, 2 * self.panels, self.interval)

    def integrate(self, values) -> float:
        return math.fsum(np.asarray(values, dtype=float) * self._weights)


DEFAULT_RULE = QuadratureRule()


def bessel_j_series(N: int, x, terms: int = 80) -> np.ndarray:
    """J_N(x) for N >= 0 from its power series, vectorized over ``x``."""
    if N < 0:
        raise DomainError("bessel_j_series needs N >= 0")
    h = 0.5 * np.asarray(x, dtype=float)
    q = -h * h
    term = h**N / math.factorial(N)
    total = term.copy()
    for m in range(1, terms):
        term = term * q / (m * (m + N))
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total


def quadrature_coeff(L: int, N: int, p: int, k: float, rule: QuadratureRule = DEFAULT_RULE) -> float:
    """(2L+1)/2 times the integral of x**p J_N(kx) P_L(x) over [-1, 1]."""
    if L < 0 or N < 0 or p < 0:
        raise DomainError("L, N and p must be nonnegative")
    r = rule if rule.interval == (-1.0, 1.0) else rule.on(-1.0, 1.0)
    x = r.nodes
    c = np.zeros(L + 1)
    c[L] = 1.0
    f = x**p * bessel_j_series(N, k * x) * npleg.legval(x, c)
    return 0.5 * (2 * L + 1) * r.integrate(f)


def quadrature_xi(spec, rule: QuadratureRule = DEFAULT_RULE, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """2 pi times the integral of u**(2p) J_n(k a0 u, -z/2)**2 over [-1, 1].

    ``spec`` only needs ``n``, ``p``, ``k_alpha0``, ``z`` and ``h_max``.
    """
    r = rule if rule.interval == (-1.0, 1.0) else rule.on(-1.0, 1.0)
    y = -spec.z / 2
    vals = [
        u ** (2 * spec.p) * generalized_j(GeneralizedBesselArgs(spec.n, spec.k_alpha0 * u, y, spec.h_max), policy) ** 2
        for u in r.nodes
    ]
    return 2 * math.pi * r.integrate(vals)


def quadrature_euler(
    params: PFQParams, alpha, omega: float, rule: QuadratureRule = DEFAULT_RULE,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """Integral of y**(alpha-1) F(-omega y) over [0, 1].

    With y = t**2 this becomes 2 * integral of t**(2 alpha - 1) F(-omega t**2),
    a polynomial weight times an entire function, since 2 alpha is a positive
    integer.
    """
    alpha = HalfInt.of(alpha)
    if alpha <= 0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    r = rule.on(0.0, 1.0)
    power = alpha.twice_value - 1
    vals = [t**power * eval_pfq(params.with_argument(-omega * t * t), policy) for t in r.nodes]
    return 2 * r.integrate(vals)


def cos_power_integral(m: int, n: int) -> float:
    """Integral of cos(theta)**m cos(n theta) over [0, pi] in closed form."""
    if m < 0 or n < 0:
        raise DomainError(f"cos_power_integral needs m, n >= 0, got ({m}, {n})")
    if n > m or (m - n) % 2:
        return 0.0
    return 2 * math.pi / 2 ** (m + 1) * binom_int(m, (m - n) // 2)


def cos_power_quadrature(m: int, n: int, rule: QuadratureRule = DEFAULT_RULE) -> float:
    if m < 0 or n < 0:
        raise DomainError(f"cos_power_quadrature needs m, n >= 0, got ({m}, {n})")
    r = rule.on(0.0, math.pi)
    th = r.nodes
    return r.integrate(np.cos(th) ** m * np.cos(n * th))
