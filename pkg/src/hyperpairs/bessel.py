"""Integer-order Bessel functions through 0F1, pair products through 2F3, and
the two-argument generalized Bessel function."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import DomainError
from .numerics import DEFAULT_POLICY, PFQParams, TruncationPolicy, eval_pfq, half

__all__ = [
    "j_int",
    "product_2f3",
    "GeneralizedBesselArgs",
    "default_h_max",
    "generalized_j",
    "generalized_j_shell",
]


@lru_cache(maxsize=65536)
def _j_nonneg(n: int, z: float, policy: TruncationPolicy) -> float:
    # J_n(z) = (z/2)^n / n! * 0F1(; n+1; -z^2/4)
    series = eval_pfq(PFQParams((), (n + 1,), -0.25 * z * z), policy)
    return (0.5 * z) ** n / math.factorial(n) * series


def j_int(N: int, z: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """J_N(z) for any integer order, with J_{-N} = (-1)^N J_N."""
    z = float(z)
    if N >= 0:
        return _j_nonneg(N, z, policy)
    value = _j_nonneg(-N, z, policy)
    return -value if N % 2 else value


def product_2f3(mu: int, nu: int, z: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """J_mu(z) * J_nu(z) evaluated as a single 2F3."""
    if mu < 0 or nu < 0:
        raise DomainError(f"product_2f3 needs nonnegative orders, got ({mu}, {nu})")
    z = float(z)
    s = half(mu + nu)
    params = PFQParams((s + half(1), s + 1), (mu + 1, nu + 1, mu + nu + 1), -z * z)
    prefactor = (0.5 * z) ** (mu + nu) / (math.factorial(mu) * math.factorial(nu))
    return prefactor * eval_pfq(params, policy)


def default_h_max(x: float, y: float, n: int = 0) -> int:
    """Half-width past which J_{n-2h}(x) J_h(y) is negligible.

    The outer terms have orders 2h - |n| and h, so the window widens by
    about |n|/2 to keep the same margin for nonzero n.
    """
    return 3 + math.ceil(abs(x)) + math.ceil(abs(y)) + (abs(n) + 1) // 2


@dataclass(frozen=True)
class GeneralizedBesselArgs:
    n: int
    x: float
    y: float
    h_max: Optional[int] = None

    def __post_init__(self):
        if self.h_max is None:
            object.__setattr__(self, "h_max", default_h_max(self.x, self.y, self.n))
        if self.h_max < 0:
            raise DomainError("h_max must be >= 0")


def generalized_j_shell(args: GeneralizedBesselArgs, policy: TruncationPolicy = DEFAULT_POLICY):
    """Return ``(value, last_shell)`` for the symmetric window sum.

    ``last_shell`` is ``|term(h_max)| + |term(-h_max)|`` and says how much the
    outermost included shell contributed.
    """
    n, x, y, H = args.n, args.x, args.y, args.h_max
    terms = [j_int(n - 2 * h, x, policy) * j_int(h, y, policy) for h in range(-H, H + 1)]
    last = abs(terms[0]) + abs(terms[-1]) if H > 0 else abs(terms[0])
    return math.fsum(terms), last


def generalized_j(args: GeneralizedBesselArgs, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """J_n(x, y) = sum_h J_{n-2h}(x) J_h(y), truncated to |h| <= h_max."""
    return generalized_j_shell(args, policy)[0]
