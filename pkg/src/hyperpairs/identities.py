"""Both sides of the 3F4 summation theorems and the angular amplitudes Xi.

For integers mu, nu of equal parity, s = (mu + nu)/2 and p in {0, 1},

    3F4(s+1/2, s+1/2+p, s+1; mu+1, nu+1, mu+nu+1, s+3/2+p; z)

equals an infinite sum over Legendre degree L of pair products of
regularized 2F3 functions of z/4. The two sides arise from evaluating

    Xi_n^p = integral over the sphere of cos(theta)**(2p) J_n(k a0 cos theta, -z/2)**2

once through the Fourier-Legendre expansion of each Bessel factor
(:func:`xi_legendre`) and once by combining Bessel pairs into a 2F3 and
integrating term by term (:func:`xi_direct`).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

from .bessel import default_h_max, j_int
from .errors import DomainError, ParityError
from .legendre import CoefficientSpec, coeff
from .numerics import (
    DEFAULT_POLICY,
    HalfInt,
    PFQParams,
    TruncationPolicy,
    eval_pfq,
    eval_pfq_regularized,
    half,
    rec_gamma_half,
    reduce_phase,
    scale_by_sqrt_pi,
)

__all__ = [
    "Form",
    "IdentityInstance",
    "IdentityReport",
    "ab_reparam",
    "lhs_params",
    "lhs_3f4",
    "munu_rhs_term",
    "rhs_term",
    "rhs_sum",
    "surviving_L",
    "agreed_digits",
    "EulerLift",
    "euler_lift",
    "XiSpec",
    "xi_components",
    "xi_direct",
    "xi_legendre",
]


class Form(enum.Enum):
    MUNU = "MuNu"
    AB = "AB"
    SPECIAL00 = "Special00"
    SPECIAL11 = "Special11"


def ab_reparam(a: int, b: int) -> "tuple[int, int]":
    """Map the (a, b) labelling back to (mu, nu) = (a - b, b - 1)."""
    if a < 1 or a % 2 == 0:
        raise DomainError(f"a must be an odd integer >= 1, got {a}")
    if not 1 <= b <= a:
        raise DomainError(f"b must satisfy 1 <= b <= a, got a={a}, b={b}")
    return a - b, b - 1


@dataclass(frozen=True)
class IdentityInstance:
    """One case of the summation theorem.

    Prefer the constructors :meth:`munu`, :meth:`ab`, :meth:`special00` and
    :meth:`special11`; ``mu``/``nu`` are always filled in, so every form can
    be compared against the general one.
    """

    form: Form
    p: int
    mu: int
    nu: int
    z: float
    a: Optional[int] = None
    b: Optional[int] = None

    def __post_init__(self):
        if self.p not in (0, 1):
            raise DomainError(f"p must be 0 or 1, got {self.p}")
        if self.mu < 0 or self.nu < 0:
            raise DomainError(f"mu and nu must be nonnegative, got ({self.mu}, {self.nu})")
        if (self.mu - self.nu) % 2:
            raise ParityError(
                f"mu={self.mu} and nu={self.nu} differ in parity; the sum is identically zero"
            )
        if self.form is Form.AB:
            if (self.mu, self.nu) != ab_reparam(self.a, self.b):
                raise DomainError("AB instance has inconsistent (mu, nu)")
        elif self.form is Form.SPECIAL00 and (self.mu, self.nu) != (0, 0):
            raise DomainError("Special00 requires mu = nu = 0")
        elif self.form is Form.SPECIAL11 and (self.mu, self.nu) != (1, 1):
            raise DomainError("Special11 requires mu = nu = 1")
        z = float(self.z)
        if not math.isfinite(z):
            raise DomainError("z must be finite")
        if z == 0 and self.mu + self.nu > 0:
            raise DomainError("z = 0 is a removable singularity of the right-hand side for mu + nu > 0")
        object.__setattr__(self, "z", z)

    @classmethod
    def munu(cls, mu: int, nu: int, p: int, z: float) -> "IdentityInstance":
        return cls(Form.MUNU, p, mu, nu, z)

    @classmethod
    def ab(cls, a: int, b: int, p: int, z: float) -> "IdentityInstance":
        mu, nu = ab_reparam(a, b)
        return cls(Form.AB, p, mu, nu, z, a, b)

    @classmethod
    def special00(cls, p: int, z: float) -> "IdentityInstance":
        return cls(Form.SPECIAL00, p, 0, 0, z)

    @classmethod
    def special11(cls, p: int, z: float) -> "IdentityInstance":
        return cls(Form.SPECIAL11, p, 1, 1, z)

    def as_munu(self) -> "IdentityInstance":
        return IdentityInstance.munu(self.mu, self.nu, self.p, self.z)

    def describe(self) -> dict:
        d = {"form": self.form.value, "p": self.p, "mu": self.mu, "nu": self.nu, "z": self.z}
        if self.form is Form.AB:
            d["a"], d["b"] = self.a, self.b
        return d


def agreed_digits(lhs: float, rhs: float) -> "tuple[float, float, int]":
    """``(abs_err, rel_err, digits)`` with digits = floor(-log10 rel_err).

    Identical doubles report 16 digits, the most a double can resolve.
    """
    abs_err = abs(lhs - rhs)
    scale = abs(lhs)
    rel_err = abs_err / scale if scale else (0.0 if abs_err == 0 else math.inf)
    if rel_err == 0:
        digits = 16
    elif math.isinf(rel_err):
        digits = 0
    else:
        digits = math.floor(-math.log10(rel_err))
    return abs_err, rel_err, digits


@dataclass(frozen=True)
class IdentityReport:
    lhs: float
    rhs_partials: list
    nonzero_terms_used: int
    agreed_digits: int
    abs_err: float
    rel_err: float

    @property
    def rhs(self) -> float:
        return self.rhs_partials[-1][1] if self.rhs_partials else 0.0


# --------------------------------------------------------------------------
# left-hand sides


def lhs_params(instance: IdentityInstance) -> PFQParams:
    """Parameter set of the left-hand side, in the printed order for each form."""
    z, p = instance.z, instance.p
    if instance.form is Form.SPECIAL00:
        if p == 0:
            return PFQParams((half(1), half(1)), (1, 1, half(3)), z)
        return PFQParams((half(1), half(3)), (1, 1, half(5)), z)
    if instance.form is Form.SPECIAL11:
        if p == 0:
            return PFQParams((half(3), half(3)), (2, half(5), 3), z)
        return PFQParams((half(3), half(5)), (2, 3, half(7)), z)
    if instance.form is Form.AB:
        a, b = instance.a, instance.b
        if p == 0:
            return PFQParams((half(a + 1), half(a), half(a)), (half(a + 2), a, a - b + 1, b), z)
        return PFQParams((half(a + 1), half(a), half(a + 2)), (a, a - b + 1, b, half(a + 4)), z)
    mu, nu = instance.mu, instance.nu
    s = half(mu + nu)
    if p == 0:
        return PFQParams((s + half(1), s + half(1), s + 1), (mu + 1, s + half(3), nu + 1, mu + nu + 1), z)
    return PFQParams((s + half(1), s + 1, s + half(3)), (mu + 1, nu + 1, mu + nu + 1, s + half(5)), z)


def lhs_3f4(instance: IdentityInstance, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    return eval_pfq(lhs_params(instance), policy)


# --------------------------------------------------------------------------
# right-hand sides


def surviving_L(mu: int, nu: int, p: int, L: int) -> bool:
    """True when both parity factors of the L-th term are nonzero."""
    return (L + mu + p) % 2 == 0 and (L + nu + p) % 2 == 0


def _rf(twice_upper, twice_lower, w, policy):
    params = PFQParams(tuple(map(half, twice_upper)), tuple(map(half, twice_lower)), w)
    return eval_pfq_regularized(params, policy)


def _fact(n: int) -> int:
    return math.factorial(n)


def _p0_pair_factor(L: int, m: int, w: float, policy) -> float:
    # 2F3~(L/2+1/2, L/2+1; L+3/2, L/2-m/2+1, L/2+m/2+1; w)
    return _rf((L + 1, L + 2), (2 * L + 3, L - m + 2, L + m + 2), w, policy)


def _p1_pair_factor(L: int, m: int, z: float, policy) -> float:
    # Gamma(L+1) 2F3~(L/2+1/2, L/2; L+1/2, (L-m+1)/2, (L+m+1)/2; z/4)
    #   + (L+1) Gamma(L+2) z/16 2F3~(L/2+1, L/2+3/2; L+5/2, (L-m+3)/2, (L+m+3)/2; z/4)
    w = z / 4
    total = (L + 1) * _fact(L + 1) / 16 * z * _rf((L + 2, L + 3), (2 * L + 5, L - m + 3, L + m + 3), w, policy)
    if L > 0:
        total += _fact(L) * _rf((L + 1, L), (2 * L + 1, L - m + 1, L + m + 1), w, policy)
    return total


def _p0_weight(L: int) -> "tuple[Fraction, int]":
    """4 (2L+1) Gamma(2L+2)^2 / Gamma(L+3/2)^2 as r * sqrt(pi)**h."""
    # Gamma(L+3/2) = (2L+2)! / (4^(L+1) (L+1)!) * sqrt(pi)
    g = Fraction(_fact(2 * L + 2), 4 ** (L + 1) * _fact(L + 1))
    return 4 * (2 * L + 1) * Fraction(_fact(2 * L + 1)) ** 2 / g**2, -2


def munu_rhs_term(mu: int, nu: int, p: int, z: float, L: int, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Single L-term of the general right-hand side, without the parity guard.

    Returns exactly 0.0 whenever a parity factor vanishes, including for
    mixed-parity (mu, nu).
    """
    if not surviving_L(mu, nu, p, L):
        return 0.0
    if (mu + nu) % 2:
        raise ParityError("unreachable: surviving term with mixed parity")
    s = (mu + nu) // 2
    if p == 0:
        sign = reduce_phase(4 * L - 2 * mu - 2 * nu).value
        r, h = _p0_weight(L)
        r *= (mu + nu + 1) * _fact(mu) * _fact(nu) * Fraction(2) ** (mu + nu - 8 * L - 6)
        pref = scale_by_sqrt_pi(r, h + 4)
        w = z / 4
        # pair product formed first so the term is exactly symmetric in (mu, nu)
        pair = _p0_pair_factor(L, mu, w, policy) * _p0_pair_factor(L, nu, w, policy)
        return sign * pref * z ** (L - s) * pair
    # i^(-mu-nu) i^(2L-2) (-1)^(L-s-1)
    sign = reduce_phase(-(mu + nu) + (2 * L - 2) + 2 * (L - s - 1)).value
    r = Fraction(_fact(mu) * _fact(nu) * (mu + nu + 3) * 4, 2 * L + 1) * Fraction(2) ** (mu + nu - 4 * L)
    pref = scale_by_sqrt_pi(r, 2)
    pair = _p1_pair_factor(L, mu, z, policy) * _p1_pair_factor(L, nu, z, policy)
    return sign * pref * z ** (L - 1 - s) * pair


def _ab_term(a: int, b: int, p: int, z: float, L: int, policy) -> float:
    # Printed (a, b) form, evaluated independently of the (mu, nu) route.
    w = z / 4
    if p == 0:
        if (b + L - 1) % 2 or (a - b + L) % 2:
            return 0.0
        sign = reduce_phase(-2 * a + 4 * L + 2).value
        r, h = _p0_weight(L)
        r *= a * _fact(b - 1) * _fact(a - b) * Fraction(2) ** (a - 8 * L - 7)
        pref = scale_by_sqrt_pi(r, h + 4)
        f1 = _rf((L + 1, L + 2), (2 * L + 3, L - b + 3, L + b + 1), w, policy)
        f2 = _rf((L + 1, L + 2), (2 * L + 3, L - a + b + 2, L + a - b + 2), w, policy)
        return sign * pref * z ** ((1 - a) // 2 + L) * f1 * f2
    if (b + L) % 2 or (a - b + L + 1) % 2:
        return 0.0
    sign = reduce_phase((1 - a) + (2 * L - 2) + 2 * ((1 - a) // 2 + L - 1)).value
    r = Fraction(_fact(b - 1) * _fact(a - b) * (a + 2) * 4, 2 * L + 1) * Fraction(2) ** (a - 1 - 4 * L)
    pref = scale_by_sqrt_pi(r, 2)

    def pair(lo1, lo2, hi1, hi2):
        total = (L + 1) * _fact(L + 1) / 16 * z * _rf((L + 2, L + 3), (2 * L + 5, hi1, hi2), w, policy)
        if L > 0:
            total += _fact(L) * _rf((L + 1, L), (2 * L + 1, lo1, lo2), w, policy)
        return total

    b1 = pair(L - b + 2, L + b, L - b + 4, L + b + 2)
    b2 = pair(L + b - a + 1, L + a - b + 1, L + b - a + 3, L + a - b + 3)
    return sign * pref * z ** ((1 - a) // 2 + L - 1) * b1 * b2


def _special_term(which: Form, p: int, z: float, L: int, policy) -> float:
    w = z / 4
    pi_sq_pow = 4  # sqrt(pi)**4 = pi**2
    if p == 0:
        if which is Form.SPECIAL00:
            if L % 2:
                return 0.0
            r, h = _p0_weight(L)
            r *= Fraction(1, 2 ** (8 * L + 6))
            g = rec_gamma_half(half(L + 2))
            f = _rf((L + 1,), (2 * L + 3, L + 2), w, policy)
            return reduce_phase(4 * L).value * scale_by_sqrt_pi(r, h + pi_sq_pow) * g * g * z**L * f * f
        if L % 2 == 0:
            return 0.0
        r, h = _p0_weight(L)
        r *= Fraction(3, 2 ** (8 * L + 4))
        g = rec_gamma_half(half(L + 1))
        f = _rf((L + 2,), (2 * L + 3, L + 3), w, policy)
        return reduce_phase(4 * L - 4).value * scale_by_sqrt_pi(r, h + pi_sq_pow) * g * g * z ** (L - 1) * f * f
    if which is Form.SPECIAL00:
        if L % 2 == 0:
            return 0.0
        sign = reduce_phase(2 * (L - 1) + 2 * L - 2).value
        pref = scale_by_sqrt_pi(Fraction(3 * 4, 4 * (2 * L + 1)) * Fraction(2) ** (2 - 4 * L), 2)
        inner = (
            (L + 1) * _fact(L + 1) / 16 * rec_gamma_half(half(L + 3)) * z
            * _rf((L + 2,), (2 * L + 5, L + 3), w, policy)
        )
        if L > 0:
            inner += _fact(L) * rec_gamma_half(half(L + 1)) * _rf((L,), (2 * L + 1, L + 1), w, policy)
        return sign * pref * z ** (L - 1) * inner * inner
    if L % 2:
        return 0.0
    # -(5 pi / z) (-1)^(L-2) i^(2L-2)
    sign = reduce_phase(2 + 2 * (L - 2) + 2 * L - 2).value
    pref = scale_by_sqrt_pi(Fraction(5 * 4, 2 * L + 1) * Fraction(2) ** (2 - 4 * L), 2)
    inner = (
        (L + 1) * _fact(L + 1) / 16 * rec_gamma_half(half(L + 2)) * z
        * _rf((L + 3,), (2 * L + 5, L + 4), w, policy)
    )
    if L > 0:
        inner += _fact(L) * rec_gamma_half(half(L)) * _rf((L + 1,), (2 * L + 1, L + 2), w, policy)
    return sign * pref * z ** (L - 2) * inner * inner


def rhs_term(instance: IdentityInstance, L: int, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """The L-th term of the right-hand side in the instance's own printed form."""
    if L < 0:
        raise DomainError("L must be >= 0")
    if instance.form is Form.AB:
        return _ab_term(instance.a, instance.b, instance.p, instance.z, L, policy)
    if instance.form in (Form.SPECIAL00, Form.SPECIAL11):
        return _special_term(instance.form, instance.p, instance.z, L, policy)
    return munu_rhs_term(instance.mu, instance.nu, instance.p, instance.z, L, policy)


def rhs_sum(
    instance: IdentityInstance,
    nonzero_terms: int,
    policy: TruncationPolicy = DEFAULT_POLICY,
    *,
    max_L: Optional[int] = None,
) -> IdentityReport:
    """Sum the first ``nonzero_terms`` parity-surviving L terms.

    ``max_L`` additionally stops the sum once L exceeds it, for comparisons
    whose truncation is by degree rather than by term count.
    """
    if nonzero_terms < 1:
        raise DomainError("nonzero_terms must be >= 1")
    lhs = lhs_3f4(instance, policy)
    terms = []
    partials = []
    L = 0
    while len(partials) < nonzero_terms and (max_L is None or L <= max_L):
        if surviving_L(instance.mu, instance.nu, instance.p, L):
            terms.append(rhs_term(instance, L, policy))
            partials.append((L, math.fsum(terms)))
        L += 1
    rhs = partials[-1][1] if partials else 0.0
    abs_err, rel_err, digits = agreed_digits(lhs, rhs)
    return IdentityReport(lhs, partials, len(partials), digits, abs_err, rel_err)


# --------------------------------------------------------------------------
# Euler integral lift


class EulerLift(NamedTuple):
    params: PFQParams
    prefactor: float

    def value(self, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
        return self.prefactor * eval_pfq(self.params, policy)


def euler_lift(params: PFQParams, alpha) -> EulerLift:
    """Raise a pFq to p+1Fq+1 by integrating against y**(alpha-1) on [0, 1].

    ``prefactor * F_lifted(params.argument)`` equals
    ``integral_0^1 y**(alpha-1) F(params.argument * y) dy``, with prefactor
    Gamma(alpha) Gamma(1) / Gamma(alpha+1) = 1/alpha.
    """
    alpha = HalfInt.of(alpha)
    if alpha <= 0:
        raise DomainError(f"Euler lift needs alpha > 0, got {alpha}")
    lifted = PFQParams(params.upper + (alpha,), params.lower + (alpha + 1,), params.argument)
    return EulerLift(lifted, 2 / alpha.twice_value)


# --------------------------------------------------------------------------
# angular amplitudes


@dataclass(frozen=True)
class XiSpec:
    """Truncation and physical parameters of Xi_n^p(k a0, -z/2)."""

    n: int
    p: int
    k_alpha0: float
    z: float
    j_max: int = 8
    M_max: int = 8
    l_max: int = 12
    h_max: Optional[int] = None

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"harmonic index n must be >= 0, got {self.n}")
        if self.p not in (0, 1):
            raise DomainError(f"p must be 0 or 1, got {self.p}")
        if not self.k_alpha0 >= 0:
            raise DomainError(f"k_alpha0 must be >= 0, got {self.k_alpha0!r}")
        if self.j_max < 1 or self.M_max < 1:
            raise DomainError("j_max and M_max must be >= 1")
        if self.l_max < 0:
            raise DomainError("l_max must be >= 0")
        if self.h_max is None:
            object.__setattr__(self, "h_max", default_h_max(self.k_alpha0, self.z / 2, self.n))

    @property
    def delta(self) -> int:
        return self.n % 2


class _Component(NamedTuple):
    order: int
    weight: float


def xi_components(spec: XiSpec, upto: int, policy: TruncationPolicy = DEFAULT_POLICY):
    """Split J_n(x, y) into two sums over nonnegative Bessel orders.

    First sum: orders n + 2j with weights J_{-j}(y), j >= -(n - delta)/2.
    Second sum: orders 2j - n with weights (-1)^n J_j(y), j >= (n - delta)/2 + 1.
    Both are truncated at j <= ``upto``.
    """
    y = -spec.z / 2
    lo = (spec.n - spec.delta) // 2
    first = [_Component(spec.n + 2 * j, j_int(-j, y, policy)) for j in range(-lo, upto + 1)]
    sgn = -1.0 if spec.n % 2 else 1.0
    second = [_Component(2 * j - spec.n, sgn * j_int(j, y, policy)) for j in range(lo + 1, upto + 1)]
    return first, second


def _pair_integral(mu: int, nu: int, p: int, x: float, policy) -> float:
    # integral_{-1}^{1} u^{2p} J_mu(xu) J_nu(xu) du through the lifted 2F3
    if (mu + nu) % 2:
        return 0.0
    s = half(mu + nu)
    base = PFQParams((s + half(1), s + 1), (mu + 1, nu + 1, mu + nu + 1), -x * x)
    lift = euler_lift(base, s + half(1) + p)
    return (0.5 * x) ** (mu + nu) / (_fact(mu) * _fact(nu)) * lift.value(policy)


def xi_direct(spec: XiSpec, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Xi_n^p as the four-quadrant double sum of 3F4 functions."""
    x = spec.k_alpha0
    first_j, second_j = xi_components(spec, spec.j_max, policy)
    first_m, second_m = xi_components(spec, spec.M_max, policy)
    cache = {}

    def integral(a, b):
        key = (min(a, b), max(a, b))
        if key not in cache:
            cache[key] = _pair_integral(key[0], key[1], spec.p, x, policy)
        return cache[key]

    terms = []
    for js, ms in ((first_j, first_m), (second_j, first_m), (first_j, second_m), (second_j, second_m)):
        for cj in js:
            for cm in ms:
                if cj.weight and cm.weight:
                    terms.append(cj.weight * cm.weight * integral(cj.order, cm.order))
    return 2 * math.pi * math.fsum(terms)


def xi_legendre(spec: XiSpec, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Xi_n^p as sum_l F_l0^2 with F_l0 built from Fourier-Legendre coefficients."""
    x = spec.k_alpha0
    first, second = xi_components(spec, spec.j_max, policy)
    components = first + second
    total = []
    for l in range(spec.l_max + 1):
        # curly J_l^N = 2 pi integral_{-1}^{1} x^p J_N(k a0 x) P_l(x) dx = 4 pi a_lN / (2l + 1)
        inner = math.fsum(
            c.weight * coeff(CoefficientSpec(l, c.order, spec.p, x), policy) for c in components if c.weight
        )
        curly = 4 * math.pi * inner / (2 * l + 1)
        F = (-1) ** l * math.sqrt((2 * l + 1) / (4 * math.pi)) * curly
        total.append(F * F)
    return math.fsum(total)
