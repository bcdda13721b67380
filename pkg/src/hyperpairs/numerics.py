"""Half-integer parameters, gamma factors, phases and the pFq series engine.

Every hypergeometric parameter that occurs in the summation theorems is an
integer or an odd multiple of 1/2, so parameters are carried as
:class:`HalfInt` and pole or parity questions are answered exactly.

The series engine sums in double precision first. When the ratio
``sum(|t_k|) / |sum(t_k)|`` shows that cancellation has eaten more than a few
bits, the same truncated series is re-summed in exact rational arithmetic
(the argument is a binary float and therefore an exact rational) and rounded
once at the end.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Integral
from typing import Iterable, Sequence, Union

from .errors import DomainError, ImaginaryPhase, NotConverged, PoleError

__all__ = [
    "HalfInt",
    "half",
    "PFQParams",
    "PhaseFactor",
    "TruncationPolicy",
    "DEFAULT_POLICY",
    "gamma_half",
    "rec_gamma_half",
    "binom_int",
    "pochhammer",
    "eval_pfq",
    "eval_pfq_regularized",
    "pfq_terms",
    "reduce_phase",
    "gamma_half_exact",
    "scale_by_sqrt_pi",
]

# sqrt(pi) and 1/sqrt(pi) to 75 significant digits.
_SQRT_PI = Fraction("1.77245385090551602729816748334114518279754945612238712821380778985291128459")
_INV_SQRT_PI = Fraction("0.564189583547756286948079451560772585844050629328998856844085721710642468441")

# Float sums are accepted while sum|t_k| / |sum t_k| stays below this bound.
CANCELLATION_LIMIT = 16.0


@lru_cache(maxsize=None)
def _sqrt_pi_power(h: int) -> Fraction:
    return _SQRT_PI**h if h >= 0 else _INV_SQRT_PI ** (-h)


def _to_float(r: Fraction, h: int) -> float:
    """Round ``r * sqrt(pi)**h`` to the nearest double."""
    if r == 0:
        return 0.0
    return float(r * _sqrt_pi_power(h)) if h else float(r)


class HalfInt:
    """An exact number of the form ``twice_value / 2``."""

    __slots__ = ("twice_value",)

    def __init__(self, twice_value: int):
        if isinstance(twice_value, bool) or not isinstance(twice_value, Integral):
            raise TypeError(f"twice_value must be an integer, got {twice_value!r}")
        object.__setattr__(self, "twice_value", int(twice_value))

    def __setattr__(self, name, value):
        raise AttributeError("HalfInt is immutable")

    @classmethod
    def of(cls, value: Union["HalfInt", int, Fraction]) -> "HalfInt":
        """Coerce an int, a HalfInt or a Fraction with denominator 1 or 2."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a valid parameter")
        if isinstance(value, Integral):
            return cls(2 * int(value))
        if isinstance(value, Fraction) and value.denominator in (1, 2):
            return cls(value.numerator * (2 // value.denominator))
        if isinstance(value, Fraction):
            raise DomainError(f"{value} is not an integer or half-integer")
        raise TypeError(f"{value!r} is not an integer or half-integer")

    # predicates -----------------------------------------------------------
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def is_nonpositive_integer(self) -> bool:
        return self.twice_value <= 0 and self.twice_value % 2 == 0

    def is_even(self) -> bool:
        return int(self) % 2 == 0

    def is_odd(self) -> bool:
        return int(self) % 2 == 1

    # conversions ----------------------------------------------------------
    def as_fraction(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def __int__(self) -> int:
        if not self.is_integer():
            raise DomainError(f"{self} is not an integer")
        return self.twice_value // 2

    def __index__(self) -> int:
        return int(self)

    def __float__(self) -> float:
        return self.twice_value / 2

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            other = HalfInt.of(other)
        except TypeError:
            return NotImplemented
        return HalfInt(self.twice_value + other.twice_value)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = HalfInt.of(other)
        except TypeError:
            return NotImplemented
        return HalfInt(self.twice_value - other.twice_value)

    def __rsub__(self, other):
        try:
            other = HalfInt.of(other)
        except TypeError:
            return NotImplemented
        return HalfInt(other.twice_value - self.twice_value)

    def __neg__(self):
        return HalfInt(-self.twice_value)

    # comparison -----------------------------------------------------------
    def _cmp_key(self, other):
        try:
            return HalfInt.of(other).twice_value
        except TypeError:
            return None

    def __eq__(self, other):
        key = self._cmp_key(other)
        return NotImplemented if key is None else self.twice_value == key

    def __lt__(self, other):
        key = self._cmp_key(other)
        return NotImplemented if key is None else self.twice_value < key

    def __le__(self, other):
        key = self._cmp_key(other)
        return NotImplemented if key is None else self.twice_value <= key

    def __gt__(self, other):
        key = self._cmp_key(other)
        return NotImplemented if key is None else self.twice_value > key

    def __ge__(self, other):
        key = self._cmp_key(other)
        return NotImplemented if key is None else self.twice_value >= key

    def __hash__(self):
        return hash(self.as_fraction())

    def __str__(self):
        t = self.twice_value
        return str(t // 2) if t % 2 == 0 else f"{t}/2"

    def __repr__(self):
        return f"HalfInt({self})"


def half(n: int) -> HalfInt:
    """Return ``n/2`` as a :class:`HalfInt`."""
    return HalfInt(n)


ParamLike = Union[HalfInt, int, Fraction]


@dataclass(frozen=True)
class PFQParams:
    """Upper and lower parameter lists of a pFq together with its argument.

    Order is preserved as given. ``len(upper) <= len(lower) + 1`` is enforced.
    """

    upper: tuple
    lower: tuple
    argument: float

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(HalfInt.of(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(HalfInt.of(b) for b in self.lower))
        z = float(self.argument)
        if not math.isfinite(z):
            raise DomainError(f"argument must be finite, got {self.argument!r}")
        object.__setattr__(self, "argument", z)
        if len(self.upper) > len(self.lower) + 1:
            raise DomainError(
                f"{len(self.upper)}F{len(self.lower)} diverges for every nonzero argument"
            )

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def with_argument(self, z: float) -> "PFQParams":
        return PFQParams(self.upper, self.lower, z)

    def __str__(self):
        up = ", ".join(map(str, self.upper))
        lo = ", ".join(map(str, self.lower))
        return f"{self.p}F{self.q}({up}; {lo}; {self.argument!r})"


@dataclass(frozen=True)
class PhaseFactor:
    """A real power of i: ``i**quarter_turns == sign``."""

    quarter_turns: int
    sign: int

    def __post_init__(self):
        if self.quarter_turns % 4 in (1, 3):
            raise ImaginaryPhase(f"i**{self.quarter_turns} is imaginary")
        expected = 1 if self.quarter_turns % 4 == 0 else -1
        if self.sign != expected:
            raise DomainError(f"sign {self.sign} inconsistent with i**{self.quarter_turns}")

    @property
    def value(self) -> float:
        return float(self.sign)


def reduce_phase(quarter_turn_exponent: int) -> PhaseFactor:
    """Reduce ``i**e`` to a real sign; odd exponents raise ImaginaryPhase."""
    q = quarter_turn_exponent % 4
    if q % 2:
        raise ImaginaryPhase(
            f"i**{quarter_turn_exponent} is imaginary; a parity factor was not applied"
        )
    return PhaseFactor(q, 1 if q == 0 else -1)


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule for series: stop after ``consecutive_small`` terms in a
    row satisfy ``|term| < rel_tol * |partial sum|``."""

    max_terms: int = 500
    rel_tol: float = 1e-16
    consecutive_small: int = 3

    def __post_init__(self):
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be > 0")
        if self.consecutive_small < 1:
            raise DomainError("consecutive_small must be >= 1")


DEFAULT_POLICY = TruncationPolicy()


# --------------------------------------------------------------------------
# gamma family


@lru_cache(maxsize=4096)
def _gamma_exact(x: HalfInt) -> "tuple[Fraction, int]":
    """Return ``(r, h)`` with ``Gamma(x) == r * sqrt(pi)**h`` exactly."""
    if x.is_nonpositive_integer():
        raise PoleError(f"Gamma has a pole at {x}")
    t = x.twice_value
    if t % 2 == 0:
        return Fraction(math.factorial(t // 2 - 1)), 0
    m = (t - 1) // 2  # x = m + 1/2
    if m >= 0:
        return Fraction(math.factorial(2 * m), 4**m * math.factorial(m)), 1
    n = -m
    return Fraction((-4) ** n * math.factorial(n), math.factorial(2 * n)), 1


def gamma_half_exact(x: ParamLike) -> "tuple[Fraction, int]":
    """``(r, h)`` with ``Gamma(x) == r * sqrt(pi)**h``, r rational, h in {0, 1}."""
    return _gamma_exact(HalfInt.of(x))


def scale_by_sqrt_pi(r: Fraction, h: int) -> float:
    """``r * sqrt(pi)**h`` rounded once to a double."""
    return _to_float(Fraction(r), h)


def gamma_half(x: ParamLike) -> float:
    """Gamma at an integer or half-integer, from Gamma(1)=1 and Gamma(1/2)=sqrt(pi).

    The rational part is exact and the result is rounded once.
    """
    r, h = _gamma_exact(HalfInt.of(x))
    return _to_float(r, h)


def rec_gamma_half(x: ParamLike) -> float:
    """1/Gamma(x); exactly 0.0 at the poles."""
    x = HalfInt.of(x)
    if x.is_nonpositive_integer():
        return 0.0
    r, h = _gamma_exact(x)
    return _to_float(1 / r, -h)


def binom_int(n: int, k: int) -> float:
    """Binomial coefficient, zero when ``k`` is outside ``[0, n]``."""
    if n < 0:
        raise DomainError(f"binom_int needs n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0.0
    return float(math.comb(n, k))


def pochhammer(a: ParamLike, k: int) -> Fraction:
    """Rising factorial ``(a)_k`` as an exact fraction."""
    if k < 0:
        raise DomainError("pochhammer needs k >= 0")
    t = HalfInt.of(a).twice_value
    num = 1
    for i in range(k):
        num *= t + 2 * i
    return Fraction(num, 2**k)


# --------------------------------------------------------------------------
# series engine


def _ratio(ut: Sequence[int], lt: Sequence[int], k: int) -> "tuple[int, int]":
    """Integers (num, den) with ``term_{k+1} / term_k == num/den * z``."""
    num = 1
    for t in ut:
        num *= t + 2 * k
    den = k + 1
    for t in lt:
        den *= t + 2 * k
    shift = len(lt) - len(ut)
    if shift > 0:
        num <<= shift
    elif shift < 0:
        den <<= -shift
    return num, den


def _float_sum(ut, lt, z, t0, k0, policy):
    terms = [t0]
    running = t0
    small = 0
    k = k0
    term = t0
    while True:
        if len(terms) >= policy.max_terms:
            raise NotConverged(
                f"series not converged after {policy.max_terms} terms (argument {z!r})"
            )
        num, den = _ratio(ut, lt, k)
        if num == 0:
            break
        term = term * (num / den) * z
        k += 1
        terms.append(term)
        running += term
        if abs(term) < policy.rel_tol * abs(running) or (term == 0 and running == 0):
            small += 1
            if small >= policy.consecutive_small:
                break
        else:
            small = 0
    total = math.fsum(terms)
    magnitude = math.fsum(abs(t) for t in terms)
    return total, magnitude


def _exact_sum(ut, lt, z: Fraction, t0: Fraction, k0, policy) -> Fraction:
    total = t0
    term = t0
    small = 0
    count = 1
    k = k0
    tol = Fraction(policy.rel_tol)
    while True:
        if count >= policy.max_terms:
            raise NotConverged(
                f"series not converged after {policy.max_terms} terms (argument {float(z)!r})"
            )
        num, den = _ratio(ut, lt, k)
        if num == 0:
            break
        term = term * Fraction(num * z.numerator, den * z.denominator)
        k += 1
        count += 1
        total += term
        if abs(term) < tol * abs(total) or (term == 0 and total == 0):
            small += 1
            if small >= policy.consecutive_small:
                break
        else:
            small = 0
    return total


def _sum_series(upper, lower, z, k0, r0, h0, policy) -> float:
    """Sum ``sum_{k>=k0} t_k`` where ``t_{k0} = r0 * sqrt(pi)**h0 * z**k0``."""
    if len(upper) == len(lower) + 1 and abs(z) >= 1:
        raise DomainError(
            f"{len(upper)}F{len(lower)} series needs |argument| < 1, got {z!r}"
        )
    if r0 == 0:
        return 0.0
    if z == 0:
        return _to_float(r0, h0) if k0 == 0 else 0.0
    ut = [a.twice_value for a in upper]
    lt = [b.twice_value for b in lower]
    t0 = _to_float(r0, h0) * z**k0
    total, magnitude = _float_sum(ut, lt, z, t0, k0, policy)
    if total != 0 and magnitude <= CANCELLATION_LIMIT * abs(total):
        return total
    zf = Fraction(z)
    exact = _exact_sum(ut, lt, zf, r0 * zf**k0, k0, policy)
    return _to_float(exact, h0)


def eval_pfq(params: PFQParams, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Plain pFq series ``sum_k prod (a_i)_k / prod (b_j)_k * z**k / k!``."""
    for b in params.lower:
        if b.is_nonpositive_integer():
            raise PoleError(
                f"lower parameter {b} is a nonpositive integer; use eval_pfq_regularized"
            )
    return _sum_series(params.upper, params.lower, params.argument, 0, Fraction(1), 0, policy)


def _regularized_start(upper, lower) -> "tuple[int, Fraction, int]":
    k0 = 0
    for b in lower:
        if b.is_nonpositive_integer():
            k0 = max(k0, 1 - int(b))
    r = Fraction(1, math.factorial(k0))
    for a in upper:
        r *= pochhammer(a, k0)
    h = 0
    for b in lower:
        g, gh = _gamma_exact(b + k0)
        r /= g
        h -= gh
    return k0, r, h


def eval_pfq_regularized(
    params: PFQParams, policy: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """Regularized series ``pFq / prod Gamma(b_j)``, finite at lower poles.

    Terms below ``k0 = max(1 - b_j)`` over nonpositive-integer ``b_j`` vanish
    identically, so the sum starts at ``k0`` with gamma reciprocals folded
    into the first term.
    """
    k0, r, h = _regularized_start(params.upper, params.lower)
    return _sum_series(params.upper, params.lower, params.argument, k0, r, h, policy)


def pfq_terms(params: PFQParams, count: int) -> "list[float]":
    """First ``count`` terms of the plain series from the float recurrence."""
    if any(b.is_nonpositive_integer() for b in params.lower):
        raise PoleError("pfq_terms needs pole-free lower parameters")
    ut = [a.twice_value for a in params.upper]
    lt = [b.twice_value for b in params.lower]
    z = params.argument
    terms = [1.0]
    for k in range(count - 1):
        num, den = _ratio(ut, lt, k)
        terms.append(terms[-1] * (num / den) * z)
    return terms[:count]


def params_from(upper: Iterable[ParamLike], lower: Iterable[ParamLike], z: float) -> PFQParams:
    """Convenience constructor."""
    return PFQParams(tuple(upper), tuple(lower), z)
