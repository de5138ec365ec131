"""
qseries - q-Pochhammer / 고전 Pochhammer 기호와 영점 차수 관리
음의 길이 확장, (1-1) 형태 인자의 정확한 영점/극 추적, 무한곱 수치 평가
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Generic, Iterable, Tuple, TypeVar, Union

import mpmath

from ..algebra.qpoly import LaurentQ, RatFuncQ, factor_one_minus
from ..core.errors import Divergent, InvalidArgument, PoleError
from ..core.exact import as_rational

logger = logging.getLogger(__name__)

V = TypeVar("V", RatFuncQ, Fraction)


@dataclass(frozen=True)
class ExtTerm(Generic[V]):
    """A value with an exact zero-order counter.

    zero_order > 0 is an exact zero, 0 means `value`, < 0 is a pole.
    """
    zero_order: int
    value: V

    @classmethod
    def of(cls, value: V) -> "ExtTerm[V]":
        if isinstance(value, RatFuncQ) and value.is_zero or isinstance(value, Fraction) and value == 0:
            return cls(1, _unit_like(value))
        return cls(0, value)

    @property
    def is_zero(self) -> bool:
        return self.zero_order > 0

    @property
    def is_pole(self) -> bool:
        return self.zero_order < 0

    def __mul__(self, other: Union["ExtTerm[V]", int, Fraction]) -> "ExtTerm[V]":
        if not isinstance(other, ExtTerm):
            return self * ExtTerm.of(_scalar_like(self.value, other))
        return ExtTerm(self.zero_order + other.zero_order, self.value * other.value)

    __rmul__ = __mul__

    def reciprocal(self) -> "ExtTerm[V]":
        return ExtTerm(-self.zero_order, 1 / self.value)

    def __truediv__(self, other: "ExtTerm[V]") -> "ExtTerm[V]":
        return self * other.reciprocal()

    def __pow__(self, exponent: int) -> "ExtTerm[V]":
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        return ExtTerm(self.zero_order * exponent, self.value ** exponent)

    def __neg__(self) -> "ExtTerm[V]":
        return ExtTerm(self.zero_order, -self.value)

    def __add__(self, other: "ExtTerm[V]") -> "ExtTerm[V]":
        return ext_sum([self, other])

    def __sub__(self, other: "ExtTerm[V]") -> "ExtTerm[V]":
        return ext_sum([self, -other])

    def finite(self) -> V:
        """Plain value; exact zero becomes 0, a pole raises PoleError."""
        if self.zero_order < 0:
            raise PoleError(f"pole of order {-self.zero_order}")
        if self.zero_order > 0:
            return self.value * 0
        return self.value

    def __str__(self) -> str:
        if self.zero_order > 0:
            return "0"
        if self.zero_order < 0:
            return f"pole(order {-self.zero_order})"
        return str(self.value)


def _unit_like(value):
    return RatFuncQ.one() if isinstance(value, RatFuncQ) else Fraction(1)


def _scalar_like(value, scalar):
    scalar = as_rational(scalar)
    return RatFuncQ.constant(scalar) if isinstance(value, RatFuncQ) else scalar


def ext_sum(terms: Iterable[ExtTerm]) -> ExtTerm:
    """Sum of terms with zero_order >= 0; the result keeps the lowest order."""
    terms = list(terms)
    if not terms:
        raise InvalidArgument("empty sum has no value type")
    for t in terms:
        if t.zero_order < 0:
            raise PoleError(f"addition involving a pole of order {-t.zero_order}")
    order = min(t.zero_order for t in terms)
    values = [t.value for t in terms if t.zero_order == order]
    if order > 0:
        # 모든 항이 정확한 0
        return ExtTerm(order, _unit_like(terms[0].value))
    if isinstance(values[0], RatFuncQ):
        total = RatFuncQ.sum(values)
    else:
        total = sum(values, Fraction(0))
    return ExtTerm.of(total)


# ---------------------------------------------------------------------------
# q-Pochhammer
# ---------------------------------------------------------------------------

A_ONE = LaurentQ.monomial(1, 0)


def a_subst(exponent: int, sign: int = 1) -> LaurentQ:
    """Substitution a = sign * q^exponent."""
    return LaurentQ.monomial(sign, exponent)


@dataclass(frozen=True)
class PochSpec:
    """(A; q^base) with A = sign * a^a_power * q^q_exponent."""
    q_exponent: int
    base: int
    a_power: int = 0
    sign: int = 1

    def __post_init__(self):
        if self.base < 1:
            raise InvalidArgument(f"base exponent must be >= 1, got {self.base}")
        if self.a_power not in (-1, 0, 1):
            raise InvalidArgument(f"a_power must be -1, 0 or 1, got {self.a_power}")
        if self.sign not in (-1, 1):
            raise InvalidArgument(f"sign must be +-1, got {self.sign}")

    def argument(self, a: LaurentQ = A_ONE) -> Tuple[int, int]:
        """(sign, exponent) of the substituted argument monomial."""
        if self.a_power == 0:
            return self.sign, self.q_exponent
        coeff, exponent = a.as_monomial()
        if coeff not in (1, -1):
            raise InvalidArgument(f"a must be +-q^s, got {a}")
        a_sign = int(coeff)
        return self.sign * a_sign, self.q_exponent + self.a_power * exponent

    def describe(self) -> str:
        a_part = {1: "a", -1: "1/a", 0: ""}[self.a_power]
        sign = "-" if self.sign < 0 else ""
        return f"({sign}{a_part}q^{self.q_exponent};q^{self.base})"


def poch(q_exponent: int, base: int, a_power: int = 0, sign: int = 1) -> PochSpec:
    return PochSpec(q_exponent=q_exponent, base=base, a_power=a_power, sign=sign)


@lru_cache(maxsize=8192)
def _qpoch_factored(sign: int, exponent: int, base: int, n: int) -> ExtTerm:
    zero_order = 0
    coeff = 1
    shift = 0
    factors = {}
    if n >= 0:
        indices, direction = range(n), 1
    else:
        # (A;q^b)_{-m} = 1 / prod_{j=1}^{m} (1 - A q^{-bj})
        indices, direction = range(1, -n + 1), -1
    for j in indices:
        factored = factor_one_minus(sign, exponent + direction * base * j)
        if factored is None:
            zero_order += direction
            continue
        c, s, ds = factored
        coeff *= c
        shift += direction * s
        for d in ds:
            factors[d] = factors.get(d, 0) + direction
    value = RatFuncQ.cyclotomic_product(factors, coeff=Fraction(coeff) ** direction, shift=shift)
    return ExtTerm(zero_order, value)


def qpochhammer(spec: PochSpec, a: LaurentQ, n: int) -> ExtTerm:
    """(A; q^b)_n for any integer n, with literal zero factors counted in zero_order."""
    sign, exponent = spec.argument(a)
    return _qpoch_factored(sign, exponent, spec.base, n)


@lru_cache(maxsize=8192)
def pochhammer(x: Fraction, n: int) -> ExtTerm:
    """Rising factorial (x)_n, extended to n < 0 by (x)_{-m} = 1/((x-m)...(x-1))."""
    x = as_rational(x)
    zero_order = 0
    value = Fraction(1)
    if n >= 0:
        for j in range(n):
            factor = x + j
            if factor == 0:
                zero_order += 1
            else:
                value *= factor
    else:
        for j in range(1, -n + 1):
            factor = x - j
            if factor == 0:
                zero_order -= 1
            else:
                value /= factor
    return ExtTerm(zero_order, value)


def qpoch_infinite(spec: PochSpec, a: LaurentQ, q0, precision: int = 30) -> mpmath.mpf:
    """(A; q^b)_inf at a real |q0| < 1, truncated with a log-sum tail bound."""
    sign, exponent = spec.argument(a)
    b = spec.base
    with mpmath.workdps(precision + 10):
        x = q0 if isinstance(q0, mpmath.mpf) else _to_mpf(q0)
        if abs(x) >= 1:
            raise Divergent(f"|q0| = {mpmath.nstr(abs(x), 5)} is not below 1")
        if x == 0:
            if exponent < 0:
                raise Divergent("argument is infinite at q0 = 0")
            return mpmath.mpf(1) - sign if exponent == 0 else mpmath.mpf(1)

        eps = mpmath.mpf(10) ** (-(precision + 5))
        ratio = abs(x) ** b
        product = mpmath.mpf(1)
        j = 0
        while True:
            term = sign * x ** (exponent + b * j)
            product *= 1 - term
            j += 1
            t_next = abs(x) ** (exponent + b * j)
            if t_next < 1:
                # |log prod_{i>=j}(1 - t_i)| <= sum t_i / (1 - t_j)
                tail = t_next / (1 - ratio) / (1 - t_next)
                if mpmath.expm1(tail) < eps:
                    break
            if j > 10 ** 6:
                raise Divergent("infinite product did not reach the requested precision")
        logger.debug(f"{spec.describe()} at q0={mpmath.nstr(x, 8)}: {j} factors")
        return +product


def _to_mpf(value) -> mpmath.mpf:
    r = as_rational(value)
    return mpmath.mpf(r.numerator) / r.denominator


def ext_eval(term: ExtTerm, q0, precision: int = 30) -> mpmath.mpf:
    """Numeric value of an ExtTerm; exact zero gives 0, a pole raises PoleError."""
    if term.zero_order < 0:
        raise PoleError(f"pole of order {-term.zero_order}")
    with mpmath.workdps(precision + 10):
        if term.zero_order > 0:
            return mpmath.mpf(0)
        if isinstance(term.value, RatFuncQ):
            return term.value.eval_float(q0, precision)
        return mpmath.mpf(term.value.numerator) / term.value.denominator


def ext_eval_exact(term: ExtTerm, q0) -> Fraction:
    """Exact value at a rational q0 (classical terms ignore q0)."""
    if term.zero_order < 0:
        raise PoleError(f"pole of order {-term.zero_order}")
    if term.zero_order > 0:
        return Fraction(0)
    if isinstance(term.value, RatFuncQ):
        return term.value.eval_exact(q0)
    return term.value
