"""
Hypergeometric term builders
WZ 항을 문자열 공식이 아닌 구성 요소(부호, q 지수 이차형식, Pochhammer 곱, q-정수)로 조립한다.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Tuple

from ..algebra.qpoly import LaurentQ, RatFuncQ
from ..series.qseries import A_ONE, ExtTerm, PochSpec, pochhammer, qpochhammer
from ..utils.term_cache import cached_term

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearForm:
    """n_coeff * n + k_coeff * k + const"""
    n: int = 0
    k: int = 0
    c: int = 0

    def __call__(self, n: int, k: int) -> int:
        return self.n * n + self.k * k + self.c


@dataclass(frozen=True)
class QuadraticForm:
    nn: int = 0
    nk: int = 0
    kk: int = 0
    n: int = 0
    k: int = 0
    c: int = 0

    def __call__(self, n: int, k: int) -> int:
        return self.nn * n * n + self.nk * n * k + self.kk * k * k + self.n * n + self.k * k + self.c


@dataclass(frozen=True)
class AffineForm:
    """Rational affine form in (n, k)."""
    n: Fraction = Fraction(0)
    k: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __call__(self, n: int, k: int) -> Fraction:
        return Fraction(self.n) * n + Fraction(self.k) * k + Fraction(self.c)


@dataclass(frozen=True)
class QFactor:
    """(spec)_{length(n,k)} ** power"""
    spec: PochSpec
    length: LinearForm
    power: int = 1


@dataclass(frozen=True)
class QHyperTerm:
    """scalar * (-1)^sign * q^q_power * prod pochhammers * prod [bracket]^power"""
    sign: LinearForm = LinearForm()
    q_power: QuadraticForm = QuadraticForm()
    pochhammers: Tuple[QFactor, ...] = ()
    brackets: Tuple[Tuple[LinearForm, int], ...] = ()
    scalar: Fraction = Fraction(1)

    def evaluate(self, n: int, k: int, a: LaurentQ = A_ONE) -> ExtTerm:
        coeff = Fraction(self.scalar) * (-1) ** (self.sign(n, k) % 2)
        result = ExtTerm.of(RatFuncQ.monomial(coeff, self.q_power(n, k)))
        for factor in self.pochhammers:
            length = factor.length(n, k)
            if length == 0:
                continue
            result = result * qpochhammer(factor.spec, a, length) ** factor.power
        for form, power in self.brackets:
            result = result * ExtTerm.of(RatFuncQ.bracket(form(n, k))) ** power
        return result


@dataclass(frozen=True)
class RisingFactor:
    """(start(n,k))_{length(n,k)} ** power"""
    start: AffineForm
    length: LinearForm
    power: int = 1


@dataclass(frozen=True)
class ClassicalHyperTerm:
    """scalar * (-1)^sign * prod base^exp * prod rising factorials * prod linear^power"""
    sign: LinearForm = LinearForm()
    geometric: Tuple[Tuple[Fraction, LinearForm], ...] = ()
    pochhammers: Tuple[RisingFactor, ...] = ()
    linear: Tuple[Tuple[AffineForm, int], ...] = ()
    scalar: Fraction = Fraction(1)

    def evaluate(self, n: int, k: int, a: LaurentQ = A_ONE) -> ExtTerm:
        value = Fraction(self.scalar) * (-1) ** (self.sign(n, k) % 2)
        for base, exponent in self.geometric:
            value *= Fraction(base) ** exponent(n, k)
        result = ExtTerm.of(value)
        for factor in self.pochhammers:
            result = result * pochhammer(factor.start(n, k), factor.length(n, k)) ** factor.power
        for form, power in self.linear:
            result = result * ExtTerm.of(form(n, k)) ** power
        return result


class TermFunction:
    """Total map (n, k) -> ExtTerm with a description and the a-substitution it was built with."""

    def __init__(self, evaluator: Callable[[int, int], ExtTerm], description: str,
                 a: LaurentQ = A_ONE, q_valued: bool = True):
        self.evaluator = evaluator
        self.description = description
        self.a = a
        self.q_valued = q_valued
        self.cache_key = f"{description}|a={a}"

    @classmethod
    def from_term(cls, term, description: str, a: LaurentQ = A_ONE) -> "TermFunction":
        return cls(lambda n, k: term.evaluate(n, k, a), description, a,
                   q_valued=isinstance(term, QHyperTerm))

    @cached_term()
    def __call__(self, n: int, k: int) -> ExtTerm:
        return self.evaluator(n, k)

    def __repr__(self) -> str:
        return f"TermFunction({self.description}, a={self.a})"
