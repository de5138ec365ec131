"""
Exact core - 유리수, 소수 거듭제곱 잉여류, 야코비 기호
다른 모든 모듈이 사용하는 수치 기반 계층
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

from sympy import factorint, isprime, jacobi_symbol

from .errors import InvalidArgument, ModulusMismatch, NonInvertibleDenominator

logger = logging.getLogger(__name__)

# 유리수 타입: 항상 기약분수, 분모 양수
Rational = Fraction
RationalLike = Union[Fraction, int, str]

PRIME_TEST_LIMIT = 10 ** 6


def as_rational(value: RationalLike) -> Fraction:
    """int, Fraction 또는 "num/den" 문자열을 Fraction 으로 변환"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidArgument(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidArgument(f"not a rational: {value!r}") from e
    raise InvalidArgument(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """'num/den' 형식 (정수면 분모 생략)"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _require_odd_positive(m: int, name: str = "m") -> None:
    if not isinstance(m, int) or m < 1 or m % 2 == 0:
        raise InvalidArgument(f"{name} must be an odd positive integer, got {m!r}")


def jacobi(a: int, m: int) -> int:
    """Jacobi symbol (a/m) for odd m >= 1."""
    _require_odd_positive(m)
    if m == 1:
        return 1
    return int(jacobi_symbol(a % m, m))


def sign_power_exponent(m: int) -> int:
    """(m-1)(m-3)/8, the exponent in (-q)^((m-1)(m-3)/8)[m]."""
    _require_odd_positive(m)
    return (m - 1) * (m - 3) // 8


def is_prime(p: int) -> bool:
    """결정적 소수 판정 (p < 10^6 범위)"""
    if p >= PRIME_TEST_LIMIT:
        raise InvalidArgument(f"primality is only supported below {PRIME_TEST_LIMIT}, got {p}")
    return bool(isprime(p))


@lru_cache(maxsize=256)
def prime_power_base(modulus: int) -> Tuple[int, int]:
    """modulus = p^k 이면 (p, k) 반환"""
    if not isinstance(modulus, int) or modulus < 2:
        raise InvalidArgument(f"modulus must be a prime power >= 2, got {modulus!r}")
    factors = factorint(modulus)
    if len(factors) != 1:
        raise InvalidArgument(f"modulus {modulus} is not a prime power")
    (p, k), = factors.items()
    return int(p), int(k)


@dataclass(frozen=True)
class ResidueClass:
    """Residue modulo a prime power; operands must share the modulus."""
    value: int
    modulus: int

    def __post_init__(self):
        prime_power_base(self.modulus)
        if not 0 <= self.value < self.modulus:
            raise InvalidArgument(f"residue {self.value} out of range for modulus {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "ResidueClass":
        return cls(value % modulus, modulus)

    def _check(self, other: "ResidueClass") -> None:
        if not isinstance(other, ResidueClass):
            raise InvalidArgument(f"cannot combine residue with {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ModulusMismatch(f"modulus {self.modulus} vs {other.modulus}")

    def __add__(self, other: "ResidueClass") -> "ResidueClass":
        self._check(other)
        return ResidueClass.of(self.value + other.value, self.modulus)

    def __sub__(self, other: "ResidueClass") -> "ResidueClass":
        self._check(other)
        return ResidueClass.of(self.value - other.value, self.modulus)

    def __mul__(self, other: "ResidueClass") -> "ResidueClass":
        self._check(other)
        return ResidueClass.of(self.value * other.value, self.modulus)

    def __neg__(self) -> "ResidueClass":
        return ResidueClass.of(-self.value, self.modulus)

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


def mod_reduce(r: RationalLike, modulus: int) -> ResidueClass:
    """numerator * denominator^-1 mod p^k"""
    r = as_rational(r)
    p, _ = prime_power_base(modulus)
    if r.denominator % p == 0:
        raise NonInvertibleDenominator(f"denominator {r.denominator} is divisible by {p}")
    return ResidueClass.of(r.numerator * pow(r.denominator, -1, modulus), modulus)
