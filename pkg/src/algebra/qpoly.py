"""
qpoly - q 에 대한 다항식, 로랑 다항식, 유리함수 연산
계수는 유리수(QQ), 다항식 연산은 sympy Poly 를 사용한다.

RatFuncQ 는 분모를 원분다항식 곱으로 인수분해된 형태로 저장한다:
    q^shift * body * prod(Phi_d^e_d) / rest
이 형태 덕분에 q-Pochhammer 곱은 지수 사전의 덧셈으로 끝나고,
덧셈 시에만 공통 인수를 제외한 부분을 전개한다.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import mpmath
from sympy import Poly, QQ, ZZ, Rational as SympyRational, Symbol, divisors, factorint

from ..core.errors import DivisionByZero, InvalidArgument, NonInvertibleDenominator, PoleAtOne
from ..core.exact import as_rational, format_rational

logger = logging.getLogger(__name__)

q = Symbol("q")

QPoly = Poly

Factors = Dict[int, int]


def poly_from_coeffs(coeffs: Sequence, domain=QQ) -> Poly:
    """오름차순 계수 목록으로 다항식 생성"""
    converted = [domain.convert(SympyRational(c.numerator, c.denominator)) if isinstance(c, Fraction) else c
                 for c in coeffs]
    return Poly.from_list(list(reversed(converted)), q, domain=domain)


def poly_coeffs(p: Poly) -> List[Fraction]:
    """오름차순 Fraction 계수 목록"""
    return [_to_fraction(c) for c in reversed(p.rep.to_list())]


def poly_constant(c) -> Poly:
    c = as_rational(c) if not isinstance(c, Fraction) else c
    return Poly(SympyRational(c.numerator, c.denominator), q, domain=QQ)


POLY_ZERO = Poly(0, q, domain=QQ)
POLY_ONE = Poly(1, q, domain=QQ)


def _to_fraction(value) -> Fraction:
    # sympy Rational, QQ 원소(gmpy2 mpq / PythonMPQ) 공통 처리
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    return Fraction(int(value.numerator), int(value.denominator))


def _ascending(p: Poly) -> list:
    return p.rep.to_list()[::-1]


def _shift_up(p: Poly, k: int) -> Poly:
    """p * q^k (k >= 0)"""
    if k == 0 or p.is_zero:
        return p
    domain = p.get_domain()
    return Poly.from_list(p.rep.to_list() + [domain.zero] * k, q, domain=domain)


# ---------------------------------------------------------------------------
# 원분다항식, q-정수
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def divisor_list(n: int) -> Tuple[int, ...]:
    return tuple(int(d) for d in divisors(n))


@lru_cache(maxsize=None)
def _cyclotomic_zz(d: int) -> Poly:
    # q^d - 1 을 진약수 원분다항식들로 나눈다
    result = Poly(q ** d - 1, q, domain=ZZ)
    for e in divisor_list(d):
        if e < d:
            result = result.exquo(_cyclotomic_zz(e))
    return result


def cyclotomic(d: int) -> Poly:
    """The d-th cyclotomic polynomial over QQ."""
    if not isinstance(d, int) or d < 1:
        raise InvalidArgument(f"cyclotomic index must be a positive integer, got {d!r}")
    return _cyclotomic_zz(d).set_domain(QQ)


def qbracket(n: int) -> Poly:
    """[n] = 1 + q + ... + q^(n-1); [0] = 0."""
    if not isinstance(n, int) or n < 0:
        raise InvalidArgument(f"q-bracket index must be nonnegative, got {n!r}")
    if n == 0:
        return POLY_ZERO
    return Poly.from_list([1] * n, q, domain=QQ)


@lru_cache(maxsize=None)
def bracket_factors(n: int) -> Tuple[Tuple[int, int], ...]:
    """[n] = prod_{d|n, d>1} Phi_d"""
    return tuple((d, 1) for d in divisor_list(n) if d > 1)


@lru_cache(maxsize=None)
def cyclotomic_at_one(d: int) -> int:
    # Phi_1(1) = 0, Phi_{p^k}(1) = p, 그 외 1
    if d == 1:
        return 0
    primes = factorint(d)
    if len(primes) == 1:
        return int(next(iter(primes)))
    return 1


def factor_one_minus(c: int, j: int) -> Optional[Tuple[int, int, Tuple[int, ...]]]:
    """Factor 1 - c*q^j (c = +-1) as coeff * q^shift * prod Phi_d.

    Returns (coeff, shift, ds) or None when the factor is literally zero.
    """
    if c not in (1, -1):
        raise InvalidArgument(f"factor sign must be +-1, got {c}")
    coeff, shift = 1, 0
    if j == 0:
        if c == 1:
            return None
        return 2, 0, ()
    if j < 0:
        # 1 - c q^j = -c q^j (1 - c q^-j)
        coeff, shift, j = -c, j, -j
    if c == 1:
        # 1 - q^j = -(q^j - 1)
        return -coeff, shift, divisor_list(j)
    # 1 + q^j = (q^2j - 1)/(q^j - 1)
    return coeff, shift, tuple(d for d in divisor_list(2 * j) if j % d != 0)


def _expand_factors(factors: Factors) -> Poly:
    """prod Phi_d^e (e >= 0), balanced product tree over ZZ"""
    parts = [_cyclotomic_zz(d) ** e for d, e in sorted(factors.items()) if e > 0]
    if not parts:
        return Poly(1, q, domain=ZZ)
    while len(parts) > 1:
        paired = [parts[i] * parts[i + 1] for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            paired.append(parts[-1])
        parts = paired
    return parts[0]


def _fold_divisible(coeffs: list, d: int, domain) -> bool:
    # q^d = 1 (mod Phi_d) 이므로 계수를 d 주기로 접은 뒤 나머지를 본다
    if d == 1:
        return sum(coeffs) == 0
    if d == 2:
        return sum(coeffs[0::2]) == sum(coeffs[1::2])
    folded = [sum(coeffs[j::d]) for j in range(d)]
    if all(c == 0 for c in folded):
        return True
    small = Poly.from_list([domain.convert(c) for c in reversed(folded)], q, domain=domain)
    return small.rem(_cyclotomic_zz(d)).is_zero


def divisible_by_cyclotomic(p: Poly, d: int) -> bool:
    """Phi_d | p"""
    if p.is_zero:
        return True
    return _fold_divisible(_ascending(p), d, p.get_domain())


def _truncation(terms: List[str], exponents: List[int], max_degree: Optional[int]) -> str:
    if max_degree is not None:
        kept = [t for t, e in zip(terms, exponents) if e <= max_degree]
        if len(kept) < len(terms):
            return " + ".join(kept + ["..."])
    return " + ".join(terms)


def format_poly(p: Poly, shift: int = 0, max_degree: Optional[int] = None) -> str:
    """Sparse ascending 'c*q^e' terms with 'num/den' coefficients."""
    terms, exponents = [], []
    for e, c in enumerate(poly_coeffs(p)):
        if c == 0:
            continue
        exp = e + shift
        terms.append(format_rational(c) if exp == 0 else f"{format_rational(c)}*q^{exp}")
        exponents.append(exp)
    if not terms:
        return "0"
    return _truncation(terms, exponents, max_degree)


# ---------------------------------------------------------------------------
# 로랑 다항식
# ---------------------------------------------------------------------------

class LaurentQ:
    """q^shift * body, body with nonzero constant term (or zero)."""

    __slots__ = ("shift", "body")

    def __init__(self, shift: int, body: Poly):
        if body.is_zero:
            shift = 0
        else:
            (k,), body = body.terms_gcd()
            shift += k
        self.shift = shift
        self.body = body.set_domain(QQ) if body.get_domain() != QQ else body

    @classmethod
    def monomial(cls, coeff, exponent: int) -> "LaurentQ":
        return cls(exponent, poly_constant(as_rational(coeff)))

    @classmethod
    def from_poly(cls, p: Poly) -> "LaurentQ":
        return cls(0, p)

    @property
    def is_zero(self) -> bool:
        return self.body.is_zero

    @property
    def is_monomial(self) -> bool:
        return not self.is_zero and self.body.is_ground

    def as_monomial(self) -> Tuple[Fraction, int]:
        if not self.is_monomial:
            raise InvalidArgument(f"not a monomial: {self}")
        return _to_fraction(self.body.LC()), self.shift

    def __mul__(self, other: "LaurentQ") -> "LaurentQ":
        return LaurentQ(self.shift + other.shift, self.body * other.body)

    def __neg__(self) -> "LaurentQ":
        return LaurentQ(self.shift, -self.body)

    def __add__(self, other: "LaurentQ") -> "LaurentQ":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        s = min(self.shift, other.shift)
        return LaurentQ(s, _shift_up(self.body, self.shift - s) + _shift_up(other.body, other.shift - s))

    def __sub__(self, other: "LaurentQ") -> "LaurentQ":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentQ) and self.shift == other.shift and self.body == other.body

    def __hash__(self) -> int:
        return hash((self.shift, tuple(self.body.rep.to_list())))

    def format(self, max_degree: Optional[int] = None) -> str:
        return format_poly(self.body, self.shift, max_degree)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentQ({self.format()})"


# ---------------------------------------------------------------------------
# 유리함수
# ---------------------------------------------------------------------------

def _poly_at(p: Poly, x: Fraction) -> Fraction:
    if p.is_ground:
        return _to_fraction(p.LC()) if not p.is_zero else Fraction(0)
    return _to_fraction(p.eval(SympyRational(x.numerator, x.denominator)))


@lru_cache(maxsize=4096)
def _cyclotomic_value(d: int, x: Fraction) -> Fraction:
    return _poly_at(_cyclotomic_zz(d), x)


def _powmod(base: Poly, e: int, modulus: Poly) -> Poly:
    result = POLY_ONE.rem(modulus)
    base = base.rem(modulus)
    while e:
        if e & 1:
            result = (result * base).rem(modulus)
        base = (base * base).rem(modulus)
        e >>= 1
    return result


Coercible = Union["RatFuncQ", Fraction, int, Poly, LaurentQ]


class RatFuncQ:
    """Reduced rational function in q over QQ.

    Stored as q^shift * body * prod Phi_d^e / rest where body has nonzero constant
    term and is coprime to every Phi_d with e < 0 and to rest; rest is monic with
    nonzero constant term (usually 1).
    """

    __slots__ = ("_shift", "_body", "_factors", "_rest")

    def __init__(self, shift: int, body: Poly, factors: Factors, rest: Poly):
        # 내부 생성자: 정규화된 성분만 받는다
        self._shift = shift
        self._body = body
        self._factors = factors
        self._rest = rest

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "RatFuncQ":
        return cls(0, POLY_ZERO, {}, POLY_ONE)

    @classmethod
    def one(cls) -> "RatFuncQ":
        return cls(0, POLY_ONE, {}, POLY_ONE)

    @classmethod
    def constant(cls, c) -> "RatFuncQ":
        c = as_rational(c)
        if c == 0:
            return cls.zero()
        return cls(0, poly_constant(c), {}, POLY_ONE)

    @classmethod
    def monomial(cls, c, exponent: int) -> "RatFuncQ":
        c = as_rational(c)
        if c == 0:
            return cls.zero()
        return cls(exponent, poly_constant(c), {}, POLY_ONE)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFuncQ":
        return cls._normalize(0, p.set_domain(QQ), {}, POLY_ONE)

    @classmethod
    def from_laurent(cls, value: LaurentQ) -> "RatFuncQ":
        return cls._normalize(value.shift, value.body, {}, POLY_ONE)

    @classmethod
    def from_fraction(cls, numerator: Union[Poly, LaurentQ], denominator: Poly) -> "RatFuncQ":
        if denominator.is_zero:
            raise DivisionByZero("zero denominator")
        if isinstance(numerator, Poly):
            numerator = LaurentQ.from_poly(numerator)
        (k,), den = denominator.set_domain(QQ).terms_gcd()
        return cls._normalize(numerator.shift - k, numerator.body, {}, den)

    @classmethod
    def cyclotomic_product(cls, factors: Factors, coeff=1, shift: int = 0) -> "RatFuncQ":
        """coeff * q^shift * prod Phi_d^e for integer exponents of any sign."""
        coeff = as_rational(coeff)
        if coeff == 0:
            return cls.zero()
        return cls(shift, poly_constant(coeff), {d: e for d, e in factors.items() if e}, POLY_ONE)

    @classmethod
    def bracket(cls, n: int) -> "RatFuncQ":
        """[n] = (1 - q^n)/(1 - q) for any integer n."""
        if n == 0:
            return cls.zero()
        if n > 0:
            return cls.cyclotomic_product(dict(bracket_factors(n)))
        # [-n] = -q^-n [n]
        return cls.cyclotomic_product(dict(bracket_factors(-n)), coeff=-1, shift=n)

    @classmethod
    def one_minus(cls, c: int, j: int) -> "RatFuncQ":
        """1 - c*q^j for c = +-1."""
        factored = factor_one_minus(c, j)
        if factored is None:
            return cls.zero()
        coeff, shift, ds = factored
        return cls.cyclotomic_product({d: 1 for d in ds}, coeff=coeff, shift=shift)

    # -- normalization ----------------------------------------------------

    @classmethod
    def _normalize(cls, shift: int, body: Poly, factors: Factors, rest: Poly) -> "RatFuncQ":
        if body.is_zero:
            return cls.zero()
        (k,), body = body.terms_gcd()
        shift += k
        factors = {d: e for d, e in factors.items() if e}

        if rest.degree() > 0:
            g = body.gcd(rest)
            if g.degree() > 0:
                body = body.exquo(g)
                rest = rest.exquo(g)
            for d in sorted(d for d, e in factors.items() if e > 0):
                while factors[d] > 0 and divisible_by_cyclotomic(rest, d):
                    rest = rest.exquo(_cyclotomic_zz(d))
                    factors[d] -= 1
            factors = {d: e for d, e in factors.items() if e}
        lc = rest.LC()
        if lc != 1:
            body = body.quo_ground(lc)
            rest = rest.monic()
        if rest.degree() <= 0:
            rest = POLY_ONE

        if body.degree() > 0:
            domain = body.get_domain()
            coeffs = _ascending(body)
            for d in sorted(d for d, e in factors.items() if e < 0):
                while factors[d] < 0 and _fold_divisible(coeffs, d, domain):
                    body = body.exquo(_cyclotomic_zz(d))
                    factors[d] += 1
                    coeffs = _ascending(body)
                if body.degree() == 0:
                    break
            factors = {d: e for d, e in factors.items() if e}
        return cls(shift, body, factors, rest)

    @staticmethod
    def _coerce(value: Coercible) -> "RatFuncQ":
        if isinstance(value, RatFuncQ):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return RatFuncQ.constant(value)
        if isinstance(value, Poly):
            return RatFuncQ.from_poly(value)
        if isinstance(value, LaurentQ):
            return RatFuncQ.from_laurent(value)
        raise InvalidArgument(f"cannot coerce {type(value).__name__} to RatFuncQ")

    # -- inspection -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self._body.is_zero

    @property
    def shift(self) -> int:
        return self._shift

    @property
    def factors(self) -> Factors:
        return dict(self._factors)

    @property
    def is_factored(self) -> bool:
        """Scalar times q-power times cyclotomic factors only."""
        return self._body.is_ground and self._rest.is_ground

    def canonical(self) -> Tuple[LaurentQ, Poly]:
        """(numerator, monic denominator) of the reduced quotient."""
        if self.is_zero:
            return LaurentQ(0, POLY_ZERO), POLY_ONE
        pos = {d: e for d, e in self._factors.items() if e > 0}
        neg = {d: -e for d, e in self._factors.items() if e < 0}
        numerator = LaurentQ(self._shift, self._body * _expand_factors(pos))
        denominator = (self._rest * _expand_factors(neg)).set_domain(QQ)
        return numerator, denominator

    @property
    def numerator(self) -> LaurentQ:
        return self.canonical()[0]

    @property
    def denominator(self) -> Poly:
        return self.canonical()[1]

    def degrees(self) -> Tuple[int, int]:
        """(numerator body degree, denominator degree) of the reduced form."""
        if self.is_zero:
            return 0, 0
        def phi(d: int) -> int:
            return _cyclotomic_zz(d).degree()

        num = self._body.degree() + sum(e * phi(d) for d, e in self._factors.items() if e > 0)
        den = self._rest.degree() + sum(-e * phi(d) for d, e in self._factors.items() if e < 0)
        return num, den

    # -- arithmetic -------------------------------------------------------

    @classmethod
    def sum(cls, values: Iterable[Coercible]) -> "RatFuncQ":
        """Exact sum with a single normalization at the end."""
        items = [v for v in (cls._coerce(x) for x in values) if not v.is_zero]
        if not items:
            return cls.zero()
        if len(items) == 1:
            return items[0]

        s = min(v._shift for v in items)
        keys = set()
        for v in items:
            keys.update(v._factors)
        common = {d: min(v._factors.get(d, 0) for v in items) for d in keys}

        lcm = POLY_ONE
        for v in items:
            if v._rest.degree() > 0:
                lcm = lcm.lcm(v._rest)

        total = POLY_ZERO
        for v in items:
            leftover = {d: v._factors.get(d, 0) - common[d] for d in keys}
            part = v._body * _expand_factors(leftover)
            if lcm.degree() > 0:
                part = part * lcm.exquo(v._rest)
            total = total + _shift_up(part.set_domain(QQ), v._shift - s)
        return cls._normalize(s, total, common, lcm)

    def __add__(self, other: Coercible) -> "RatFuncQ":
        return RatFuncQ.sum([self, other])

    __radd__ = __add__

    def __neg__(self) -> "RatFuncQ":
        if self.is_zero:
            return self
        return RatFuncQ(self._shift, -self._body, dict(self._factors), self._rest)

    def __sub__(self, other: Coercible) -> "RatFuncQ":
        return RatFuncQ.sum([self, -RatFuncQ._coerce(other)])

    def __rsub__(self, other: Coercible) -> "RatFuncQ":
        return RatFuncQ._coerce(other) - self

    def __mul__(self, other: Coercible) -> "RatFuncQ":
        other = RatFuncQ._coerce(other)
        if self.is_zero or other.is_zero:
            return RatFuncQ.zero()
        factors = dict(self._factors)
        for d, e in other._factors.items():
            factors[d] = factors.get(d, 0) + e
        shift = self._shift + other._shift
        if self.is_factored and other.is_factored:
            body = self._body * other._body
            return RatFuncQ(shift, body, {d: e for d, e in factors.items() if e}, POLY_ONE)
        return RatFuncQ._normalize(shift, self._body * other._body, factors, self._rest * other._rest)

    __rmul__ = __mul__

    def reciprocal(self) -> "RatFuncQ":
        if self.is_zero:
            raise DivisionByZero("reciprocal of the zero function")
        factors = {d: -e for d, e in self._factors.items()}
        if self._body.is_ground:
            return RatFuncQ(-self._shift, self._rest.quo_ground(self._body.LC()), factors, POLY_ONE)
        return RatFuncQ._normalize(-self._shift, self._rest, factors, self._body)

    def __truediv__(self, other: Coercible) -> "RatFuncQ":
        return self * RatFuncQ._coerce(other).reciprocal()

    def __rtruediv__(self, other: Coercible) -> "RatFuncQ":
        return RatFuncQ._coerce(other) * self.reciprocal()

    def __pow__(self, exponent: int) -> "RatFuncQ":
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        if exponent == 0:
            return RatFuncQ.one()
        if self.is_factored:
            return RatFuncQ(self._shift * exponent, self._body ** exponent,
                            {d: e * exponent for d, e in self._factors.items()}, POLY_ONE)
        result, base = RatFuncQ.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            other = RatFuncQ._coerce(other)
        except InvalidArgument:
            return NotImplemented
        if (self._shift == other._shift and self._factors == other._factors
                and self._body == other._body and self._rest == other._rest):
            return True
        if self.is_zero or other.is_zero:
            return False
        if hash(self) != hash(other):
            return False
        return (self - other).is_zero

    def __hash__(self) -> int:
        # 기약 분수의 불변량: 차수, q 거듭제곱, 분자 최고차 계수
        if self.is_zero:
            return hash(0)
        return hash((self._shift, self.degrees(), _to_fraction(self._body.LC())))

    # -- evaluation -------------------------------------------------------

    def limit_q1(self) -> Fraction:
        """Exact value at q = 1 of the reduced form."""
        if self.is_zero:
            return Fraction(0)
        e1 = self._factors.get(1, 0)
        if e1 > 0:
            return Fraction(0)
        rest_at_one = _poly_at(self._rest, Fraction(1))
        if e1 < 0 or rest_at_one == 0:
            raise PoleAtOne(f"denominator vanishes at q=1: {self.format(max_degree=40)}")
        value = _poly_at(self._body, Fraction(1)) / rest_at_one
        for d, e in self._factors.items():
            value *= Fraction(cyclotomic_at_one(d)) ** e
        return value

    def eval_exact(self, x) -> Fraction:
        """Exact value at a rational point."""
        x = as_rational(x)
        if self.is_zero:
            return Fraction(0)
        if x == 0:
            if self._shift < 0:
                raise DivisionByZero("negative q-power at q=0")
            if self._shift > 0:
                return Fraction(0)
        den = _poly_at(self._rest, x)
        if den == 0:
            raise DivisionByZero(f"denominator vanishes at q={format_rational(x)}")
        value = _poly_at(self._body, x) / den
        for d, e in self._factors.items():
            phi = _cyclotomic_value(d, x)
            if phi == 0:
                if e < 0:
                    raise DivisionByZero(f"Phi_{d} vanishes at q={format_rational(x)}")
                return Fraction(0)
            value *= phi ** e
        if self._shift:
            value *= x ** self._shift
        return value

    def eval_float(self, q0, precision: int = 30) -> mpmath.mpf:
        """High-precision value; rational q0 is evaluated exactly then rounded."""
        with mpmath.workdps(precision + 10):
            if not isinstance(q0, mpmath.mpf):
                exact = self.eval_exact(q0)
                return mpmath.mpf(exact.numerator) / exact.denominator
            if self.is_zero:
                return mpmath.mpf(0)

            def at(p: Poly):
                coeffs = [mpmath.mpf(int(c.numerator)) / int(c.denominator) for c in poly_coeffs(p)]
                return mpmath.polyval(coeffs[::-1], q0)

            den = at(self._rest)
            value = at(self._body)
            for d, e in self._factors.items():
                phi = at(_cyclotomic_zz(d))
                if e < 0 and phi == 0:
                    den = mpmath.mpf(0)
                    break
                value *= phi ** e
            if den == 0 or (q0 == 0 and self._shift < 0):
                raise DivisionByZero(f"denominator vanishes at q={q0}")
            return value / den * q0 ** self._shift

    # -- display ----------------------------------------------------------

    def format(self, max_degree: Optional[int] = None) -> str:
        numerator, denominator = self.canonical()
        num = numerator.format(max_degree)
        if denominator == POLY_ONE:
            return num
        return f"({num}) / ({format_poly(denominator, 0, max_degree)})"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RatFuncQ({self.format(max_degree=40)})"


def divides(modulus: Poly, f: RatFuncQ) -> bool:
    """True iff modulus divides the numerator of f; q-power units are ignored."""
    modulus = modulus.set_domain(QQ)
    if modulus.is_zero or _poly_at(modulus, Fraction(0)) == 0:
        raise InvalidArgument("modulus must have a nonzero constant term")
    if modulus.degree() == 0:
        return True
    if f.is_zero:
        return True
    for d, e in f._factors.items():
        if e < 0 and divisible_by_cyclotomic(modulus, d):
            raise NonInvertibleDenominator(f"denominator factor Phi_{d} shares a root with the modulus")
    if f._rest.degree() > 0 and modulus.gcd(f._rest).degree() > 0:
        raise NonInvertibleDenominator("denominator is not coprime to the modulus")

    residue = f._body.rem(modulus)
    for d, e in sorted(f._factors.items()):
        if residue.is_zero:
            break
        if e > 0:
            residue = (residue * _powmod(cyclotomic(d), e, modulus)).rem(modulus)
    return residue.is_zero


def limit_q1(f: RatFuncQ) -> Fraction:
    return f.limit_q1()


def eval_float(f: RatFuncQ, q0, precision: int = 30) -> mpmath.mpf:
    return f.eval_float(q0, precision)
