"""
Identity registry - q-항등식과 고전 1/pi 급수
각 항등식은 n 번째 항 생성기, 우변(무한곱 또는 닫힌 상수), q->1 짝 급수와 극한 배율을 가진다.
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

import mpmath

from ..algebra.qpoly import LaurentQ, RatFuncQ
from ..core.errors import InvalidArgument
from ..series.qseries import A_ONE, ExtTerm, PochSpec, ext_sum, poch, qpoch_infinite, qpochhammer
from ..wz.terms import AffineForm, ClassicalHyperTerm, LinearForm as L, QFactor, QHyperTerm, QuadraticForm, RisingFactor

logger = logging.getLogger(__name__)

Summand = Callable[[int, LaurentQ], ExtTerm]


@dataclass(frozen=True)
class InfiniteProductSpec:
    """prod numerator (A;q^b)_inf / prod denominator (A;q^b)_inf"""
    numerator: Tuple[PochSpec, ...]
    denominator: Tuple[PochSpec, ...] = ()

    def evaluate(self, a: LaurentQ, q0, precision: int = 30) -> mpmath.mpf:
        with mpmath.workdps(precision + 10):
            value = mpmath.mpf(1)
            for spec in self.numerator:
                value *= qpoch_infinite(spec, a, q0, precision)
            for spec in self.denominator:
                value /= qpoch_infinite(spec, a, q0, precision)
            return value

    def describe(self) -> str:
        num = "".join(s.describe() + "_inf" for s in self.numerator) or "1"
        den = "".join(s.describe() + "_inf" for s in self.denominator)
        return f"{num} / {den}" if den else num


@dataclass(frozen=True)
class ClosedConstant:
    """coeff * sqrt(radicand) / pi"""
    coeff: Fraction
    radicand: int
    label: str

    def evaluate(self, precision: int = 30) -> mpmath.mpf:
        with mpmath.workdps(precision + 10):
            return mpmath.mpf(self.coeff.numerator) / self.coeff.denominator \
                * mpmath.sqrt(self.radicand) / mpmath.pi

    def describe(self) -> str:
        return self.label


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    summand: Summand
    rhs: Union[InfiniteProductSpec, ClosedConstant]
    classical_companion: Optional[str] = None
    limit_scale: Fraction = Fraction(1)
    uses_a: bool = False
    description: str = ""

    def __post_init__(self):
        if self.limit_scale == 0:
            raise InvalidArgument(f"identity {self.id}: limit_scale must be nonzero")

    @property
    def q_valued(self) -> bool:
        return isinstance(self.rhs, InfiniteProductSpec)

    def term(self, n: int, a: LaurentQ = A_ONE) -> ExtTerm:
        if not self.uses_a and a != A_ONE:
            raise InvalidArgument(f"identity {self.id} takes no a-parameter")
        return self.summand(n, a)


# ---------------------------------------------------------------------------
# 항 조립 도우미
# ---------------------------------------------------------------------------

def _bracket(m: int) -> RatFuncQ:
    return RatFuncQ.bracket(m)


def _qpow(e: int) -> RatFuncQ:
    return RatFuncQ.monomial(1, e)


def _one_plus(j: int) -> RatFuncQ:
    return RatFuncQ.one_minus(-1, j)


def _one_minus_a(j: int, a_power: int, a: LaurentQ) -> ExtTerm:
    """1 - a^a_power q^j"""
    return qpochhammer(poch(j, 1, a_power=a_power), a, 1)


def _prefactor(term: QHyperTerm) -> Summand:
    return lambda n, a: term.evaluate(n, 0, a)


def _classical(term: ClassicalHyperTerm) -> Summand:
    return lambda n, a: term.evaluate(n, 0, a)


def _with_bracket(prefactor: Summand, bracket: Callable[[int, LaurentQ], ExtTerm]) -> Summand:
    return lambda n, a: prefactor(n, a) * bracket(n, a)


def _level1_inner(n: int) -> RatFuncQ:
    # [6n+3] q^{14n+7} - [10n+7] q^{10n+3}
    return _bracket(6 * n + 3) * _qpow(14 * n + 7) - _bracket(10 * n + 7) * _qpow(10 * n + 3)


def _new_level1_bracket(n: int, a: LaurentQ) -> ExtTerm:
    first = _bracket(6 * n + 1) / _bracket(4 * n + 4) * _level1_inner(n) \
        / (_one_plus(2 * n + 1) ** 2 * _one_plus(4 * n + 2) ** 2)
    return ExtTerm.of(first + _bracket(10 * n + 1))


def _new_level1_appendix_bracket(n: int, a: LaurentQ) -> ExtTerm:
    first = _bracket(2 * n + 1) ** 2 * _bracket(6 * n + 1) \
        / (_bracket(4 * n + 4) * _bracket(8 * n + 4) ** 2) * _level1_inner(n)
    return ExtTerm.of(first + _bracket(10 * n + 1))


def _level1_a_bracket(n: int, a: LaurentQ) -> ExtTerm:
    ratio = _one_minus_a(2 * n + 1, 1, a) * _one_minus_a(2 * n + 1, -1, a) \
        / (_one_minus_a(8 * n + 4, 1, a) * _one_minus_a(8 * n + 4, -1, a))
    first = ratio * ExtTerm.of(_bracket(6 * n + 1) / _bracket(4 * n + 4) * _level1_inner(n))
    return ext_sum([first, ExtTerm.of(_bracket(10 * n + 1))])


def _28n3_bracket(n: int, a: LaurentQ) -> ExtTerm:
    first = _qpow(8 * n + 2) * _bracket(4 * n + 1) \
        / (_one_plus(2 * n + 1) * _one_plus(4 * n + 1) * _one_plus(4 * n + 2))
    return ExtTerm.of(first + _bracket(10 * n + 1))


def _28n3_appendix_bracket(n: int, a: LaurentQ) -> ExtTerm:
    first = _bracket(4 * n + 1) ** 2 * _qpow(8 * n + 2) \
        / (_one_plus(2 * n + 1) * _one_plus(4 * n + 2) * _bracket(8 * n + 2))
    return ExtTerm.of(first + _bracket(10 * n + 1))


def _28n3_a_bracket(n: int, a: LaurentQ) -> ExtTerm:
    one_minus_q_sq = RatFuncQ.one_minus(1, 1) ** 2
    rest = _qpow(8 * n + 2) / (one_minus_q_sq * _bracket(8 * n + 2) * _one_plus(2 * n + 1) * _one_plus(4 * n + 2))
    first = _one_minus_a(4 * n + 1, 1, a) * _one_minus_a(4 * n + 1, -1, a) * ExtTerm.of(rest)
    return ext_sum([first, ExtTerm.of(_bracket(10 * n + 1))])


# ---------------------------------------------------------------------------
# 항등식 정의
# ---------------------------------------------------------------------------

_N = L(1)

_RAMA1_Q = QHyperTerm(sign=_N, q_power=QuadraticForm(nn=3), pochhammers=(
    QFactor(poch(1, 2), _N, 3),
    QFactor(poch(4, 4), _N, -3),
), brackets=((L(6, 0, 1), 1),))

_LEVEL1_PREFACTOR = QHyperTerm(sign=_N, q_power=QuadraticForm(nn=7), pochhammers=(
    QFactor(poch(1, 2), L(3)),
    QFactor(poch(1, 2), _N, 2),
    QFactor(poch(4, 4), L(2), -2),
    QFactor(poch(4, 4), _N, -1),
))

_LEVEL1_A_PREFACTOR = QHyperTerm(sign=_N, q_power=QuadraticForm(nn=7), pochhammers=(
    QFactor(poch(1, 2), L(3)),
    QFactor(poch(1, 2, a_power=1), _N),
    QFactor(poch(1, 2, a_power=-1), _N),
    QFactor(poch(4, 4), _N, -1),
    QFactor(poch(4, 4, a_power=1), L(2), -1),
    QFactor(poch(4, 4, a_power=-1), L(2), -1),
))

_GZ_THM44 = QHyperTerm(sign=_N, q_power=QuadraticForm(nn=3), pochhammers=(
    QFactor(poch(1, 2), _N),
    QFactor(poch(1, 2, a_power=1), _N),
    QFactor(poch(1, 2, a_power=-1), _N),
    QFactor(poch(4, 4), _N, -1),
    QFactor(poch(4, 4, a_power=1), _N, -1),
    QFactor(poch(4, 4, a_power=-1), _N, -1),
), brackets=((L(6, 0, 1), 1),))

_GZ_8N1 = QHyperTerm(q_power=QuadraticForm(nn=2), pochhammers=(
    QFactor(poch(1, 2), _N, 2),
    QFactor(poch(1, 2), L(2)),
    QFactor(poch(6, 6), _N, -2),
    QFactor(poch(2, 2), L(2), -1),
), brackets=((L(8, 0, 1), 1),))

_GZ_8N1_A = QHyperTerm(q_power=QuadraticForm(nn=2), pochhammers=(
    QFactor(poch(1, 2, a_power=1), _N),
    QFactor(poch(1, 2, a_power=-1), _N),
    QFactor(poch(1, 2), L(2)),
    QFactor(poch(6, 6, a_power=1), _N, -1),
    QFactor(poch(6, 6, a_power=-1), _N, -1),
    QFactor(poch(2, 2), L(2), -1),
), brackets=((L(8, 0, 1), 1),))

_28N3_PREFACTOR = QHyperTerm(sign=_N, q_power=QuadraticForm(nn=5), pochhammers=(
    QFactor(poch(1, 2), L(2), 2),
    QFactor(poch(1, 2), _N),
    QFactor(poch(3, 6), _N),
    QFactor(poch(6, 6), _N, -2),
    QFactor(poch(2, 2), L(4), -1),
))

_28N3_A_PREFACTOR = QHyperTerm(sign=_N, q_power=QuadraticForm(nn=5), pochhammers=(
    QFactor(poch(1, 2, a_power=1), L(2)),
    QFactor(poch(1, 2, a_power=-1), L(2)),
    QFactor(poch(1, 2), _N),
    QFactor(poch(3, 6), _N),
    QFactor(poch(6, 6, a_power=1), _N, -1),
    QFactor(poch(6, 6, a_power=-1), _N, -1),
    QFactor(poch(2, 2), L(4), -1),
))


def _rising(start: Fraction, power: int = 1) -> RisingFactor:
    return RisingFactor(AffineForm(c=Fraction(start)), _N, power)


def _classical_term(sign: bool, ratio: Fraction, starts: Tuple[Fraction, ...], linear: AffineForm) -> ClassicalHyperTerm:
    return ClassicalHyperTerm(
        sign=_N if sign else L(),
        geometric=((ratio, _N),),
        pochhammers=tuple(_rising(s) for s in starts) + (_rising(Fraction(1), -3),),
        linear=((linear, 1),),
    )


HALF, QUARTER = Fraction(1, 2), Fraction(1, 4)

_LEVEL4_RHS = InfiniteProductSpec(numerator=(poch(3, 4), poch(5, 4)), denominator=(poch(4, 4), poch(4, 4)))
_LEVEL4_A_RHS = InfiniteProductSpec(numerator=(poch(3, 4), poch(5, 4)),
                                    denominator=(poch(4, 4, a_power=1), poch(4, 4, a_power=-1)))
_LEVEL2_RHS = InfiniteProductSpec(numerator=(poch(3, 2), poch(3, 6)), denominator=(poch(2, 2), poch(6, 6)))
_LEVEL2_A_RHS = InfiniteProductSpec(
    numerator=(poch(5, 6), poch(7, 6), poch(3, 6, a_power=1), poch(3, 6, a_power=-1)),
    denominator=(poch(2, 6), poch(4, 6), poch(6, 6, a_power=1), poch(6, 6, a_power=-1)),
)


def _build_registry() -> Dict[str, IdentitySpec]:
    specs = [
        IdentitySpec("rama1-q", _prefactor(_RAMA1_Q), _LEVEL4_RHS, "rama-level4", Fraction(1),
                     description="sum (-1)^n q^{3n^2} [6n+1] (q;q^2)_n^3/(q^4;q^4)_n^3"),
        IdentitySpec("rama-level4",
                     _classical(_classical_term(True, Fraction(1, 8), (HALF, HALF, HALF), AffineForm(6, 0, 1))),
                     ClosedConstant(Fraction(2), 2, "2*sqrt(2)/pi"),
                     description="sum (1/2)_n^3/(1)_n^3 (6n+1) (-1)^n/8^n"),
        IdentitySpec("new-level1-q", _with_bracket(_prefactor(_LEVEL1_PREFACTOR), _new_level1_bracket),
                     _LEVEL4_RHS, "rama-level1", Fraction(1, 16),
                     description="q-analogue of the level one series, derived from p2(p3(guo))"),
        IdentitySpec("new-level1-q-appendix",
                     _with_bracket(_prefactor(_LEVEL1_PREFACTOR), _new_level1_appendix_bracket),
                     _LEVEL4_RHS, "rama-level1", Fraction(1, 16),
                     description="same summand rewritten with [2n+1]^2[6n+1]/([4n+4][8n+4]^2)"),
        IdentitySpec("rama-level1",
                     _classical(_classical_term(True, Fraction(27, 512), (HALF, Fraction(1, 6), Fraction(5, 6)),
                                                AffineForm(154, 0, 15))),
                     ClosedConstant(Fraction(32), 2, "32*sqrt(2)/pi"),
                     description="sum (1/2)_n(1/6)_n(5/6)_n/(1)_n^3 (154n+15) (-3/8)^{3n}"),
        IdentitySpec("level1-q-a", _with_bracket(_prefactor(_LEVEL1_A_PREFACTOR), _level1_a_bracket),
                     _LEVEL4_A_RHS, "rama-level1", Fraction(1, 16), uses_a=True,
                     description="a-generalization of new-level1-q"),
        IdentitySpec("gz-thm44-input", _prefactor(_GZ_THM44), _LEVEL4_A_RHS, "rama-level4", Fraction(1),
                     uses_a=True, description="sum G1(n,0) of guo-a"),
        IdentitySpec("guo-zud-8n1-q", _prefactor(_GZ_8N1), _LEVEL2_RHS, "rama-level2-8n1", Fraction(1),
                     description="sum q^{2n^2} (q;q^2)_n^2 (q;q^2)_{2n}/((q^6;q^6)_n^2 (q^2;q^2)_{2n}) [8n+1]"),
        IdentitySpec("gz-8n1-q-a", _prefactor(_GZ_8N1_A), _LEVEL2_A_RHS, "rama-level2-8n1", Fraction(1),
                     uses_a=True, description="sum G1(n,0) of pair7-q-a"),
        IdentitySpec("rama-level2-8n1",
                     _classical(_classical_term(False, Fraction(1, 9), (HALF, QUARTER, 3 * QUARTER),
                                                AffineForm(8, 0, 1))),
                     ClosedConstant(Fraction(2), 3, "2*sqrt(3)/pi"),
                     description="sum (1/2)_n(1/4)_n(3/4)_n/(1)_n^3 (8n+1)/9^n"),
        IdentitySpec("28n3-q", _with_bracket(_prefactor(_28N3_PREFACTOR), _28n3_bracket),
                     _LEVEL2_RHS, "rama-level2-28n3", Fraction(3, 8),
                     description="q-analogue of the 28n+3 series, derived from p1(pair7-q)"),
        IdentitySpec("28n3-q-appendix", _with_bracket(_prefactor(_28N3_PREFACTOR), _28n3_appendix_bracket),
                     _LEVEL2_RHS, "rama-level2-28n3", Fraction(3, 8),
                     description="same summand rewritten with [4n+1]^2 q^{8n+2}/((1+q^{2n+1})(1+q^{4n+2})[8n+2])"),
        IdentitySpec("rama-level2-28n3",
                     _classical(_classical_term(True, Fraction(1, 48), (HALF, QUARTER, 3 * QUARTER),
                                                AffineForm(28, 0, 3))),
                     ClosedConstant(Fraction(16, 3), 3, "16*sqrt(3)/(3*pi)"),
                     description="sum (1/2)_n(1/4)_n(3/4)_n/(1)_n^3 (28n+3) (-1/48)^n"),
        IdentitySpec("28n3-q-a", _with_bracket(_prefactor(_28N3_A_PREFACTOR), _28n3_a_bracket),
                     _LEVEL2_A_RHS, "rama-level2-28n3", Fraction(3, 8), uses_a=True,
                     description="a-generalization of 28n3-q"),
    ]
    return {spec.id: spec for spec in specs}


IDENTITIES: Dict[str, IdentitySpec] = _build_registry()

# 같은 급수의 두 인쇄 형태 (a 일반화는 a=1 에서 비교)
FORM_EQUIVALENCES: List[Tuple[str, str]] = [
    ("new-level1-q-appendix", "new-level1-q"),
    ("28n3-q-appendix", "28n3-q"),
    ("level1-q-a", "new-level1-q"),
    ("28n3-q-a", "28n3-q"),
    ("gz-thm44-input", "rama1-q"),
    ("gz-8n1-q-a", "guo-zud-8n1-q"),
]


def identity_ids() -> List[str]:
    return list(IDENTITIES)


def get_identity(identity_id: str) -> IdentitySpec:
    if identity_id not in IDENTITIES:
        raise InvalidArgument(f"unknown identity {identity_id!r}; expected one of {identity_ids()}")
    return IDENTITIES[identity_id]


def perturbed_identity(identity_id: str) -> IdentitySpec:
    """Negative control: summand doubled for n >= 1."""
    spec = get_identity(identity_id)
    base = spec.summand

    def summand(n: int, a: LaurentQ) -> ExtTerm:
        term = base(n, a)
        return term * 2 if n >= 1 else term

    return replace(spec, id=f"perturbed({identity_id})", summand=summand)
