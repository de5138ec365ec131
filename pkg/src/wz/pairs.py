"""
WZ pair registry
q-쌍(guo, guo-a, pair7-q, pair7-q-a)과 고전 쌍(pair3.2, pair3.2-original, pair7)의 생성자,
그리고 변환으로 얻은 항등식의 n 번째 항(G2(n,0)) 계산
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, List

from ..core.errors import InvalidArgument
from ..series.qseries import A_ONE, ExtTerm, poch
from ..algebra.qpoly import LaurentQ
from .engine import WZPair, compose
from .terms import (AffineForm, ClassicalHyperTerm, LinearForm as L, QFactor, QHyperTerm,
                    QuadraticForm, RisingFactor, TermFunction)

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

# 1/(1-q) = (q;q)_1^{-1}
_INV_ONE_MINUS_Q = QFactor(poch(1, 1), L(c=1), -1)


def _q_pair(pair_id: str, f_term: QHyperTerm, g_term: QHyperTerm, a: LaurentQ = A_ONE,
            vanishes_at_zero: bool = True) -> WZPair:
    return WZPair(
        id=pair_id,
        F=TermFunction.from_term(f_term, f"F[{pair_id}]", a),
        G=TermFunction.from_term(g_term, f"G[{pair_id}]", a),
        a=a,
        q_valued=True,
        vanishes_at_zero=vanishes_at_zero,
    )


def _classical_pair(pair_id: str, f_term: ClassicalHyperTerm, g_term: ClassicalHyperTerm) -> WZPair:
    return WZPair(
        id=pair_id,
        F=TermFunction.from_term(f_term, f"F[{pair_id}]"),
        G=TermFunction.from_term(g_term, f"G[{pair_id}]"),
        q_valued=False,
    )


def _is_one(a: LaurentQ) -> bool:
    return a == A_ONE


# ---------------------------------------------------------------------------
# q-쌍
# ---------------------------------------------------------------------------

def guo() -> WZPair:
    """(-1)^{n+k} q^{(n+k)(3n-k)} (q;q^2)_{n-k-1}(q;q^2)_{n+k}^2 / ((q^4;q^4)_{n-1}^2 (q^4;q^4)_{n+k}) / (1-q)"""
    sign = L(1, 1)
    q_power = QuadraticForm(nn=3, nk=2, kk=-1)
    f_term = QHyperTerm(sign=sign, q_power=q_power, pochhammers=(
        QFactor(poch(1, 2), L(1, -1, -1)),
        QFactor(poch(1, 2), L(1, 1), 2),
        QFactor(poch(4, 4), L(1, 0, -1), -2),
        QFactor(poch(4, 4), L(1, 1), -1),
        _INV_ONE_MINUS_Q,
    ))
    g_term = QHyperTerm(sign=sign, q_power=q_power, pochhammers=(
        QFactor(poch(1, 2), L(1, -1)),
        QFactor(poch(1, 2), L(1, 1), 2),
        QFactor(poch(4, 4), L(1, 0), -2),
        QFactor(poch(4, 4), L(1, 1), -1),
    ), brackets=((L(6, 2, 1), 1),))
    return _q_pair("guo", f_term, g_term)


def guo_a(a: LaurentQ = A_ONE) -> WZPair:
    """Guo pair with (aq;q^2)(q/a;q^2) numerators and (aq^4;q^4)(q^4/a;q^4) denominators."""
    sign = L(1, 1)
    q_power = QuadraticForm(nn=3, nk=2, kk=-1)
    f_term = QHyperTerm(sign=sign, q_power=q_power, pochhammers=(
        QFactor(poch(1, 2), L(1, -1, -1)),
        QFactor(poch(1, 2, a_power=1), L(1, 1)),
        QFactor(poch(1, 2, a_power=-1), L(1, 1)),
        QFactor(poch(4, 4), L(1, 1), -1),
        QFactor(poch(4, 4, a_power=1), L(1, 0, -1), -1),
        QFactor(poch(4, 4, a_power=-1), L(1, 0, -1), -1),
        _INV_ONE_MINUS_Q,
    ))
    g_term = QHyperTerm(sign=sign, q_power=q_power, pochhammers=(
        QFactor(poch(1, 2), L(1, -1)),
        QFactor(poch(1, 2, a_power=1), L(1, 1)),
        QFactor(poch(1, 2, a_power=-1), L(1, 1)),
        QFactor(poch(4, 4), L(1, 1), -1),
        QFactor(poch(4, 4, a_power=1), L(1, 0), -1),
        QFactor(poch(4, 4, a_power=-1), L(1, 0), -1),
    ), brackets=((L(6, 2, 1), 1),))
    return _q_pair("guo-a", f_term, g_term, a, vanishes_at_zero=_is_one(a))


def pair7_q() -> WZPair:
    """(-1)^k q^{2n^2+4nk-k^2} (q;q^2)_{n+k}^2 (q;q^2)_{2n-k-1} (q^3;q^6)_k / ((q^6;q^6)_{n-1}^2 (q^2;q^2)_{2n+2k}) / (1-q)"""
    sign = L(0, 1)
    q_power = QuadraticForm(nn=2, nk=4, kk=-1)
    f_term = QHyperTerm(sign=sign, q_power=q_power, pochhammers=(
        QFactor(poch(1, 2), L(1, 1), 2),
        QFactor(poch(1, 2), L(2, -1, -1)),
        QFactor(poch(6, 6), L(1, 0, -1), -2),
        QFactor(poch(2, 2), L(2, 2), -1),
        QFactor(poch(3, 6), L(0, 1)),
        _INV_ONE_MINUS_Q,
    ))
    g_term = QHyperTerm(sign=sign, q_power=q_power, pochhammers=(
        QFactor(poch(1, 2), L(1, 1), 2),
        QFactor(poch(1, 2), L(2, -1)),
        QFactor(poch(6, 6), L(1, 0), -2),
        QFactor(poch(2, 2), L(2, 2), -1),
        QFactor(poch(3, 6), L(0, 1)),
    ), brackets=((L(8, 2, 1), 1),))
    return _q_pair("pair7-q", f_term, g_term)


def pair7_q_a(a: LaurentQ = A_ONE) -> WZPair:
    sign = L(0, 1)
    q_power = QuadraticForm(nn=2, nk=4, kk=-1)
    f_term = QHyperTerm(sign=sign, q_power=q_power, pochhammers=(
        QFactor(poch(1, 2, a_power=1), L(1, 1)),
        QFactor(poch(1, 2, a_power=-1), L(1, 1)),
        QFactor(poch(1, 2), L(2, -1, -1)),
        QFactor(poch(6, 6, a_power=1), L(1, 0, -1), -1),
        QFactor(poch(6, 6, a_power=-1), L(1, 0, -1), -1),
        QFactor(poch(2, 2), L(2, 2), -1),
        QFactor(poch(3, 6), L(0, 1)),
        _INV_ONE_MINUS_Q,
    ))
    g_term = QHyperTerm(sign=sign, q_power=q_power, pochhammers=(
        QFactor(poch(1, 2, a_power=1), L(1, 1)),
        QFactor(poch(1, 2, a_power=-1), L(1, 1)),
        QFactor(poch(1, 2), L(2, -1)),
        QFactor(poch(6, 6, a_power=1), L(1, 0), -1),
        QFactor(poch(6, 6, a_power=-1), L(1, 0), -1),
        QFactor(poch(2, 2), L(2, 2), -1),
        QFactor(poch(3, 6), L(0, 1)),
    ), brackets=((L(8, 2, 1), 1),))
    return _q_pair("pair7-q-a", f_term, g_term, a, vanishes_at_zero=_is_one(a))


# ---------------------------------------------------------------------------
# 고전 쌍
# ---------------------------------------------------------------------------

def _rising(start, length: L, power: int = 1) -> RisingFactor:
    if not isinstance(start, AffineForm):
        start = AffineForm(c=Fraction(start))
    return RisingFactor(start, length, power)


def pair32_classical() -> WZPair:
    """F = 8 (-1)^{n+k}/2^{3n+k} (1/2)_{n-k-1}(1/2)_{n+k}^2/((1)_{n-1}^2 (1)_{n+k})"""
    sign = L(1, 1)
    geometric = ((HALF, L(3, 1)),)
    f_term = ClassicalHyperTerm(sign=sign, geometric=geometric, scalar=Fraction(8), pochhammers=(
        _rising(HALF, L(1, -1, -1)),
        _rising(HALF, L(1, 1), 2),
        _rising(1, L(1, 0, -1), -2),
        _rising(1, L(1, 1), -1),
    ))
    g_term = ClassicalHyperTerm(sign=sign, geometric=geometric, pochhammers=(
        _rising(HALF, L(1, -1)),
        _rising(HALF, L(1, 1), 2),
        _rising(1, L(1, 0), -2),
        _rising(1, L(1, 1), -1),
    ), linear=((AffineForm(6, 2, 1), 1),))
    return _classical_pair("pair3.2", f_term, g_term)


def pair32_original() -> WZPair:
    """(-1)^n/2^{3n+k} (1/2-k)_n (1/2+k)_n^2 / ((1)_n^2 (1+k)_n) (1/2)_k/(1)_k with 16n^2/(2n-2k-1) resp. (6n+2k+1)"""
    sign = L(1, 0)
    geometric = ((HALF, L(3, 1)),)
    common = (
        _rising(AffineForm(0, -1, HALF), L(1, 0)),
        _rising(AffineForm(0, 1, HALF), L(1, 0), 2),
        _rising(1, L(1, 0), -2),
        _rising(AffineForm(0, 1, 1), L(1, 0), -1),
        _rising(HALF, L(0, 1)),
        _rising(1, L(0, 1), -1),
    )
    f_term = ClassicalHyperTerm(sign=sign, geometric=geometric, pochhammers=common, scalar=Fraction(16),
                                linear=((AffineForm(1, 0, 0), 2), (AffineForm(2, -2, -1), -1)))
    g_term = ClassicalHyperTerm(sign=sign, geometric=geometric, pochhammers=common,
                                linear=((AffineForm(6, 2, 1), 1),))
    return _classical_pair("pair3.2-original", f_term, g_term)


def pair7_classical() -> WZPair:
    """F = 18 (-1)^k (1/2)_{n+k}^2 (1/2)_{2n-k-1} (1/2)_k / ((1)_{n-1}^2 (1)_{2n+2k}) 3^k/9^n"""
    sign = L(0, 1)
    geometric = ((Fraction(3), L(0, 1)), (Fraction(1, 9), L(1, 0)))
    f_term = ClassicalHyperTerm(sign=sign, geometric=geometric, scalar=Fraction(18), pochhammers=(
        _rising(HALF, L(1, 1), 2),
        _rising(HALF, L(2, -1, -1)),
        _rising(HALF, L(0, 1)),
        _rising(1, L(1, 0, -1), -2),
        _rising(1, L(2, 2), -1),
    ))
    g_term = ClassicalHyperTerm(sign=sign, geometric=geometric, pochhammers=(
        _rising(HALF, L(1, 1), 2),
        _rising(HALF, L(2, -1)),
        _rising(HALF, L(0, 1)),
        _rising(1, L(1, 0), -2),
        _rising(1, L(2, 2), -1),
    ), linear=((AffineForm(8, 2, 1), 1),))
    return _classical_pair("pair7", f_term, g_term)


# ---------------------------------------------------------------------------
# 레지스트리
# ---------------------------------------------------------------------------

PAIR_CONSTRUCTORS: Dict[str, Callable[..., WZPair]] = {
    "guo": guo,
    "guo-a": guo_a,
    "pair3.2": pair32_classical,
    "pair3.2-original": pair32_original,
    "pair7": pair7_classical,
    "pair7-q": pair7_q,
    "pair7-q-a": pair7_q_a,
}

A_PARAMETER_PAIRS = ("guo-a", "pair7-q-a")

# 항별 q->1 극한 관계 (q-쌍, 고전 쌍)
LIMIT_COMPANIONS = {
    "guo": "pair3.2",
    "pair7-q": "pair7",
}

# 변환 경로와 비교 대상 항등식
DERIVED_IDENTITIES = {
    "guo": (("p3", "p2"), "new-level1-q"),
    "guo-a": (("p3", "p2"), "level1-q-a"),
    "pair7-q": (("p1",), "28n3-q"),
    "pair7-q-a": (("p1",), "28n3-q-a"),
}


def pair_ids() -> List[str]:
    return list(PAIR_CONSTRUCTORS)


def get_pair(pair_id: str, a: LaurentQ = A_ONE) -> WZPair:
    """등록된 쌍 생성; a 는 a 일반화 쌍에만 허용"""
    if pair_id not in PAIR_CONSTRUCTORS:
        raise InvalidArgument(f"unknown pair {pair_id!r}; expected one of {pair_ids()}")
    if pair_id in A_PARAMETER_PAIRS:
        return PAIR_CONSTRUCTORS[pair_id](a)
    if not _is_one(a):
        raise InvalidArgument(f"pair {pair_id!r} takes no a-parameter")
    return PAIR_CONSTRUCTORS[pair_id]()


def derived_pair(pair_id: str, a: LaurentQ = A_ONE) -> WZPair:
    """p2(p3(guo)) 또는 p1(pair7-q) 계열"""
    if pair_id not in DERIVED_IDENTITIES:
        raise InvalidArgument(f"no derived identity for pair {pair_id!r}")
    chain, _ = DERIVED_IDENTITIES[pair_id]
    return compose(get_pair(pair_id, a), chain)


def summand_of_derived_identity(pair_id: str, n: int, a: LaurentQ = A_ONE) -> ExtTerm:
    """G2(n,0) of the transformed pair."""
    if n < 0:
        raise InvalidArgument(f"summand index must be nonnegative, got {n}")
    return derived_pair(pair_id, a).G(n, 0)
