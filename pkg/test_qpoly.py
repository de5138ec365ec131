"""
qpoly 테스트 - 원분다항식, q-정수, RatFuncQ 정규형, 나눗셈 판정, q -> 1 극한
"""
import sys
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest
from sympy import Poly, QQ

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.algebra.qpoly import (POLY_ONE, RatFuncQ, cyclotomic, divides, format_poly,  # noqa: E402
                               poly_coeffs, poly_from_coeffs, q, qbracket)
from src.core.errors import DivisionByZero, InvalidArgument, NonInvertibleDenominator, PoleAtOne  # noqa: E402


def test_cyclotomic_small_cases():
    assert cyclotomic(1) == Poly(q - 1, q, domain=QQ)
    assert poly_coeffs(cyclotomic(3)) == [1, 1, 1]
    assert poly_coeffs(cyclotomic(6)) == [1, -1, 1]
    assert poly_coeffs(cyclotomic(12)) == [1, 0, -1, 0, 1]
    with pytest.raises(InvalidArgument):
        cyclotomic(0)


def test_qbracket():
    assert qbracket(1) == POLY_ONE
    assert poly_coeffs(qbracket(3)) == [1, 1, 1]
    assert qbracket(3) == cyclotomic(3)
    assert qbracket(0).is_zero
    assert qbracket(6) == cyclotomic(2) * cyclotomic(3) * cyclotomic(6)


def test_bracket_as_rational_function():
    assert RatFuncQ.bracket(4) == RatFuncQ.from_poly(poly_from_coeffs([1, 1, 1, 1]))
    # [12] = [3](1+q^3)(1+q^6)
    assert RatFuncQ.bracket(12) == RatFuncQ.bracket(3) * RatFuncQ.one_minus(-1, 3) * RatFuncQ.one_minus(-1, 6)
    # [-2] = -q^-2 [2]
    assert RatFuncQ.bracket(-2) == RatFuncQ.monomial(-1, -2) * RatFuncQ.bracket(2)


def test_arithmetic_is_canonical():
    f = RatFuncQ.from_fraction(poly_from_coeffs([2, 0, 1]), poly_from_coeffs([1, 3]))
    assert f / f == RatFuncQ.one()
    assert f - f == RatFuncQ.zero()
    assert (f + f) == f * 2
    assert RatFuncQ.sum([RatFuncQ.bracket(2), -RatFuncQ.one()]) == RatFuncQ.monomial(1, 1)
    # (1-q^4)/(1-q) = 1+q+q^2+q^3
    assert RatFuncQ.one_minus(1, 4) / RatFuncQ.one_minus(1, 1) == RatFuncQ.bracket(4)


def test_division_by_zero_function():
    with pytest.raises(DivisionByZero):
        RatFuncQ.one() / RatFuncQ.zero()
    with pytest.raises(DivisionByZero):
        RatFuncQ.from_fraction(POLY_ONE, Poly(0, q, domain=QQ))


def test_divides():
    phi3 = cyclotomic(3)
    assert divides(phi3, RatFuncQ.from_poly(phi3 * poly_from_coeffs([2, 1])))
    assert not divides(phi3, RatFuncQ.monomial(1, 1))
    # q 의 거듭제곱은 가역 단위
    assert divides(phi3, RatFuncQ.monomial(1, -5) * RatFuncQ.bracket(3))
    assert divides(phi3 ** 2, RatFuncQ.bracket(3) ** 2 / RatFuncQ.bracket(2))


def test_divides_rejects_shared_denominator():
    with pytest.raises(NonInvertibleDenominator):
        divides(cyclotomic(3), RatFuncQ.cyclotomic_product({3: -1}))
    with pytest.raises(NonInvertibleDenominator):
        divides(cyclotomic(3) ** 2, RatFuncQ.bracket(2) / RatFuncQ.bracket(6))


def test_limit_q1():
    assert RatFuncQ.bracket(6).limit_q1() == 6
    assert (RatFuncQ.bracket(4) / RatFuncQ.bracket(2)).limit_q1() == 2
    assert RatFuncQ.zero().limit_q1() == 0
    with pytest.raises(PoleAtOne):
        RatFuncQ.one_minus(1, 1).reciprocal().limit_q1()


def test_eval_float_and_exact():
    half = Fraction(1, 2)
    assert RatFuncQ.bracket(3).eval_exact(half) == Fraction(7, 4)
    assert RatFuncQ.bracket(3).eval_float(half) == mpmath.mpf("1.75")
    assert RatFuncQ.from_poly(cyclotomic(3)).eval_float(half) == mpmath.mpf("1.75")
    assert (RatFuncQ.monomial(1, -1) * RatFuncQ.bracket(2)).eval_float(half) == 3
    with mpmath.workdps(40):
        value = RatFuncQ.bracket(5).eval_float(mpmath.mpf(1) / 3, precision=30)
        assert abs(value - mpmath.mpf(121) / 81) < mpmath.mpf(10) ** -30
    with pytest.raises(DivisionByZero):
        RatFuncQ.one_minus(1, 1).reciprocal().eval_exact(1)


def test_format_poly():
    assert format_poly(poly_from_coeffs([1, 0, -2])) == "1 + -2*q^2"
    assert format_poly(poly_from_coeffs([Fraction(1, 2), 1]), shift=-1) == "1/2*q^-1 + 1"
    assert format_poly(poly_from_coeffs([1] * 50), max_degree=2) == "1 + 1*q^1 + 1*q^2 + ..."


if __name__ == "__main__":
    print("[TEST] qpoly 테스트...")
    sys.exit(pytest.main([__file__, "-q"]))
