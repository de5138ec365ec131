"""
qseries 테스트 - q-Pochhammer 영점 차수, 음의 길이 확장, 무한곱 수치 평가 (mpmath.qp 대조)
"""
import sys
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.algebra.qpoly import RatFuncQ  # noqa: E402
from src.core.errors import Divergent, InvalidArgument, PoleError  # noqa: E402
from src.series.qseries import (A_ONE, ExtTerm, a_subst, ext_eval, ext_eval_exact, ext_sum, poch,  # noqa: E402
                                pochhammer, qpoch_infinite, qpochhammer)


def test_finite_qpochhammer():
    term = qpochhammer(poch(1, 2), A_ONE, 2)
    assert term.zero_order == 0
    assert term.value == RatFuncQ.one_minus(1, 1) * RatFuncQ.one_minus(1, 3)
    empty = qpochhammer(poch(3, 1), A_ONE, 0)
    assert empty.zero_order == 0 and empty.value == RatFuncQ.one()


def test_negative_length_extension_counts_poles():
    # (q^4;q^4)_{-1} = 1/(1 - q^0)
    assert qpochhammer(poch(4, 4), A_ONE, -1).zero_order == -1
    # (q;q^2)_{-1} = 1/(1 - q^-1)
    term = qpochhammer(poch(1, 2), A_ONE, -1)
    assert term.zero_order == 0
    assert term.value == RatFuncQ.one_minus(1, -1).reciprocal()


def test_zero_and_pole_cancel_exactly():
    zero = qpochhammer(poch(0, 4), A_ONE, 1)
    pole = qpochhammer(poch(4, 4), A_ONE, -1)
    assert zero.is_zero and pole.is_pole
    product = zero * pole
    assert product.zero_order == 0
    assert product.value == RatFuncQ.one()


def test_a_substitution():
    # (aq;q^2)_1 with a = q^2
    assert qpochhammer(poch(1, 2, a_power=1), a_subst(2), 1).value == RatFuncQ.one_minus(1, 3)
    # (q/a;q^2)_1 with a = q is the literal zero 1 - q^0
    assert qpochhammer(poch(1, 2, a_power=-1), a_subst(1), 1).zero_order == 1
    # a = -q flips the sign of the argument
    assert qpochhammer(poch(0, 1, a_power=1), a_subst(1, sign=-1), 1).value == RatFuncQ.one_minus(-1, 1)
    with pytest.raises(InvalidArgument):
        poch(1, 0)


def test_classical_pochhammer():
    assert pochhammer(Fraction(1, 2), 3) == ExtTerm(0, Fraction(15, 8))
    assert pochhammer(Fraction(1), -1).zero_order == -1
    assert pochhammer(Fraction(1, 2), -1) == ExtTerm(0, Fraction(-2))
    assert pochhammer(Fraction(-2), 4).zero_order == 1


def test_ext_sum_drops_higher_order_terms():
    one = ExtTerm.of(RatFuncQ.one())
    zero = ExtTerm(1, RatFuncQ.one())
    assert ext_sum([one, zero]) == one
    assert ext_sum([zero, zero]).is_zero
    assert (one - one).is_zero
    with pytest.raises(PoleError):
        ext_sum([one, ExtTerm(-1, RatFuncQ.one())])
    with pytest.raises(PoleError):
        ExtTerm(-1, Fraction(1)).finite()


def test_ext_eval():
    term = qpochhammer(poch(1, 1), A_ONE, 3)
    assert ext_eval_exact(term, Fraction(1, 2)) == Fraction(1, 2) * Fraction(3, 4) * Fraction(7, 8)
    assert ext_eval(ExtTerm(2, RatFuncQ.one()), Fraction(1, 2)) == 0
    with pytest.raises(PoleError):
        ext_eval(qpochhammer(poch(4, 4), A_ONE, -1), Fraction(1, 2))


def test_infinite_product_at_zero():
    assert qpoch_infinite(poch(3, 4), A_ONE, 0) == 1


def test_infinite_product_matches_mpmath():
    with mpmath.workdps(40):
        half = mpmath.mpf(1) / 2
        value = qpoch_infinite(poch(1, 1), A_ONE, Fraction(1, 2), precision=30)
        assert abs(value - mpmath.mpf("0.2887880951")) < mpmath.mpf("1e-10")
        assert abs(value - mpmath.qp(half)) < mpmath.mpf(10) ** -28
        sixteenth = half ** 4
        value = qpoch_infinite(poch(4, 4), A_ONE, Fraction(1, 2), precision=30)
        assert abs(value - mpmath.qp(sixteenth, sixteenth)) < mpmath.mpf(10) ** -28
        # (q^3;q^4)_inf = qp(q^3, q^4)
        value = qpoch_infinite(poch(3, 4), A_ONE, Fraction(-1, 3), precision=30)
        q0 = mpmath.mpf(-1) / 3
        assert abs(value - mpmath.qp(q0 ** 3, q0 ** 4)) < mpmath.mpf(10) ** -28


def test_infinite_product_needs_convergence():
    with pytest.raises(Divergent):
        qpoch_infinite(poch(1, 1), A_ONE, 1)
    with pytest.raises(Divergent):
        qpoch_infinite(poch(-1, 1), A_ONE, 0)


if __name__ == "__main__":
    print("[TEST] qseries 테스트...")
    sys.exit(pytest.main([__file__, "-q"]))
