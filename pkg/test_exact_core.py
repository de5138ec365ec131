"""
정확 연산 기반(exact core) 테스트
유리수 변환, Jacobi 기호, 소수 거듭제곱 나머지, 오류 계층
"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# 프로젝트 루트를 Python 패스에 추가
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.core.errors import (InvalidArgument, ModulusMismatch, NonInvertibleDenominator,  # noqa: E402
                             PoleInRelation, PoleInTerm, QWZError)
from src.core.exact import (ResidueClass, as_rational, format_rational, is_prime, jacobi,  # noqa: E402
                            mod_reduce, prime_power_base, sign_power_exponent)


def test_as_rational_parses_and_reduces():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(" -4 ") == Fraction(-4)
    assert as_rational(Fraction(2, 4)) == Fraction(1, 2)
    assert format_rational(Fraction(-3, 9)) == "-1/3"
    assert format_rational(Fraction(5)) == "5"


@pytest.mark.parametrize("bad", ["x", "1/0", "", 0.5, True])
def test_as_rational_rejects_garbage(bad):
    with pytest.raises(InvalidArgument):
        as_rational(bad)


def test_jacobi_examples():
    assert jacobi(-2, 5) == -1
    assert jacobi(-3, 7) == 1
    assert jacobi(-3, 5) == -1
    assert jacobi(-2, 3) == 1
    assert jacobi(3, 9) == 0
    for m in (1, 3, 15, 99):
        assert jacobi(1, m) == 1


@pytest.mark.parametrize("m", [0, -3, 4])
def test_jacobi_needs_odd_positive_modulus(m):
    with pytest.raises(InvalidArgument):
        jacobi(1, m)


def test_sign_power_exponent_matches_jacobi_of_minus_two():
    assert sign_power_exponent(1) == 0
    assert sign_power_exponent(3) == 0
    assert sign_power_exponent(5) == 1
    for m in range(1, 100, 2):
        assert (-1) ** sign_power_exponent(m) == jacobi(-2, m)
    with pytest.raises(InvalidArgument):
        sign_power_exponent(6)


def test_jacobi_is_multiplicative():
    for m in range(1, 100, 2):
        for a in (-7, -3, -2, 2, 5, 11):
            for b in (-1, 3, 6, 13):
                assert jacobi(a * b, m) == jacobi(a, m) * jacobi(b, m)
    for m in range(1, 34, 2):
        for n in range(1, 34, 2):
            for a in (-3, -2, 7, 10):
                assert jacobi(a, m * n) == jacobi(a, m) * jacobi(a, n)


def test_mod_reduce_examples():
    assert mod_reduce(Fraction(1, 2), 27) == ResidueClass(14, 27)
    assert mod_reduce(Fraction(15, 8), 125) == ResidueClass(80, 125)
    assert mod_reduce(-1, 49) == ResidueClass(48, 49)
    with pytest.raises(NonInvertibleDenominator):
        mod_reduce(Fraction(1, 3), 27)


def test_mod_reduce_is_additive():
    values = [Fraction(1, 2), Fraction(-7, 4), Fraction(22, 13), Fraction(5)]
    for r1 in values:
        for r2 in values:
            assert mod_reduce(r1 + r2, 125) == mod_reduce(r1, 125) + mod_reduce(r2, 125)


def test_residue_class_guards():
    with pytest.raises(ModulusMismatch):
        ResidueClass.of(1, 9) + ResidueClass.of(1, 27)
    with pytest.raises(InvalidArgument):
        ResidueClass(1, 6)
    with pytest.raises(InvalidArgument):
        ResidueClass(9, 9)
    assert ResidueClass.of(3, 9) * ResidueClass.of(7, 9) == ResidueClass(3, 9)
    assert -ResidueClass.of(1, 5) == ResidueClass(4, 5)
    assert str(ResidueClass(50, 125)) == "50 mod 125"


def test_primality_and_prime_powers():
    assert is_prime(13)
    assert not is_prime(15)
    assert prime_power_base(125) == (5, 3)
    with pytest.raises(InvalidArgument):
        is_prime(10 ** 6 + 3)


def test_errors_carry_codes_and_locations():
    error = PoleInRelation("pole in G", 2, 3)
    assert isinstance(error, QWZError)
    assert error.describe() == "pole_in_relation: pole in G at (n=2, k=3)"
    assert PoleInTerm("pole", 4).n == 4
    assert isinstance(InvalidArgument("x"), ValueError)


if __name__ == "__main__":
    print("[TEST] 정확 연산 테스트...")
    sys.exit(pytest.main([__file__, "-q"]))
