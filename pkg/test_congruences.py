"""
q-합동 테스트 - 정확 부분합, 종결 평가, 원분 합동, 두 합동 정리와 초합동
"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.algebra.qpoly import RatFuncQ, cyclotomic, divides, qbracket  # noqa: E402
from src.congruences.suite import (FAIL, PASS, THEOREM1_SERIES, THEOREM2_SERIES, classical_partial_sum,  # noqa: E402
                                   cyclotomic_congruence_check, partial_sum, require_supercongruence_prime,
                                   require_theorem1_m, require_theorem2_m, supercongruence_check,
                                   terminating_evaluation_check, theorem1_check, theorem1_rhs, theorem2_check,
                                   theorem2_rhs, theorem_rhs, theorem_supercongruence)
from src.core.errors import InvalidArgument  # noqa: E402
from src.core.exact import ResidueClass, jacobi, mod_reduce  # noqa: E402
from src.identities.registry import get_identity  # noqa: E402
from src.series.qseries import A_ONE, a_subst  # noqa: E402


def _statuses(results):
    return [r.status for r in results]


def test_partial_sum_examples():
    assert partial_sum("level1-q-a", a_subst(1), 0).value == RatFuncQ.one()
    first = partial_sum("new-level1-q", A_ONE, 0)
    assert first.value == get_identity("new-level1-q").term(0).value
    expected = RatFuncQ.monomial(-1, -2) * RatFuncQ.bracket(5)
    assert partial_sum("28n3-q-a", a_subst(5), 2).value == expected
    with pytest.raises(InvalidArgument):
        partial_sum("rama-level1", A_ONE, 2)
    with pytest.raises(InvalidArgument):
        partial_sum("new-level1-q", A_ONE, -1)


def test_substitution_symmetry():
    for upper in (2, 4):
        assert partial_sum("level1-q-a", a_subst(5), upper).value == \
            partial_sum("level1-q-a", a_subst(-5), upper).value


@pytest.mark.parametrize("identity_id, m", [
    ("level1-q-a", 1),
    ("level1-q-a", 3),
    ("level1-q-a", 5),
    ("28n3-q-a", 1),
    ("28n3-q-a", 5),
    ("28n3-q-a", 7),
])
def test_terminating_evaluations(identity_id, m):
    result = terminating_evaluation_check(identity_id, m)
    assert result.status == PASS, result.witness
    assert result.modulus == "exact"


def test_terminating_values():
    # m = 5: (-q)[5]
    assert terminating_evaluation_check("level1-q-a", 5).witness == \
        f"= {RatFuncQ.monomial(-1, 1) * RatFuncQ.bracket(5)}"
    # m = 7: q^-3 [7] (jacobi(-3,7) = 1)
    assert terminating_evaluation_check("28n3-q-a", 7).witness == \
        f"= {RatFuncQ.monomial(1, -3) * RatFuncQ.bracket(7)}"


def test_terminating_argument_checks():
    with pytest.raises(InvalidArgument):
        terminating_evaluation_check("level1-q-a", 4)
    with pytest.raises(InvalidArgument):
        terminating_evaluation_check("28n3-q-a", 3)
    with pytest.raises(InvalidArgument):
        terminating_evaluation_check("rama1-q", 3)


@pytest.mark.parametrize("m, upper", [(3, 1), (5, 4), (9, 4)])
def test_cyclotomic_congruences(m, upper):
    result = cyclotomic_congruence_check("new-level1-q", m, upper)
    assert result.status == PASS, result.witness
    assert result.modulus == f"[{m}]"


def test_cyclotomic_congruence_needs_odd_m():
    with pytest.raises(InvalidArgument):
        cyclotomic_congruence_check("new-level1-q", 4, 1)
    with pytest.raises(InvalidArgument):
        cyclotomic_congruence_check("28n3-q", 5, 1)


@pytest.mark.parametrize("m", [3, 5])
def test_theorem1(m):
    results = theorem1_check(m)
    assert _statuses(results) == [PASS, PASS], [r.witness for r in results]
    assert [r.params["U"] for r in results] == [(m - 1) // 2, m - 1]
    assert [r.modulus for r in results] == [f"[{m}]*Phi_{m}", f"[{m}]*Phi_{m}^2"]


@pytest.mark.slow
@pytest.mark.parametrize("m", [7, 9, 15])
def test_theorem1_larger_m(m):
    assert _statuses(theorem1_check(m)) == [PASS, PASS]


def test_theorem1_half_truncation_misses_squared_modulus():
    results = theorem1_check(5, strong=True)
    assert [(r.params["U"], r.modulus, r.exploratory) for r in results] == [
        (2, "[5]*Phi_5", False),
        (2, "[5]*Phi_5^2", True),
        (4, "[5]*Phi_5^2", False),
    ]
    assert _statuses(results) == [PASS, FAIL, PASS]


@pytest.mark.parametrize("m", [5, 7])
def test_theorem2(m):
    results = theorem2_check(m)
    assert _statuses(results) == [PASS, PASS], [r.witness for r in results]
    assert all(r.modulus == f"Phi_{m}^2" for r in results)


@pytest.mark.parametrize("m", [5, 7])
def test_theorem2_strong_modulus(m):
    results = theorem2_check(m, strong=True)
    assert [r.exploratory for r in results] == [False, True, False, True]
    assert [r.modulus for r in results if r.exploratory] == [f"[{m}]*Phi_{m}^2"] * 2
    # U=(m-1)/2 는 [m]Phi_m^2 로 나누어떨어지지 않고, U=m-1 은 나누어떨어진다
    assert _statuses(results) == [PASS, FAIL, PASS, PASS]


def test_theorem_argument_checks():
    for bad in (1, 4, 0, -3):
        with pytest.raises(InvalidArgument):
            require_theorem1_m(bad)
    for bad in (3, 9, 15, 4):
        with pytest.raises(InvalidArgument):
            theorem2_check(bad)
    with pytest.raises(InvalidArgument):
        theorem1_check(4)
    require_theorem1_m(9)
    require_theorem2_m(25)


@pytest.mark.slow
@pytest.mark.parametrize("m", [11, 13])
def test_theorem2_larger_m(m):
    assert _statuses(theorem2_check(m)) == [PASS, PASS]


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_theorem_rhs_limits_match_classical_constants(p):
    # 극한 배율 1/16, 3/8 로 나누면 15p(-2/p), 3p(-3/p)
    assert theorem1_rhs(p).limit_q1() / Fraction(1, 16) == 15 * p * jacobi(-2, p)
    if p > 3:
        assert theorem2_rhs(p).limit_q1() / Fraction(3, 8) == 3 * p * jacobi(-3, p)


def test_unscaled_right_hand_sides_only_reach_the_bracket():
    m = 5
    printed1 = theorem1_rhs(m) * RatFuncQ.constant(Fraction(16, 15))
    difference = partial_sum(THEOREM1_SERIES, A_ONE, m - 1).value - printed1
    assert divides(qbracket(m), difference)
    assert not divides(qbracket(m) * cyclotomic(m) ** 2, difference)

    printed2 = theorem2_rhs(m) * RatFuncQ.constant(Fraction(8, 9))
    difference = (partial_sum(THEOREM2_SERIES, A_ONE, m - 1).value - printed2) * RatFuncQ.monomial(1, 2)
    assert divides(cyclotomic(m), difference)
    assert not divides(cyclotomic(m) ** 2, difference)


@pytest.mark.parametrize("which, p, residues", [
    ("th1", 3, ["0 mod 9", "18 mod 27"]),
    ("th1", 5, ["0 mod 25", "50 mod 125"]),
    ("th2", 7, ["21 mod 49", "21 mod 49"]),
])
def test_supercongruence_examples(which, p, residues):
    results = theorem_supercongruence(which, p)
    assert _statuses(results) == [PASS, PASS], [r.witness for r in results]
    assert [r.witness for r in results] == residues
    assert [r.params["U"] for r in results] == [(p - 1) // 2, p - 1]
    assert all(r.params["which"] == which for r in results)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_supercongruence_th1(p):
    results = theorem_supercongruence("th1", p)
    assert _statuses(results) == [PASS, PASS]
    assert [r.modulus for r in results] == [str(p ** 2), str(p ** 3)]


@pytest.mark.parametrize("p", [5, 11, 13])
def test_supercongruence_th2(p):
    results = theorem_supercongruence("th2", p)
    assert _statuses(results) == [PASS, PASS]
    assert [r.modulus for r in results] == [str(p ** 2)] * 2


def test_supercongruence_strong_records():
    th1 = theorem_supercongruence("th1", 5, strong=True)
    assert [(r.params["U"], r.modulus, r.exploratory) for r in th1] == [
        (2, "25", False), (4, "125", False), (2, "125", True)]
    assert _statuses(th1) == [PASS, PASS, FAIL]
    assert th1[2].witness == "0 mod 125 != 50 mod 125"

    th2 = theorem_supercongruence("th2", 7, strong=True)
    assert [(r.params["U"], r.modulus, r.exploratory) for r in th2] == [
        (3, "49", False), (6, "49", False), (3, "343", True), (6, "343", True)]
    assert _statuses(th2) == [PASS, PASS, FAIL, PASS]


def test_supercongruence_detects_wrong_rhs():
    results = supercongruence_check("rama-level1", 5, {2: 3, 4: 3}, lambda p, k: ResidueClass.of(1, p ** k))
    assert _statuses(results) == [FAIL, FAIL]
    with pytest.raises(InvalidArgument):
        supercongruence_check("rama-level1", 9, {4: 3}, theorem_rhs("th1"))
    with pytest.raises(InvalidArgument):
        supercongruence_check("rama-level1", 5, {4: 3}, lambda p, k: ResidueClass.of(1, p ** 2))
    with pytest.raises(InvalidArgument):
        theorem_supercongruence("th2", 3)


def test_supercongruence_argument_checks():
    for which, p in (("th1", 9), ("th1", 2), ("th1", 1), ("th3", 5), ("th2", 3)):
        with pytest.raises(InvalidArgument):
            require_supercongruence_prime(which, p)
    require_supercongruence_prime("th1", 3)
    require_supercongruence_prime("th2", 5)


def test_classical_partial_sum_is_exact():
    assert isinstance(classical_partial_sum("rama-level1", 2), Fraction)
    assert mod_reduce(classical_partial_sum("rama-level1", 2), 25) == ResidueClass(0, 25)
    assert mod_reduce(classical_partial_sum("rama-level1", 4), 125) == ResidueClass(50, 125)
    with pytest.raises(InvalidArgument):
        classical_partial_sum("rama1-q", 2)


if __name__ == "__main__":
    print("[TEST] q-합동 테스트...")
    sys.exit(pytest.main([__file__, "-q", "-m", "not slow"]))
