"""
Identity verification - 수치 잔차, q->1 항별 극한, 인쇄 형태 동치, 변환 전후 합 비교
부분합은 유리수 q0 에서 정확히 계산한 뒤 한 번만 반올림한다.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

import mpmath

from ..algebra.qpoly import LaurentQ
from ..core.errors import InvalidArgument, PoleAtOne, PoleError, PoleInTerm
from ..core.exact import as_rational, format_rational
from ..series.qseries import A_ONE, ExtTerm, ext_eval_exact
from ..wz.engine import compose, ext_equal, format_term, partial_sum_at
from ..wz.pairs import DERIVED_IDENTITIES, derived_pair, get_pair
from .registry import ClosedConstant, IdentitySpec, get_identity

logger = logging.getLogger(__name__)

IdentityRef = Union[str, IdentitySpec]


@dataclass
class IdentityResidual:
    identity_id: str
    n_terms: int
    q0: Optional[Fraction]
    lhs: mpmath.mpf
    rhs: mpmath.mpf

    @property
    def residual(self) -> mpmath.mpf:
        return abs(self.lhs - self.rhs)


@dataclass
class TermComparison:
    """n 번째 항 비교 결과"""
    n: int
    passed: bool
    witness: str = ""


def _resolve(identity: IdentityRef) -> IdentitySpec:
    return identity if isinstance(identity, IdentitySpec) else get_identity(identity)


def _to_mpf(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / value.denominator


def exact_partial_sum_at(spec: IdentitySpec, n_terms: int, q0, a: LaurentQ = A_ONE) -> Fraction:
    """sum_{n<n_terms} summand(n)(q0) as an exact rational."""
    total = Fraction(0)
    for n in range(n_terms):
        try:
            total += ext_eval_exact(spec.term(n, a), q0)
        except PoleError as e:
            raise PoleInTerm(str(e), n) from e
    return total


def verify_numeric(identity: IdentityRef, q0, n_terms: int, precision: int = 30,
                   a: LaurentQ = A_ONE) -> IdentityResidual:
    """|sum_{n<N} summand(n)(q0) - RHS(q0)|; classical identities ignore q0."""
    spec = _resolve(identity)
    if n_terms < 0:
        raise InvalidArgument(f"n_terms must be nonnegative, got {n_terms}")
    q_exact = as_rational(q0) if spec.q_valued else None
    partial = exact_partial_sum_at(spec, n_terms, q_exact, a)
    with mpmath.workdps(precision + 10):
        lhs = _to_mpf(partial)
        if isinstance(spec.rhs, ClosedConstant):
            rhs = spec.rhs.evaluate(precision)
        else:
            rhs = spec.rhs.evaluate(a, _to_mpf(q_exact), precision)
    result = IdentityResidual(spec.id, n_terms, q_exact, lhs, rhs)
    logger.debug(f"[{spec.id}] q0={q_exact} N={n_terms} a={a}: residual {mpmath.nstr(result.residual, 5)}")
    return result


def classical_value(identity: IdentityRef, n_terms: int, precision: int = 30) -> mpmath.mpf:
    """Partial sum minus the closed 1/pi constant."""
    spec = _resolve(identity)
    if not isinstance(spec.rhs, ClosedConstant):
        raise InvalidArgument(f"identity {spec.id} is not a classical 1/pi series")
    result = verify_numeric(spec, None, n_terms, precision)
    with mpmath.workdps(precision + 10):
        return result.lhs - result.rhs


def _limit(term: ExtTerm) -> Fraction:
    if term.is_pole:
        raise PoleAtOne(f"term has a pole of order {-term.zero_order} before the limit")
    if term.is_zero:
        return Fraction(0)
    if isinstance(term.value, Fraction):
        return term.value
    return term.value.limit_q1()


def verify_limit_terms(identity: IdentityRef, n_max: int, a: LaurentQ = A_ONE) -> List[TermComparison]:
    """limit_{q->1} summand(n) == limit_scale * classical_summand(n) for 0 <= n <= n_max."""
    spec = _resolve(identity)
    if spec.classical_companion is None:
        raise InvalidArgument(f"identity {spec.id} has no classical companion")
    companion = get_identity(spec.classical_companion)
    results = []
    for n in range(n_max + 1):
        expected = spec.limit_scale * _limit(companion.term(n))
        try:
            limit = _limit(spec.term(n, a))
        except PoleAtOne as e:
            results.append(TermComparison(n, False, e.describe()))
            continue
        passed = limit == expected
        witness = "" if passed else f"limit {format_rational(limit)} != {format_rational(expected)}"
        results.append(TermComparison(n, passed, witness))
    return results


def _compare_terms(n: int, first: ExtTerm, second: ExtTerm) -> TermComparison:
    if ext_equal(first, second):
        return TermComparison(n, True)
    return TermComparison(n, False, f"{format_term(first)} != {format_term(second)}")


def summand_form_equivalence(first: IdentityRef, second: IdentityRef, n_max: int = 10,
                             a: LaurentQ = A_ONE) -> List[TermComparison]:
    """Two printed forms of one summand compared as reduced rational functions."""
    first_spec, second_spec = _resolve(first), _resolve(second)
    second_a = a if second_spec.uses_a else A_ONE
    if a != second_a:
        raise InvalidArgument(f"{second_spec.id} takes no a-parameter; compare at a = 1")
    return [
        _compare_terms(n, first_spec.term(n, a), second_spec.term(n, second_a))
        for n in range(n_max + 1)
    ]


def derived_summand_check(pair_id: str, n_max: int = 10, a: LaurentQ = A_ONE) -> List[TermComparison]:
    """G2(n,0) of the transformed pair against the registered identity summand."""
    if pair_id not in DERIVED_IDENTITIES:
        raise InvalidArgument(f"no derived identity for pair {pair_id!r}")
    _, identity_id = DERIVED_IDENTITIES[pair_id]
    spec = get_identity(identity_id)
    derived = derived_pair(pair_id, a)
    logger.info(f"[{derived.id}] comparing G(n,0) with {identity_id} for n <= {n_max}")
    return [_compare_terms(n, derived.G(n, 0), spec.term(n, a)) for n in range(n_max + 1)]


def transform_sum_equality(pair_id: str, q0, n_terms: int, chain: Optional[Sequence[str]] = None,
                           a: LaurentQ = A_ONE, precision: int = 30) -> mpmath.mpf:
    """|sum_{n<N} G2(n,0) - sum_{n<N} G1(n,0)| at a rational q0."""
    q_exact = as_rational(q0)
    base = get_pair(pair_id, a)
    if chain is None:
        if pair_id not in DERIVED_IDENTITIES:
            raise InvalidArgument(f"no default transform chain for pair {pair_id!r}")
        derived = derived_pair(pair_id, a)
    else:
        derived = compose(base, chain)
    derived_sum = partial_sum_at(lambda n: derived.G(n, 0), n_terms, q_exact)
    base_sum = partial_sum_at(lambda n: base.G(n, 0), n_terms, q_exact)
    with mpmath.workdps(precision + 10):
        return abs(_to_mpf(derived_sum) - _to_mpf(base_sum))
