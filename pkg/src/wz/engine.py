"""
WZ Engine - WZ 관계 검증, 격자 검사, 변환 패턴(p1/p2/p3)과 합성
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence

import mpmath

from ..algebra.qpoly import LaurentQ, RatFuncQ
from ..core.errors import InvalidArgument, PoleAtOne, PoleError, PoleInRelation
from ..series.qseries import A_ONE, ExtTerm, ext_eval, ext_eval_exact, ext_sum
from .terms import TermFunction

logger = logging.getLogger(__name__)


@dataclass
class WZPair:
    """F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k)"""
    id: str
    F: TermFunction
    G: TermFunction
    a: LaurentQ = A_ONE
    q_valued: bool = True
    # F(0,k) = 0 기대 여부 (a 일반화 쌍은 a=1 에서만 성립)
    vanishes_at_zero: bool = True


@dataclass
class GridFailure:
    n: int
    k: int
    witness: str


@dataclass
class GridReport:
    """격자 검사 결과"""
    pair_id: str
    n_max: int
    k_max: int
    cells_checked: int = 0
    failures: List[GridFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def format_term(term: ExtTerm, max_degree: Optional[int] = None) -> str:
    if term.zero_order != 0:
        return str(term)
    if isinstance(term.value, RatFuncQ):
        return term.value.format(max_degree)
    return str(term.value)


def _signed_sum(terms: Sequence[ExtTerm], signs: Sequence[int], n: int, k: int) -> ExtTerm:
    try:
        return ext_sum([t if s > 0 else -t for t, s in zip(terms, signs)])
    except PoleError as e:
        raise PoleInRelation(str(e), n, k) from e


def wz_residual(pair: WZPair, n: int, k: int) -> ExtTerm:
    """F(n+1,k) - F(n,k) - G(n,k+1) + G(n,k)"""
    terms = [pair.F(n + 1, k), pair.F(n, k), pair.G(n, k + 1), pair.G(n, k)]
    return _signed_sum(terms, [1, -1, -1, 1], n, k)


def check_grid(pair: WZPair, n_max: int, k_max: int) -> GridReport:
    """WZ 관계를 0 <= n <= n_max, 0 <= k <= k_max 에서 행 우선 순서로 검사"""
    if n_max < 0 or k_max < 0:
        raise InvalidArgument(f"grid bounds must be nonnegative, got {n_max}x{k_max}")
    report = GridReport(pair_id=pair.id, n_max=n_max, k_max=k_max)
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            residual = wz_residual(pair, n, k)
            report.cells_checked += 1
            if not residual.is_zero:
                report.failures.append(GridFailure(n, k, format_term(residual)))
                logger.debug(f"[{pair.id}] residual nonzero at ({n}, {k})")
    logger.info(f"[{pair.id}] grid {n_max}x{k_max}: {report.cells_checked} cells, "
                f"{len(report.failures)} failures")
    return report


# ---------------------------------------------------------------------------
# 변환 패턴
# ---------------------------------------------------------------------------

def _derived(pair: WZPair, label: str, f_eval: Callable, g_eval: Callable) -> WZPair:
    pair_id = f"{label}({pair.id})"
    return WZPair(
        id=pair_id,
        F=TermFunction(f_eval, f"F[{pair_id}]", pair.a, pair.q_valued),
        G=TermFunction(g_eval, f"G[{pair_id}]", pair.a, pair.q_valued),
        a=pair.a,
        q_valued=pair.q_valued,
        vanishes_at_zero=pair.vanishes_at_zero,
    )


def transform_p1(pair: WZPair) -> WZPair:
    """F2(n,k) = F1(n,k+n), G2(n,k) = F1(n+1,k+n) + G1(n,k+n)"""
    F, G = pair.F, pair.G
    return _derived(
        pair, "p1",
        lambda n, k: F(n, k + n),
        lambda n, k: _signed_sum([F(n + 1, k + n), G(n, k + n)], [1, 1], n, k),
    )


def transform_p2(pair: WZPair) -> WZPair:
    """F2(n,k) = F1(n,k-n), G2(n,k) = -F1(n+1,k-n-1) + G1(n,k-n)"""
    F, G = pair.F, pair.G
    return _derived(
        pair, "p2",
        lambda n, k: F(n, k - n),
        lambda n, k: _signed_sum([F(n + 1, k - n - 1), G(n, k - n)], [-1, 1], n, k),
    )


def transform_p3(pair: WZPair) -> WZPair:
    """F2(n,k) = F1(2n,k), G2(n,k) = G1(2n,k) + G1(2n+1,k)"""
    F, G = pair.F, pair.G
    return _derived(
        pair, "p3",
        lambda n, k: F(2 * n, k),
        lambda n, k: _signed_sum([G(2 * n, k), G(2 * n + 1, k)], [1, 1], n, k),
    )


TRANSFORMS = {
    "p1": transform_p1,
    "p2": transform_p2,
    "p3": transform_p3,
}


def compose(pair: WZPair, chain: Iterable[str]) -> WZPair:
    """패턴 이름 목록을 왼쪽부터 차례로 적용"""
    for name in chain:
        name = name.strip()
        if name not in TRANSFORMS:
            raise InvalidArgument(f"unknown transform {name!r}; expected one of {sorted(TRANSFORMS)}")
        pair = TRANSFORMS[name](pair)
    return pair


def corrupt_pair(pair: WZPair) -> WZPair:
    """Negative control: G scaled by q."""
    G = pair.G
    scale = ExtTerm.of(RatFuncQ.monomial(1, 1)) if pair.q_valued else ExtTerm.of(Fraction(2))
    return WZPair(
        id=f"corrupt({pair.id})",
        F=pair.F,
        G=TermFunction(lambda n, k: G(n, k) * scale, f"G[corrupt({pair.id})]", pair.a, pair.q_valued),
        a=pair.a,
        q_valued=pair.q_valued,
        vanishes_at_zero=pair.vanishes_at_zero,
    )


# ---------------------------------------------------------------------------
# 망원합, 소멸, 감쇠, 합의 상수성
# ---------------------------------------------------------------------------

def telescope_check(pair: WZPair, N: int, k: int) -> ExtTerm:
    """sum_{n<N} (G(n,k+1) - G(n,k)) - (F(N,k) - F(0,k)), expected exact 0."""
    terms, signs = [pair.F(0, k), pair.F(N, k)], [1, -1]
    for n in range(N):
        terms += [pair.G(n, k + 1), pair.G(n, k)]
        signs += [1, -1]
    return _signed_sum(terms, signs, N, k)


def vanishing_check(pair: WZPair, k_max: int) -> List[int]:
    """F(0,k) 가 정확히 0 이 아닌 k 목록"""
    return [k for k in range(k_max + 1) if not pair.F(0, k).is_zero]


def decay_check(pair: WZPair, N: int, ks: Iterable[int], q0, precision: int = 30) -> mpmath.mpf:
    """max_k |F(N,k)(q0)|"""
    with mpmath.workdps(precision + 10):
        return max(abs(ext_eval(pair.F(N, k), q0, precision)) for k in ks)


def partial_sum_at(term: Callable[[int], ExtTerm], n_terms: int, q0) -> Fraction:
    """sum_{n<n_terms} term(n) evaluated exactly at rational q0."""
    total = Fraction(0)
    for n in range(n_terms):
        t = term(n)
        try:
            total += ext_eval_exact(t, q0)
        except PoleError as e:
            raise PoleInRelation(str(e), n, None) from e
    return total


def sum_constancy(pair: WZPair, ks: Iterable[int], n_terms: int, q0,
                  precision: int = 30) -> List[mpmath.mpf]:
    """Partial sums sum_{n<n_terms} G(n,k) at q0 for each k."""
    sums = []
    with mpmath.workdps(precision + 10):
        for k in ks:
            exact = partial_sum_at(lambda n: pair.G(n, k), n_terms, q0)
            sums.append(mpmath.mpf(exact.numerator) / exact.denominator)
    return sums


def pair_form_equivalence(first: WZPair, second: WZPair, n_max: int, k_max: int) -> List[GridFailure]:
    """Cells where F or G of two pairs differ."""
    failures = []
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            for name in ("F", "G"):
                a, b = getattr(first, name)(n, k), getattr(second, name)(n, k)
                if not ext_equal(a, b):
                    failures.append(GridFailure(n, k, f"{name}: {format_term(a)} != {format_term(b)}"))
    return failures


def ext_equal(a: ExtTerm, b: ExtTerm) -> bool:
    if a.is_zero or b.is_zero:
        return a.is_zero and b.is_zero
    if a.zero_order != b.zero_order:
        return False
    return a.value == b.value


def _limit_term(term: ExtTerm) -> ExtTerm:
    if term.zero_order != 0:
        return ExtTerm(term.zero_order, Fraction(1))
    return ExtTerm.of(term.value.limit_q1())


def pair_limit_check(q_pair: WZPair, classical_pair: WZPair, n_max: int, k_max: int) -> List[GridFailure]:
    """limit_{q->1} F_q(n,k) = F(n,k) and the same for G on the grid."""
    failures = []
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            for name in ("F", "G"):
                q_term = getattr(q_pair, name)(n, k)
                c_term = getattr(classical_pair, name)(n, k)
                try:
                    limit = _limit_term(q_term)
                except PoleAtOne as e:
                    failures.append(GridFailure(n, k, f"{name}: {e.describe()}"))
                    continue
                if not ext_equal(limit, c_term):
                    failures.append(GridFailure(n, k, f"{name}: limit {limit} != {c_term}"))
    return failures
