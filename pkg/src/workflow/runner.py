"""
검증 실행기
RunConfig 를 (kind, params) 작업 목록으로 펼치고, 순차 또는 프로세스 풀로 실행해 Report 를 만든다.
작업 하나의 QWZError 는 status=error 기록으로 바뀌고 나머지 작업은 계속 실행된다.
"""
import logging
from datetime import datetime, timezone
from multiprocessing import Pool
from typing import Any, Callable, Dict, List, Optional, Tuple

import mpmath

from .. import __version__
from ..cli.models.schemas import CheckRecord, CheckStatus, Report, RunConfig
from ..congruences.suite import (CongruenceResult, cyclotomic_congruence_check, require_cyclotomic_args,
                                 require_supercongruence_prime, require_terminating_args, require_theorem1_m,
                                 require_theorem2_m, terminating_evaluation_check, theorem1_check, theorem2_check,
                                 theorem_supercongruence)
from ..core.errors import InvalidArgument, QWZError
from ..core.exact import as_rational
from ..identities.registry import FORM_EQUIVALENCES, ClosedConstant, get_identity, perturbed_identity
from ..identities.verify import (classical_value, derived_summand_check, summand_form_equivalence,
                                 transform_sum_equality, verify_limit_terms, verify_numeric)
from ..series.qseries import a_subst
from ..utils.config import tolerance_for
from ..utils.performance_monitor import PerformanceMonitor, StepTiming
from ..utils.term_cache import configure_term_cache, get_term_cache
from ..wz.engine import (check_grid, compose, corrupt_pair, decay_check, pair_form_equivalence,
                         pair_limit_check, sum_constancy, vanishing_check)
from ..wz.pairs import A_PARAMETER_PAIRS, DERIVED_IDENTITIES, LIMIT_COMPANIONS, get_pair, pair_ids

logger = logging.getLogger(__name__)

Job = Tuple[str, Dict[str, Any]]
RecordDict = Dict[str, Any]

DECAY_BOUND = mpmath.mpf("1e-10")
CLASSICAL_BOUND = mpmath.mpf("1e-15")

Q_PAIRS = ("guo", "guo-a", "pair7-q", "pair7-q-a")


def _record(name: str, params: Dict[str, Any], passed: bool, witness: str = "",
            exploratory: bool = False) -> RecordDict:
    return {
        "name": name,
        "params": params,
        "status": CheckStatus.PASS.value if passed else CheckStatus.FAIL.value,
        "witness": witness,
        "exploratory": exploratory,
    }


def _congruence_records(results: List[CongruenceResult]) -> List[RecordDict]:
    return [{
        "name": r.name,
        "params": {**r.params, "modulus": r.modulus},
        "status": r.status,
        "witness": r.witness,
        "exploratory": r.exploratory,
    } for r in results]


def _nstr(value) -> str:
    return mpmath.nstr(value, 5)


def _pair_from(params: Dict[str, Any]):
    pair = get_pair(params["pair"], a_subst(params.get("a", 0)))
    if params.get("chain"):
        pair = compose(pair, params["chain"].split(","))
    if params.get("corrupt"):
        pair = corrupt_pair(pair)
    return pair


# ---------------------------------------------------------------------------
# 작업 종류별 처리기
# ---------------------------------------------------------------------------

def _wz_grid(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    pair = _pair_from(params)
    report = check_grid(pair, params["n_max"], params["k_max"])
    failures = {(f.n, f.k): f.witness for f in report.failures}
    base = {"pair": pair.id, **({"a": params["a"]} if params.get("a") else {})}
    records = []
    for n in range(report.n_max + 1):
        for k in range(report.k_max + 1):
            witness = failures.get((n, k))
            records.append(_record("wz_residual", {**base, "n": n, "k": k}, witness is None, witness or "0"))
    return records


def _wz_vanishing(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    pair = _pair_from(params)
    nonzero = vanishing_check(pair, params["k_max"])
    witness = f"F(0,k) != 0 for k in {nonzero}" if nonzero else f"F(0,k) = 0 for k <= {params['k_max']}"
    return [_record("wz_vanishing", {"pair": pair.id, "a": params.get("a", 0), "k_max": params["k_max"]},
                    not nonzero, witness, exploratory=not pair.vanishes_at_zero)]


def _wz_decay(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    pair = _pair_from(params)
    value = decay_check(pair, params["N"], range(params["k_max"] + 1), as_rational(params["q"]), precision)
    return [_record("wz_decay", {"pair": pair.id, "N": params["N"], "q": params["q"]},
                    value < DECAY_BOUND, f"max |F(N,k)| = {_nstr(value)}")]


def _wz_sum_constancy(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    pair = _pair_from(params)
    ks = range(params["k_max"] + 1)
    sums = sum_constancy(pair, ks, params["n_terms"], as_rational(params["q"]), precision)
    spread = max(sums) - min(sums)
    return [_record("wz_sum_constancy", {"pair": pair.id, "q": params["q"], "N": params["n_terms"]},
                    spread < tolerance_for(precision), f"spread {_nstr(spread)}")]


def _pair_limit(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    failures = pair_limit_check(get_pair(params["pair"]), get_pair(params["classical"]),
                                params["n_max"], params["k_max"])
    witness = f"({failures[0].n}, {failures[0].k}) {failures[0].witness}" if failures else "exact"
    return [_record("pair_limit", params, not failures, witness)]


def _pair_form(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    failures = pair_form_equivalence(get_pair(params["pair"]), get_pair(params["other"]),
                                     params["n_max"], params["k_max"])
    witness = f"({failures[0].n}, {failures[0].k}) {failures[0].witness}" if failures else "exact"
    return [_record("pair_form", params, not failures, witness)]


def _term_comparison_record(name: str, params: Dict[str, Any], results) -> RecordDict:
    failed = [r for r in results if not r.passed]
    witness = f"n={failed[0].n}: {failed[0].witness}" if failed else f"exact for n <= {results[-1].n}"
    return _record(name, params, not failed, witness)


def _derived_summand(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    results = derived_summand_check(params["pair"], params["n_max"], a_subst(params.get("a", 0)))
    return [_term_comparison_record("derived_summand", params, results)]


def _transform_sum(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    chain = params["chain"].split(",") if params.get("chain") else None
    diff = transform_sum_equality(params["pair"], as_rational(params["q"]), params["n_terms"], chain,
                                  a_subst(params.get("a", 0)), precision)
    return [_record("transform_sum", params, diff < tolerance_for(precision), f"difference {_nstr(diff)}")]


def _identity(params: Dict[str, Any]):
    return perturbed_identity(params["id"]) if params.get("perturb") else get_identity(params["id"])


def _identity_numeric(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    result = verify_numeric(_identity(params), params.get("q", "0"), params["n_terms"], precision,
                            a_subst(params.get("a", 0)))
    return [_record("identity_numeric", params, result.residual < tolerance_for(precision),
                    f"residual {_nstr(result.residual)}")]


def _identity_limit(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    results = verify_limit_terms(_identity(params), params["n_max"])
    return [_term_comparison_record("identity_limit", params, results)]


def _identity_classical(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    diff = abs(classical_value(params["id"], params["n_terms"], precision))
    return [_record("identity_classical", params, diff < CLASSICAL_BOUND, f"|sum - constant| = {_nstr(diff)}")]


def _form_equivalence(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    results = summand_form_equivalence(params["id"], params["other"], params["n_max"])
    return [_term_comparison_record("form_equivalence", params, results)]


def _terminating(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    return _congruence_records([terminating_evaluation_check(params["id"], params["m"])])


def _cyclo(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    return _congruence_records([cyclotomic_congruence_check(params["id"], params["m"], params["U"])])


def _theorem1(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    return _congruence_records(theorem1_check(params["m"], strong=params.get("strong", False)))


def _theorem2(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    return _congruence_records(theorem2_check(params["m"], strong=params.get("strong", False)))


def _super(params: Dict[str, Any], precision: int) -> List[RecordDict]:
    return _congruence_records(theorem_supercongruence(params["which"], params["p"],
                                                      strong=params.get("strong", False)))


def _step_name(kind: str, params: Dict[str, Any]) -> str:
    return f"{kind} " + ",".join(f"{k}={v}" for k, v in params.items())


HANDLERS: Dict[str, Callable[[Dict[str, Any], int], List[RecordDict]]] = {
    "wz_grid": _wz_grid,
    "wz_vanishing": _wz_vanishing,
    "wz_decay": _wz_decay,
    "wz_sum_constancy": _wz_sum_constancy,
    "pair_limit": _pair_limit,
    "pair_form": _pair_form,
    "derived_summand": _derived_summand,
    "transform_sum": _transform_sum,
    "identity_numeric": _identity_numeric,
    "identity_limit": _identity_limit,
    "identity_classical": _identity_classical,
    "form_equivalence": _form_equivalence,
    "terminating": _terminating,
    "cyclo": _cyclo,
    "th1": _theorem1,
    "th2": _theorem2,
    "super": _super,
}


# ---------------------------------------------------------------------------
# 실행 전 인자 확인 (InvalidArgument 는 기록이 아니라 사용법 오류로 올라간다)
# ---------------------------------------------------------------------------

def _require_pair(params: Dict[str, Any]) -> None:
    _pair_from(params)


def _require_derived(params: Dict[str, Any]) -> None:
    if params["pair"] not in DERIVED_IDENTITIES:
        raise InvalidArgument(f"no derived identity for pair {params['pair']!r}")
    get_pair(params["pair"], a_subst(params.get("a", 0)))


def _require_transform_sum(params: Dict[str, Any]) -> None:
    if not params.get("chain") and params["pair"] not in DERIVED_IDENTITIES:
        raise InvalidArgument(f"no default transform chain for pair {params['pair']!r}")
    _require_pair(params)


def _require_identity(params: Dict[str, Any]) -> None:
    spec = get_identity(params["id"])
    if params.get("a") and not spec.uses_a:
        raise InvalidArgument(f"identity {spec.id} takes no a-parameter")


def _require_ids(lookup: Callable[[str], Any], *keys: str) -> Callable[[Dict[str, Any]], None]:
    def check(params: Dict[str, Any]) -> None:
        for key in keys:
            lookup(params[key])
    return check


def _require_companion(params: Dict[str, Any]) -> None:
    if get_identity(params["id"]).classical_companion is None:
        raise InvalidArgument(f"identity {params['id']} has no classical companion")


def _require_closed_constant(params: Dict[str, Any]) -> None:
    if not isinstance(get_identity(params["id"]).rhs, ClosedConstant):
        raise InvalidArgument(f"identity {params['id']} is not a classical 1/pi series")


PRECONDITIONS: Dict[str, Callable[[Dict[str, Any]], None]] = {
    "wz_grid": _require_pair,
    "wz_vanishing": _require_pair,
    "wz_decay": _require_pair,
    "wz_sum_constancy": _require_pair,
    "pair_limit": _require_ids(get_pair, "pair", "classical"),
    "pair_form": _require_ids(get_pair, "pair", "other"),
    "derived_summand": _require_derived,
    "transform_sum": _require_transform_sum,
    "identity_numeric": _require_identity,
    "identity_limit": _require_companion,
    "identity_classical": _require_closed_constant,
    "form_equivalence": _require_ids(get_identity, "id", "other"),
    "terminating": lambda p: require_terminating_args(p["id"], p["m"]),
    "cyclo": lambda p: require_cyclotomic_args(p["id"], p["m"], p["U"]),
    "th1": lambda p: require_theorem1_m(p["m"]),
    "th2": lambda p: require_theorem2_m(p["m"]),
    "super": lambda p: require_supercongruence_prime(p["which"], p["p"]),
}


def check_preconditions(jobs: List[Job]) -> None:
    """작업 인자를 실행 전에 모두 확인; 첫 위반을 InvalidArgument 로 던진다"""
    for kind, params in jobs:
        try:
            PRECONDITIONS[kind](params)
        except InvalidArgument as e:
            raise InvalidArgument(f"{_step_name(kind, params)}: {e}") from e


def execute_job(task: Tuple[str, Dict[str, Any], int]) -> Tuple[List[RecordDict], StepTiming]:
    """작업 하나 실행; 풀 워커에서도 호출되므로 최상위 함수로 둔다"""
    kind, params, precision = task
    monitor = PerformanceMonitor()
    step = _step_name(kind, params)
    with monitor.measure_step(step, metadata={"kind": kind}):
        try:
            records = HANDLERS[kind](params, precision)
        except QWZError as e:
            logger.error(f"[{step}] {e.describe()}")
            records = [{
                "name": kind,
                "params": params,
                "status": CheckStatus.ERROR.value,
                "witness": e.describe(),
                "exploratory": False,
            }]
    timing = monitor.last_timing()
    for record in records:
        record["elapsed_ms"] = timing.elapsed_ms
    failed = sum(1 for r in records if r["status"] != CheckStatus.PASS.value)
    logger.info(f"[{step}] {len(records)} checks, {failed} not passing ({timing.duration_seconds:.3f}s)")
    return records, timing


# ---------------------------------------------------------------------------
# 작업 목록
# ---------------------------------------------------------------------------

def _a_values(config: RunConfig) -> List[int]:
    return config.a_exponents or [0]


def _q_values(config: RunConfig, default: str = "1/2") -> List[str]:
    return config.q_samples or [default]


def _with_a(params: Dict[str, Any], a: int) -> Dict[str, Any]:
    return {**params, "a": a} if a else params


def _truncations(m: int) -> List[int]:
    return sorted({(m - 1) // 2, m - 1})


def build_jobs(config: RunConfig) -> List[Job]:
    """하위 명령별 작업 목록 (결정적 순서)"""
    command = config.command
    jobs: List[Job] = []
    if command == "wz check":
        for pair in config.pairs:
            for a in _a_values(config):
                params = {"pair": pair, "n_max": config.n_max, "k_max": config.k_max}
                if config.chain:
                    params["chain"] = ",".join(config.chain)
                if config.corrupt:
                    params["corrupt"] = True
                jobs.append(("wz_grid", _with_a(params, a)))
    elif command == "wz transform":
        for pair in config.pairs:
            for a in _a_values(config):
                jobs.append(("wz_grid", _with_a({"pair": pair, "chain": ",".join(config.chain),
                                                 "n_max": config.n_max, "k_max": config.k_max}, a)))
                if pair in DERIVED_IDENTITIES and tuple(config.chain) == DERIVED_IDENTITIES[pair][0]:
                    jobs.append(("derived_summand", _with_a({"pair": pair, "n_max": min(config.n_max, 10)}, a)))
                for q in config.q_samples:
                    jobs.append(("transform_sum", _with_a({"pair": pair, "chain": ",".join(config.chain), "q": q,
                                                           "n_terms": config.n_terms}, a)))
    elif command == "identity verify":
        for identity_id in config.identities:
            spec = get_identity(identity_id)
            a_values = _a_values(config) if spec.uses_a else [0]
            q_values = _q_values(config) if spec.q_valued else [None]
            for a in a_values:
                for q in q_values:
                    params = {"id": identity_id, "n_terms": config.n_terms}
                    if q is not None:
                        params["q"] = q
                    if config.perturb:
                        params["perturb"] = True
                    jobs.append(("identity_numeric", _with_a(params, a)))
    elif command == "identity limit":
        for identity_id in config.identities:
            params = {"id": identity_id, "n_max": config.n_max}
            if config.perturb:
                params["perturb"] = True
            jobs.append(("identity_limit", params))
    elif command == "identity classical":
        jobs += [("identity_classical", {"id": i, "n_terms": config.n_terms}) for i in config.identities]
    elif command == "congruence qtheorem":
        for m in config.m_values:
            jobs.append((f"th{config.which}", {"m": m, "strong": config.strong}))
    elif command == "congruence super":
        jobs += [("super", {"which": f"th{config.which}", "p": p, "strong": config.strong}) for p in config.p_values]
    elif command == "congruence asub":
        jobs += [("terminating", {"id": i, "m": m}) for i in config.identities for m in config.m_values]
    elif command == "congruence cyclo":
        for identity_id in config.identities:
            for m in config.m_values:
                uppers = [config.upper] if config.upper is not None else _truncations(m)
                jobs += [("cyclo", {"id": identity_id, "m": m, "U": u}) for u in uppers]
    elif command == "report":
        jobs = default_suite(config.quick)
    else:
        raise ValueError(f"unknown command {command!r}")
    return jobs


def default_suite(quick: bool = False) -> List[Job]:
    """qwz report --all 의 기본 검사 목록"""
    bound = 4 if quick else 12
    jobs: List[Job] = []

    for pair in pair_ids():
        jobs.append(("wz_grid", {"pair": pair, "n_max": bound, "k_max": bound}))
    for pair in A_PARAMETER_PAIRS:
        jobs.append(("wz_grid", {"pair": pair, "a": 1, "n_max": bound, "k_max": bound}))
    for pair, chain in (("guo", "p3"), ("pair7-q", "p1"), ("guo", "p3,p2"), ("guo-a", "p3,p2")):
        jobs.append(("wz_grid", {"pair": pair, "chain": chain, "n_max": bound, "k_max": bound}))
    for pair in pair_ids():
        jobs.append(("wz_vanishing", {"pair": pair, "k_max": bound}))
    for pair in Q_PAIRS:
        jobs.append(("wz_decay", {"pair": pair, "N": 20 if quick else 50, "k_max": 4, "q": "1/2"}))
    for pair in ("guo", "pair7-q"):
        jobs.append(("wz_sum_constancy", {"pair": pair, "k_max": 3, "n_terms": 40, "q": "1/2"}))
    for q_pair, classical in LIMIT_COMPANIONS.items():
        jobs.append(("pair_limit", {"pair": q_pair, "classical": classical, "n_max": bound, "k_max": bound}))
    jobs.append(("pair_form", {"pair": "pair3.2-original", "other": "pair3.2", "n_max": bound, "k_max": bound}))

    for pair in DERIVED_IDENTITIES:
        jobs.append(("derived_summand", {"pair": pair, "n_max": 5 if quick else 10}))
    for pair in ("guo", "pair7-q"):
        jobs.append(("transform_sum", {"pair": pair, "q": "1/2", "n_terms": 40}))

    numeric = [("rama1-q", 0), ("new-level1-q", 0), ("guo-zud-8n1-q", 0), ("28n3-q", 0),
               ("level1-q-a", 0), ("level1-q-a", 1), ("level1-q-a", 3),
               ("28n3-q-a", 0), ("28n3-q-a", 1), ("gz-thm44-input", 0), ("gz-8n1-q-a", 0)]
    for identity_id, a in numeric:
        jobs.append(("identity_numeric", _with_a({"id": identity_id, "n_terms": 40, "q": "1/2"}, a)))
    for identity_id in ("rama1-q", "new-level1-q", "28n3-q", "guo-zud-8n1-q"):
        jobs.append(("identity_limit", {"id": identity_id, "n_max": 5 if quick else 15}))
    for identity_id, n_terms in (("rama-level4", 60), ("rama-level1", 60), ("rama-level2-8n1", 80),
                                 ("rama-level2-28n3", 80)):
        jobs.append(("identity_classical", {"id": identity_id, "n_terms": n_terms}))
    for first, second in FORM_EQUIVALENCES:
        jobs.append(("form_equivalence", {"id": first, "other": second, "n_max": 5 if quick else 10}))

    for m in (1, 3, 5) if quick else (1, 3, 5, 7, 9):
        jobs.append(("terminating", {"id": "level1-q-a", "m": m}))
    for m in (1, 5, 7) if quick else (1, 5, 7, 11):
        jobs.append(("terminating", {"id": "28n3-q-a", "m": m}))
    for m, upper in ((3, 1), (5, 4), (9, 4)):
        jobs.append(("cyclo", {"id": "new-level1-q", "m": m, "U": upper}))
    for m in (3, 5, 7) if quick else (3, 5, 7, 9, 15):
        jobs.append(("th1", {"m": m, "strong": True}))
    for m in (5, 7) if quick else (5, 7, 11, 13):
        jobs.append(("th2", {"m": m, "strong": True}))
    for p in (3, 5, 7, 11, 13):
        jobs.append(("super", {"which": "th1", "p": p}))
    for p in (5, 7, 11, 13):
        jobs.append(("super", {"which": "th2", "p": p}))
    return jobs


# ---------------------------------------------------------------------------
# 실행
# ---------------------------------------------------------------------------

def run(config: RunConfig, monitor: Optional[PerformanceMonitor] = None) -> Report:
    """선택된 검사를 실행하고 작업 순서대로 기록을 모은다"""
    monitor = monitor or PerformanceMonitor()
    jobs = build_jobs(config)
    check_preconditions(jobs)
    configure_term_cache(config.term_cache_size)
    tasks = [(kind, params, config.precision) for kind, params in jobs]
    logger.info(f"Running {len(tasks)} jobs for '{config.command}' with {config.workers} worker(s)")

    if config.workers > 1 and len(tasks) > 1:
        with Pool(processes=config.workers, initializer=configure_term_cache,
                  initargs=(config.term_cache_size,)) as pool:
            outputs = pool.map(execute_job, tasks)
    else:
        outputs = [execute_job(task) for task in tasks]

    checks = []
    for records, timing in outputs:
        monitor.merge([timing])
        checks.extend(CheckRecord(**record) for record in records)

    report = Report(
        version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
        config=config,
        checks=checks,
    )
    counts = report.counts()
    logger.info(f"Run finished: {counts['pass']} pass, {counts['fail']} fail, {counts['error']} error")
    monitor.log_performance_summary()
    logger.info(f"Term cache: {get_term_cache().get_stats()}")
    return report
