"""
qwz 명령행 인터페이스
qwz wz {check|transform}, qwz identity {verify|limit|classical},
qwz congruence {qtheorem|super|asub|cyclo}, qwz report --all
"""
import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from .. import __version__
from ..core.errors import InvalidArgument
from ..identities.registry import identity_ids
from ..utils.config import Settings, load_settings
from ..workflow.runner import run
from ..wz.engine import TRANSFORMS
from ..wz.pairs import pair_ids
from .models.schemas import OutputFormat, Report, RunConfig

logger = logging.getLogger(__name__)

EXIT_USAGE = 64
TEXT_MAX_DEGREE = 40

_EXPONENT = re.compile(r"q\^(-?\d+)")


class QwzArgumentParser(argparse.ArgumentParser):
    """argparse 사용 오류를 종료 코드 64 로 보고"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _str_list(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=None,
                        help="report format (default text)")
    common.add_argument("--output", help="write the report to this path instead of stdout")
    common.add_argument("--precision", type=int, help="decimal digits for numeric checks (QWZ_PRECISION)")
    common.add_argument("--workers", type=int, help="worker processes (QWZ_WORKERS)")
    common.add_argument("--verbose", action="store_true", help="DEBUG logging")
    return common


def build_parser() -> QwzArgumentParser:
    common = _common_options()
    parser = QwzArgumentParser(prog="qwz", description="Exact verification of q-WZ pairs, "
                                                       "q-analogues of 1/pi series and q-congruences")
    parser.add_argument("--version", action="version", version=f"qwz {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    # wz
    wz = groups.add_parser("wz", help="WZ pair checks").add_subparsers(dest="action", required=True)
    check = wz.add_parser("check", parents=[common], help="WZ relation on a grid")
    check.add_argument("--pair", type=_str_list, required=True)
    check.add_argument("--a", type=_int_list, help="a = q^s exponents for a-parameter pairs")
    check.add_argument("--nmax", type=int)
    check.add_argument("--kmax", type=int)
    check.add_argument("--chain", type=_str_list, default=[], help="apply transforms first, e.g. p3,p2")
    check.add_argument("--corrupt", action="store_true", help="negative control: G scaled by q")
    transform = wz.add_parser("transform", parents=[common], help="transformed pair and derived summand")
    transform.add_argument("--pair", type=_str_list, required=True)
    transform.add_argument("--chain", type=_str_list, required=True)
    transform.add_argument("--a", type=_int_list)
    transform.add_argument("--nmax", type=int)
    transform.add_argument("--kmax", type=int)
    transform.add_argument("--q", type=_str_list, default=[], help="compare sums of G(n,0) at these q")
    transform.add_argument("--terms", type=int, default=40)

    # identity
    identity = groups.add_parser("identity", help="series identities").add_subparsers(dest="action", required=True)
    verify = identity.add_parser("verify", parents=[common], help="numeric two-sided residual")
    verify.add_argument("--id", type=_str_list, required=True)
    verify.add_argument("--q", type=_str_list, default=[])
    verify.add_argument("--terms", type=int, default=40)
    verify.add_argument("--a", type=_int_list)
    verify.add_argument("--perturb", action="store_true", help="negative control: summand doubled for n >= 1")
    limit = identity.add_parser("limit", parents=[common], help="exact q -> 1 term limits")
    limit.add_argument("--id", type=_str_list, required=True)
    limit.add_argument("--nmax", type=int, default=15)
    limit.add_argument("--perturb", action="store_true")
    classical = identity.add_parser("classical", parents=[common], help="classical 1/pi partial sums")
    classical.add_argument("--id", type=_str_list, required=True)
    classical.add_argument("--terms", type=int, default=60)

    # congruence
    congruence = groups.add_parser("congruence", help="q-congruences").add_subparsers(dest="action", required=True)
    qtheorem = congruence.add_parser("qtheorem", parents=[common], help="q-congruence theorems")
    qtheorem.add_argument("--which", type=int, choices=[1, 2], required=True)
    qtheorem.add_argument("--m", type=_int_list, required=True)
    qtheorem.add_argument("--strong", action="store_true",
                          help="add exploratory records at the next stronger modulus")
    sup = congruence.add_parser("super", parents=[common], help="supercongruences mod p^3 / p^2")
    sup.add_argument("--which", type=int, choices=[1, 2], required=True)
    sup.add_argument("--p", type=_int_list, required=True)
    sup.add_argument("--strong", action="store_true", help="add exploratory records mod p^3")
    asub = congruence.add_parser("asub", parents=[common], help="terminating evaluations at a = q^(+-m)")
    asub.add_argument("--id", type=_str_list, required=True)
    asub.add_argument("--m", type=_int_list, required=True)
    cyclo = congruence.add_parser("cyclo", parents=[common], help="partial sums mod [m]")
    cyclo.add_argument("--id", type=_str_list, default=["new-level1-q"])
    cyclo.add_argument("--m", type=_int_list, required=True)
    cyclo.add_argument("--U", type=int, dest="upper")

    # report
    report = groups.add_parser("report", parents=[common], help="default verification suite")
    report.add_argument("--all", action="store_true", required=True)
    report.add_argument("--quick", action="store_true", help="smaller bounds")
    return parser


def _validate_ids(requested: List[str], known: List[str], kind: str) -> None:
    unknown = [i for i in requested if i not in known]
    if unknown:
        raise InvalidArgument(f"unknown {kind} id(s) {unknown}; expected one of {known}")


def build_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """파싱된 인자와 환경 설정으로 RunConfig 생성 (플래그 우선)"""
    command = args.group if args.group == "report" else f"{args.group} {args.action}"
    values = {
        "command": command,
        "precision": args.precision if args.precision is not None else settings.precision,
        "workers": args.workers if args.workers is not None else settings.workers,
        "output": args.output,
        "format": args.format or OutputFormat.TEXT.value,
        "term_cache_size": settings.term_cache_size,
    }
    bound = settings.grid_bound
    if args.group == "wz":
        values.update(pairs=args.pair, chain=args.chain, a_exponents=args.a or [],
                      n_max=args.nmax if args.nmax is not None else bound,
                      k_max=args.kmax if args.kmax is not None else bound)
        if args.action == "check":
            values["corrupt"] = args.corrupt
        else:
            values.update(q_samples=args.q, n_terms=args.terms)
    elif args.group == "identity":
        values["identities"] = args.id
        if args.action == "verify":
            values.update(q_samples=args.q, n_terms=args.terms, a_exponents=args.a or [], perturb=args.perturb)
        elif args.action == "limit":
            values.update(n_max=args.nmax, perturb=args.perturb)
        else:
            values["n_terms"] = args.terms
    elif args.group == "congruence":
        if args.action == "qtheorem":
            values.update(which=args.which, m_values=args.m, strong=args.strong)
        elif args.action == "super":
            values.update(which=args.which, p_values=args.p, strong=args.strong)
        else:
            values.update(identities=args.id, m_values=args.m)
            if args.action == "cyclo":
                values["upper"] = args.upper
    else:
        values["quick"] = args.quick
    _validate_ids(values.get("pairs", []), pair_ids(), "pair")
    _validate_ids(values.get("identities", []), identity_ids(), "identity")
    _validate_ids(values.get("chain", []), sorted(TRANSFORMS), "transform")
    return RunConfig(**values)


def setup_logging(settings: Settings, verbose: bool = False) -> None:
    """stderr 와 선택적 로그 파일로 로깅 설정 (stdout 은 보고서 전용)"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        log_path = Path(settings.log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path))
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, settings.log_level, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def truncate_polynomial_text(text: str, max_degree: int = TEXT_MAX_DEGREE) -> str:
    """'c*q^e' 항 중 차수가 max_degree 를 넘는 항을 '...' 으로 줄임"""
    def shorten(poly_text: str) -> str:
        terms = poly_text.split(" + ")
        kept = [t for t in terms if all(int(e) <= max_degree for e in _EXPONENT.findall(t))]
        return poly_text if len(kept) == len(terms) else " + ".join(kept + ["..."])

    if "(" in text:
        return re.sub(r"\(([^()]*)\)", lambda m: f"({shorten(m.group(1))})", text)
    return shorten(text)


def emit(report: Report, output_format: str) -> str:
    """보고서를 JSON 또는 정렬된 텍스트로 직렬화"""
    if output_format == OutputFormat.JSON.value:
        payload = report.model_dump(mode="json", by_alias=True)
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"

    rows = []
    for check in report.checks:
        params = ",".join(f"{k}={v}" for k, v in check.params.items())
        status = check.status.upper() + ("?" if check.exploratory else "")
        rows.append((status, check.name, params, truncate_polynomial_text(check.witness)))
    widths = [max((len(row[i]) for row in rows), default=0) for i in range(3)]
    lines = ["  ".join([row[0].ljust(widths[0]), row[1].ljust(widths[1]), row[2].ljust(widths[2]), row[3]]).rstrip()
             for row in rows]
    counts = report.counts()
    exploratory = sum(1 for c in report.checks if c.exploratory)
    summary = f"{len(report.checks)} checks: {counts['pass']} pass, {counts['fail']} fail, {counts['error']} error"
    if exploratory:
        summary += f" ({exploratory} exploratory)"
    lines.append(summary)
    return "\n".join(lines) + "\n"


def write_output(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Report written to {path}")


def main(argv: Optional[List[str]] = None) -> int:
    """종료 코드: 0 통과, 1 실패, 2 오류, 64 사용법 오류"""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings()
        setup_logging(settings, args.verbose)
        config = build_config(args, settings)
    except (InvalidArgument, ValidationError) as e:
        sys.stderr.write(f"qwz: error: {e}\n")
        return EXIT_USAGE

    try:
        report = run(config)
    except InvalidArgument as e:
        sys.stderr.write(f"qwz: error: {e.describe()}\n")
        return EXIT_USAGE
    write_output(emit(report, config.format), config.output)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
