"""
qwz 명령행 테스트 - 하위 명령, 보고서 직렬화, 종료 코드 규약
"""
import json
import sys
from pathlib import Path

import pytest
from pydantic import ValidationError

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.cli.main import EXIT_USAGE, emit, main, truncate_polynomial_text  # noqa: E402
from src.cli.models.schemas import CheckRecord, Report, RunConfig  # noqa: E402
from src.core.errors import InvalidArgument  # noqa: E402
from src.utils.term_cache import get_term_cache  # noqa: E402
from src.workflow.runner import build_jobs, check_preconditions, default_suite, execute_job  # noqa: E402


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("QWZ_PRECISION", "QWZ_WORKERS", "QWZ_GRID_BOUND", "QWZ_LOG_FILE", "QWZ_LOG_LEVEL",
                 "QWZ_TERM_CACHE_SIZE"):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def run_cli(tmp_path, *argv):
    """JSON 보고서를 파일로 받아 (종료 코드, 보고서) 반환"""
    output = tmp_path / "report.json"
    code = main([*argv, "--format", "json", "--output", str(output)])
    report = json.loads(output.read_text(encoding="utf-8")) if output.exists() else None
    return code, report


def _report(*records) -> Report:
    return Report(version="1.0.0", timestamp="2026-01-01T00:00:00+00:00",
                  config=RunConfig(command="report"), checks=list(records))


def test_wz_check_small_grid(tmp_path):
    code, report = run_cli(tmp_path, "wz", "check", "--pair", "guo", "--nmax", "2", "--kmax", "2")
    assert code == 0
    assert report["schema"] == 1
    assert len(report["checks"]) == 9
    assert {c["status"] for c in report["checks"]} == {"pass"}
    assert report["checks"][0]["params"] == {"pair": "guo", "n": 0, "k": 0}


@pytest.mark.slow
def test_wz_check_acceptance_grid(tmp_path):
    code, report = run_cli(tmp_path, "wz", "check", "--pair", "guo", "--nmax", "10", "--kmax", "10")
    assert code == 0
    assert len(report["checks"]) == 121


def test_grid_bound_from_environment(tmp_path, clean_env):
    clean_env.setenv("QWZ_GRID_BOUND", "1")
    code, report = run_cli(tmp_path, "wz", "check", "--pair", "pair3.2")
    assert code == 0
    assert len(report["checks"]) == 4


def test_corrupted_pair_exits_with_failure(tmp_path):
    code, report = run_cli(tmp_path, "wz", "check", "--pair", "guo", "--nmax", "1", "--kmax", "1", "--corrupt")
    assert code == 1
    assert any(c["status"] == "fail" for c in report["checks"])


def test_transform_with_chain(tmp_path):
    code, report = run_cli(tmp_path, "wz", "transform", "--pair", "guo", "--chain", "p3,p2",
                           "--nmax", "2", "--kmax", "2", "--q", "1/2", "--terms", "20")
    assert code == 0
    names = {c["name"] for c in report["checks"]}
    assert names == {"wz_residual", "derived_summand", "transform_sum"}


def test_qtheorem_records(tmp_path):
    code, report = run_cli(tmp_path, "congruence", "qtheorem", "--which", "1", "--m", "3,5")
    assert code == 0
    assert len(report["checks"]) == 4
    assert [c["params"]["modulus"] for c in report["checks"]] == \
        ["[3]*Phi_3", "[3]*Phi_3^2", "[5]*Phi_5", "[5]*Phi_5^2"]
    assert [c["params"]["U"] for c in report["checks"]] == [1, 2, 2, 4]


def test_qtheorem_strong_records_do_not_change_exit_code(tmp_path):
    code, report = run_cli(tmp_path, "congruence", "qtheorem", "--which", "1", "--m", "5", "--strong")
    assert code == 0
    assert [(c["status"], c["exploratory"]) for c in report["checks"]] == \
        [("pass", False), ("fail", True), ("pass", False)]


@pytest.mark.slow
def test_qtheorem_acceptance(tmp_path):
    code, report = run_cli(tmp_path, "congruence", "qtheorem", "--which", "1", "--m", "3,5,7")
    assert code == 0
    assert len(report["checks"]) == 6


def test_identity_verify_at_zero(tmp_path):
    code, report = run_cli(tmp_path, "identity", "verify", "--id", "rama1-q", "--q", "0", "--terms", "1")
    assert code == 0
    assert report["checks"][0]["status"] == "pass"


def test_perturbed_identity_fails(tmp_path):
    code, _ = run_cli(tmp_path, "identity", "limit", "--id", "rama1-q", "--nmax", "2", "--perturb")
    assert code == 1


def test_super_and_asub(tmp_path):
    code, report = run_cli(tmp_path, "congruence", "super", "--which", "1", "--p", "5")
    assert code == 0
    assert [c["witness"] for c in report["checks"]] == ["0 mod 25", "50 mod 125"]
    assert [c["params"]["modulus"] for c in report["checks"]] == ["25", "125"]
    code, report = run_cli(tmp_path, "congruence", "asub", "--id", "level1-q-a", "--m", "3")
    assert code == 0
    assert len(report["checks"]) == 1


@pytest.mark.parametrize("argv", [
    ["congruence", "qtheorem", "--which", "2", "--m", "9"],
    ["congruence", "qtheorem", "--which", "1", "--m", "4"],
    ["wz", "check", "--pair", "guo", "--a", "3"],
    ["congruence", "super", "--which", "1", "--p", "9"],
    ["congruence", "super", "--which", "2", "--p", "3"],
    ["congruence", "asub", "--id", "rama1-q", "--m", "3"],
    ["congruence", "asub", "--id", "28n3-q-a", "--m", "3"],
    ["congruence", "cyclo", "--m", "3,4", "--U", "1"],
    ["identity", "classical", "--id", "rama1-q"],
    ["wz", "transform", "--pair", "pair3.2", "--chain", "p1", "--a", "2"],
])
def test_invalid_job_arguments_are_usage_errors(tmp_path, argv):
    code, report = run_cli(tmp_path, *argv)
    assert code == EXIT_USAGE
    assert report is None


def test_preconditions_checked_before_any_job():
    jobs = [("th1", {"m": 3}), ("super", {"which": "th1", "p": 9})]
    with pytest.raises(InvalidArgument, match="super which=th1,p=9"):
        check_preconditions(jobs)
    check_preconditions(default_suite(quick=True))


@pytest.mark.parametrize("argv", [
    ["congruence", "super", "--which", "2", "--p", "5,7", "--strong"],
    ["congruence", "qtheorem", "--which", "1", "--m", "3,5", "--strong"],
])
def test_records_do_not_depend_on_worker_count(tmp_path, argv):
    def strip(report):
        return [{k: v for k, v in c.items() if k != "elapsed_ms"} for c in report["checks"]]

    serial_code, serial = run_cli(tmp_path, *argv, "--workers", "1")
    pooled_code, pooled = run_cli(tmp_path, *argv, "--workers", "2")
    assert serial_code == pooled_code == 0
    assert strip(serial) == strip(pooled)
    assert Report.model_validate(serial).counts() == Report.model_validate(pooled).counts()


def test_workers_keep_job_order(tmp_path):
    code, report = run_cli(tmp_path, "congruence", "super", "--which", "1", "--p", "3,5", "--workers", "2")
    assert code == 0
    assert [c["params"]["p"] for c in report["checks"]] == [3, 3, 5, 5]


def test_term_cache_size_from_environment(tmp_path, clean_env):
    clean_env.setenv("QWZ_TERM_CACHE_SIZE", "7")
    code, report = run_cli(tmp_path, "congruence", "asub", "--id", "level1-q-a", "--m", "1")
    assert code == 0
    assert report["config"]["term_cache_size"] == 7
    assert get_term_cache().max_items == 7


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["wz", "check"])
    assert exc.value.code == EXIT_USAGE
    assert main(["wz", "check", "--pair", "nope"]) == EXIT_USAGE
    assert main(["identity", "verify", "--id", "rama1-q", "--q", "3/2"]) == EXIT_USAGE
    assert main(["wz", "check", "--pair", "guo", "--chain", "p9"]) == EXIT_USAGE


def test_invalid_precision_is_usage_error(clean_env):
    clean_env.setenv("QWZ_PRECISION", "3")
    assert main(["congruence", "super", "--which", "1", "--p", "5"]) == EXIT_USAGE


def test_emit_json_and_text():
    empty = json.loads(emit(_report(), "json"))
    assert empty["checks"] == []
    assert empty["version"] == "1.0.0"

    passing = CheckRecord(name="th1", params={"m": 5, "U": 2}, status="pass", witness="divisible")
    text = emit(_report(passing), "text")
    assert text.splitlines()[0].startswith("PASS")
    assert text.splitlines()[-1] == "1 checks: 1 pass, 0 fail, 0 error"

    exploratory = CheckRecord(name="th2", status="fail", exploratory=True)
    text = emit(_report(passing, exploratory), "text")
    assert "FAIL?" in text
    assert text.splitlines()[-1].endswith("(1 exploratory)")


def test_exit_code_contract():
    passing = CheckRecord(name="a", status="pass")
    failing = CheckRecord(name="b", status="fail")
    error = CheckRecord(name="c", status="error")
    assert _report(passing).exit_code == 0
    assert _report(passing, failing).exit_code == 1
    assert _report(failing, error).exit_code == 2
    assert _report(passing, CheckRecord(name="d", status="fail", exploratory=True)).exit_code == 0


def test_truncate_polynomial_text():
    assert truncate_polynomial_text("1 + 1*q^50", 40) == "1 + ..."
    assert truncate_polynomial_text("(1 + 2*q^3) / (1 + 1*q^41)", 40) == "(1 + 2*q^3) / (1 + ...)"
    assert truncate_polynomial_text("1 + 1*q^2") == "1 + 1*q^2"


def test_run_config_validation():
    assert RunConfig(command="identity verify", q_samples=["2/4"]).q_samples == ["1/2"]
    with pytest.raises(ValidationError):
        RunConfig(command="identity verify", q_samples=["1"])
    with pytest.raises(ValidationError):
        RunConfig(command="report", precision=5)


def test_job_lists():
    jobs = build_jobs(RunConfig(command="congruence cyclo", identities=["new-level1-q"], m_values=[5]))
    assert jobs == [("cyclo", {"id": "new-level1-q", "m": 5, "U": 2}),
                    ("cyclo", {"id": "new-level1-q", "m": 5, "U": 4})]
    quick = default_suite(quick=True)
    assert len(quick) < len(default_suite())
    assert ("super", {"which": "th1", "p": 13}) in quick


def test_execute_job_turns_errors_into_records():
    records, timing = execute_job(("th2", {"m": 9}, 30))
    assert records[0]["status"] == "error"
    assert records[0]["elapsed_ms"] == timing.elapsed_ms
    assert timing.success


if __name__ == "__main__":
    print("[TEST] qwz 명령행 테스트...")
    sys.exit(pytest.main([__file__, "-q", "-m", "not slow"]))
