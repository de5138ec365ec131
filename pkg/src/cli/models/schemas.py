"""
보고서 스키마 모델 정의
"""
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, field_validator

from ...core.errors import InvalidArgument
from ...core.exact import as_rational, format_rational

SCHEMA_VERSION = 1

ParamValue = Union[bool, int, float, str, None]


class OutputFormat(str, Enum):
    """출력 형식"""
    TEXT = "text"
    JSON = "json"


class CheckStatus(str, Enum):
    """검사 결과 상태"""
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"


class RunConfig(BaseModel):
    """실행 설정"""
    command: str = Field(..., description="실행한 하위 명령 (예: 'wz check')")
    pairs: List[str] = Field(default_factory=list, description="WZ 쌍 ID 목록")
    identities: List[str] = Field(default_factory=list, description="항등식 ID 목록")
    chain: List[str] = Field(default_factory=list, description="변환 패턴 순서")
    a_exponents: List[int] = Field(default_factory=list, description="a = q^s 대입 지수 목록")
    q_samples: List[str] = Field(default_factory=list, description="'num/den' 형식의 q 표본점")
    n_max: int = Field(12, ge=0, description="격자 n 상한")
    k_max: int = Field(12, ge=0, description="격자 k 상한")
    n_terms: int = Field(40, ge=0, description="부분합 항 수")
    precision: int = Field(30, ge=10, description="수치 검사 정밀도 (십진 자릿수)")
    m_values: List[int] = Field(default_factory=list, description="q-합동 m 목록")
    p_values: List[int] = Field(default_factory=list, description="초합동 소수 p 목록")
    which: Optional[int] = Field(None, description="정리 번호 (1 또는 2)")
    upper: Optional[int] = Field(None, ge=0, description="부분합 상한 U")
    corrupt: bool = Field(False, description="음성 대조군: G 에 q 를 곱한 쌍")
    perturb: bool = Field(False, description="음성 대조군: n >= 1 항을 두 배")
    strong: bool = Field(False, description="더 강한 법에 대한 탐색 기록 추가")
    quick: bool = Field(False, description="보고서 스위트 축소 실행")
    workers: int = Field(1, ge=1, description="워커 프로세스 수")
    term_cache_size: int = Field(20000, ge=1, description="프로세스별 항 캐시 크기")
    output: Optional[str] = Field(None, description="보고서 출력 경로")
    format: OutputFormat = Field(OutputFormat.TEXT, description="출력 형식")

    @field_validator("q_samples")
    @classmethod
    def check_q_samples(cls, values: List[str]) -> List[str]:
        normalized = []
        for value in values:
            try:
                q0 = as_rational(value)
            except InvalidArgument as e:
                raise ValueError(str(e)) from e
            if abs(q0) >= 1:
                raise ValueError(f"q sample {value} must satisfy |q| < 1")
            normalized.append(format_rational(q0))
        return normalized

    @property
    def q_values(self) -> List[Fraction]:
        return [as_rational(v) for v in self.q_samples]

    class Config:
        use_enum_values = True
        json_schema_extra = {
            "example": {
                "command": "identity verify",
                "identities": ["rama1-q"],
                "q_samples": ["1/2"],
                "n_terms": 40,
                "precision": 30,
                "format": "json"
            }
        }


class CheckRecord(BaseModel):
    """개별 검사 결과"""
    name: str = Field(..., description="검사 이름")
    params: Dict[str, ParamValue] = Field(default_factory=dict, description="검사 매개변수")
    status: CheckStatus = Field(..., description="pass | fail | error")
    witness: str = Field("", description="잔차, 나머지 또는 오류 원인")
    elapsed_ms: float = Field(0.0, ge=0, description="검사를 만든 작업의 소요 시간")
    exploratory: bool = Field(False, description="탐색용 검사 (종료 코드에 반영하지 않음)")

    class Config:
        use_enum_values = True
        json_schema_extra = {
            "example": {
                "name": "th1",
                "params": {"m": 5, "U": 4, "modulus": "[5]*Phi_5^2"},
                "status": "pass",
                "witness": "divisible by [5]*Phi_5^2",
                "elapsed_ms": 12.5,
                "exploratory": False
            }
        }


class Report(BaseModel):
    """검증 보고서"""
    schema_version: int = Field(SCHEMA_VERSION, alias="schema", description="보고서 스키마 버전")
    version: str = Field(..., description="도구 버전")
    timestamp: str = Field(..., description="ISO-8601 UTC 생성 시각")
    config: RunConfig = Field(..., description="실행 설정")
    checks: List[CheckRecord] = Field(default_factory=list, description="검사 결과 (작업 순서)")

    class Config:
        populate_by_name = True

    def counts(self, include_exploratory: bool = False) -> Dict[str, int]:
        counts = {status.value: 0 for status in CheckStatus}
        for check in self.checks:
            if check.exploratory and not include_exploratory:
                continue
            counts[check.status] += 1
        return counts

    @property
    def exit_code(self) -> int:
        """0 all pass, 1 any fail, 2 any error (exploratory checks ignored)"""
        counts = self.counts()
        if counts[CheckStatus.ERROR.value]:
            return 2
        if counts[CheckStatus.FAIL.value]:
            return 1
        return 0
