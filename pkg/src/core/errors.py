"""
예외 계층 정의
모든 검증 오류는 QWZError 아래에 있으며, 보고서용 기계 판독 코드(code)를 가진다.
"""
from typing import Optional


class QWZError(Exception):
    """Base class for every error raised by the toolkit."""

    code = "qwz_error"

    def describe(self) -> str:
        """보고서 witness 용 문자열"""
        return f"{self.code}: {self}"


class InvalidArgument(QWZError, ValueError):
    code = "invalid_argument"


class ModulusMismatch(QWZError, ValueError):
    code = "modulus_mismatch"


class NonInvertibleDenominator(QWZError, ArithmeticError):
    """Denominator shares a factor with the modulus."""

    code = "non_invertible_denominator"


class DivisionByZero(QWZError, ZeroDivisionError):
    code = "division_by_zero"


class PoleAtOne(QWZError, ArithmeticError):
    code = "pole_at_one"


class Divergent(QWZError, ArithmeticError):
    code = "divergent"


class PoleError(QWZError, ArithmeticError):
    """A pole (negative zero order) reached a place that needs a finite value."""

    code = "pole"


class PoleInRelation(PoleError):
    code = "pole_in_relation"

    def __init__(self, message: str, n: Optional[int] = None, k: Optional[int] = None):
        super().__init__(message if n is None else f"{message} at (n={n}, k={k})")
        self.n = n
        self.k = k


class PoleInTerm(PoleError):
    code = "pole_in_term"

    def __init__(self, message: str, n: Optional[int] = None):
        super().__init__(message if n is None else f"{message} at n={n}")
        self.n = n
