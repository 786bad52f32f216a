"""
Domain exceptions for the self-dual code toolkit.

Every error carries a machine-readable ``code`` so the command line can
report failures as ``{"error": code, "detail": message}``.
"""

from typing import Any, Dict, Optional


class SelfDualError(Exception):
    """Base class for all domain errors"""
    code = "SelfDualError"

    def __init__(self, detail: str = "", **context: Any):
        super().__init__(detail or self.code)
        self.detail = detail or self.code
        self.context = context

    def to_payload(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"error": self.code, "detail": self.detail}
        if self.context:
            payload["context"] = self.context
        return payload


# finite_field
class NotPrime(SelfDualError):
    code = "NotPrime"


class NotPrimePower(SelfDualError):
    code = "NotPrimePower"


class DegreeOutOfRange(SelfDualError):
    code = "DegreeOutOfRange"


class DivisionByZero(SelfDualError):
    code = "DivisionByZero"


class NoSolution(SelfDualError):
    code = "NoSolution"


class WrongResidueClass(SelfDualError):
    code = "WrongResidueClass"


# exact_linalg / linear_code
class Inconsistent(SelfDualError):
    code = "Inconsistent"


class LengthMismatch(SelfDualError):
    code = "LengthMismatch"


class BudgetExceeded(SelfDualError):
    code = "BudgetExceeded"


class ZeroCode(SelfDualError):
    code = "ZeroCode"


# selfdual_construct
class StarViolated(SelfDualError):
    code = "StarViolated"


class NotSelfOrthogonal(SelfDualError):
    code = "NotSelfOrthogonal"


class AlreadyMaximal(SelfDualError):
    code = "AlreadyMaximal"


# function_field / ag_code
class ZeroFunction(SelfDualError):
    code = "ZeroFunction"


class NonRationalPlace(SelfDualError):
    code = "NonRationalPlace"


class SupportOverlap(SelfDualError):
    code = "SupportOverlap"


class NonRationalEvaluationPlace(SelfDualError):
    code = "NonRationalEvaluationPlace"


class OmegaNotCertified(SelfDualError):
    code = "OmegaNotCertified"


class InfinitePlaceInD(SelfDualError):
    code = "InfinitePlaceInD"


# bounds
class DomainError(SelfDualError):
    code = "DomainError"


class RankTooSmall(SelfDualError):
    code = "RankTooSmall"


class RequiresOddR(SelfDualError):
    code = "RequiresOddR"


# cli / code_io
class ParseError(SelfDualError):
    code = "ParseError"

    def __init__(self, detail: str = "", line: Optional[int] = None,
                 field: Optional[str] = None):
        context: Dict[str, Any] = {}
        if line is not None:
            context["line"] = line
        if field is not None:
            context["field"] = field
        super().__init__(detail, **context)
        self.line = line
        self.field = field


class FieldMismatch(SelfDualError):
    code = "FieldMismatch"


class UsageError(SelfDualError):
    code = "UsageError"


class VerificationFailed(SelfDualError):
    code = "VerificationFailed"
