# core/errors.py
"""
Exception hierarchy. Every error carries a stable `code` and the exit status
the command line reports for it.
"""

# Standard Imports
from typing import Any, Dict, Optional


class TorsionGrowthError(ValueError):
    code = "error"
    exit_status = 1

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.code, "message": str(self)}


class ParseError(TorsionGrowthError):
    """Malformed input file; `line` and `column` are 1-based when known."""
    code = "parse"
    exit_status = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 source: Optional[str] = None) -> None:
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data.update({"line": self.line, "column": self.column, "source": self.source})
        return data


class ValidationError(TorsionGrowthError):
    code = "validation"
    exit_status = 3


class ConsistencyError(TorsionGrowthError):
    """A complex whose boundaries do not compose to zero, or mismatched shapes."""
    code = "consistency"
    exit_status = 4


class CapacityError(TorsionGrowthError):
    code = "capacity"
    exit_status = 5


class AcyclicityError(TorsionGrowthError):
    code = "acyclicity"
    exit_status = 6


class IllConditionedFitError(TorsionGrowthError):
    code = "ill_conditioned"
    exit_status = 7


class InternalError(TorsionGrowthError):
    """Raised when an identity that must hold by construction fails."""
    code = "internal"
    exit_status = 8
