# core/config.py
"""
Engine-wide configuration: capacity caps, the SNF strategy, the working
precision for real-valued outputs and the sweep worker count.
"""

# Standard Imports
import os
from dataclasses import dataclass, replace
from typing import Literal, Optional
# Third-party Imports
from typing_extensions import Self
# Local Imports
from .errors import ValidationError

PRECISION_ENV_VAR = "TORSION_GROWTH_PRECISION"

SnfStrategy = Literal["fraction_free", "modular"]


@dataclass(frozen=True)
class EngineConfig:
    """Configuration shared by every computation of a job."""
    max_bits: int = 1_000_000
    snf_strategy: SnfStrategy = "fraction_free"
    max_group_order: int = 12
    max_bar_length: int = 4
    max_tensor_degree: int = 8
    precision_digits: int = 50
    workers: int = 1
    check_dd: bool = True

    def __post_init__(self) -> None:
        if self.max_bits < 64:
            raise ValidationError("max_bits must be at least 64")
        if self.snf_strategy not in ("fraction_free", "modular"):
            raise ValidationError(f"Unknown SNF strategy {self.snf_strategy!r}")
        if not (1 <= self.max_group_order <= 1000):
            raise ValidationError("max_group_order must be between 1 and 1000")
        if not (1 <= self.max_bar_length <= 6):
            raise ValidationError("max_bar_length must be between 1 and 6")
        if not (1 <= self.max_tensor_degree <= 12):
            raise ValidationError("max_tensor_degree must be between 1 and 12")
        if not (15 <= self.precision_digits <= 1000):
            raise ValidationError("precision_digits must be between 15 and 1000")
        if self.workers < 1:
            raise ValidationError("workers must be positive")

    def __str__(self) -> str:
        return f"{self.snf_strategy}-{self.precision_digits}d"

    def __repr__(self) -> str:
        return (f"EngineConfig(max_bits={self.max_bits}, snf_strategy={self.snf_strategy!r}, "
                f"max_group_order={self.max_group_order}, max_bar_length={self.max_bar_length}, "
                f"max_tensor_degree={self.max_tensor_degree}, precision_digits={self.precision_digits}, "
                f"workers={self.workers}, check_dd={self.check_dd})")

    def with_overrides(self, **overrides: Optional[object]) -> Self:
        """Return a copy with every non-None override applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **changes)

    @classmethod
    def from_env(cls, environ: Optional[dict] = None) -> Self:
        """Defaults, with the precision taken from the environment when set."""
        environ = os.environ if environ is None else environ
        raw = environ.get(PRECISION_ENV_VAR)
        if raw is None or raw.strip() == "":
            return cls()
        try:
            digits = int(raw)
        except ValueError:
            raise ValidationError(f"{PRECISION_ENV_VAR} must be an integer, got {raw!r}")
        return cls(precision_digits=digits)


DEFAULT_CONFIG = EngineConfig()
