# utils/logger.py
"""
This module provides the `PipelineLogger` class, which narrates a job: its
start and end, per-degree cohomology, torsion values, identity verdicts and
sweep rows. Messages go through the standard `logging` hierarchy under
`torsion_growth.pipeline`, so the command line controls verbosity.
"""

# Standard Imports
import logging
from typing import Any, Mapping, Optional
# Local Imports
from ..core.group_complex import CohomologyResult, DegreeCohomology
from ..torsion.torsion_engine import TorsionIdentityReport, TorsionValue


class PipelineLogger:
    """
    Handles logging of pipeline events
    """
    def __init__(self, logger: Optional[logging.Logger] = None, digits: int = 12) -> None:
        self.logger = logger or logging.getLogger("torsion_growth.pipeline")
        self.digits = digits
        self.jobs_started = 0

    def log_job_start(self, command: str, seed: int, params: Mapping[str, Any]) -> None:
        self.jobs_started += 1
        shown = ", ".join(f"{k}={v}" for k, v in sorted(params.items()) if v is not None)
        self.logger.info("=== %s (seed %d) === %s", command, seed, shown)

    def log_degree(self, degree: DegreeCohomology) -> None:
        self.logger.info("%s", degree)

    def log_cohomology(self, result: CohomologyResult) -> None:
        for degree in result.degrees:
            self.log_degree(degree)

    def log_torsion(self, torsion: TorsionValue) -> None:
        self.logger.info("Torsion %s, log T = %s", torsion, torsion.log_decimal(self.digits))

    def log_verdict(self, report: TorsionIdentityReport) -> None:
        if report.holds:
            self.logger.info("Identity holds: T = %s", report.cohomology_side)
        else:
            self.logger.error("Identity FAILS: %s", report)

    def log_sweep_row(self, row: Mapping[str, Any]) -> None:
        if row.get("error"):
            self.logger.warning("Row m=%s failed: %s", row.get("m"), row["error"])
        else:
            self.logger.info("Row m=%s done", row.get("m"))

    def log_job_end(self, command: str, seconds: Optional[float] = None) -> None:
        if seconds is None:
            self.logger.info("--- %s complete ---", command)
        else:
            self.logger.info("--- %s complete in %.3fs ---", command, seconds)
