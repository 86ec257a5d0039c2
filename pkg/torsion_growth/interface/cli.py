# interface/cli.py
"""
This module contains `main(argv)`, the `torsion-growth` command line. It
builds a `JobSpec` from the arguments, hands it to a `JobManager` and writes
the result record (JSON, or CSV for sweeps) to stdout or `--output`.
Errors are reported on stderr as a JSON object and mapped to exit statuses.
"""
# Standard Imports
import argparse
import json
import logging
import sys
from typing import List, Optional
# Local Imports
from . import formats
from .job_manager import JobManager, JobSpec, SWEEP_RECIPES
from .. import __version__
from ..core.config import EngineConfig
from ..core.errors import InternalError, TorsionGrowthError
from ..utils.logger import PipelineLogger


def _add_engine_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("engine")
    group.add_argument("--seed", type=int, default=0, help="Seed for random constructions (default 0)")
    group.add_argument("--output", "-o", help="Write the result here instead of stdout")
    group.add_argument("--timing", action="store_true", help="Record wall-clock time in the result")
    group.add_argument("-v", "--verbose", action="count", default=0)
    group.add_argument("-q", "--quiet", action="store_true")
    group.add_argument("--max-bits", type=int)
    group.add_argument("--max-group-order", type=int)
    group.add_argument("--max-bar-length", type=int)
    group.add_argument("--max-tensor-degree", type=int)
    group.add_argument("--snf-strategy", choices=("fraction_free", "modular"))
    group.add_argument("--precision", type=int, help="Decimal digits for real-valued outputs")
    group.add_argument("--workers", type=int, help="Worker processes for sweeps")
    group.add_argument("--check-dd", action=argparse.BooleanOptionalAction, default=None,
                       help="Check that boundaries compose to zero (default on)")


def _add_source_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("input")
    group.add_argument("--cochain", help="Cochain complex JSON")
    group.add_argument("--complex", help="Group-ring complex JSON")
    group.add_argument("--module", help="Coefficient module JSON")
    group.add_argument("--lens", help="Lens-space oracle p,q with ζ_p coefficients")
    group.add_argument("--shape", help="Random acyclic complex with these dimensions, e.g. 2,4,2")
    group.add_argument("--sym", type=int, help="Use Sym^m of the group's defining lattice as coefficients")
    group.add_argument("--dual-sym", type=int, help="Use the dual of Sym^m as coefficients")


def _add_geometry_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--vol-x", "--volX", dest="vol_x", help="vol(X), exact decimal or fraction (default 1)")
    parser.add_argument("--vol-xd", "--volXd", dest="vol_xd", help="vol(X^d) of the compact dual (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torsion-growth",
                                     description="Exact torsion in cohomology and its asymptotic growth")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, text in (("cohomology", "Cohomology groups of a cochain complex"),
                       ("torsion", "Reidemeister torsion of a complex exact over Q"),
                       ("verify", "Check torsion against the cohomology product")):
        sub = commands.add_parser(name, help=text)
        _add_source_flags(sub)
        _add_engine_flags(sub)

    sub = commands.add_parser("dims", help="Weyl dimension of a scaled highest weight")
    sub.add_argument("--weight", required=True, help="e.g. A2:1,0 or D:1,1,1")
    sub.add_argument("--m", type=int, help="Scale factor (default 1)")
    sub.add_argument("--d", type=int, help="Also report the SO module rank for this d")
    _add_engine_flags(sub)

    sub = commands.add_parser("constants", help="Closed-form growth constants and predictions")
    sub.add_argument("--sl3", action="store_true", help="SL3 leading term")
    sub.add_argument("--so", help="SO(p,q) signature p,q")
    sub.add_argument("--sl2", type=int, help="SL2 benchmark for Sym^(2k) coefficients")
    sub.add_argument("--weight", help="A2 weight for --sl3 (default A2:1,0)")
    sub.add_argument("--m", type=int)
    sub.add_argument("--d", type=int)
    sub.add_argument("--liminf", action="store_true", help="Also give the liminf lower bound")
    _add_geometry_flags(sub)
    _add_engine_flags(sub)

    sub = commands.add_parser("sweep", help="One CSV row per m")
    sub.add_argument("--recipe", required=True, choices=SWEEP_RECIPES)
    sub.add_argument("--m-range", dest="m_range", required=True, help="start:stop[:step] or a comma list")
    sub.add_argument("--complex", help="Group-ring complex JSON with its group (sym recipes)")
    sub.add_argument("--q", type=int, help="Second lens parameter (lens recipe, default 1)")
    sub.add_argument("--so", help="SO(p,q) signature p,q (so-rank recipe)")
    sub.add_argument("--d", type=int)
    _add_geometry_flags(sub)
    _add_engine_flags(sub)

    sub = commands.add_parser("fit", help="Least-squares leading coefficient of a growth series")
    sub.add_argument("--series", help="CSV with columns m,value")
    sub.add_argument("--degree", type=int, help="Degree of the leading monomial (default 1)")
    sub.add_argument("--terms", type=int, help="Monomials in the model (default 2)")
    sub.add_argument("--target", choices=("sl3",), help="Compare against a closed-form target")
    sub.add_argument("--sl3-report", dest="sl3_report",
                     help="tau1,tau2: fitted vs closed-form dimension growth")
    sub.add_argument("--m-range", dest="m_range", help="Abscissae for --sl3-report (default 1:30)")
    _add_geometry_flags(sub)
    _add_engine_flags(sub)

    sub = commands.add_parser("lens", help="Emit the lens-space complex and module as JSON")
    sub.add_argument("--lens", required=True, help="p,q")
    _add_engine_flags(sub)

    sub = commands.add_parser("random", help="Emit a random acyclic cochain complex as JSON")
    sub.add_argument("--shape", required=True, help="Dimensions, e.g. 2,4,2")
    _add_engine_flags(sub)
    return parser


INPUT_FLAGS = ("cochain", "complex", "module", "series")
ENGINE_FLAGS = ("seed", "output", "timing", "verbose", "quiet", "max_bits", "max_group_order", "max_bar_length",
                "max_tensor_degree", "snf_strategy", "precision", "workers", "check_dd", "command")


def job_from_args(args: argparse.Namespace) -> JobSpec:
    values = vars(args)
    inputs = {k: values.get(k) for k in INPUT_FLAGS}
    params = {k: v for k, v in values.items() if k not in INPUT_FLAGS and k not in ENGINE_FLAGS}
    params = {k: v for k, v in params.items() if v is not None and v is not False}
    if args.timing:
        params["timing"] = True
    return JobSpec(args.command, params, inputs, args.output, args.seed)


def config_from_args(args: argparse.Namespace) -> EngineConfig:
    return EngineConfig.from_env().with_overrides(
        max_bits=args.max_bits,
        max_group_order=args.max_group_order,
        max_bar_length=args.max_bar_length,
        max_tensor_degree=args.max_tensor_degree,
        snf_strategy=args.snf_strategy,
        precision_digits=args.precision,
        workers=args.workers,
        check_dd=args.check_dd,
    )


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.ERROR if args.quiet else (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _report_error(err: TorsionGrowthError) -> int:
    payload = err.to_dict()
    payload["exit_status"] = err.exit_status
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return err.exit_status


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        config = config_from_args(args)
        job = job_from_args(args)
        manager = JobManager(config, PipelineLogger(digits=min(config.precision_digits, 20)))
        record = manager.run(job)
        if job.command == "sweep":
            text = formats.sweep_csv(record.data["rows"], record.data["columns"])
        else:
            text = record.to_json()
        formats.write_output(text, job.output)
        if job.command == "verify" and not record.data["holds"]:
            return _report_error(InternalError("Torsion identity does not hold for this complex"))
    except TorsionGrowthError as err:
        return _report_error(err)
    return 0


if __name__ == "__main__":
    sys.exit(main())
