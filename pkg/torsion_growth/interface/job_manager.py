# interface/job_manager.py
"""
`JobManager` drives one command-line job: it resolves the job's inputs,
dispatches to the computational modules, narrates progress through a
`PipelineLogger` and returns a `ResultRecord` that echoes the job so the
result can be re-verified offline.
"""
# Standard Imports
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple
# Third-party Imports
import mpmath
# Local Imports
from . import formats
from .. import __version__
from ..asymptotics.fitting import GrowthSeries, fit_growth, leading_coefficient_report
from ..asymptotics.predictions import (
    GeometryInput, compare_to_target, predict_liminf_bound, predict_sl3_torsion_growth,
    predict_so_torsion_growth, sl2_benchmark_prediction, sl3_degree3_target, so_constant_rational_factor,
    so_dominant_parity, so_torsion_constant,
)
from ..core.config import DEFAULT_CONFIG, EngineConfig
from ..core.errors import TorsionGrowthError, ValidationError
from ..core.group_complex import (
    CochainComplex, CoeffModule, CohomologyResult, check_boundaries, cochain_cohomology, is_exact_over_q,
    cyclic_presentation, lens_complex, specialize,
)
from ..representations.lattices import dual_sym_power_lattice, sym_power_lattice
from ..representations.weights import HighestWeight, is_theta_fixed, so_module_rank, theta_twist
from ..torsion.torsion_engine import (
    TorsionValue, random_acyclic, reidemeister_torsion, verify_cochain_identity,
)
from ..utils.logger import PipelineLogger

COMMANDS = ("cohomology", "torsion", "verify", "dims", "constants", "sweep", "fit", "lens", "random")

REQUIRED_PARAMS = {
    "dims": ("weight",),
    "lens": ("lens",),
    "random": ("shape",),
    "sweep": ("recipe", "m_range"),
}

SWEEP_RECIPES = ("lens", "sym", "dual-sym", "so-rank")


@dataclass(frozen=True)
class JobSpec:
    """One command with its parameters, input paths, output path and seed."""
    command: str
    params: Mapping[str, Any] = field(default_factory=dict)
    inputs: Mapping[str, str] = field(default_factory=dict)
    output: Optional[str] = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"Unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")
        params = {k: v for k, v in sorted(dict(self.params).items()) if v is not None}
        inputs = {k: v for k, v in sorted(dict(self.inputs).items()) if v is not None}
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "inputs", inputs)
        for name in REQUIRED_PARAMS.get(self.command, ()):
            if name not in params:
                raise ValidationError(f"Command {self.command!r} requires --{name.replace('_', '-')}")
        if self.seed < 0:
            raise ValidationError("Seeds must be nonnegative")

    def echo(self) -> Dict[str, Any]:
        return {"command": self.command, "params": dict(self.params), "inputs": dict(self.inputs),
                "seed": self.seed}


@dataclass(frozen=True)
class ResultRecord:
    job: Dict[str, Any]
    data: Dict[str, Any]
    version: str = __version__
    timing: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        out = {"job": self.job, "data": self.data, "version": self.version}
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ResultRecord":
        return cls(dict(data["job"]), dict(data["data"]), str(data["version"]), data.get("timing"))

    def to_json(self) -> str:
        return formats.dumps(self.to_dict())


# Serialization helpers shared by records and sweep rows

def _fraction_dict(value: Fraction) -> Dict[str, str]:
    return {"numerator": str(value.numerator), "denominator": str(value.denominator)}


def _cohomology_dict(result: CohomologyResult) -> List[Dict[str, Any]]:
    return [{"degree": d.degree, "free_rank": d.free_rank, "elementary_divisors": list(d.elementary_divisors),
             "torsion_order": str(d.torsion_order)} for d in result.degrees]


def _torsion_dict(torsion: TorsionValue, digits: int) -> Dict[str, Any]:
    exact = torsion.exact_value()
    return {"t_squared": _fraction_dict(torsion.squared),
            "t": None if exact is None else str(exact),
            "log_t": torsion.log_decimal(digits)}


def _decimal(value: mpmath.mpf, digits: int) -> str:
    return mpmath.nstr(value, digits)


def _int_list(text: Any) -> List[int]:
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    try:
        return [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise ValidationError(f"Expected comma-separated integers, got {text!r}")


def parse_range(text: str) -> List[int]:
    """`start:stop[:step]` inclusive of stop, or a comma list."""
    text = str(text)
    if ":" not in text:
        return _int_list(text)
    parts = text.split(":")
    try:
        start, stop = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) > 2 else 1
    except (ValueError, IndexError):
        raise ValidationError(f"Bad range {text!r}; use start:stop[:step]")
    if step <= 0:
        raise ValidationError("Range step must be positive")
    return list(range(start, stop + 1, step))


# Sweeps run in worker processes, so the row builder is module-level.

def sweep_columns(recipe: Mapping[str, Any]) -> List[str]:
    if recipe["kind"] == "so-rank":
        return ["m", "rank", "prediction", "error"]
    degrees = [f"H{q}" for q in range(recipe.get("top_degree", 3) + 1)]
    return (["m", "rank"] + degrees +
            ["log_alternating_product", "log_torsion", "identity_holds", "prediction", "relative_error", "error"])


def _sweep_prediction(recipe: Mapping[str, Any], m: int, result: CohomologyResult, log_torsion: Optional[mpmath.mpf],
                      config: EngineConfig) -> Tuple[Optional[mpmath.mpf], Optional[mpmath.mpf]]:
    """
    Predicted value for one sweep row and the observed value it is compared
    with: log T = 2 log p for a lens space, and the Sym^(2k) benchmark for
    log |H^2| when m = 2k.
    """
    with mpmath.workdps(config.precision_digits):
        if recipe["kind"] == "lens":
            return 2 * mpmath.log(m), log_torsion
        if m % 2:
            return None, None
        prediction = sl2_benchmark_prediction(recipe.get("vol_x", "1"), m // 2, config)
        if len(result.degrees) <= 2:
            return prediction, None
        return prediction, mpmath.log(result.degrees[2].torsion_order)


def sweep_row(recipe: Mapping[str, Any], m: int, config: EngineConfig) -> Dict[str, Any]:
    row: Dict[str, Any] = {"m": m}
    try:
        match recipe["kind"]:
            case "so-rank":
                geom = GeometryInput(recipe["vol_x"], recipe["vol_xd"], recipe["p"], recipe["q"])
                row["rank"] = so_module_rank(geom.n, recipe["d"], m)
                row["prediction"] = _decimal(predict_so_torsion_growth(geom, recipe["d"], m, config=config),
                                             config.precision_digits)
                return row
            case "lens":
                cx, module = lens_complex(m, recipe.get("q", 1))
            case "sym" | "dual-sym":
                cx, gp = formats.complex_from_dict(recipe["complex"])
                build = sym_power_lattice if recipe["kind"] == "sym" else dual_sym_power_lattice
                module = build(gp.generator_matrices, m, gp.relators)
            case kind:
                raise ValidationError(f"Unknown sweep recipe {kind!r}")
        cc = specialize(cx, module, config)
        result = cochain_cohomology(cc, config)
        row["rank"] = module.rank
        for d in result.degrees:
            row[f"H{d.degree}"] = str(d.torsion_order) if d.free_rank == 0 else f"Z^{d.free_rank}+{d.torsion_order}"
        log_torsion = None
        if is_exact_over_q(cc):
            product = result.alternating_product()
            torsion = reidemeister_torsion(cc, config)
            log_torsion = torsion.log_value(config.precision_digits)
            with mpmath.workdps(config.precision_digits):
                log_product = mpmath.log(product.numerator) - mpmath.log(product.denominator)
            row["log_alternating_product"] = _decimal(log_product, config.precision_digits)
            row["log_torsion"] = torsion.log_decimal(config.precision_digits)
            row["identity_holds"] = torsion.squared == product ** 2
        prediction, observed = _sweep_prediction(recipe, m, result, log_torsion, config)
        if prediction is not None:
            row["prediction"] = _decimal(prediction, config.precision_digits)
            if observed is not None and prediction:
                with mpmath.workdps(config.precision_digits):
                    row["relative_error"] = _decimal(abs(observed - prediction) / abs(prediction), 10)
    except TorsionGrowthError as err:
        row["error"] = f"{err.code}: {err}"
    return row


class JobManager:
    """
    Manages the flow of one job from its spec to its result record
    """
    def __init__(self,
                 config: Optional[EngineConfig] = None,
                 logger: Optional[PipelineLogger] = None):
        self.config = config or DEFAULT_CONFIG
        self.logger = logger or PipelineLogger()

    def run(self, job: JobSpec) -> ResultRecord:
        """Dispatch one job; deterministic given its inputs and seed."""
        self.logger.log_job_start(job.command, job.seed, job.params)
        started = time.perf_counter()
        match job.command:
            case "cohomology":
                data = self._cohomology(job)
            case "torsion":
                data = self._torsion(job)
            case "verify":
                data = self._verify(job)
            case "dims":
                data = self._dims(job)
            case "constants":
                data = self._constants(job)
            case "sweep":
                rows, columns = self.sweep(job)
                data = {"columns": columns, "rows": rows}
            case "fit":
                data = self._fit(job)
            case "lens":
                p, q = self._lens_params(job)
                cx, module = lens_complex(p, q)
                data = {"complex": formats.complex_to_dict(cx, cyclic_presentation(p)),
                        "module": formats.module_to_dict(module)}
            case "random":
                cc = random_acyclic(_int_list(job.params["shape"]), job.seed)
                data = {"cochain": formats.cochain_to_dict(cc)}
        elapsed = time.perf_counter() - started
        self.logger.log_job_end(job.command, elapsed if job.params.get("timing") else None)
        return ResultRecord(job.echo(), data, timing=round(elapsed, 6) if job.params.get("timing") else None)

    def sweep(self, job: JobSpec) -> Tuple[List[Dict[str, Any]], List[str]]:
        """One row per m, ordered by m; failing rows carry an error and the sweep continues."""
        recipe = self._recipe(job)
        ms = parse_range(job.params["m_range"])
        columns = sweep_columns(recipe)
        if self.config.workers > 1 and len(ms) > 1:
            with ProcessPoolExecutor(max_workers=self.config.workers) as pool:
                rows = list(pool.map(sweep_row, [recipe] * len(ms), ms, [self.config] * len(ms)))
        else:
            rows = [sweep_row(recipe, m, self.config) for m in ms]
        for row in rows:
            self.logger.log_sweep_row(row)
        return rows, columns

    # Input resolution

    def _lens_params(self, job: JobSpec) -> Tuple[int, int]:
        values = _int_list(job.params["lens"])
        if len(values) != 2:
            raise ValidationError(f"--lens takes p,q; got {job.params['lens']!r}")
        return values[0], values[1]

    def _module_for(self, job: JobSpec, gp) -> CoeffModule:
        if "module" in job.inputs:
            return formats.load_module(job.inputs["module"])
        if gp is None:
            raise ValidationError("A module file is required when the complex carries no group")
        if "sym" in job.params:
            return sym_power_lattice(gp.generator_matrices, int(job.params["sym"]), gp.relators)
        if "dual_sym" in job.params:
            return dual_sym_power_lattice(gp.generator_matrices, int(job.params["dual_sym"]), gp.relators)
        return CoeffModule.from_presentation(gp)

    def _cochain(self, job: JobSpec) -> CochainComplex:
        if "cochain" in job.inputs:
            return formats.load_cochain(job.inputs["cochain"])
        if "lens" in job.params:
            cx, module = lens_complex(*self._lens_params(job))
            return specialize(cx, module, self.config)
        if "shape" in job.params:
            return random_acyclic(_int_list(job.params["shape"]), job.seed)
        if "complex" in job.inputs:
            cx, gp = formats.load_complex(job.inputs["complex"])
            if gp is not None and self.config.check_dd:
                check_boundaries(cx, gp, self.config)
            return specialize(cx, self._module_for(job, gp), self.config)
        raise ValidationError("No input: give --cochain, --complex, --lens or --shape")

    def _recipe(self, job: JobSpec) -> Dict[str, Any]:
        kind = job.params["recipe"]
        if kind not in SWEEP_RECIPES:
            raise ValidationError(f"Unknown sweep recipe {kind!r}; expected one of {', '.join(SWEEP_RECIPES)}")
        recipe: Dict[str, Any] = {"kind": kind}
        match kind:
            case "lens":
                recipe["q"] = int(job.params.get("q", 1))
            case "sym" | "dual-sym":
                if "complex" not in job.inputs:
                    raise ValidationError("Symmetric-power sweeps need --complex with a group")
                cx, gp = formats.load_complex(job.inputs["complex"])
                if gp is None:
                    raise ValidationError("The sweep complex must carry its group matrices")
                recipe["complex"] = formats.complex_to_dict(cx, gp)
                recipe["top_degree"] = cx.top_degree
                recipe["vol_x"] = str(job.params.get("vol_x", "1"))
            case "so-rank":
                geom = self._geometry(job, with_signature=True)
                recipe.update(p=geom.p, q=geom.q, d=int(job.params.get("d", 1)),
                              vol_x=str(geom.vol_x), vol_xd=str(geom.vol_xd))
        return recipe

    # Commands

    def _cohomology(self, job: JobSpec) -> Dict[str, Any]:
        cc = self._cochain(job)
        result = cochain_cohomology(cc, self.config)
        self.logger.log_cohomology(result)
        return {"dims": list(cc.dims), "degrees": _cohomology_dict(result),
                "euler_characteristic": result.euler_characteristic(), "exact_over_q": is_exact_over_q(cc)}

    def _torsion(self, job: JobSpec) -> Dict[str, Any]:
        cc = self._cochain(job)
        torsion = reidemeister_torsion(cc, self.config)
        self.logger.log_torsion(torsion)
        return {"dims": list(cc.dims), "torsion": _torsion_dict(torsion, self.config.precision_digits)}

    def _verify(self, job: JobSpec) -> Dict[str, Any]:
        cc = self._cochain(job)
        report = verify_cochain_identity(cc, self.config)
        self.logger.log_torsion(report.torsion)
        self.logger.log_verdict(report)
        return {"dims": list(cc.dims), "degrees": _cohomology_dict(report.cohomology),
                "torsion": _torsion_dict(report.torsion, self.config.precision_digits),
                "alternating_product": _fraction_dict(report.cohomology_side), "holds": report.holds}

    def _dims(self, job: JobSpec) -> Dict[str, Any]:
        weight = HighestWeight.parse(job.params["weight"])
        m = int(job.params.get("m", 1))
        scaled = weight.scaled(m)
        data = {"weight": str(weight), "m": m, "dimension": scaled.dimension(),
                "theta_twist": str(theta_twist(weight)), "theta_fixed": is_theta_fixed(weight)}
        if "d" in job.params and weight.root_system == "D":
            data["so_module_rank"] = so_module_rank(weight.n, int(job.params["d"]), m)
        return data

    def _geometry(self, job: JobSpec, with_signature: bool = False) -> GeometryInput:
        p = q = None
        if with_signature:
            values = _int_list(job.params.get("so", ""))
            if len(values) != 2:
                raise ValidationError("--so takes p,q")
            p, q = values
        return GeometryInput(job.params.get("vol_x", "1"), job.params.get("vol_xd", "1"), p, q)

    def _constants(self, job: JobSpec) -> Dict[str, Any]:
        digits = self.config.precision_digits
        data: Dict[str, Any] = {}
        if job.params.get("sl3"):
            geom = self._geometry(job)
            weight = HighestWeight.parse(job.params.get("weight", "A2:1,0"))
            m = int(job.params.get("m", 1))
            prediction = predict_sl3_torsion_growth(geom, weight, m, self.config)
            data["sl3"] = {"weight": str(weight), "m": m, "status": prediction.status.value,
                           "constant": None if prediction.constant is None else str(prediction.constant),
                           "prediction": None if prediction.value is None else _decimal(prediction.value, digits),
                           "detail": prediction.detail or None,
                           "degree3_target": _decimal(sl3_degree3_target(geom, self.config), digits)}
            if job.params.get("liminf"):
                bound = predict_liminf_bound("SL3", geom, weight=weight, config=self.config)
                data["sl3"]["liminf_bound"] = None if bound.value is None else _decimal(bound.value, digits)
        if "so" in job.params:
            geom = self._geometry(job, with_signature=True)
            entry = {"p": geom.p, "q": geom.q, "n": geom.n,
                     "c_pq": _decimal(so_torsion_constant(geom.p, geom.q, geom.vol_xd, self.config), digits),
                     "rational_factor": so_constant_rational_factor(geom.p, geom.q),
                     "dominant_parity": so_dominant_parity(geom.p, geom.q)}
            d = int(job.params.get("d", 1))
            if "m" in job.params:
                m = int(job.params["m"])
                entry.update(d=d, m=m, rank=so_module_rank(geom.n, d, m),
                             prediction=_decimal(predict_so_torsion_growth(geom, d, m, config=self.config), digits))
            if job.params.get("liminf"):
                bound = predict_liminf_bound("SO", geom, d=d, config=self.config)
                entry["liminf_bound"] = _decimal(bound.value, digits)
                entry["rank_leading_coefficient"] = str(bound.constant)
            data["so"] = entry
        if "sl2" in job.params:
            k = int(job.params["sl2"])
            data["sl2"] = {"k": k, "benchmark": _decimal(
                sl2_benchmark_prediction(job.params.get("vol_x", "1"), k, self.config), digits)}
        if not data:
            raise ValidationError("constants needs --sl3, --so or --sl2")
        return data

    def _fit(self, job: JobSpec) -> Dict[str, Any]:
        digits = self.config.precision_digits
        if "sl3_report" in job.params:
            tau = _int_list(job.params["sl3_report"])
            if len(tau) != 2:
                raise ValidationError("--sl3-report takes tau1,tau2")
            ms = parse_range(job.params.get("m_range", "1:30"))
            return {"report": leading_coefficient_report(tau[0], tau[1], ms, self.config).to_dict()}
        if "series" not in job.inputs:
            raise ValidationError("fit needs --series or --sl3-report")
        degree = int(job.params.get("degree", 1))
        series = GrowthSeries(tuple(formats.read_series_csv(job.inputs["series"])), degree)
        result = fit_growth(series, degree, int(job.params.get("terms", 2)), self.config)
        data = {"degree": degree, "leading_coefficient": _decimal(result.leading_coefficient, digits),
                "coefficients": [_decimal(c, digits) for c in result.coefficients],
                "residual": _decimal(result.residual, 10), "condition": _decimal(result.condition, 10)}
        if job.params.get("target") == "sl3":
            comparison = compare_to_target(result.leading_coefficient, sl3_degree3_target(self._geometry(job)),
                                           self.config)
            data["target"] = {"value": _decimal(comparison.target, digits),
                              "relative_error": _decimal(comparison.relative_error, 10)}
        return data
