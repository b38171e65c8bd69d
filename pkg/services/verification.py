# services/verification.py
import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from functools import partial
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from config.settings import HesseSettings, get_settings
from models.field import FieldSpec
from models.hesse import DegeneracyMode, Verdict
from models.report import ReportEnvelope, ReportHeader, RunReport
from services.exceptions import HesseError, RetryBudgetExceeded, ShapeError
from services.fields import Field, Scalar, field_make
from services.hesse import (
    altitude_demo,
    hesse_verdict,
    identity_checks,
    random_config,
    sample_hesse_config,
)
from services.oracle import lemma_agreement_scan
from services.projective import INFINITY, ProjectivePoint, all_points, cross_ratio
from services.quadrics import (
    BilinearForm,
    all_symmetric_forms,
    find_degeneracy_counterexample,
    random_degenerate_form,
    random_form,
    random_nondegenerate_form,
    standard_form,
    zero_form,
)
from services.serialization import (
    form_to_strings,
    input_digest,
    load_form,
    load_points,
    load_quadrangle,
    point_to_strings,
    quadrangle_to_file,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_TRIPWIRE = 2

_MIX = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1

Chunk = Tuple[Dict[str, int], List[Dict[str, Any]]]


def derive_seed(seed: int, index: int) -> int:
    """Per-trial seed: the mixed run seed XOR the trial index."""
    return ((seed * _MIX) & _MASK) ^ index


def _chunks(count: int, workers: int) -> List[range]:
    size = -(-count // workers)
    return [range(start, min(start + size, count)) for start in range(0, count, size)]


def _fuzz_chunk(indices: range, *, spec: FieldSpec, dim: int, seed: int, retry_budget: int, bound: int) -> Chunk:
    field = field_make(spec)
    counts = {verdict.value: 0 for verdict in Verdict}
    anomalies: List[Dict[str, Any]] = []
    for index in indices:
        trial_seed = derive_seed(seed, index)
        try:
            config = sample_hesse_config(field, dim, trial_seed, retry_budget=retry_budget, bound=bound)
        except RetryBudgetExceeded as e:
            raise RetryBudgetExceeded(f"trial {index} (seed {trial_seed}): {e.detail}", seed=trial_seed)
        report = hesse_verdict(config)
        counts[report.verdict.value] += 1
        if report.verdict != Verdict.HESSE_CONFIRMED:
            logger.error(f"Fuzz trial {index} (seed {trial_seed}) gave {report.verdict.value}")
            anomalies.append({
                "trial": index,
                "seed": trial_seed,
                "config": quadrangle_to_file(config).model_dump(),
                "report": report.model_dump(mode="json", by_alias=True),
            })
    return counts, anomalies


def _identity_chunk(indices: range, *, spec: FieldSpec, dim: int, seed: int, bound: int) -> Chunk:
    field = field_make(spec)
    failures: Dict[str, int] = {}
    anomalies: List[Dict[str, Any]] = []
    for index in indices:
        trial_seed = derive_seed(seed, index)
        config = random_config(field, dim, trial_seed, bound)
        checks = identity_checks(config, trial_seed, bound)
        failed = [name for name, passed in checks.model_dump().items() if not passed]
        for name in failed:
            failures[name] = failures.get(name, 0) + 1
        if failed:
            logger.error(f"Identity trial {index} (seed {trial_seed}) failed {failed}")
            anomalies.append({
                "trial": index,
                "seed": trial_seed,
                "failed": failed,
                "config": quadrangle_to_file(config).model_dump(),
            })
    return failures, anomalies


def build_form(name: str, field: Field, n: int, bound: int) -> BilinearForm:
    """
    Named forms for scans: 'identity', 'zero', 'random:seed=S', 'degenerate:seed=S',
    'nondegenerate:seed=S'.
    """
    kind, _, option = name.strip().partition(":")
    seed = 0
    if option:
        key, _, value = option.partition("=")
        if key != "seed" or not value.lstrip("-").isdigit():
            raise HesseError(f"unknown form option '{option}', expected seed=<int>")
        seed = int(value)
    if kind == "identity":
        return standard_form(field, n)
    if kind == "zero":
        return zero_form(field, n)
    if kind == "random":
        return random_form(field, n, seed, bound)
    if kind == "degenerate":
        return random_degenerate_form(field, n, seed, bound)
    if kind == "nondegenerate":
        return random_nondegenerate_form(field, n, seed, bound)
    raise HesseError(f"unknown form '{name}'")


class VerificationService:
    """The workflows behind each command. Every method returns a deterministic RunReport body."""

    def __init__(self, settings: Optional[HesseSettings] = None):
        self.settings = settings or get_settings()

    def _run_chunks(self, fn: Callable[..., Chunk], count: int, **fixed) -> List[Chunk]:
        # chunks are contiguous and executor.map keeps their order, so merges are schedule-free
        chunks = _chunks(count, self.settings.workers)
        task = partial(fn, **fixed)
        if len(chunks) > 1:
            with ProcessPoolExecutor(max_workers=len(chunks)) as executor:
                return list(executor.map(task, chunks))
        return [task(chunk) for chunk in chunks]

    @staticmethod
    def envelope(body: RunReport, started: float) -> ReportEnvelope:
        header = ReportHeader(
            generated_at=datetime.now(timezone.utc),
            wall_time_secs=time.perf_counter() - started,
        )
        return ReportEnvelope(header=header, body=body)

    def check(self, path: Path) -> RunReport:
        config = load_quadrangle(path)
        report = hesse_verdict(config)
        logger.info(f"Verdict for {path}: {report.verdict.value}")
        return RunReport(
            command="check",
            input_digest=input_digest(quadrangle_to_file(config).model_dump()),
            outcome=report.verdict.value,
            exit_code=EXIT_TRIPWIRE if report.verdict == Verdict.VIOLATION else EXIT_OK,
            summary={"field": str(config.field), "dim": config.dim},
            details=[report.model_dump(mode="json", by_alias=True)],
        )

    def fuzz(self, field: Field, dim: int, trials: int, seed: int) -> RunReport:
        if dim < 2:
            raise ShapeError(f"fuzzing needs dimension >= 2, got {dim}")
        if trials < 1:
            raise HesseError("trials must be at least 1")
        logger.info(f"Fuzzing {trials} Hesse configurations over {field} in P^{dim} (seed {seed})")
        results = self._run_chunks(
            _fuzz_chunk, trials,
            spec=field.spec, dim=dim, seed=seed,
            retry_budget=self.settings.retry_budget, bound=self.settings.rational_bound,
        )

        counts = {verdict.value: 0 for verdict in Verdict}
        details: List[Dict[str, Any]] = []
        for chunk_counts, anomalies in results:
            for key, value in chunk_counts.items():
                counts[key] += value
            details.extend(anomalies)
        confirmed = counts[Verdict.HESSE_CONFIRMED.value]
        logger.info(f"Fuzz finished: {confirmed}/{trials} confirmed")
        return RunReport(
            command="fuzz",
            input_digest=input_digest({"field": str(field), "dim": dim, "trials": trials, "seed": seed}),
            seed=seed,
            outcome=f"{confirmed}/{trials} confirmed",
            exit_code=EXIT_OK if confirmed == trials else EXIT_TRIPWIRE,
            summary={"field": str(field), "dim": dim},
            counts={"trials": trials, **counts},
            details=details,
        )

    def identities(self, field: Field, dim: int, trials: int, seed: int) -> RunReport:
        if dim < 1:
            raise ShapeError(f"dimension must be at least 1, got {dim}")
        if trials < 1:
            raise HesseError("trials must be at least 1")
        logger.info(f"Checking identities on {trials} random configurations over {field} in P^{dim}")
        results = self._run_chunks(
            _identity_chunk, trials,
            spec=field.spec, dim=dim, seed=seed, bound=self.settings.rational_bound,
        )
        failures: Dict[str, int] = {}
        details: List[Dict[str, Any]] = []
        for chunk_failures, anomalies in results:
            for key, value in chunk_failures.items():
                failures[key] = failures.get(key, 0) + value
            details.extend(anomalies)
        failed_trials = len(details)
        return RunReport(
            command="identities",
            input_digest=input_digest({"field": str(field), "dim": dim, "trials": trials, "seed": seed}),
            seed=seed,
            outcome=f"{trials - failed_trials}/{trials} passed",
            exit_code=EXIT_OK if not failed_trials else EXIT_TRIPWIRE,
            summary={"field": str(field), "dim": dim},
            counts={"trials": trials, "failed_trials": failed_trials, **failures},
            details=details,
        )

    def scan(self, field: Field, dim: int, form_names: Sequence[str]) -> RunReport:
        forms = [build_form(name, field, dim, self.settings.rational_bound) for name in form_names]
        report = lemma_agreement_scan(
            field, dim, forms, budget=self.settings.scan_budget, workers=self.settings.workers
        )
        mismatches = [m.model_dump() for m in report.mismatches]
        return RunReport(
            command="scan",
            input_digest=input_digest({"field": str(field), "dim": dim, "forms": list(form_names)}),
            outcome=f"{len(mismatches)} mismatches in {report.tuples_scanned} instances",
            exit_code=EXIT_OK if not mismatches else EXIT_TRIPWIRE,
            summary={
                "field": report.field,
                "dim": report.dim,
                "forms": [{"name": name, "matrix": form_to_strings(f)} for name, f in zip(form_names, forms)],
            },
            counts={
                "forms": report.forms,
                "tuples_scanned": report.tuples_scanned,
                "conjugate_instances": report.conjugate_instances,
                "mismatches": len(mismatches),
            },
            details=mismatches,
        )

    def degeneracy_form(self, path: Path, seed: int) -> RunReport:
        form = load_form(path)
        if form.size != 2:
            raise ShapeError(f"the dimension-one criterion needs a 2x2 form, got {form.size}x{form.size}")
        mode = DegeneracyMode.EXHAUSTIVE if form.field.is_finite else DegeneracyMode.SAMPLED
        by_determinant = form.is_degenerate()
        witness = find_degeneracy_counterexample(
            form, mode, samples=self.settings.sampled_quadruples, seed=seed, bound=self.settings.rational_bound
        )
        by_quadruples = witness is None
        agree = by_determinant == by_quadruples
        detail: Dict[str, Any] = {
            "determinant": str(form.determinant()),
            "degenerate_by_determinant": by_determinant,
            "degenerate_by_quadruples": by_quadruples,
            "mode": mode.value,
        }
        if witness is not None:
            detail["witness"] = [point_to_strings(ProjectivePoint(v)) for v in witness]
        return RunReport(
            command="degeneracy",
            input_digest=input_digest({"form": form_to_strings(form), "field": str(form.field), "seed": seed}),
            seed=seed if mode == DegeneracyMode.SAMPLED else None,
            outcome=("degenerate" if by_determinant else "nondegenerate") + (" (criteria agree)" if agree else " (criteria DISAGREE)"),
            exit_code=EXIT_OK if agree else EXIT_TRIPWIRE,
            summary={"field": str(form.field), "form": form_to_strings(form)},
            details=[detail],
        )

    def degeneracy_exhaustive(self, field: Field) -> RunReport:
        if not field.is_finite:
            raise HesseError("exhaustive enumeration of forms needs GF(p)")
        forms = agreements = degenerate = 0
        details: List[Dict[str, Any]] = []
        for form in all_symmetric_forms(field, 2):
            forms += 1
            by_determinant = form.is_degenerate()
            by_quadruples = find_degeneracy_counterexample(form, DegeneracyMode.EXHAUSTIVE) is None
            degenerate += by_determinant
            if by_determinant == by_quadruples:
                agreements += 1
            else:
                logger.error(f"Degeneracy criteria disagree on {form!r}")
                details.append({"form": form_to_strings(form), "determinant": by_determinant,
                                "quadruples": by_quadruples})
        logger.info(f"Degeneracy criteria agree on {agreements}/{forms} forms over {field}")
        return RunReport(
            command="degeneracy",
            input_digest=input_digest({"exhaustive": str(field)}),
            outcome=f"{agreements}/{forms} agreements",
            exit_code=EXIT_OK if agreements == forms else EXIT_TRIPWIRE,
            summary={"field": str(field)},
            counts={"forms": forms, "agreements": agreements, "degenerate_forms": degenerate},
            details=details,
        )

    def cross_ratio_points(self, path: Path) -> RunReport:
        points = load_points(path)
        value = cross_ratio(*points)
        return RunReport(
            command="cross-ratio",
            input_digest=input_digest({"points": [point_to_strings(p) for p in points],
                                       "field": str(points[0].field)}),
            outcome=str(value),
            summary={"field": str(points[0].field), "cross_ratio": str(value)},
        )

    def cross_ratio_exhaustive(self, field: Field) -> RunReport:
        points = all_points(field, 1)
        zero, one = field.zero, field.one
        quadruples = forbidden = 0
        attained = set()
        details: List[Dict[str, Any]] = []
        for quadruple in itertools.permutations(points, 4):
            value = cross_ratio(*quadruple)
            quadruples += 1
            if value is INFINITY or value == zero or value == one:
                forbidden += 1
                details.append({"points": [point_to_strings(p) for p in quadruple], "value": str(value)})
            else:
                attained.add(value)
        admissible = field.order - 2
        every_value = len(attained) == admissible
        logger.info(f"Cross-ratio over {field}: {quadruples} quadruples, {forbidden} forbidden values")
        return RunReport(
            command="cross-ratio",
            input_digest=input_digest({"exhaustive": str(field)}),
            outcome=f"{quadruples - forbidden}/{quadruples} quadruples avoid 0, 1 and inf",
            exit_code=EXIT_OK if not forbidden and every_value else EXIT_TRIPWIRE,
            summary={"field": str(field), "every_admissible_value_attained": every_value},
            counts={"quadruples": quadruples, "forbidden_values": forbidden,
                    "distinct_values": len(attained)},
            details=details,
        )

    def demo(
        self, triangle: Sequence[Sequence[Scalar]], radii_sq: Sequence[Scalar], allow_degenerate: bool = False
    ) -> RunReport:
        details: List[Dict[str, Any]] = []
        confirmed = not_applicable = 0
        for radius_sq in radii_sq:
            result = altitude_demo(triangle, radius_sq, allow_degenerate=allow_degenerate)
            confirmed += result.confirmed
            not_applicable += result.verdict == Verdict.NOT_APPLICABLE
            details.append(result.model_dump(mode="json", by_alias=True))
        triangle_text = [[str(x) for x in vertex] for vertex in triangle]
        return RunReport(
            command="demo",
            input_digest=input_digest({"triangle": triangle_text, "radius_sq": [str(r) for r in radii_sq],
                                       "allow_degenerate": allow_degenerate}),
            outcome=f"{confirmed}/{len(radii_sq)} circles confirm the altitude theorem",
            exit_code=EXIT_OK if confirmed == len(radii_sq) else EXIT_TRIPWIRE,
            summary={"triangle": triangle_text, "field": str(triangle[0][0].field)},
            counts={"circles": len(radii_sq), "confirmed": confirmed, "not_applicable": not_applicable},
            details=details,
        )
