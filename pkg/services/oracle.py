# services/oracle.py
"""
Brute-force check of the conjugate-line criterion over GF(p).

A line l1 is conjugate to l2 when some point of l1 is orthogonal to every point
of l2. The oracle tests that statement literally, against all p + 1 points of l2,
and never uses the shortcut of testing only the two spanning points.
"""
import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from models.field import FieldSpec
from services.exceptions import ScanTooLargeError, ShapeError, UnsupportedFieldError
from services.fields import Field, field_make
from services.projective import ProjectiveLine, ProjectivePoint, all_points
from services.quadrics import BilinearForm

logger = logging.getLogger(__name__)

DEFAULT_SCAN_BUDGET = 4_000_000


class LineEnumeration(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    line: ProjectiveLine
    points: List[ProjectivePoint]


def enumerate_line_points(line: ProjectiveLine) -> LineEnumeration:
    """{A + beta B : beta in GF(p)} together with B: each point of the line exactly once."""
    field = line.field
    if not field.is_finite:
        raise UnsupportedFieldError("lines over the rationals have infinitely many points")
    points = [line.point_at(field.one, beta) for beta in field.elements()]
    points.append(line.q)
    return LineEnumeration(line=line, points=points)


def find_witness(form: BilinearForm, l1: ProjectiveLine, l2: ProjectiveLine) -> Optional[ProjectivePoint]:
    """A point of l1 orthogonal to every point of l2, or None."""
    if not form.field.is_finite:
        raise UnsupportedFieldError("the brute-force oracle only runs over GF(p)")
    if l1.dim != form.dim or l2.dim != form.dim:
        raise ShapeError(f"lines in P^{l1.dim} and P^{l2.dim} used with a form on P^{form.dim}")
    targets = enumerate_line_points(l2).points
    for e in enumerate_line_points(l1).points:
        if all(not form.pair(e, f) for f in targets):
            return e
    return None


def brute_conjugate(form: BilinearForm, l1: ProjectiveLine, l2: ProjectiveLine) -> bool:
    return find_witness(form, l1, l2) is not None


class ScanMismatch(BaseModel):
    form_index: int
    points: List[List[str]]
    brute_force: bool
    determinant_criterion: bool


class ScanReport(BaseModel):
    field: str
    dim: int
    forms: int
    tuples_scanned: int
    conjugate_instances: int
    mismatches: List[ScanMismatch] = []
    wall_time_secs: float = 0.0


def point_count(p: int, n: int) -> int:
    return (p ** (n + 1) - 1) // (p - 1)


def scan_size(field: Field, n: int, forms: int) -> int:
    """Ordered 4-tuples of distinct points of P^n(GF(p)), times the number of forms."""
    count = point_count(field.order, n)
    return count * (count - 1) * (count - 2) * (count - 3) * forms


class _ScanTables:
    """Per-form Gram table over all points of P^n plus each line's point indices."""

    def __init__(self, points: Sequence[ProjectivePoint], form: BilinearForm):
        self.points = points
        self.index: Dict[ProjectivePoint, int] = {p: i for i, p in enumerate(points)}
        self.gram = form.gram(points)
        self._lines: Dict[Tuple[int, int], List[int]] = {}

    def line(self, i: int, j: int) -> List[int]:
        key = (i, j) if i < j else (j, i)
        if key not in self._lines:
            enumeration = enumerate_line_points(ProjectiveLine(self.points[i], self.points[j]))
            self._lines[key] = [self.index[p] for p in enumeration.points]
        return self._lines[key]

    def brute(self, ab: List[int], cd: List[int]) -> bool:
        g = self.gram
        return any(all(not g[e][f] for f in cd) for e in ab)

    def criterion(self, a: int, b: int, c: int, d: int) -> bool:
        g = self.gram
        return not (g[a][c] * g[b][d] - g[a][d] * g[b][c])


def _scan_partition(
    spec: FieldSpec, n: int, forms: Sequence[BilinearForm], first_indices: Sequence[int]
) -> Tuple[int, int, List[ScanMismatch]]:
    field = field_make(spec)
    points = all_points(field, n)
    scanned = conjugate = 0
    mismatches: List[ScanMismatch] = []
    for form_index, form in enumerate(forms):
        tables = _ScanTables(points, form)
        for a in first_indices:
            for b, c, d in itertools.permutations([i for i in range(len(points)) if i != a], 3):
                brute = tables.brute(tables.line(a, b), tables.line(c, d))
                criterion = tables.criterion(a, b, c, d)
                scanned += 1
                conjugate += brute
                if brute != criterion:
                    logger.error(f"Lemma mismatch for form {form_index} at points {(a, b, c, d)}")
                    mismatches.append(ScanMismatch(
                        form_index=form_index,
                        points=[[str(x) for x in points[k].canonical()] for k in (a, b, c, d)],
                        brute_force=brute,
                        determinant_criterion=criterion,
                    ))
    return scanned, conjugate, mismatches


def lemma_agreement_scan(
    field: Field,
    n: int,
    forms: Sequence[BilinearForm],
    budget: int = DEFAULT_SCAN_BUDGET,
    workers: int = 1,
) -> ScanReport:
    """
    Compare the brute-force existential with <a,c><b,d> - <a,d><b,c> = 0 on every
    ordered 4-tuple of distinct points of P^n(GF(p)) and every form.
    """
    if not field.is_finite:
        raise UnsupportedFieldError("the lemma scan enumerates points and needs GF(p)")
    for form in forms:
        if form.dim != n or form.field != field:
            raise ShapeError(f"form on P^{form.dim} over {form.field} does not match P^{n} over {field}")
    requested = scan_size(field, n, len(forms))
    if requested > budget:
        raise ScanTooLargeError(
            f"scan of P^{n} over {field} with {len(forms)} form(s) needs {requested} checks, budget is {budget}",
            budget=budget,
            requested=requested,
        )

    started = time.perf_counter()
    count = point_count(field.order, n)
    logger.info(f"Scanning {requested} instances over {field} in P^{n} with {workers} worker(s)")

    partitions = [list(range(start, count, workers)) for start in range(workers)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(
                _scan_partition,
                itertools.repeat(field.spec),
                itertools.repeat(n),
                itertools.repeat(list(forms)),
                partitions,
            ))
    else:
        results = [_scan_partition(field.spec, n, forms, partitions[0])]

    scanned = sum(r[0] for r in results)
    conjugate = sum(r[1] for r in results)
    mismatches = sorted(
        (m for r in results for m in r[2]),
        key=lambda m: (m.form_index, m.points),
    )
    elapsed = time.perf_counter() - started
    logger.info(f"Scan finished: {scanned} instances, {len(mismatches)} mismatches in {elapsed:.2f}s")
    return ScanReport(
        field=str(field),
        dim=n,
        forms=len(forms),
        tuples_scanned=scanned,
        conjugate_instances=conjugate,
        mismatches=mismatches,
        wall_time_secs=elapsed,
    )

