# services/hesse.py
import itertools
import logging
import random
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from models.hesse import PAIRINGS, Verdict
from services.exceptions import (
    DegenerateCircleError,
    DegenerateSpanError,
    DegenerateTriangleError,
    DuplicatePointError,
    MismatchError,
    RetryBudgetExceeded,
    ShapeError,
)
from services.fields import DEFAULT_RATIONAL_BOUND, Field as GroundField, Scalar, Seed, as_rng, format_scalar
from services.linalg import kernel
from services.projective import (
    ProjectiveLine,
    ProjectivePoint,
    collinear,
    random_point,
    span_dimension,
)
from services.quadrics import BilinearForm, circle_form, random_form

logger = logging.getLogger(__name__)

LABELS = "abcd"
DEFAULT_RETRY_BUDGET = 1000


class QuadrangleConfig:
    """Four pairwise distinct points, in user order, and a symmetric bilinear form."""

    __slots__ = ("points", "form")

    def __init__(self, points: Sequence[ProjectivePoint], form: BilinearForm):
        points = tuple(points)
        if len(points) != 4:
            raise ShapeError(f"a quadrangle has exactly four points, got {len(points)}")
        _check_shapes(form, *points)
        for i, j in itertools.combinations(range(4), 2):
            if points[i] == points[j]:
                raise DuplicatePointError(f"points {LABELS[i]} and {LABELS[j]} are the same projective point")
        self.points: Tuple[ProjectivePoint, ...] = points
        self.form = form

    @property
    def field(self) -> GroundField:
        return self.form.field

    @property
    def dim(self) -> int:
        return self.form.dim

    def rescaled(self, factors: Sequence[Scalar]) -> "QuadrangleConfig":
        return QuadrangleConfig([p.scaled(x) for p, x in zip(self.points, factors)], self.form)

    def __repr__(self) -> str:
        return f"QuadrangleConfig({list(self.points)!r}, {self.form!r})"


class ConfigurationProfile(BaseModel):
    collinear_triples: int
    general_position: bool
    points_on_quadric: int
    span_dimension: int


class HesseReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    h_values: Tuple[Scalar, Scalar, Scalar] = Field(serialization_alias="h")
    conjugate_flags: Tuple[bool, bool, bool] = Field(serialization_alias="conjugate")
    verdict: Verdict
    radical_lines: List[str] = []
    profile: Optional[ConfigurationProfile] = None

    @field_serializer("h_values")
    def serialize_h_values(self, values):
        return [str(x) for x in values]


def _check_shapes(form: BilinearForm, *points: ProjectivePoint) -> None:
    for p in points:
        if p.dim != form.dim:
            raise ShapeError(f"point of P^{p.dim} used with a form on P^{form.dim}")
        if p.field != form.field:
            raise MismatchError(f"point over {p.field} used with a form over {form.field}")


def conjugacy_expression(
    form: BilinearForm, p: ProjectivePoint, q: ProjectivePoint, r: ProjectivePoint, s: ProjectivePoint
) -> Scalar:
    """
    <p,r><q,s> - <p,s><q,r> on the stored representatives.

    Rescaling any representative multiplies both terms by the same factor, so only
    the vanishing of the value is a property of the lines pq and rs.
    """
    _check_shapes(form, p, q, r, s)
    if p == q:
        raise DegenerateSpanError("the first line is spanned by a single point")
    if r == s:
        raise DegenerateSpanError("the second line is spanned by a single point")
    return form.pair(p, r) * form.pair(q, s) - form.pair(p, s) * form.pair(q, r)


def lines_conjugate(form: BilinearForm, l1: ProjectiveLine, l2: ProjectiveLine) -> bool:
    """Some point of l1 is orthogonal to every point of l2 (equivalently the other way round)."""
    return not conjugacy_expression(form, l1.p, l1.q, l2.p, l2.q)


def points_orthogonal(form: BilinearForm, p: ProjectivePoint, q: ProjectivePoint) -> bool:
    _check_shapes(form, p, q)
    return not form.pair(p, q)


def opposite_pairs(points: Sequence[ProjectivePoint]) -> List[Tuple[ProjectiveLine, ProjectiveLine]]:
    """The pairs (ab, cd), (ac, bd), (ad, bc). Lines within a pair may coincide."""
    if len(points) != 4:
        raise ShapeError(f"a quadrangle has exactly four points, got {len(points)}")
    for i, j in itertools.combinations(range(4), 2):
        if points[i] == points[j]:
            raise DuplicatePointError(f"points {LABELS[i]} and {LABELS[j]} are the same projective point")
    index = {label: p for label, p in zip(LABELS, points)}
    return [
        (ProjectiveLine(index[first[0]], index[first[1]]), ProjectiveLine(index[second[0]], index[second[1]]))
        for first, second in PAIRINGS
    ]


def profile_configuration(config: QuadrangleConfig) -> ConfigurationProfile:
    triples = sum(1 for p, q, r in itertools.combinations(config.points, 3) if collinear(p, q, r))
    on_quadric = sum(1 for p in config.points if not config.form.quadratic(p))
    return ConfigurationProfile(
        collinear_triples=triples,
        general_position=triples == 0,
        points_on_quadric=on_quadric,
        span_dimension=span_dimension(config.points),
    )


def hesse_verdict(config: QuadrangleConfig) -> HesseReport:
    f = config.form
    a, b, c, d = config.points
    h_values = (
        conjugacy_expression(f, a, b, c, d),
        conjugacy_expression(f, a, c, b, d),
        conjugacy_expression(f, a, d, b, c),
    )
    flags = tuple(not h for h in h_values)
    conjugate_count = sum(flags)
    if conjugate_count == 3:
        verdict = Verdict.HESSE_CONFIRMED
    elif conjugate_count == 2:
        verdict = Verdict.VIOLATION
        logger.error(f"Hesse tripwire fired: h = {[format_scalar(h, qualified=True) for h in h_values]} for {config!r}")
    else:
        verdict = Verdict.NOT_APPLICABLE

    in_radical = {label: f.contains_in_radical(p) for label, p in zip(LABELS, config.points)}
    radical_lines = [
        line for pairing in PAIRINGS for line in pairing if in_radical[line[0]] and in_radical[line[1]]
    ]

    return HesseReport(
        h_values=h_values,
        conjugate_flags=flags,
        verdict=verdict,
        radical_lines=radical_lines,
        profile=profile_configuration(config),
    )


def sample_hesse_config(
    field: GroundField,
    n: int,
    seed: Seed,
    form: Optional[BilinearForm] = None,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
    bound: int = DEFAULT_RATIONAL_BOUND,
) -> QuadrangleConfig:
    """
    Draw a form and points a, b, c, then solve for d so that ab|cd and ac|bd are conjugate.

    Both conditions are linear in d:
        h1 = <a,c> (Mb . d) - <b,c> (Ma . d)
        h2 = <a,b> (Mc . d) - <b,c> (Ma . d)
    so d is a random nonzero vector of the kernel of that 2 x (n+1) system.
    """
    if n < 2:
        raise ShapeError(f"the sampler needs dimension >= 2, got {n}")
    if form is not None and (form.dim != n or form.field != field):
        raise ShapeError(f"form on P^{form.dim} over {form.field} does not match P^{n} over {field}")
    rng = as_rng(seed)

    for attempt in range(retry_budget):
        f = form if form is not None else random_form(field, n, rng, bound)
        a, b, c = (random_point(field, n, rng, bound) for _ in range(3))
        if a == b or a == c or b == c:
            continue
        ma, mb, mc = f.apply(a), f.apply(b), f.apply(c)
        ab, ac, bc = f.pair(a, b), f.pair(a, c), f.pair(b, c)
        system = [
            [ac * y - bc * x for x, y in zip(ma, mb)],
            [ab * z - bc * x for x, z in zip(ma, mc)],
        ]
        basis = kernel(system, width=n + 1)
        if not basis:
            continue
        weights = [field.sample(rng, bound) for _ in basis]
        coords = [field.zero] * (n + 1)
        for w, v in zip(weights, basis):
            coords = [x + w * y for x, y in zip(coords, v)]
        if not any(coords):
            continue
        d = ProjectivePoint(coords)
        if d in (a, b, c):
            continue
        if attempt:
            logger.debug(f"Hesse config over {field} found after {attempt + 1} attempts")
        return QuadrangleConfig((a, b, c, d), f)

    raise RetryBudgetExceeded(
        f"no hypothesis-satisfying quadrangle over {field} in P^{n} after {retry_budget} attempts (seed {seed})",
        seed=seed if isinstance(seed, int) else None,
    )


def random_config(
    field: GroundField, n: int, seed: Seed, bound: int = DEFAULT_RATIONAL_BOUND
) -> QuadrangleConfig:
    """An unconstrained quadrangle with a random form."""
    rng = as_rng(seed)
    f = random_form(field, n, rng, bound)
    points: List[ProjectivePoint] = []
    while len(points) < 4:
        p = random_point(field, n, rng, bound)
        if p not in points:
            points.append(p)
    return QuadrangleConfig(points, f)


class IdentityChecks(BaseModel):
    three_term_identity: bool
    antisymmetry: bool
    pair_symmetry: bool
    rescaling_invariance: bool
    respanning_invariance: bool
    self_conjugacy_matches_restriction: bool

    @property
    def all_passed(self) -> bool:
        return all(self.model_dump().values())


def _respan(line: ProjectiveLine, rng: random.Random, bound: int) -> ProjectiveLine:
    # (p, alpha p + beta q) with beta != 0 spans the same line
    field = line.field
    return ProjectiveLine(line.p, line.point_at(field.sample(rng, bound), field.sample_nonzero(rng, bound)))


def identity_checks(config: QuadrangleConfig, seed: Seed, bound: int = DEFAULT_RATIONAL_BOUND) -> IdentityChecks:
    """Representation-level identities behind the theorem, evaluated on one configuration."""
    rng = as_rng(seed)
    f = config.form
    a, b, c, d = config.points
    report = hesse_verdict(config)
    h1, h2, h3 = report.h_values

    base = conjugacy_expression(f, a, b, c, d)
    antisymmetry = conjugacy_expression(f, b, a, c, d) == -base
    pair_symmetry = conjugacy_expression(f, c, d, a, b) == base

    factors = [config.field.sample_nonzero(rng, bound) for _ in range(4)]
    rescaled = hesse_verdict(config.rescaled(factors))
    rescaling = rescaled.conjugate_flags == report.conjugate_flags and rescaled.verdict == report.verdict

    pairs = opposite_pairs(config.points)
    respanning = all(
        lines_conjugate(f, l1, l2) == lines_conjugate(f, _respan(l1, rng, bound), _respan(l2, rng, bound))
        for l1, l2 in pairs
    )
    self_conjugacy = all(
        lines_conjugate(f, line, line) == f.restricted(line).is_degenerate()
        for pair_ in pairs
        for line in pair_
    )

    return IdentityChecks(
        three_term_identity=not (h1 - h2 + h3),
        antisymmetry=antisymmetry,
        pair_symmetry=pair_symmetry,
        rescaling_invariance=rescaling,
        respanning_invariance=respanning,
        self_conjugacy_matches_restriction=self_conjugacy,
    )


class AltitudeDemoReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    orthocenter: Tuple[Scalar, Scalar]
    radius_sq: Scalar
    altitudes_concurrent: bool
    ah_perpendicular_bc: bool
    third_pair_matches_perpendicularity: Optional[bool] = None
    verdict: Verdict
    reason: Optional[str] = None
    report: Optional[HesseReport] = None

    @field_serializer("orthocenter")
    def serialize_orthocenter(self, values):
        return [str(x) for x in values]

    @field_serializer("radius_sq")
    def serialize_radius_sq(self, value):
        return str(value)

    @property
    def confirmed(self) -> bool:
        if self.report is None:
            # H is a vertex: only the affine concurrency check applies
            return self.altitudes_concurrent and self.ah_perpendicular_bc
        return (
            self.report.verdict == Verdict.HESSE_CONFIRMED
            and self.altitudes_concurrent
            and bool(self.third_pair_matches_perpendicularity)
        )


def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def _dot2(u, v):
    return u[0] * v[0] + u[1] * v[1]


def orthocenter(triangle: Sequence[Sequence[Scalar]]) -> Tuple[Scalar, Scalar]:
    """Intersection of the altitude from B (perpendicular to AC) and from C (perpendicular to AB)."""
    A, B, C = (tuple(vertex) for vertex in triangle)
    u, w = _sub(C, A), _sub(B, A)
    det = u[0] * w[1] - u[1] * w[0]
    if not det:
        raise DegenerateTriangleError("the triangle's vertices are collinear")
    rhs_u, rhs_w = _dot2(u, B), _dot2(w, C)
    return ((rhs_u * w[1] - u[1] * rhs_w) / det, (u[0] * rhs_w - rhs_u * w[0]) / det)


def altitude_demo(
    triangle: Sequence[Sequence[Scalar]], radius_sq: Scalar, allow_degenerate: bool = False
) -> AltitudeDemoReport:
    """
    Orthocenter theorem as a case of Hesse's theorem: with Q a circle centred at H,
    BH is conjugate to AC and CH to AB, so AH must be conjugate to (perpendicular to) BC.

    A right triangle has H on the right-angle vertex, so there is no quadrangle; the
    result then carries only the affine check with a not-applicable verdict.
    """
    if not radius_sq and not allow_degenerate:
        raise DegenerateCircleError("radius^2 = 0 gives a point-circle; pass allow_degenerate to accept it")
    A, B, C = (tuple(vertex) for vertex in triangle)
    H = orthocenter((A, B, C))
    field = radius_sq.field
    logger.info(f"Orthocenter of {[[str(x) for x in v] for v in (A, B, C)]} is ({H[0]}, {H[1]})")

    concurrent = (
        not _dot2(_sub(H, A), _sub(C, B))
        and not _dot2(_sub(H, B), _sub(C, A))
        and not _dot2(_sub(H, C), _sub(B, A))
    )
    perpendicular = not _dot2(_sub(H, A), _sub(C, B))

    vertex = next((label for label, V in zip("ABC", (A, B, C)) if V == H), None)
    if vertex is not None:
        logger.info(f"Orthocenter coincides with vertex {vertex}; skipping the quadrangle check")
        return AltitudeDemoReport(
            orthocenter=H,
            radius_sq=radius_sq,
            altitudes_concurrent=concurrent,
            ah_perpendicular_bc=perpendicular,
            verdict=Verdict.NOT_APPLICABLE,
            reason=f"orthocenter coincides with vertex {vertex} (right angle), so A, B, C, H is not a quadrangle",
        )

    points = [ProjectivePoint((x, y, field.one)) for x, y in (A, B, C, H)]
    report = hesse_verdict(QuadrangleConfig(points, circle_form(H, radius_sq)))

    return AltitudeDemoReport(
        orthocenter=H,
        radius_sq=radius_sq,
        altitudes_concurrent=concurrent,
        ah_perpendicular_bc=perpendicular,
        third_pair_matches_perpendicularity=report.conjugate_flags[2] == perpendicular,
        verdict=report.verdict,
        report=report,
    )
