# services/projective.py
import itertools
import logging
import random
from typing import Iterator, List, Sequence, Tuple, Union

from services.exceptions import (
    DegenerateSpanError,
    DuplicatePointError,
    FieldMismatchError,
    MismatchError,
    NotCollinearError,
    ShapeError,
    UnsupportedFieldError,
    ZeroVectorError,
)
from services.fields import DEFAULT_RATIONAL_BOUND, Field, Scalar
from services.linalg import rank

logger = logging.getLogger(__name__)


class ProjectivePoint:
    """
    A point of P^n: a nonzero representative vector, kept verbatim.

    Equality is proportionality of representatives; the canonical representative
    (first nonzero coordinate scaled to 1) is only used for hashing and output.
    """

    __slots__ = ("coords", "field")

    def __init__(self, coords: Sequence[Scalar]):
        coords = tuple(coords)
        if len(coords) < 2:
            raise ShapeError(f"a projective point needs at least 2 coordinates, got {len(coords)}")
        field = coords[0].field
        for x in coords:
            if x.field is not field and x.field != field:
                raise FieldMismatchError("point coordinates come from different fields")
        if not any(coords):
            raise ZeroVectorError("the zero vector does not represent a projective point")
        self.coords: Tuple[Scalar, ...] = coords
        self.field: Field = field

    @classmethod
    def of(cls, field: Field, values) -> "ProjectivePoint":
        return cls(field.vector(values))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Scalar:
        return self.coords[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        if self.dim != other.dim or self.field != other.field:
            return False
        return _proportional(self.coords, other.coords)

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __repr__(self) -> str:
        return f"ProjectivePoint({', '.join(str(x) for x in self.coords)})"

    def canonical(self) -> Tuple[Scalar, ...]:
        lead = next(x for x in self.coords if x)
        return tuple(x / lead for x in self.coords)

    def scaled(self, factor: Scalar) -> "ProjectivePoint":
        if not factor:
            raise ZeroVectorError("cannot rescale a representative by zero")
        return ProjectivePoint(tuple(factor * x for x in self.coords))


def _proportional(u: Sequence[Scalar], v: Sequence[Scalar]) -> bool:
    # with u[k] != 0, u[k] v[j] = u[j] v[k] for all j makes every 2x2 minor vanish
    k = next(i for i, x in enumerate(u) if x)
    uk, vk = u[k], v[k]
    return all(uk * vj == uj * vk for uj, vj in zip(u, v))


def _check_compatible(*points: ProjectivePoint) -> None:
    first = points[0]
    for p in points[1:]:
        if p.field != first.field:
            raise MismatchError(f"points over {first.field} and {p.field}")
        if p.dim != first.dim:
            raise MismatchError(f"points of P^{first.dim} and P^{p.dim}")


def point_make(coords: Sequence[Scalar]) -> ProjectivePoint:
    return ProjectivePoint(coords)


def points_equal(p: ProjectivePoint, q: ProjectivePoint) -> bool:
    _check_compatible(p, q)
    return _proportional(p.coords, q.coords)


class ProjectiveLine:
    """The span of two distinct points. Predicates never depend on the spanning pair."""

    __slots__ = ("p", "q")

    __hash__ = None

    def __init__(self, p: ProjectivePoint, q: ProjectivePoint):
        if points_equal(p, q):
            raise DegenerateSpanError(f"{p!r} and {q!r} are the same projective point")
        self.p = p
        self.q = q

    @property
    def field(self) -> Field:
        return self.p.field

    @property
    def dim(self) -> int:
        return self.p.dim

    @property
    def span(self) -> Tuple[ProjectivePoint, ProjectivePoint]:
        return (self.p, self.q)

    def contains(self, x: ProjectivePoint) -> bool:
        _check_compatible(self.p, x)
        return rank([self.p.coords, self.q.coords, x.coords]) <= 2

    def coordinates(self, x: ProjectivePoint) -> Tuple[Scalar, Scalar]:
        """(alpha, beta) with x = alpha * p + beta * q exactly, for x on the line."""
        if not self.contains(x):
            raise NotCollinearError(f"{x!r} is not on the line {self!r}")
        p, q, v = self.p.coords, self.q.coords, x.coords
        for i, j in itertools.combinations(range(len(p)), 2):
            minor = p[i] * q[j] - p[j] * q[i]
            if minor:
                alpha = (v[i] * q[j] - v[j] * q[i]) / minor
                beta = (p[i] * v[j] - p[j] * v[i]) / minor
                return alpha, beta
        raise DegenerateSpanError("spanning points are proportional")

    def point_at(self, alpha: Scalar, beta: Scalar) -> ProjectivePoint:
        return ProjectivePoint(tuple(alpha * a + beta * b for a, b in zip(self.p.coords, self.q.coords)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectiveLine):
            return NotImplemented
        if other.dim != self.dim or other.field != self.field:
            return False
        return rank([self.p.coords, self.q.coords, other.p.coords, other.q.coords]) == 2

    def __repr__(self) -> str:
        return f"ProjectiveLine({self.p!r}, {self.q!r})"


def line_span(p: ProjectivePoint, q: ProjectivePoint) -> ProjectiveLine:
    return ProjectiveLine(p, q)


def collinear(p: ProjectivePoint, q: ProjectivePoint, r: ProjectivePoint) -> bool:
    _check_compatible(p, q, r)
    return rank([p.coords, q.coords, r.coords]) <= 2


def span_dimension(points: Sequence[ProjectivePoint]) -> int:
    """Projective dimension of the subspace the points span."""
    _check_compatible(*points)
    return rank([p.coords for p in points]) - 1


class _Infinity:
    __slots__ = ()

    def __repr__(self) -> str:
        return "Infinity"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_infinity, ())


def _infinity() -> "_Infinity":
    return INFINITY


INFINITY = _Infinity()

CrossRatio = Union[Scalar, _Infinity]


def cross_ratio(
    p1: ProjectivePoint, p2: ProjectivePoint, p3: ProjectivePoint, p4: ProjectivePoint
) -> CrossRatio:
    """
    Cross-ratio with p3 = a1 p1 + b1 p2 and p4 = a2 p1 + b2 p2: (b1 a2) / (a1 b2).

    With p1 = (1, 0), p2 = (0, 1) this is (x2 y1) / (x1 y2) for p3 = x, p4 = y.
    Other classical conventions differ from this one by a permutation of the points.
    """
    points = (p1, p2, p3, p4)
    _check_compatible(*points)
    for i, j in itertools.combinations(range(4), 2):
        if _proportional(points[i].coords, points[j].coords):
            raise DuplicatePointError(f"points {i + 1} and {j + 1} coincide")
    line = ProjectiveLine(p1, p2)
    for index, x in ((3, p3), (4, p4)):
        if not line.contains(x):
            raise NotCollinearError(f"point {index} is not on the line through points 1 and 2")
    a1, b1 = line.coordinates(p3)
    a2, b2 = line.coordinates(p4)
    denominator = a1 * b2
    if not denominator:
        return INFINITY
    return (b1 * a2) / denominator


def all_points(field: Field, n: int) -> List[ProjectivePoint]:
    """Every point of P^n over a finite field, as canonical representatives."""
    if not field.is_finite:
        raise UnsupportedFieldError("P^n over the rationals is infinite")
    elements = list(field.elements())
    points = []
    for lead in range(n + 1):
        prefix = (field.zero,) * lead + (field.one,)
        for tail in itertools.product(elements, repeat=n - lead):
            points.append(ProjectivePoint(prefix + tail))
    return points


def random_point(
    field: Field, n: int, rng: random.Random, bound: int = DEFAULT_RATIONAL_BOUND
) -> ProjectivePoint:
    while True:
        coords = tuple(field.sample(rng, bound) for _ in range(n + 1))
        if any(coords):
            return ProjectivePoint(coords)
