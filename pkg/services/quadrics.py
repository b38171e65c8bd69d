# services/quadrics.py
import itertools
import logging
import random
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from models.hesse import DegeneracyMode
from services.exceptions import (
    FieldMismatchError,
    NotSymmetricError,
    RetryBudgetExceeded,
    ShapeError,
    UnsupportedModeError,
)
from services.fields import DEFAULT_RATIONAL_BOUND, Field, Scalar, Seed, as_rng
from services.linalg import Vector, determinant, kernel, mat_vec, rank
from services.projective import ProjectiveLine, ProjectivePoint, all_points

logger = logging.getLogger(__name__)

VectorLike = Union[ProjectivePoint, Sequence[Scalar]]

DEFAULT_SAMPLED_QUADRUPLES = 1000


def _coords(x: VectorLike) -> Tuple[Scalar, ...]:
    return x.coords if isinstance(x, ProjectivePoint) else tuple(x)


class BilinearForm:
    """
    A symmetric bilinear form <u, v> = u^T M v on K^(n+1).

    The quadric it defines is {x : <x, x> = 0}. The zero matrix is a legal form
    whose quadric is all of P^n.
    """

    __slots__ = ("matrix", "field")

    __hash__ = None

    def __init__(self, matrix: Sequence[Sequence[Scalar]]):
        rows = tuple(tuple(row) for row in matrix)
        size = len(rows)
        if size == 0 or any(len(row) != size for row in rows):
            raise ShapeError(f"a bilinear form needs a square matrix, got row widths {[len(r) for r in rows]}")
        field = rows[0][0].field
        for row in rows:
            for entry in row:
                if entry.field is not field and entry.field != field:
                    raise FieldMismatchError("form entries come from different fields")
        for i in range(size):
            for j in range(i + 1, size):
                if rows[i][j] != rows[j][i]:
                    raise NotSymmetricError(f"entry ({i},{j}) = {rows[i][j]} but ({j},{i}) = {rows[j][i]}")
        self.matrix: Tuple[Tuple[Scalar, ...], ...] = rows
        self.field: Field = field

    @classmethod
    def of(cls, field: Field, values) -> "BilinearForm":
        return cls([field.vector(row) for row in values])

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def dim(self) -> int:
        """Projective dimension of the space the form lives on."""
        return len(self.matrix) - 1

    def _check(self, x: Tuple[Scalar, ...]) -> None:
        if len(x) != self.size:
            raise ShapeError(f"vector of length {len(x)} paired with a {self.size}x{self.size} form")

    def apply(self, v: VectorLike) -> Vector:
        """M v, the covector u -> <u, v>."""
        v = _coords(v)
        self._check(v)
        return mat_vec(self.matrix, v)

    def pair(self, u: VectorLike, v: VectorLike) -> Scalar:
        u = _coords(u)
        self._check(u)
        total = self.field.zero
        for a, mv in zip(u, self.apply(v)):
            if a:
                total = total + a * mv
        return total

    def quadratic(self, x: VectorLike) -> Scalar:
        return self.pair(x, x)

    def determinant(self) -> Scalar:
        return determinant(self.matrix)

    def rank(self) -> int:
        return rank(self.matrix)

    def is_degenerate(self) -> bool:
        return not self.determinant()

    def radical(self) -> List[Vector]:
        return kernel(self.matrix)

    def restricted(self, line: ProjectiveLine) -> "BilinearForm":
        a, b = line.p, line.q
        ab = self.pair(a, b)
        return BilinearForm([[self.pair(a, a), ab], [ab, self.pair(b, b)]])

    def contains_in_radical(self, x: VectorLike) -> bool:
        return not any(self.apply(x))

    def gram(self, points: Sequence[VectorLike]) -> List[List[Scalar]]:
        covectors = [self.apply(p) for p in points]
        rows = []
        for p in points:
            u = _coords(p)
            rows.append([_dot(u, c) for c in covectors])
        return rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.field == other.field and self.matrix == other.matrix

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(str(x) for x in row) for row in self.matrix)
        return f"BilinearForm([{rows}] over {self.field})"


def _dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    total = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        total = total + a * b
    return total


def form_make(matrix: Sequence[Sequence[Scalar]]) -> BilinearForm:
    return BilinearForm(matrix)


def pair(f: BilinearForm, u: VectorLike, v: VectorLike) -> Scalar:
    return f.pair(u, v)


def on_quadric(f: BilinearForm, p: ProjectivePoint) -> bool:
    return not f.quadratic(p)


def is_degenerate(f: BilinearForm) -> bool:
    return f.is_degenerate()


def radical(f: BilinearForm) -> List[Vector]:
    return f.radical()


def restricted_form(f: BilinearForm, line: ProjectiveLine) -> BilinearForm:
    """Gram matrix of the line's spanning pair: [[<a,a>, <a,b>], [<a,b>, <b,b>]]."""
    return f.restricted(line)


def standard_form(field: Field, n: int) -> BilinearForm:
    """The standard product S(x, y) = sum x_i y_i on K^(n+1)."""
    return BilinearForm(
        [[field.one if i == j else field.zero for j in range(n + 1)] for i in range(n + 1)]
    )


def zero_form(field: Field, n: int) -> BilinearForm:
    return BilinearForm([[field.zero] * (n + 1) for _ in range(n + 1)])


def circle_form(center: Sequence[Scalar], radius_sq: Scalar) -> BilinearForm:
    """(x - h1 z)^2 + (y - h2 z)^2 - r^2 z^2 in homogeneous coordinates (x, y, z)."""
    h1, h2 = center
    zero, one = radius_sq.field.zero, radius_sq.field.one
    return BilinearForm([
        [one, zero, -h1],
        [zero, one, -h2],
        [-h1, -h2, h1 * h1 + h2 * h2 - radius_sq],
    ])


def random_form(field: Field, n: int, seed: Seed, bound: int = DEFAULT_RATIONAL_BOUND) -> BilinearForm:
    rng = as_rng(seed)
    size = n + 1
    rows = [[field.zero] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            rows[i][j] = rows[j][i] = field.sample(rng, bound)
    return BilinearForm(rows)


def random_degenerate_form(
    field: Field, n: int, seed: Seed, bound: int = DEFAULT_RATIONAL_BOUND
) -> BilinearForm:
    """Sum of n rank-one terms lambda v v^T on K^(n+1), so the rank is at most n."""
    rng = as_rng(seed)
    size = n + 1
    rows = [[field.zero] * size for _ in range(size)]
    for _ in range(n):
        weight = field.sample(rng, bound)
        v = [field.sample(rng, bound) for _ in range(size)]
        for i in range(size):
            for j in range(size):
                rows[i][j] = rows[i][j] + weight * v[i] * v[j]
    return BilinearForm(rows)


def random_nondegenerate_form(
    field: Field, n: int, seed: Seed, bound: int = DEFAULT_RATIONAL_BOUND, attempts: int = 1000
) -> BilinearForm:
    rng = as_rng(seed)
    for _ in range(attempts):
        f = random_form(field, n, rng, bound)
        if not f.is_degenerate():
            return f
    raise RetryBudgetExceeded(f"no nondegenerate form over {field} after {attempts} attempts")


def all_symmetric_forms(field: Field, size: int) -> Iterator[BilinearForm]:
    """Every symmetric size x size matrix over a finite field, p^(size(size+1)/2) of them."""
    positions = [(i, j) for i in range(size) for j in range(i, size)]
    elements = list(field.elements())
    for values in itertools.product(elements, repeat=len(positions)):
        rows = [[field.zero] * size for _ in range(size)]
        for (i, j), x in zip(positions, values):
            rows[i][j] = rows[j][i] = x
        yield BilinearForm(rows)


Quadruple = Tuple[Vector, Vector, Vector, Vector]


def find_degeneracy_counterexample(
    f: BilinearForm,
    mode: DegeneracyMode = DegeneracyMode.EXHAUSTIVE,
    samples: int = DEFAULT_SAMPLED_QUADRUPLES,
    seed: Seed = 0,
    bound: int = DEFAULT_RATIONAL_BOUND,
) -> Optional[Quadruple]:
    """
    Search for pairwise non-proportional a, b, c, d in K^2 with
    Q(a, c) Q(b, d) != Q(a, d) Q(b, c). Any such quadruple proves Q nondegenerate.
    """
    if f.size != 2:
        raise ShapeError(f"the dimension-one criterion needs a 2x2 form, got {f.size}x{f.size}")
    field = f.field

    if mode == DegeneracyMode.EXHAUSTIVE:
        if not field.is_finite:
            raise UnsupportedModeError("exhaustive mode needs a finite field; use sampled mode over the rationals")
        points = all_points(field, 1)
        g = f.gram(points)
        for a, b, c, d in itertools.permutations(range(len(points)), 4):
            if g[a][c] * g[b][d] != g[a][d] * g[b][c]:
                return (points[a].coords, points[b].coords, points[c].coords, points[d].coords)
        return None

    rng = as_rng(seed)
    for _ in range(samples):
        quadruple = _distinct_vectors(field, rng, bound)
        a, b, c, d = quadruple
        if f.pair(a, c) * f.pair(b, d) != f.pair(a, d) * f.pair(b, c):
            return quadruple
    return None


def _distinct_vectors(field: Field, rng: random.Random, bound: int) -> Quadruple:
    chosen: List[ProjectivePoint] = []
    while len(chosen) < 4:
        x = (field.sample(rng, bound), field.sample(rng, bound))
        if not any(x):
            continue
        point = ProjectivePoint(x)
        if all(point != other for other in chosen):
            chosen.append(point)
    return tuple(p.coords for p in chosen)


def dim2_hesse_degeneracy_test(
    f: BilinearForm,
    mode: DegeneracyMode = DegeneracyMode.EXHAUSTIVE,
    samples: int = DEFAULT_SAMPLED_QUADRUPLES,
    seed: Seed = 0,
    bound: int = DEFAULT_RATIONAL_BOUND,
) -> bool:
    """
    True when Q(a,c)Q(b,d) = Q(a,d)Q(b,c) holds on every quadruple examined, i.e. Q is degenerate.

    Exhaustive mode decides the question over GF(p). Sampled mode is one-sided: a False answer
    is a proof of nondegeneracy, a True answer only means no counterexample was drawn.
    """
    witness = find_degeneracy_counterexample(f, mode, samples, seed, bound)
    if witness is not None:
        logger.debug(f"Nondegeneracy witness for {f!r}: {[[str(x) for x in v] for v in witness]}")
    return witness is None
