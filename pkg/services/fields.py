# services/fields.py
import logging
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Tuple, Union

from sympy import isprime

from models.field import ArithOp, FieldKind, FieldSpec
from services.exceptions import (
    CharacteristicTwoError,
    DivisionByZeroError,
    FieldMismatchError,
    NotPrimeError,
    UnsupportedFieldError,
)

logger = logging.getLogger(__name__)

Seed = Union[int, random.Random]
Number = Union[int, Fraction]

DEFAULT_RATIONAL_BOUND = 100


class Field:
    """
    An exact ground field: the rationals (Fraction) or GF(p) for an odd prime p.

    Build fields with `field_make`; instances are cached per spec so identity
    comparison is the common fast path.
    """

    __slots__ = ("spec", "modulus", "zero", "one")

    def __init__(self, spec: FieldSpec):
        if spec.kind == FieldKind.PRIME_FIELD:
            p = spec.modulus
            if p == 2:
                raise CharacteristicTwoError(
                    "GF(2) has characteristic 2; quadrics are only identified with "
                    "symmetric bilinear forms in characteristic != 2"
                )
            if not isprime(p):
                raise NotPrimeError(f"modulus {p} is not prime")
        self.spec = spec
        self.modulus: Optional[int] = spec.modulus
        self.zero = Scalar(self, self._normalize(0))
        self.one = Scalar(self, self._normalize(1))

    def __reduce__(self):
        return (field_make, (self.spec,))

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.modulus)

    def __repr__(self) -> str:
        return f"Field({self.spec})"

    def __str__(self) -> str:
        return str(self.spec)

    @property
    def is_finite(self) -> bool:
        return self.modulus is not None

    @property
    def characteristic(self) -> int:
        return self.modulus or 0

    @property
    def order(self) -> int:
        if self.modulus is None:
            raise UnsupportedFieldError("the rationals are infinite")
        return self.modulus

    def _normalize(self, raw: Number):
        if self.modulus is None:
            return Fraction(raw)
        if isinstance(raw, Fraction):
            if raw.denominator % self.modulus == 0:
                raise DivisionByZeroError(f"{raw} has no value in GF({self.modulus})")
            return raw.numerator * pow(raw.denominator, -1, self.modulus) % self.modulus
        return raw % self.modulus

    def element(self, value: Union["Scalar", Number, str]) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not self and value.field != self:
                raise FieldMismatchError(f"{value!r} is not an element of {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f"cannot read {value!r} as a field element")
        return Scalar(self, self._normalize(value))

    __call__ = element

    def vector(self, values: Iterable[Union["Scalar", Number, str]]) -> Tuple["Scalar", ...]:
        return tuple(self.element(v) for v in values)

    def parse(self, text: str) -> "Scalar":
        """Read 'n', 'n/d' or 'r mod p'. Over GF(p) a fraction n/d means n * d^-1."""
        body = text.strip()
        if " mod " in body:
            body, _, modulus = body.partition(" mod ")
            if self.modulus is None or int(modulus) != self.modulus:
                raise FieldMismatchError(f"'{text}' does not belong to {self}")
        try:
            value = Fraction(body.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"cannot parse scalar '{text}': {str(e)}")
        return Scalar(self, self._normalize(value))

    def elements(self) -> Iterator["Scalar"]:
        if self.modulus is None:
            raise UnsupportedFieldError("cannot enumerate the rationals")
        for r in range(self.modulus):
            yield Scalar(self, r)

    def sample(self, rng: random.Random, bound: int = DEFAULT_RATIONAL_BOUND) -> "Scalar":
        if self.modulus is not None:
            return Scalar(self, rng.randrange(self.modulus))
        numerator = rng.randint(-bound, bound)
        denominator = rng.randint(1, bound)
        return Scalar(self, Fraction(numerator, denominator))

    def sample_nonzero(self, rng: random.Random, bound: int = DEFAULT_RATIONAL_BOUND) -> "Scalar":
        while True:
            x = self.sample(rng, bound)
            if x:
                return x


class Scalar:
    """An immutable, always-canonical element of a Field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError(f"cannot combine elements of {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field._normalize(other)
        return NotImplemented

    def _wrap(self, raw) -> "Scalar":
        p = self.field.modulus
        return Scalar(self.field, raw if p is None else raw % p)

    def _divide(self, a, b) -> "Scalar":
        p = self.field.modulus
        if b == 0:
            raise DivisionByZeroError(f"division by zero in {self.field}")
        if p is None:
            return Scalar(self.field, a / b)
        return Scalar(self.field, a * pow(b, -1, p) % p)

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.value - v)

    def __rsub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else self._wrap(v - self.value)

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else self._wrap(self.value * v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else self._divide(self.value, v)

    def __rtruediv__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else self._divide(v, self.value)

    def __neg__(self) -> "Scalar":
        return self._wrap(-self.value)

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return (self.field.one / self) ** -exponent
        p = self.field.modulus
        return Scalar(self.field, self.value ** exponent if p is None else pow(self.value, exponent, p))

    def inverse(self) -> "Scalar":
        return self._divide(self.field.one.value, self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.value == other.value and (other.field is self.field or other.field == self.field)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.value == self.field._normalize(other)
            except DivisionByZeroError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.modulus, self.value))

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        if self.field.modulus is None:
            return f"Scalar({self.value})"
        return f"Scalar({self.value} mod {self.field.modulus})"

    @property
    def numerator(self) -> int:
        return self.value.numerator if self.field.modulus is None else self.value

    @property
    def denominator(self) -> int:
        return self.value.denominator if self.field.modulus is None else 1


@lru_cache(maxsize=None)
def field_make(spec: FieldSpec) -> Field:
    field = Field(spec)
    logger.debug(f"Constructed field {field}")
    return field


def parse_field(text: str) -> Field:
    return field_make(FieldSpec.parse(text))


RATIONALS = field_make(FieldSpec.rationals())


def scalar_arith(x: Scalar, y: Optional[Scalar], op: ArithOp) -> Scalar:
    if op == ArithOp.NEG:
        return -x
    if op == ArithOp.INV:
        return x.inverse()
    if y is None:
        raise ValueError(f"operation {op.value} needs two operands")
    if op == ArithOp.ADD:
        return x + y
    if op == ArithOp.SUB:
        return x - y
    if op == ArithOp.MUL:
        return x * y
    return x / y


def canonicalize(x: Scalar) -> Scalar:
    """Re-derive the canonical representation (lowest terms / reduced residue)."""
    if x.field.modulus is None:
        return Scalar(x.field, Fraction(x.value.numerator, x.value.denominator))
    return Scalar(x.field, x.value % x.field.modulus)


def as_rng(seed: Seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def sample_scalar(field: Field, seed: Seed, bound: int = DEFAULT_RATIONAL_BOUND) -> Scalar:
    """Deterministic draw: uniform over GF(p); bounded numerator/denominator over the rationals."""
    return field.sample(as_rng(seed), bound)


def format_scalar(x: Scalar, qualified: bool = False) -> str:
    if qualified and x.field.modulus is not None:
        return f"{x.value} mod {x.field.modulus}"
    return str(x)
