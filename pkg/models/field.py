# models/field.py
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator


class FieldKind(str, Enum):
    RATIONALS = "rationals"
    PRIME_FIELD = "prime-field"


class ArithOp(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"
    NEG = "neg"
    INV = "inv"


class FieldSpec(BaseModel):
    """Names a ground field: the rationals or GF(p). Primality is checked when the field is built."""

    model_config = ConfigDict(frozen=True)

    kind: FieldKind
    modulus: Optional[int] = None

    @model_validator(mode="after")
    def modulus_matches_kind(self):
        if self.kind == FieldKind.RATIONALS and self.modulus is not None:
            raise ValueError("the rationals take no modulus")
        if self.kind == FieldKind.PRIME_FIELD and (self.modulus is None or self.modulus < 1):
            raise ValueError("a prime field needs a positive modulus")
        return self

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(kind=FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(kind=FieldKind.PRIME_FIELD, modulus=p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse the command-line syntax: 'rationals' or 'gf:p'."""
        value = text.strip().lower()
        if value in ("rationals", "q"):
            return cls.rationals()
        if value.startswith("gf:"):
            try:
                return cls.prime(int(value[3:]))
            except ValueError:
                raise ValueError(f"invalid modulus in field '{text}'")
        raise ValueError(f"unknown field '{text}', expected 'rationals' or 'gf:p'")

    @property
    def is_finite(self) -> bool:
        return self.kind == FieldKind.PRIME_FIELD

    def __str__(self) -> str:
        if self.kind == FieldKind.RATIONALS:
            return "rationals"
        return f"gf:{self.modulus}"
