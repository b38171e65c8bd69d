# models/files.py
from typing import Annotated, List

from pydantic import BaseModel, BeforeValidator, Field, field_validator, model_validator

from models.field import FieldSpec


def _scalar_text(value):
    # JSON numbers are accepted and read as their decimal text
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return value


ScalarText = Annotated[str, BeforeValidator(_scalar_text)]
Coordinates = List[ScalarText]
Matrix = List[List[ScalarText]]


def _check_field(value: str) -> str:
    FieldSpec.parse(value)
    return value


def _check_square(matrix: Matrix, size: int) -> None:
    if len(matrix) != size or any(len(row) != size for row in matrix):
        raise ValueError(f"form must be a {size}x{size} matrix")


class QuadrangleFile(BaseModel):
    """The quadrangle config consumed by `check`."""

    field: str
    dim: int = Field(ge=1)
    points: List[Coordinates] = Field(min_length=4, max_length=4)
    form: Matrix

    @field_validator("field")
    @classmethod
    def field_syntax(cls, value: str) -> str:
        return _check_field(value)

    @model_validator(mode="after")
    def shapes_match_dim(self):
        size = self.dim + 1
        for index, coords in enumerate(self.points):
            if len(coords) != size:
                raise ValueError(f"point {index} has {len(coords)} coordinates, expected {size}")
        _check_square(self.form, size)
        return self


class FormFile(BaseModel):
    """A single bilinear form, as consumed by `degeneracy --form-file`."""

    field: str
    form: Matrix

    @field_validator("field")
    @classmethod
    def field_syntax(cls, value: str) -> str:
        return _check_field(value)

    @model_validator(mode="after")
    def form_is_square(self):
        _check_square(self.form, len(self.form))
        return self


class PointsFile(BaseModel):
    """Four points of a projective line, as consumed by `cross-ratio --points`."""

    field: str
    points: List[Coordinates] = Field(min_length=4, max_length=4)

    @field_validator("field")
    @classmethod
    def field_syntax(cls, value: str) -> str:
        return _check_field(value)
