# dependencies/options.py
import time
from typing import List, Optional, Tuple

import click

from config.settings import HesseSettings, get_settings
from models.report import RunReport
from services.serialization import render
from services.verification import VerificationService
from services.fields import RATIONALS, Field, Scalar, parse_field


class FieldParamType(click.ParamType):
    """
    'rationals' or 'gf:p', resolved to a constructed Field.

    Syntax errors are usage errors; a well-formed modulus that is 2 or composite
    surfaces as the field's own HesseError.
    """

    name = "field"

    def convert(self, value, param, ctx) -> Field:
        if isinstance(value, Field):
            return value
        try:
            return parse_field(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


class RationalParamType(click.ParamType):
    """A rational scalar such as '1', '-2/3' or '0.25'."""

    name = "rational"

    def convert(self, value, param, ctx) -> Scalar:
        if isinstance(value, Scalar):
            return value
        try:
            return RATIONALS.parse(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


class TriangleParamType(click.ParamType):
    """Three affine points 'x1,y1;x2,y2;x3,y3' over the rationals."""

    name = "triangle"

    def convert(self, value, param, ctx) -> Tuple[Tuple[Scalar, Scalar], ...]:
        if isinstance(value, tuple):
            return value
        vertices = [part for part in value.split(";") if part.strip()]
        if len(vertices) != 3:
            self.fail(f"expected three vertices separated by ';', got {len(vertices)}", param, ctx)
        result = []
        for vertex in vertices:
            coords = vertex.split(",")
            if len(coords) != 2:
                self.fail(f"vertex '{vertex}' must have two coordinates", param, ctx)
            try:
                result.append(tuple(RATIONALS.parse(x) for x in coords))
            except ValueError as e:
                self.fail(str(e), param, ctx)
        return tuple(result)


class FormListParamType(click.ParamType):
    """Comma-separated form names: identity, zero, random:seed=S, degenerate:seed=S, nondegenerate:seed=S."""

    name = "forms"

    KINDS = ("identity", "zero", "random", "degenerate", "nondegenerate")

    def convert(self, value, param, ctx) -> List[str]:
        if isinstance(value, list):
            return value
        names = [name.strip() for name in value.split(",") if name.strip()]
        if not names:
            self.fail("at least one form is required", param, ctx)
        for name in names:
            if name.partition(":")[0] not in self.KINDS:
                self.fail(f"unknown form '{name}', expected one of {', '.join(self.KINDS)}", param, ctx)
        return names


FIELD = FieldParamType()
RATIONAL = RationalParamType()
TRIANGLE = TriangleParamType()
FORM_LIST = FormListParamType()


def output_options(command):
    """--format and --workers, shared by every command."""
    command = click.option(
        "--workers", type=click.IntRange(min=1), default=None,
        help="Worker processes for trial and scan partitions (default from HESSE_WORKERS).",
    )(command)
    command = click.option(
        "--format", "output_format", type=click.Choice(["human", "json"]), default=None,
        help="Report format (default from HESSE_OUTPUT_FORMAT).",
    )(command)
    return command


def resolve_settings(output_format: Optional[str] = None, workers: Optional[int] = None) -> HesseSettings:
    overrides = {}
    if output_format is not None:
        overrides["output_format"] = output_format
    if workers is not None:
        overrides["workers"] = workers
    settings = get_settings()
    return settings.model_copy(update=overrides) if overrides else settings


def get_service(settings: HesseSettings) -> VerificationService:
    return VerificationService(settings)


def emit(body: RunReport, started: float, settings: HesseSettings) -> None:
    """Print the report to stdout and leave with its exit code."""
    click.echo(render(VerificationService.envelope(body, started), settings.output_format))
    click.get_current_context().exit(body.exit_code)


def start_clock() -> float:
    return time.perf_counter()
