# services/serialization.py
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, List, Sequence, Type, TypeVar

from pydantic import BaseModel, ValidationError

from models.field import FieldSpec
from models.files import FormFile, PointsFile, QuadrangleFile
from models.report import ReportEnvelope
from services.exceptions import ConfigFileError, HesseError
from services.fields import Field, Scalar, field_make, format_scalar
from services.hesse import QuadrangleConfig
from services.projective import ProjectivePoint
from services.quadrics import BilinearForm

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


def _location(loc: Sequence[Any]) -> str:
    path = ""
    for part in loc:
        path += f"[{part}]" if isinstance(part, int) else (f".{part}" if path else str(part))
    return path or "<root>"


def load_model(path: Path, model: Type[ModelT]) -> ModelT:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigFileError(f"cannot read {path}: {e.strerror}")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigFileError(f"{path}:{e.lineno}:{e.colno}: {e.msg}", line=e.lineno, column=e.colno)
    try:
        return model.model_validate(raw)
    except ValidationError as e:
        problems = "; ".join(f"{_location(err['loc'])}: {err['msg']}" for err in e.errors())
        raise ConfigFileError(f"{path}: {problems}")


def _field(text: str) -> Field:
    return field_make(FieldSpec.parse(text))


def _scalars(field: Field, values: Sequence[str], where: str) -> List[Scalar]:
    result = []
    for index, text in enumerate(values):
        try:
            result.append(field.parse(text))
        except ValueError as e:
            raise ConfigFileError(f"{where}[{index}]: {str(e)}")
        except HesseError as e:
            raise ConfigFileError(f"{where}[{index}]: {e.detail}")
    return result


def _points(field: Field, rows: Sequence[Sequence[str]]) -> List[ProjectivePoint]:
    return [ProjectivePoint(_scalars(field, row, f"points[{i}]")) for i, row in enumerate(rows)]


def _form(field: Field, rows: Sequence[Sequence[str]]) -> BilinearForm:
    return BilinearForm([_scalars(field, row, f"form[{i}]") for i, row in enumerate(rows)])


def quadrangle_from_file(data: QuadrangleFile) -> QuadrangleConfig:
    field = _field(data.field)
    return QuadrangleConfig(_points(field, data.points), _form(field, data.form))


def load_quadrangle(path: Path) -> QuadrangleConfig:
    config = quadrangle_from_file(load_model(path, QuadrangleFile))
    logger.info(f"Loaded quadrangle in P^{config.dim} over {config.field} from {path}")
    return config


def load_form(path: Path) -> BilinearForm:
    data = load_model(path, FormFile)
    return _form(_field(data.field), data.form)


def load_points(path: Path) -> List[ProjectivePoint]:
    data = load_model(path, PointsFile)
    return _points(_field(data.field), data.points)


def point_to_strings(point: ProjectivePoint, canonical: bool = True) -> List[str]:
    """Report output uses the canonical representative; config files keep the stored one."""
    coords = point.canonical() if canonical else point.coords
    return [format_scalar(x) for x in coords]


def form_to_strings(form: BilinearForm) -> List[List[str]]:
    return [[format_scalar(x) for x in row] for row in form.matrix]


def quadrangle_to_file(config: QuadrangleConfig) -> QuadrangleFile:
    return QuadrangleFile(
        field=str(config.field),
        dim=config.dim,
        points=[point_to_strings(p, canonical=False) for p in config.points],
        form=form_to_strings(config.form),
    )


def input_digest(payload: Any) -> str:
    """sha256 of the canonical JSON text of a command's inputs."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def render_json(envelope: ReportEnvelope) -> str:
    return json.dumps(envelope.model_dump(mode="json"), indent=2, sort_keys=True)


def render_human(envelope: ReportEnvelope) -> str:
    body = envelope.body
    mark = "✅ PASS" if body.exit_code == 0 else "❌ FAIL"
    lines = [f"# {body.command}", f"{mark}: {body.outcome}"]
    if body.seed is not None:
        lines.append(f"Seed: {body.seed}")
    for key, value in sorted(body.summary.items()):
        lines.append(f"{key}: {_human_value(value)}")
    for key, value in sorted(body.counts.items()):
        lines.append(f"{key}: {value}")
    for detail in body.details:
        lines.append("- " + ", ".join(f"{k}={_human_value(v)}" for k, v in sorted(detail.items())))
    lines.append(f"Input digest: {body.input_digest}")
    lines.append(f"Wall time: {envelope.header.wall_time_secs:.3f}s")
    return "\n".join(lines)


def _human_value(value: Any) -> str:
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def render(envelope: ReportEnvelope, output_format: str) -> str:
    return render_json(envelope) if output_format == "json" else render_human(envelope)
