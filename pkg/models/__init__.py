# models/__init__.py
from .field import ArithOp, FieldKind, FieldSpec
from .files import FormFile, PointsFile, QuadrangleFile
from .hesse import PAIRINGS, DegeneracyMode, Verdict
from .report import ReportEnvelope, ReportHeader, RunReport
