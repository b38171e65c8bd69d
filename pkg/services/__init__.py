# services/__init__.py
from .fields import Field, Scalar
from .projective import ProjectiveLine, ProjectivePoint
from .quadrics import BilinearForm
from .hesse import QuadrangleConfig
from .verification import VerificationService
