# services/exceptions.py
from typing import Optional


class HesseError(Exception):
    """Base error. `exit_code` plays the role an HTTP status plays for an API."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class CharacteristicTwoError(HesseError):
    pass


class NotPrimeError(HesseError):
    pass


class DivisionByZeroError(HesseError, ZeroDivisionError):
    pass


class FieldMismatchError(HesseError):
    pass


class ZeroVectorError(HesseError):
    pass


class MismatchError(HesseError):
    pass


class ShapeError(HesseError):
    pass


class DegenerateSpanError(HesseError):
    pass


class NotCollinearError(HesseError):
    pass


class DuplicatePointError(HesseError):
    pass


class NotSymmetricError(HesseError):
    pass


class UnsupportedModeError(HesseError):
    pass


class UnsupportedFieldError(HesseError):
    pass


class ScanTooLargeError(HesseError):
    def __init__(self, detail: str, budget: int, requested: int):
        super().__init__(detail)
        self.budget = budget
        self.requested = requested


class RetryBudgetExceeded(HesseError):
    def __init__(self, detail: str, seed: Optional[int] = None):
        super().__init__(detail)
        self.seed = seed


class DegenerateTriangleError(HesseError):
    pass


class DegenerateCircleError(HesseError):
    pass


class ConfigFileError(HesseError):
    def __init__(self, detail: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(detail)
        self.line = line
        self.column = column
