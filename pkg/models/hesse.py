# models/hesse.py
from enum import Enum


class Verdict(str, Enum):
    HESSE_CONFIRMED = "hesse-confirmed"
    NOT_APPLICABLE = "not-applicable"
    VIOLATION = "VIOLATION"


# Opposite-side pairings of a quadrangle (a, b, c, d), in the fixed order used for h1, h2, h3.
PAIRINGS = (("ab", "cd"), ("ac", "bd"), ("ad", "bc"))


class DegeneracyMode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"
