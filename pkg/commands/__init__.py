# commands/__init__.py
from .check import check
from .cross_ratio import cross_ratio
from .degeneracy import degeneracy
from .demo import demo
from .fuzz import fuzz
from .identities import identities
from .scan import scan

commands = [check, fuzz, scan, degeneracy, cross_ratio, demo, identities]
