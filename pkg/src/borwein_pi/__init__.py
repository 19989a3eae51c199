"""Borwein-type quadratic and quartic iterations for pi, with series checks."""

from .constants import InitialValueSet, consistency_check, identity_set
from .errors import (
    BorweinPiError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    PrecisionNotReached,
)
from .iterations import RunResult, Scheme, run
from .machin import machin_pi
from .numeric import PrecisionContext, root4, sqrt, with_precision

__version__ = "0.1.0"
