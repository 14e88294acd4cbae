"""Desk-scale workbench for reduction witnesses over Baire space."""

from .errors import (
    ArityCap,
    CapacityExceeded,
    FuelExhausted,
    InsufficientPrefix,
    InvariantViolation,
    MiddleMismatch,
    NonConvergent,
    NonRepresentable,
    NotACylinder,
    NotAName,
    OutOfDomain,
    ParseError,
    UnsupportedShape,
    WorkbenchError,
)
from .points import (
    EvPeriodic,
    Interleave,
    LawPoint,
    Point,
    RowTuple,
    all_zero_on_progression,
    exists_zero,
    min_zero,
    normalize,
    pair_decode,
    pair_encode,
    prefix,
    row,
    value_at,
)
from .machines import EvalOutcome, Machine, run_on_point
from .spaces import ClopenCompact, Dyadic, FinTree, TernaryValue, TreeChar
from .problems import Problem
from .witnesses import Report, Witness, check

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
