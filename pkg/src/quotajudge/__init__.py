"""Premise-based judgment aggregation under uniform quota rules.

Compute collective outcomes, decide manipulation and bribery questions with
the right polynomial algorithm where one exists, and generate the hardness
gadgets that show where none does.
"""

from .model import (
    Agenda,
    BudgetExceeded,
    Clause,
    DataError,
    DesiredSet,
    JudgmentSet,
    Literal,
    Outcome,
    ParsedInstance,
    Profile,
    ThresholdPair,
    UsageError,
    clause,
    decision_variables,
    format_instance,
    neg,
    normalize_desired,
    outcome,
    outcome_with_replacement,
    parse_instance,
    pos,
    thresholds,
    unmet_goals,
)

__version__ = "0.1.0"

__all__ = [
    "Agenda",
    "BudgetExceeded",
    "Clause",
    "DataError",
    "DesiredSet",
    "JudgmentSet",
    "Literal",
    "Outcome",
    "ParsedInstance",
    "Profile",
    "ThresholdPair",
    "UsageError",
    "clause",
    "decision_variables",
    "format_instance",
    "neg",
    "normalize_desired",
    "outcome",
    "outcome_with_replacement",
    "parse_instance",
    "pos",
    "thresholds",
    "unmet_goals",
    "__version__",
]
