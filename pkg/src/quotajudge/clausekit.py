"""Clause shapes, syntactic clause families, and the tractability dichotomy.

A clause's *shape* is the pair (length, number of negated literals); a set of
shapes describes a clause family closed under renaming variables.  The
dichotomy classifies such a family's satisfiability problem as polynomial or
NP-hard from the shapes alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .model import Agenda, Clause, DataError


class ClauseShape(NamedTuple):
    length: int
    negated: int


def classify_clause(cl: Clause) -> ClauseShape:
    """The shape of one clause: its length and its count of negated literals."""
    return ClauseShape(len(cl), sum(lit.negated for lit in cl))


# short form used heavily inside this package
shape_of = classify_clause


def mirror_shape(s: ClauseShape) -> ClauseShape:
    """Shape of a clause after flipping every literal's polarity."""
    return ClauseShape(s.length, s.length - s.negated)


def all_positive(length: int) -> ClauseShape:
    return ClauseShape(length, 0)


def all_negative(length: int) -> ClauseShape:
    return ClauseShape(length, length)


def preset_shapes(name: str, max_length: int) -> frozenset[ClauseShape]:
    """Shape set of a named clause family up to ``max_length``."""
    if max_length < 1:
        raise DataError("max_length must be at least 1")
    sizes = range(1, max_length + 1)
    if name == "positive-monotone":
        return frozenset(ClauseShape(i, 0) for i in sizes)
    if name == "monotone":
        return frozenset(ClauseShape(i, j) for i in sizes for j in {0, i})
    if name == "horn":
        return frozenset(
            ClauseShape(i, j) for i in sizes for j in (i - 1, i) if j >= 0
        )
    if name == "any":
        return frozenset(ClauseShape(i, j) for i in sizes for j in range(i + 1))
    raise DataError(f"unknown preset {name!r}")


@dataclass(frozen=True)
class FamilyReport:
    """Which syntactic families an agenda's conclusions fall into."""

    shapes: frozenset[ClauseShape]
    max_length: int
    positive_monotone: bool
    monotone: bool
    horn: bool


def family_membership(agenda: Agenda) -> FamilyReport:
    shapes = frozenset(shape_of(cl) for _, cl in agenda.conclusions)
    max_length = max((s.length for s in shapes), default=0)
    return FamilyReport(
        shapes=shapes,
        max_length=max_length,
        positive_monotone=all(s.negated == 0 for s in shapes),
        monotone=all(s.negated in (0, s.length) for s in shapes),
        horn=all(s.negated >= s.length - 1 for s in shapes),
    )


@dataclass(frozen=True)
class DichotomyVerdict:
    hard: bool
    condition: int | None  # 1 or 2 when hard
    witness: tuple[ClauseShape, ...]

    @property
    def label(self) -> str:
        if not self.hard:
            return "polynomial"
        shapes = ", ".join(f"({s.length},{s.negated})" for s in self.witness)
        return f"np-hard (condition {self.condition} via {shapes})"


def dichotomy(shapes: Iterable[ClauseShape]) -> DichotomyVerdict:
    """Classify the satisfiability of clause sets drawn from ``shapes``.

    Hard exactly when the family contains the two binary monotone shapes
    together with a longer mixed shape, or an all-positive and an
    all-negative shape that are jointly long enough; polynomial otherwise.
    """
    ss = set()
    for s in shapes:
        s = ClauseShape(*s)
        if not 0 <= s.negated <= s.length or s.length < 1:
            raise DataError(f"impossible shape {s}")
        ss.add(s)
    mixed = sorted(s for s in ss if s.length >= 3 and 0 < s.negated < s.length)
    if ClauseShape(2, 0) in ss and ClauseShape(2, 2) in ss and mixed:
        return DichotomyVerdict(True, 1, (ClauseShape(2, 0), ClauseShape(2, 2), mixed[0]))
    positives = sorted(s.length for s in ss if s.negated == 0 and s.length >= 2)
    negatives = sorted(s.length for s in ss if s.negated == s.length and s.length >= 2)
    for k1 in positives:
        for k2 in negatives:
            if max(k1, k2) >= 3:
                return DichotomyVerdict(
                    True, 2, (ClauseShape(k1, 0), ClauseShape(k2, k2))
                )
    return DichotomyVerdict(False, None, ())
