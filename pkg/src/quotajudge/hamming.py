"""Distance manipulation: can a judge cut the number of unmet goals?

On a normalized instance (goals speak only about conclusions) over positive
clauses, everything a manipulator can do boils down to flipping a set of
*useful* premises up to 1, each flip winning the unmet clauses it touches
and losing the met-by-rejection ones.  For clauses of length at most two
that trade-off is a gain-subgraph problem and polynomial; longer clauses get
an exhaustive search over the useful premises, and non-positive clause
families fall back to searching all decision-variable reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .clausekit import family_membership
from .graphopt import GainGraph, max_gain_subgraph
from .manip import ManipInstance
from .model import (
    BudgetExceeded,
    DataError,
    DesiredSet,
    Outcome,
    UsageError,
    outcome_with_replacement,
    unmet_goals,
)

DEFAULT_SUBSET_BUDGET = 1 << 20

# Premise classes are keyed by (collective value, manipulator's own value):
# class "P10" holds the premises the rule accepts but the manipulator rejects.
CLASS_NAMES = ("P00", "P01", "P10", "P11")


def hd(desired: DesiredSet, out: Outcome) -> int:
    """Hamming distance between the desired set and an outcome: unmet goals."""
    return unmet_goals(desired, out)


def _require_normalized(inst: ManipInstance) -> None:
    if inst.desired.premise_goals:
        raise UsageError("instance is not normalized: desired set names premises")
    if len(inst.desired.conclusion_goals) != len(inst.profile.agenda.conclusions):
        raise UsageError("instance is not normalized: some conclusions carry no goal")


@dataclass(frozen=True)
class HdAnalysis:
    """Premise classes and the clause bookkeeping behind the distance search."""

    instance: ManipInstance
    classes: tuple[str, ...]  # per premise
    useful: tuple[int, ...]  # decided, rejected everywhere, inside a good clause
    good: tuple[int, ...]  # unmet positive conclusion goals (value 0, wanted 1)
    bad: tuple[int, ...]  # met negative conclusion goals (value 0, wanted 0)

    def kind(self, v: int) -> str:
        return self.classes[v]


def analyze(inst: ManipInstance) -> HdAnalysis:
    """Classify premises and conclusions for the positive-clause distance search."""
    _require_normalized(inst)
    report = family_membership(inst.profile.agenda)
    if not report.positive_monotone:
        raise UsageError("analysis needs positive conclusions only")
    out = inst.truthful
    own = inst.profile.judgments[inst.manipulator].premise_values
    classes = tuple(
        f"P{int(out.premise_values[v])}{int(own[v])}"
        for v in range(inst.profile.agenda.n_premises)
    )
    goal = inst.desired.conclusion_map
    good = tuple(
        i for i, b in inst.desired.conclusion_goals if b and not out.conclusion_values[i]
    )
    bad = tuple(
        i
        for i, b in inst.desired.conclusion_goals
        if not b and not out.conclusion_values[i]
    )
    decision = set(inst.decision_vars)
    good_vars = set()
    for i in good:
        good_vars |= inst.profile.agenda.conclusion_clause(i).variables()
    useful = tuple(sorted(v for v in good_vars if v in decision))
    for v in useful:
        assert classes[v] == "P00", "useful premises are rejected collectively and personally"
    assert set(goal) == {i for i, _ in inst.desired.conclusion_goals}
    return HdAnalysis(inst, classes, useful, good, bad)


def hd_delta(analysis: HdAnalysis, flips) -> int:
    """Exact distance change from flipping ``flips`` (a subset of useful) to accept."""
    flips = frozenset(flips)
    if not flips <= set(analysis.useful):
        raise DataError("flip set must consist of useful premises")
    agenda = analysis.instance.profile.agenda
    lost = sum(
        1 for i in analysis.bad if agenda.conclusion_clause(i).variables() & flips
    )
    won = sum(
        1 for i in analysis.good if agenda.conclusion_clause(i).variables() & flips
    )
    return lost - won


@dataclass(frozen=True)
class HdVerdict:
    feasible: bool
    flips: frozenset[int] | None = None
    delta: int | None = None
    method: str = ""


def replay_flips(inst: ManipInstance, flips) -> int:
    """Distance after re-reporting with the given decision premises flipped."""
    decision = set(inst.decision_vars)
    if not frozenset(flips) <= decision:
        raise DataError("can only flip decision premises")
    row = list(inst.profile.judgments[inst.manipulator].premise_values)
    for v in flips:
        row[v] = not inst.truthful.premise_values[v]
    after = outcome_with_replacement(inst.profile, inst.manipulator, row)
    return hd(inst.desired, after)


def _solve_short_positive(analysis: HdAnalysis) -> HdVerdict:
    """Gain-subgraph search for positive clauses of length at most two."""
    inst = analysis.instance
    agenda = inst.profile.agenda
    useful = analysis.useful
    useful_set = set(useful)
    wins: dict[int, int] = {v: 0 for v in useful}
    losses: dict[int, int] = {v: 0 for v in useful}
    for i in analysis.good:
        touch = agenda.conclusion_clause(i).variables() & useful_set
        assert len(touch) <= 1, "an unmet positive short clause has at most one useful premise"
        for v in touch:
            wins[v] += 1
    edges = []
    for i in analysis.bad:
        touch = sorted(agenda.conclusion_clause(i).variables() & useful_set)
        for v in touch:
            losses[v] += 1
        if len(touch) == 2:
            edges.append((touch[0], touch[1]))

    weight = {v: losses[v] - wins[v] for v in useful}
    for v in useful:
        if weight[v] < 0:
            flips = frozenset([v])
            return HdVerdict(True, flips, hd_delta(analysis, flips), "graph")
    for u, v in edges:
        if weight[u] == 0 and weight[v] == 0:
            flips = frozenset([u, v])
            return HdVerdict(True, flips, hd_delta(analysis, flips), "graph")
    index = {v: k for k, v in enumerate(useful)}
    graph = GainGraph.build(
        [Fraction(weight[v]) for v in useful],
        [(index[u], index[v]) for u, v in edges],
    )
    best, chosen = max_gain_subgraph(graph)
    if best > 0:
        flips = frozenset(useful[k] for k in chosen)
        delta = hd_delta(analysis, flips)
        assert delta == -best
        return HdVerdict(True, flips, delta, "graph")
    return HdVerdict(False, method="graph")


def _solve_positive_subsets(analysis: HdAnalysis, budget: int) -> HdVerdict:
    """Exhaustive search over useful-premise subsets (positive clauses, any length)."""
    useful = analysis.useful
    d = len(useful)
    if (1 << d) > budget:
        raise BudgetExceeded(f"2^{d} useful subsets exceed the budget")
    for mask in range(1, 1 << d):
        flips = frozenset(useful[k] for k in range(d) if (mask >> (d - 1 - k)) & 1)
        delta = hd_delta(analysis, flips)
        if delta < 0:
            return HdVerdict(True, flips, delta, "useful-subsets")
    return HdVerdict(False, method="useful-subsets")


def _solve_decision_subsets(inst: ManipInstance, budget: int) -> HdVerdict:
    """Fallback for arbitrary clause families: try every decision report."""
    decision = inst.decision_vars
    d = len(decision)
    if (1 << d) > budget:
        raise BudgetExceeded(f"2^{d} decision reports exceed the budget")
    before = hd(inst.desired, inst.truthful)
    own = list(inst.profile.judgments[inst.manipulator].premise_values)
    for mask in range(1 << d):
        row = own[:]
        for k in range(d):
            row[decision[k]] = bool((mask >> (d - 1 - k)) & 1)
        after_out = outcome_with_replacement(inst.profile, inst.manipulator, row)
        after = hd(inst.desired, after_out)
        if after < before:
            flips = frozenset(
                v for v in decision
                if after_out.premise_values[v] != inst.truthful.premise_values[v]
            )
            return HdVerdict(True, flips, after - before, "decision-subsets")
    return HdVerdict(False, method="decision-subsets")


def solve_hd(inst: ManipInstance, budget: int = DEFAULT_SUBSET_BUDGET) -> HdVerdict:
    """Decide whether any report strictly lowers the distance.

    Positive clauses of length at most two go through the polynomial
    gain-subgraph path; longer positive clauses search useful subsets; other
    clause families search all decision reports.  Requires a normalized
    instance (conclusion goals only, one per conclusion).
    """
    _require_normalized(inst)
    report = family_membership(inst.profile.agenda)
    if report.positive_monotone:
        analysis = analyze(inst)
        if report.max_length <= 2:
            return _solve_short_positive(analysis)
        return _solve_positive_subsets(analysis, budget)
    return _solve_decision_subsets(inst, budget)
