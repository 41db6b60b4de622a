"""Can a single judge get a better outcome by misreporting?

Four feasibility questions over the same data: *robustness* (can the judge
change which of their goals the outcome meets at all), *possible* (can they
meet some currently unmet goal), *necessary* (meet a new goal while keeping
every met one), and *exact* (meet every goal).  The first two reduce to a
linear scan; the last two are satisfiability questions over the premises the
judge actually decides.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import satkit
from .clausekit import dichotomy, shape_of
from .model import (
    Clause,
    DataError,
    DesiredSet,
    Outcome,
    Profile,
    decision_variables,
    normalize_desired,
    outcome,
    outcome_with_replacement,
)

VARIANTS = ("robustness", "possible", "necessary", "exact")


@dataclass(frozen=True)
class ManipInstance:
    """A profile, a manipulating judge, and the goals they want met.

    The desired set must agree with the manipulator's own judgment set — a
    judge only ever argues for positions they actually reported.
    """

    profile: Profile
    manipulator: int
    desired: DesiredSet

    def __post_init__(self):
        if not 0 <= self.manipulator < self.profile.n_judges:
            raise DataError(f"manipulator index {self.manipulator} out of range")
        self.desired.validate_against(self.profile.agenda)
        own = self.profile.judgments[self.manipulator]
        for i, b in self.desired.premise_goals:
            if own.premise_values[i] != b:
                raise DataError(
                    f"desired premise {self.profile.agenda.premises[i]!r} "
                    "contradicts the manipulator's own judgment"
                )
        for i, b in self.desired.conclusion_goals:
            if own.conclusion_values[i] != b:
                raise DataError(
                    f"desired conclusion {self.profile.agenda.conclusions[i][0]!r} "
                    "contradicts the manipulator's own judgment"
                )

    @cached_property
    def truthful(self) -> Outcome:
        return outcome(self.profile)

    @cached_property
    def decision_vars(self) -> tuple[int, ...]:
        return decision_variables(self.profile, self.manipulator)

    def normalized(self) -> "ManipInstance":
        new_profile, new_desired = normalize_desired(self.profile, self.desired)
        return ManipInstance(new_profile, self.manipulator, new_desired)


@dataclass(frozen=True)
class ManipVerdict:
    feasible: bool
    witness: tuple[bool, ...] | None = None
    gained: str | None = None
    sat_path: str | None = None
    note: str | None = None


def _flip_conclusion(inst: ManipInstance, ci: int) -> tuple[bool, ...] | None:
    """A replacement row flipping conclusion ``ci``'s value, if one exists.

    Starts from the manipulator's truthful row and touches only decision
    variables, so every other premise keeps its collective value.
    """
    decision = set(inst.decision_vars)
    out_prem = inst.truthful.premise_values
    cl = inst.profile.agenda.conclusion_clause(ci)
    row = list(inst.profile.judgments[inst.manipulator].premise_values)
    if inst.truthful.conclusion_values[ci]:
        # drive the clause to false: every literal must end up false
        for lit in cl:
            if lit.var in decision:
                row[lit.var] = lit.negated
            elif lit.holds(out_prem):
                return None
        return tuple(row)
    # drive the clause to true: one decision literal suffices
    for lit in cl:
        if lit.var in decision:
            row[lit.var] = not lit.negated
            return tuple(row)
    return None


def solve_robustness(inst: ManipInstance) -> ManipVerdict:
    """Can the manipulator change the outcome on their goals at all?

    Any desired premise the judge decides can be flipped directly; a desired
    conclusion changes exactly when its clause value can be flipped using
    decision variables only.  Scan order: premises, then conclusions.
    """
    decision = set(inst.decision_vars)
    for i, _ in inst.desired.premise_goals:
        if i in decision:
            row = list(inst.profile.judgments[inst.manipulator].premise_values)
            row[i] = not inst.truthful.premise_values[i]
            return ManipVerdict(True, tuple(row))
    for i, b in inst.desired.conclusion_goals:
        row = _flip_conclusion(inst, i)
        if row is not None:
            gained = (
                inst.profile.agenda.conclusions[i][0]
                if inst.truthful.conclusion_values[i] != b
                else None
            )
            return ManipVerdict(True, row, gained)
    return ManipVerdict(False)


def solve_possible(inst: ManipInstance) -> ManipVerdict:
    """Can the manipulator meet some goal the truthful outcome misses?

    Premises are hopeless: a decided premise already follows the judge's
    report, and an undecided one will not move.  So only unmet conclusion
    goals are scanned.
    """
    for i, b in inst.desired.conclusion_goals:
        if inst.truthful.conclusion_values[i] == b:
            continue
        row = _flip_conclusion(inst, i)
        if row is not None:
            return ManipVerdict(True, row, inst.profile.agenda.conclusions[i][0])
    return ManipVerdict(False)


def _keep_and_gain_problem(
    inst: ManipInstance,
    keep: list[tuple[int, bool]],
    gain: list[tuple[int, bool]],
) -> satkit.SatProblem:
    """Satisfiability of 'hold these conclusion values' over the free premises."""
    agenda = inst.profile.agenda
    free = {
        v for v in inst.decision_vars if v not in inst.desired.premise_map
    }
    frozen = {
        v: inst.truthful.premise_values[v]
        for v in range(agenda.n_premises)
        if v not in free
    }
    clauses: list[Clause] = []
    for i, b in keep + gain:
        cl = agenda.conclusion_clause(i)
        if b:
            clauses.append(cl)
        else:
            clauses.extend(Clause((lit.complement(),)) for lit in cl)
    return satkit.SatProblem.from_parts(agenda.n_premises, clauses, frozen)


def _dpll_note(problem: satkit.SatProblem, verdict: satkit.SatVerdict) -> str | None:
    if verdict.path != "dpll":
        return None
    result = dichotomy({shape_of(cl) for cl in problem.clauses})
    if result.hard:
        return f"search fallback: {result.label}"
    return "search fallback despite polynomial shape family"


def solve_necessary(
    inst: ManipInstance,
    strategy: str = "auto",
    node_budget: int = satkit.DEFAULT_NODE_BUDGET,
) -> ManipVerdict:
    """Meet a new goal without losing any met one.

    One candidate at a time: for each unmet desired conclusion, ask whether
    the decision variables admit values that realise it while every already
    met conclusion goal keeps its value (premise goals are pinned).  The
    witness is the first candidate's first model.
    """
    met_c = [
        (i, b)
        for i, b in inst.desired.conclusion_goals
        if inst.truthful.conclusion_values[i] == b
    ]
    candidates = [
        (i, b)
        for i, b in inst.desired.conclusion_goals
        if inst.truthful.conclusion_values[i] != b
    ]
    for ci, cb in candidates:
        problem = _keep_and_gain_problem(inst, met_c, [(ci, cb)])
        verdict = satkit.solve(problem, strategy, node_budget)
        if verdict.satisfiable:
            return ManipVerdict(
                True,
                verdict.model,
                inst.profile.agenda.conclusions[ci][0],
                verdict.path,
                _dpll_note(problem, verdict),
            )
    return ManipVerdict(False)


def solve_exact(
    inst: ManipInstance,
    strategy: str = "auto",
    node_budget: int = satkit.DEFAULT_NODE_BUDGET,
) -> ManipVerdict:
    """Meet every goal in the desired set at once."""
    for i, b in inst.desired.premise_goals:
        if inst.truthful.premise_values[i] != b:
            return ManipVerdict(False)  # premises out of reach stay out of reach
    own = inst.profile.judgments[inst.manipulator].premise_values
    all_met = all(
        inst.truthful.conclusion_values[i] == b for i, b in inst.desired.conclusion_goals
    )
    if all_met:
        return ManipVerdict(True, tuple(own))
    problem = _keep_and_gain_problem(inst, list(inst.desired.conclusion_goals), [])
    verdict = satkit.solve(problem, strategy, node_budget)
    if verdict.satisfiable:
        return ManipVerdict(
            True, verdict.model, None, verdict.path, _dpll_note(problem, verdict)
        )
    return ManipVerdict(False)


def solve(inst: ManipInstance, variant: str, **kwargs) -> ManipVerdict:
    if variant == "robustness":
        return solve_robustness(inst)
    if variant == "possible":
        return solve_possible(inst)
    if variant == "necessary":
        return solve_necessary(inst, **kwargs)
    if variant == "exact":
        return solve_exact(inst, **kwargs)
    raise DataError(f"unknown variant {variant!r}")


def _met_set(desired: DesiredSet, out: Outcome) -> frozenset:
    met = {("p", i) for i, b in desired.premise_goals if out.premise_values[i] == b}
    met |= {("c", i) for i, b in desired.conclusion_goals if out.conclusion_values[i] == b}
    return frozenset(met)


def certify(inst: ManipInstance, variant: str, witness) -> bool:
    """Replay a witness and check the variant's defining condition."""
    before = _met_set(inst.desired, inst.truthful)
    after_out = outcome_with_replacement(inst.profile, inst.manipulator, witness)
    after = _met_set(inst.desired, after_out)
    everything = frozenset(
        [("p", i) for i, _ in inst.desired.premise_goals]
        + [("c", i) for i, _ in inst.desired.conclusion_goals]
    )
    if variant == "robustness":
        return after != before
    if variant == "possible":
        return bool(after - before)
    if variant == "necessary":
        return after > before
    if variant == "exact":
        return after == everything
    raise DataError(f"unknown variant {variant!r}")
