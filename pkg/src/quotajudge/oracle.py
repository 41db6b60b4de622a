"""Independent brute-force reference deciders.

Everything here enumerates exhaustively and is written to be obviously
correct rather than fast.  The production solvers are tested against these;
to keep that meaningful the oracles share only the core data model with the
rest of the package and never call the clever code paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .model import (
    BudgetExceeded,
    Clause,
    DataError,
    DesiredSet,
    Profile,
    outcome,
    unmet_goals,
)

VAR_LIMIT = 20
SAT_VAR_LIMIT = 22
SUBSET_LIMIT = 1 << 20

MANIP_VARIANTS = ("robustness", "possible", "necessary", "exact", "hamming")


@dataclass(frozen=True)
class OracleManipVerdict:
    feasible: bool
    witness: tuple[bool, ...] | None = None
    gained: str | None = None
    delta: int | None = None


def _goal_list(desired: DesiredSet):
    goals = [("p", i, b) for i, b in desired.premise_goals]
    goals += [("c", i, b) for i, b in desired.conclusion_goals]
    return goals


def _met_mask(goals, premise_values, conclusion_values) -> int:
    mask = 0
    for g, (kind, i, b) in enumerate(goals):
        value = premise_values[i] if kind == "p" else conclusion_values[i]
        if value == b:
            mask |= 1 << g
    return mask


def manip_oracle(
    profile: Profile,
    manipulator: int,
    desired: DesiredSet,
    variant: str,
    var_limit: int = VAR_LIMIT,
) -> OracleManipVerdict:
    """Decide a manipulation variant by trying every relevant replacement.

    Only the premises the manipulator actually decides can move the outcome,
    so the enumeration ranges over those; all other premises of the witness
    are pinned to their truthful collective values.  Replacements are tried
    in lexicographic order, so the witness is the smallest one.
    """
    if variant not in MANIP_VARIANTS:
        raise DataError(f"unknown variant {variant!r}")
    desired.validate_against(profile.agenda)
    agenda = profile.agenda
    accept = profile.thresholds.accept
    others = profile.support_excluding(manipulator)
    decision = [v for v in range(agenda.n_premises) if others[v] == accept - 1]
    if len(decision) > var_limit:
        raise BudgetExceeded(
            f"{len(decision)} decision variables exceed the oracle limit {var_limit}"
        )

    truthful = outcome(profile)
    goals = _goal_list(desired)
    full = (1 << len(goals)) - 1
    base_met = _met_mask(goals, truthful.premise_values, truthful.conclusion_values)

    pinned = list(truthful.premise_values)
    d = len(decision)
    clauses = [cl for _, cl in agenda.conclusions]
    for mask in range(1 << d):
        row = pinned[:]
        for k in range(d):
            row[decision[k]] = bool((mask >> (d - 1 - k)) & 1)
        conc = tuple(cl.evaluate(row) for cl in clauses)
        met = _met_mask(goals, row, conc)
        if variant == "robustness":
            hit = met != base_met
        elif variant == "possible":
            hit = bool(met & ~base_met)
        elif variant == "necessary":
            hit = (base_met & ~met) == 0 and met != base_met
        elif variant == "exact":
            hit = met == full
        else:  # hamming
            hit = met.bit_count() > base_met.bit_count()
        if hit:
            gained = None
            new_bits = met & ~base_met
            if new_bits:
                g = (new_bits & -new_bits).bit_length() - 1
                kind, i, _ = goals[g]
                gained = agenda.premises[i] if kind == "p" else agenda.conclusions[i][0]
            delta = base_met.bit_count() - met.bit_count()
            return OracleManipVerdict(True, tuple(row), gained, delta)
    return OracleManipVerdict(False)


@dataclass(frozen=True)
class OracleBriberyVerdict:
    feasible: bool
    judges: tuple[int, ...] | None = None
    premise_values: tuple[bool, ...] | None = None
    delta: int | None = None


def bribery_oracle(
    profile: Profile,
    desired: DesiredSet,
    budget: int,
    work_limit: int = SUBSET_LIMIT,
) -> OracleBriberyVerdict:
    """Try every bribed-judge subset and every collective outcome it can buy."""
    desired.validate_against(profile.agenda)
    accept = profile.thresholds.accept
    n = profile.n_judges
    p = profile.agenda.n_premises
    hd0 = unmet_goals(desired, outcome(profile))
    clauses = [cl for _, cl in profile.agenda.conclusions]

    work = 0
    for size in range(0, min(budget, n) + 1):
        for subset in combinations(range(n), size):
            chosen = set(subset)
            support_nb = [0] * p
            for j, js in enumerate(profile.judgments):
                if j in chosen:
                    continue
                for v in range(p):
                    if js.premise_values[v]:
                        support_nb[v] += 1
            can_one = [support_nb[v] + size >= accept for v in range(p)]
            can_zero = [support_nb[v] <= accept - 1 for v in range(p)]
            free = [v for v in range(p) if can_one[v] and can_zero[v]]
            fixed = [can_one[v] for v in range(p)]  # forced value where not free
            work += 1 << len(free)
            if work > work_limit:
                raise BudgetExceeded("bribery oracle enumeration too large")
            d = len(free)
            for mask in range(1 << d):
                row = fixed[:]
                for k in range(d):
                    row[free[k]] = bool((mask >> (d - 1 - k)) & 1)
                conc = tuple(cl.evaluate(row) for cl in clauses)
                hd = sum(row[i] != b for i, b in desired.premise_goals)
                hd += sum(conc[i] != b for i, b in desired.conclusion_goals)
                if hd < hd0:
                    return OracleBriberyVerdict(True, subset, tuple(row), hd - hd0)
    return OracleBriberyVerdict(False)


@dataclass(frozen=True)
class OracleMicrobriberyVerdict:
    feasible: bool
    flipped: frozenset[int] | None = None
    delta: int | None = None


def flip_cost(profile: Profile, v: int) -> int:
    """Entry flips needed to change premise ``v``'s collective value."""
    accept = profile.thresholds.accept
    support = profile.support[v]
    if support >= accept:
        return support - (accept - 1)
    return accept - support


def microbribery_oracle(
    profile: Profile,
    desired: DesiredSet,
    budget: int,
    work_limit: int = SUBSET_LIMIT,
) -> OracleMicrobriberyVerdict:
    """Try every set of premises whose combined flip cost fits the budget."""
    desired.validate_against(profile.agenda)
    p = profile.agenda.n_premises
    truthful = outcome(profile)
    hd0 = unmet_goals(desired, truthful)
    clauses = [cl for _, cl in profile.agenda.conclusions]
    costs = [flip_cost(profile, v) for v in range(p)]
    # A premise whose individual cost exceeds the budget can never be in a
    # flipped set (costs are positive), so only the affordable ones are tried.
    affordable = [v for v in range(p) if costs[v] <= budget]
    d = len(affordable)
    if (1 << d) > work_limit:
        raise BudgetExceeded("microbribery oracle enumeration too large")

    for mask in range(1 << d):
        flipped = [affordable[k] for k in range(d) if (mask >> (d - 1 - k)) & 1]
        if sum(costs[v] for v in flipped) > budget:
            continue
        row = list(truthful.premise_values)
        for v in flipped:
            row[v] = not row[v]
        conc = tuple(cl.evaluate(row) for cl in clauses)
        hd = sum(row[i] != b for i, b in desired.premise_goals)
        hd += sum(conc[i] != b for i, b in desired.conclusion_goals)
        if hd < hd0:
            return OracleMicrobriberyVerdict(True, frozenset(flipped), hd - hd0)
    return OracleMicrobriberyVerdict(False)


def microbribery_entry_oracle(
    profile: Profile,
    desired: DesiredSet,
    budget: int,
    entry_limit: int = 14,
) -> OracleMicrobriberyVerdict:
    """Flip raw (judge, premise) entries directly — the ground-truth reading.

    Exponential in the number of table entries, so only tiny profiles fit;
    used to certify that the premise-subset formulation above loses nothing.
    """
    n = profile.n_judges
    p = profile.agenda.n_premises
    entries = [(j, v) for j in range(n) for v in range(p)]
    if len(entries) > entry_limit:
        raise BudgetExceeded(f"{len(entries)} entries exceed the oracle limit {entry_limit}")
    accept = profile.thresholds.accept
    truthful = outcome(profile)
    hd0 = unmet_goals(desired, truthful)
    clauses = [cl for _, cl in profile.agenda.conclusions]
    base_support = list(profile.support)

    for size in range(0, min(budget, len(entries)) + 1):
        for combo in combinations(entries, size):
            support = base_support[:]
            for j, v in combo:
                support[v] += -1 if profile.judgments[j].premise_values[v] else 1
            row = [s >= accept for s in support]
            conc = tuple(cl.evaluate(row) for cl in clauses)
            hd = sum(row[i] != b for i, b in desired.premise_goals)
            hd += sum(conc[i] != b for i, b in desired.conclusion_goals)
            if hd < hd0:
                flipped = frozenset(
                    v for v in range(p) if row[v] != truthful.premise_values[v]
                )
                return OracleMicrobriberyVerdict(True, flipped, hd - hd0)
    return OracleMicrobriberyVerdict(False)


@dataclass(frozen=True)
class OracleSatResult:
    satisfiable: bool
    model: tuple[bool, ...] | None


def sat_oracle(
    n_vars: int,
    clauses: Sequence[Clause],
    frozen: Mapping[int, bool] | None = None,
    var_limit: int = SAT_VAR_LIMIT,
) -> OracleSatResult:
    """Enumerate assignments in lexicographic order; first model wins."""
    frozen = dict(frozen or {})
    free = [v for v in range(n_vars) if v not in frozen]
    if len(free) > var_limit:
        raise BudgetExceeded(f"{len(free)} free variables exceed the oracle limit {var_limit}")
    d = len(free)
    row = [False] * n_vars
    for v, b in frozen.items():
        row[v] = b
    for mask in range(1 << d):
        for k in range(d):
            row[free[k]] = bool((mask >> (d - 1 - k)) & 1)
        if all(cl.evaluate(row) for cl in clauses):
            return OracleSatResult(True, tuple(row))
    return OracleSatResult(False, None)
