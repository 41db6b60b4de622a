"""Bribery solvers: buy whole judges, or buy single premise entries.

Both problems ask whether spending a budget can strictly lower the number of
unmet goals.  Whole-judgment bribery with a fixed budget and positive clauses
of length at most two runs in polynomial time through the same gain-subgraph
machinery as the distance manipulation; everything else falls back to a
guarded search.  Entry-level bribery collapses to choosing which premise
*outcomes* to flip, because entries of different premises never interact and
partial pushes that stop short of the threshold buy nothing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb

from . import satkit
from .clausekit import family_membership
from .graphopt import GainGraph, max_gain_subgraph
from .model import (
    BudgetExceeded,
    DataError,
    DesiredSet,
    JudgmentSet,
    Outcome,
    Profile,
    UsageError,
    normalize_desired,
    outcome,
    unmet_goals,
)

MODES = ("bribery", "microbribery")
DEFAULT_WORK_BUDGET = 1 << 20
SUBSET_WARN_LIMIT = 100_000
FAST_PATH_MAX_JUDGES = 8


@dataclass(frozen=True)
class BriberyInstance:
    """A profile, the briber's (consistent) goals, and how much they may spend.

    ``budget`` counts whole judgment sets in bribery mode and single premise
    entries in microbribery mode.  A budget of zero is allowed and trivially
    infeasible: the distance cannot strictly drop without any change.
    """

    profile: Profile
    desired: DesiredSet
    budget: int
    mode: str = "bribery"

    def __post_init__(self):
        if self.mode not in MODES:
            raise DataError(f"unknown bribery mode {self.mode!r}")
        if isinstance(self.budget, bool) or not isinstance(self.budget, int):
            raise DataError("budget must be an integer")
        if self.budget < 0:
            raise DataError("budget must not be negative")
        if self.mode == "bribery" and self.budget > self.profile.n_judges:
            raise DataError(
                f"budget {self.budget} exceeds the number of judges "
                f"{self.profile.n_judges}"
            )
        self.desired.validate_against(self.profile.agenda)
        if not satkit.consistency_check(self.desired, self.profile.agenda).satisfiable:
            raise DataError("the desired set is inconsistent")

    @cached_property
    def truthful(self) -> Outcome:
        return outcome(self.profile)

    @cached_property
    def distance(self) -> int:
        return unmet_goals(self.desired, self.truthful)

    def normalized(self) -> "BriberyInstance":
        new_profile, new_desired = normalize_desired(
            self.profile, self.desired, self.budget
        )
        return BriberyInstance(new_profile, new_desired, self.budget, self.mode)


@dataclass(frozen=True)
class FlipCostTable:
    """Entry counts needed to force each premise to either side of the quota."""

    cost_to_1: tuple[int, ...]
    cost_to_0: tuple[int, ...]

    def toggle(self, v: int) -> int:
        """Entries needed to flip premise ``v``'s collective value."""
        return max(self.cost_to_1[v], self.cost_to_0[v])


def flip_costs(profile: Profile) -> FlipCostTable:
    accept = profile.thresholds.accept
    to_1 = tuple(max(0, accept - s) for s in profile.support)
    to_0 = tuple(max(0, s - (accept - 1)) for s in profile.support)
    for a, b in zip(to_1, to_0):
        assert (a == 0) != (b == 0), "each premise sits on exactly one side"
    return FlipCostTable(to_1, to_0)


@dataclass(frozen=True)
class BribePlan:
    """Who gets bribed and which premise entries they change.

    ``entries`` lists the changed cells as (judge, premise, new value),
    sorted by judge then premise.  In bribery mode ``rows`` carries the full
    replacement premise rows for the bribed judges, aligned with ``judges``.
    """

    judges: tuple[int, ...]
    entries: tuple[tuple[int, int, bool], ...]
    rows: tuple[tuple[bool, ...], ...] = ()


@dataclass(frozen=True)
class BribeVerdict:
    feasible: bool
    plan: BribePlan | None = None
    delta: int | None = None
    method: str = ""


def apply_entries(profile: Profile, entries) -> Profile:
    """The profile after rewriting the given (judge, premise, value) cells."""
    rows = [list(j.premise_values) for j in profile.judgments]
    for judge, prem, value in entries:
        rows[judge][prem] = value
    judgments = tuple(
        JudgmentSet(profile.agenda, tuple(row)) for row in rows
    )
    return Profile(profile.agenda, judgments, profile.quota)


def _sealed(inst: BriberyInstance, judges, flips, method: str, expected_delta: int | None) -> BribeVerdict:
    """Build a verdict whose plan is replayed against the instance.

    ``flips`` are premises whose collective value the plan reverses; every
    bribed judge reports the target value on them and keeps the rest of their
    row.  The replay recomputes the outcome from scratch and the resulting
    distance drop is asserted (and checked against the solver's arithmetic
    when it predicted one).
    """
    target = {
        v: not inst.truthful.premise_values[v] for v in sorted(flips)
    }
    entries = []
    for j in judges:
        row = inst.profile.judgments[j].premise_values
        for v, value in target.items():
            if row[v] != value:
                entries.append((j, v, value))
    entries.sort()
    after = outcome(apply_entries(inst.profile, entries))
    for v, value in target.items():
        assert after.premise_values[v] == value, "plan failed to flip"
    delta = unmet_goals(inst.desired, after) - inst.distance
    assert delta < 0, "a feasible plan must strictly lower the distance"
    if expected_delta is not None:
        assert delta == expected_delta, "replayed distance drop disagrees with the weights"
    rows = tuple(
        tuple(
            target.get(v, inst.profile.judgments[j].premise_values[v])
            for v in range(inst.profile.agenda.n_premises)
        )
        for j in judges
    )
    plan = BribePlan(tuple(judges), tuple(entries), rows)
    return BribeVerdict(True, plan, delta, method)


# ---------------------------------------------------------------------------
# Whole-judgment bribery, fixed budget, positive clauses of length <= 2


def _changeable(profile: Profile, subset) -> tuple[list[int], list[int]]:
    """Per premise, the support outside the bribed set and whether both
    collective values are reachable once the bribed judges report freely."""
    k = len(subset)
    accept = profile.thresholds.accept
    support_nb = list(profile.support)
    for j in subset:
        row = profile.judgments[j].premise_values
        for v in range(profile.agenda.n_premises):
            if row[v]:
                support_nb[v] -= 1
    changeable = [
        v
        for v in range(profile.agenda.n_premises)
        if support_nb[v] + k >= accept and support_nb[v] <= accept - 1
    ]
    return support_nb, changeable


def _best_flip_set(members, weight, edges):
    """A subset of ``members`` whose weights plus internal clauses win, or None.

    Feasibility means sum(weight) + #(clauses inside the subset) > 0.  A
    single positive weight wins outright; otherwise all weights are <= 0 and
    the question is a gain-subgraph decision with costs -weight.
    """
    for x in members:
        if weight[x] > 0:
            return frozenset([x]), weight[x]
    if not edges:
        return None
    index = {v: i for i, v in enumerate(members)}
    graph = GainGraph.build(
        [Fraction(-weight[v]) for v in members],
        [(index[u], index[v]) for u, v in edges],
    )
    best, chosen = max_gain_subgraph(graph)
    if best > 0:
        assert best.denominator == 1
        return frozenset(members[i] for i in chosen), int(best)
    return None


def _try_bribed_set(inst: BriberyInstance, subset, touching):
    """One bribed-judge set: the always-good flips plus the weighted trade-off.

    Returns (flips, expected_delta) when this set admits a winning plan.
    Variables whose clauses are all desired-true get flipped up first; the
    rest split by current value into the sets the trade-off analysis works
    on.  Weights are taken against the valuation *after* the always-good
    flips — a partner already pushed up pins its clauses true, so flipping a
    neighbour down no longer loses them.
    """
    profile, desired, out = inst.profile, inst.desired, inst.truthful
    goal = desired.conclusion_map
    _, changeable = _changeable(profile, subset)

    always_up, t_zero, t_one = [], [], []
    for v in changeable:
        if not touching[v]:
            continue  # no conclusion mentions it; flipping buys nothing
        if all(goal[ci] for ci in touching[v]):
            always_up.append(v)
        elif out.premise_values[v]:
            t_one.append(v)
        else:
            t_zero.append(v)

    up_set = set(always_up)
    newly_won = {
        ci
        for v in always_up
        if not out.premise_values[v]
        for ci in touching[v]
        if not out.conclusion_values[ci]
    }
    gain_up = len(newly_won)
    base_flips = frozenset(v for v in always_up if not out.premise_values[v])
    if gain_up > 0:
        return base_flips, -gain_up

    def pinned_true(v: int) -> bool:
        return out.premise_values[v] or v in up_set

    for members, flipping_up in ((t_zero, True), (t_one, False)):
        if not members:
            continue
        member_set = set(members)
        weight = {}
        edges = []
        for x in members:
            w = 0
            for ci in touching[x]:
                others = profile.agenda.conclusion_clause(ci).variables() - {x}
                if others:
                    (y,) = others
                    if y in member_set:
                        # both endpoints movable the same way: desired-false
                        # by consistency, settled jointly via the edge list
                        assert not goal[ci], "a clause between movable premises cannot be desired"
                        if flipping_up:
                            w -= 1  # either endpoint alone turns it on
                        if x < y:
                            edges.append((x, y))
                        continue
                    if pinned_true(y):
                        continue  # the partner keeps the clause on regardless
                value_after = flipping_up  # partner absent or stuck at 0
                wanted = goal[ci]
                w += 1 if value_after == wanted else -1
            weight[x] = w
        found = _best_flip_set(members, weight, edges)
        if found is not None:
            flips, f_value = found
            return base_flips | flips, -f_value
    return None


def solve_bribery_fixed_k(inst: BriberyInstance) -> BribeVerdict:
    """Decide whole-judgment bribery by trying every bribed-judge set.

    Needs positive clauses of length at most two and a desired set that
    names every conclusion and no premise (run the instance through
    ``normalized`` first when it does not).  Each of the C(n, k) candidate
    sets is settled in polynomial time, so the whole run is polynomial for
    any fixed budget.
    """
    if inst.mode != "bribery":
        raise UsageError("solve_bribery_fixed_k expects bribery mode")
    profile, desired = inst.profile, inst.desired
    if desired.premise_goals:
        raise UsageError("normalize first: the desired set names premises")
    if len(desired.conclusion_goals) != len(profile.agenda.conclusions):
        raise UsageError("normalize first: some conclusions carry no goal")
    report = family_membership(profile.agenda)
    if not (report.positive_monotone and report.max_length <= 2):
        raise UsageError(
            "the fixed-budget algorithm needs positive clauses of length <= 2"
        )
    n, k = profile.n_judges, inst.budget
    if k == 0:
        return BribeVerdict(False, method="fixed-k")
    if comb(n, k) > SUBSET_WARN_LIMIT:
        warnings.warn(
            f"trying C({n},{k}) = {comb(n, k)} bribed-judge sets; this will be slow",
            stacklevel=2,
        )
    touching: list[list[int]] = [[] for _ in range(profile.agenda.n_premises)]
    for ci, (_, cl) in enumerate(profile.agenda.conclusions):
        for v in cl.variables():
            touching[v].append(ci)
    for subset in combinations(range(n), k):
        found = _try_bribed_set(inst, subset, touching)
        if found is not None:
            flips, expected = found
            return _sealed(inst, subset, flips, "fixed-k", expected)
    return BribeVerdict(False, method="fixed-k")


# ---------------------------------------------------------------------------
# Whole-judgment bribery, any clause class: guarded search


def solve_bribery_general(
    inst: BriberyInstance, *, work_budget: int = DEFAULT_WORK_BUDGET
) -> BribeVerdict:
    """Search bribed-judge sets times reachable premise outcomes.

    Sound for every clause class and desired set, exponential in the number
    of premises the bribed judges can swing; raises ``BudgetExceeded`` after
    ``work_budget`` candidate outcomes.
    """
    if inst.mode != "bribery":
        raise UsageError("solve_bribery_general expects bribery mode")
    profile, desired = inst.profile, inst.desired
    n = profile.n_judges
    base = inst.distance
    work = 0
    for size in range(1, min(inst.budget, n) + 1):
        for subset in combinations(range(n), size):
            _, changeable = _changeable(profile, subset)
            d = len(changeable)
            for mask in range(1, 1 << d):
                work += 1
                if work > work_budget:
                    raise BudgetExceeded(
                        f"bribery search stopped after {work_budget} candidate outcomes"
                    )
                flips = frozenset(
                    changeable[i] for i in range(d) if (mask >> (d - 1 - i)) & 1
                )
                prem = tuple(
                    (not val) if v in flips else val
                    for v, val in enumerate(inst.truthful.premise_values)
                )
                after = Outcome(
                    profile.agenda, prem, profile.agenda.evaluate_conclusions(prem)
                )
                if unmet_goals(desired, after) < base:
                    return _sealed(inst, subset, flips, "search", None)
    return BribeVerdict(False, method="search")


def solve_bribery(
    inst: BriberyInstance, *, work_budget: int = DEFAULT_WORK_BUDGET
) -> BribeVerdict:
    """Whole-judgment bribery, fastest sound route.

    Runs the polynomial fixed-budget algorithm whenever the clause family
    fits, normalizing premise goals away first if necessary; everything else
    goes to the guarded search.
    """
    if inst.mode != "bribery":
        raise UsageError("solve_bribery expects bribery mode")

    def fits(candidate: BriberyInstance) -> bool:
        if candidate.desired.premise_goals:
            return False
        if len(candidate.desired.conclusion_goals) != len(
            candidate.profile.agenda.conclusions
        ):
            return False
        report = family_membership(candidate.profile.agenda)
        return report.positive_monotone and report.max_length <= 2

    if fits(inst):
        return solve_bribery_fixed_k(inst)
    try:
        norm = inst.normalized()
    except DataError:
        norm = None  # pinned auxiliaries would not survive this threshold/budget
    if norm is not None and fits(norm):
        verdict = solve_bribery_fixed_k(norm)
        if not verdict.feasible:
            return verdict
        # Restate the plan against the original agenda: the auxiliary
        # premises are unanimous and beyond the budget, so no plan touches
        # them and every entry already names an original premise.
        p = inst.profile.agenda.n_premises
        assert all(prem < p for _, prem, _ in verdict.plan.entries)
        flips = {
            prem
            for _, prem, value in verdict.plan.entries
            if inst.truthful.premise_values[prem] != value
        }
        return _sealed(inst, verdict.plan.judges, flips, verdict.method, verdict.delta)
    return solve_bribery_general(inst, work_budget=work_budget)


# ---------------------------------------------------------------------------
# Microbribery: pay per premise entry


def _entries_for_flip(profile: Profile, v: int, costs: FlipCostTable) -> list:
    """The cheapest cells forcing premise ``v`` across the threshold,
    lowest judge indices first."""
    accepting = profile.support[v] >= profile.thresholds.accept
    value = not accepting
    need = costs.toggle(v)
    entries = []
    for j in range(profile.n_judges):
        if len(entries) == need:
            break
        if profile.judgments[j].premise_values[v] == accepting:
            entries.append((j, v, value))
    assert len(entries) == need
    return entries


def _sealed_entries(inst: BriberyInstance, entries, method: str) -> BribeVerdict:
    entries = tuple(sorted(entries))
    assert len(entries) <= inst.budget, "plan overruns the entry budget"
    bribed = apply_entries(inst.profile, entries)
    delta = unmet_goals(inst.desired, outcome(bribed)) - inst.distance
    assert delta < 0, "a feasible plan must strictly lower the distance"
    judges = tuple(sorted({j for j, _, _ in entries}))
    return BribeVerdict(True, BribePlan(judges, entries), delta, method)


def _prop_scan(inst: BriberyInstance, costs: FlipCostTable) -> BribeVerdict:
    """Single-flip scan for complete desired sets over positive clauses.

    With the budget covering any one flip, pushing a wanted premise up (or an
    unwanted one down) can only help: consistency makes every clause through
    a wanted premise desired-true, and completeness leaves nothing else to
    lose.  If neither scan fires, every goal is already met.
    """
    out = inst.truthful
    for v, b in inst.desired.premise_goals:
        if b and not out.premise_values[v]:
            return _sealed_entries(
                inst, _entries_for_flip(inst.profile, v, costs), "single-flip"
            )
    for v, b in inst.desired.premise_goals:
        if not b and out.premise_values[v]:
            return _sealed_entries(
                inst, _entries_for_flip(inst.profile, v, costs), "single-flip"
            )
    assert inst.distance == 0, "with premises settled, completeness settles the rest"
    return BribeVerdict(False, method="single-flip")


def _flip_subset_search(
    inst: BriberyInstance, costs: FlipCostTable, work_budget: int
) -> BribeVerdict:
    """Try premise subsets by size, flipping each member's collective value."""
    profile, desired = inst.profile, inst.desired
    p = profile.agenda.n_premises
    base = inst.distance
    work = 0
    for size in range(1, min(inst.budget, p) + 1):
        for subset in combinations(range(p), size):
            work += 1
            if work > work_budget:
                raise BudgetExceeded(
                    f"microbribery search stopped after {work_budget} flip sets"
                )
            if sum(costs.toggle(v) for v in subset) > inst.budget:
                continue
            prem = tuple(
                (not val) if v in subset else val
                for v, val in enumerate(inst.truthful.premise_values)
            )
            after = Outcome(
                profile.agenda, prem, profile.agenda.evaluate_conclusions(prem)
            )
            if unmet_goals(desired, after) < base:
                entries = [
                    e
                    for v in subset
                    for e in _entries_for_flip(profile, v, costs)
                ]
                return _sealed_entries(inst, entries, "flip-subsets")
    return BribeVerdict(False, method="flip-subsets")


def solve_microbribery(
    inst: BriberyInstance,
    *,
    work_budget: int = DEFAULT_WORK_BUDGET,
    fast_path_max_judges: int = FAST_PATH_MAX_JUDGES,
) -> BribeVerdict:
    """Decide entry-level bribery via premise-outcome flips.

    Entries of different premises never interact, and entries that fail to
    push a premise across the threshold change nothing, so only the set of
    flipped collective values matters; its price is the per-premise flip
    cost.  Complete desired sets over positive clauses with few judges get
    the linear scan whenever the budget covers any single flip; the rest is
    a size-bounded subset search under ``work_budget``.
    """
    if inst.mode != "microbribery":
        raise UsageError("solve_microbribery expects microbribery mode")
    if inst.budget == 0:
        return BribeVerdict(False, method="flip-subsets")
    costs = flip_costs(inst.profile)
    report = family_membership(inst.profile.agenda)
    complete = len(inst.desired.premise_goals) == inst.profile.agenda.n_premises and len(
        inst.desired.conclusion_goals
    ) == len(inst.profile.agenda.conclusions)
    if (
        report.positive_monotone
        and complete
        and inst.profile.n_judges <= fast_path_max_judges
        and inst.budget >= inst.profile.n_judges
    ):
        return _prop_scan(inst, costs)
    return _flip_subset_search(inst, costs, work_budget)
