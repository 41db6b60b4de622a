"""Clause satisfiability with specialised polynomial strategies.

The solver picks the cheapest sound procedure for the clauses it is given:
full unit propagation plus a monotone default fill, minimal-model forward
chaining for Horn clauses, implication-graph SCCs for binary clauses, and a
budgeted DPLL search for everything else.  DPLL branches lowest variable
first, trying False before True, so its models are lexicographically
smallest; the polynomial paths return their own canonical models.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .model import (
    Agenda,
    BudgetExceeded,
    Clause,
    DataError,
    DesiredSet,
    Literal,
    UsageError,
)

DEFAULT_NODE_BUDGET = 1_000_000

STRATEGIES = ("auto", "monotone-trivial", "horn", "two-sat", "dpll")


@dataclass(frozen=True)
class SatProblem:
    n_vars: int
    clauses: tuple[Clause, ...]
    frozen: tuple[tuple[int, bool], ...] = ()

    def __post_init__(self):
        for cl in self.clauses:
            for lit in cl:
                if not 0 <= lit.var < self.n_vars:
                    raise DataError(f"clause mentions unknown variable {lit.var}")
        idxs = [i for i, _ in self.frozen]
        if idxs != sorted(set(idxs)):
            raise DataError("frozen variables must be unique and sorted")
        for i, _ in self.frozen:
            if not 0 <= i < self.n_vars:
                raise DataError(f"frozen variable {i} out of range")

    @classmethod
    def from_parts(
        cls,
        n_vars: int,
        clauses: Iterable[Clause],
        frozen: Mapping[int, bool] | None = None,
    ) -> "SatProblem":
        pairs = tuple(sorted((i, bool(b)) for i, b in (frozen or {}).items()))
        return cls(n_vars, tuple(clauses), pairs)


@dataclass(frozen=True)
class SatVerdict:
    satisfiable: bool
    model: tuple[bool, ...] | None
    path: str


def _substitute(clauses, assignment):
    """Apply a partial assignment; returns residual literal tuples or None on conflict."""
    residual = []
    for cl in clauses:
        lits = []
        satisfied = False
        for lit in cl:
            val = assignment.get(lit.var)
            if val is None:
                lits.append(lit)
            elif val != lit.negated:
                satisfied = True
                break
        if satisfied:
            continue
        if not lits:
            return None
        residual.append(tuple(lits))
    return residual


def _propagate_units(clauses, assignment):
    """Unit-propagate to fixpoint.  Mutates ``assignment``; None on conflict."""
    while True:
        residual = _substitute(clauses, assignment)
        if residual is None:
            return None
        units = [cl[0] for cl in residual if len(cl) == 1]
        if not units:
            return residual
        for lit in units:
            want = not lit.negated
            seen = assignment.get(lit.var)
            if seen is not None and seen != want:
                return None
            assignment[lit.var] = want


def _solve_monotone_trivial(clauses, assignment, n_vars):
    """Unit propagation plus a one-sided default fill, when one side suffices."""
    residual = _propagate_units(clauses, assignment)
    if residual is None:
        return False, None
    if all(any(lit.negated for lit in cl) for cl in residual):
        default = False
    elif all(any(not lit.negated for lit in cl) for cl in residual):
        default = True
    else:
        return None, None  # no single default is guaranteed to work
    model = tuple(assignment.get(v, default) for v in range(n_vars))
    return True, model


def _solve_horn(clauses, assignment, n_vars):
    """Minimal-model forward chaining; every clause has at most one positive literal."""
    true_vars: set[int] = set()
    changed = True
    while changed:
        changed = False
        for cl in clauses:
            satisfied = False
            positive = None
            for lit in cl:
                if lit.negated:
                    if lit.var not in true_vars:
                        satisfied = True
                        break
                elif lit.var in true_vars:
                    satisfied = True
                    break
                else:
                    positive = lit
            if satisfied:
                continue
            if positive is None:
                return False, None
            true_vars.add(positive.var)
            changed = True
    model = tuple(assignment.get(v, v in true_vars) for v in range(n_vars))
    return True, model


def _tarjan_scc(n_nodes, adj):
    index = [0] * n_nodes
    low = [0] * n_nodes
    comp = [-1] * n_nodes
    on_stack = [False] * n_nodes
    stack: list[int] = []
    counter = 1
    ncomp = 0
    for root in range(n_nodes):
        if index[root]:
            continue
        work = [(root, 0)]
        while work:
            v, ptr = work[-1]
            if ptr == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            edges = adj[v]
            for i in range(ptr, len(edges)):
                w = edges[i]
                if not index[w]:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def _solve_two_sat(clauses, assignment, n_vars):
    residual = _propagate_units(clauses, assignment)
    if residual is None:
        return False, None
    if any(len(cl) > 2 for cl in residual):
        raise UsageError("two-sat strategy needs clauses of length at most 2")

    def node(lit: Literal) -> int:
        return 2 * lit.var + (1 if lit.negated else 0)

    adj: dict[int, list[int]] = {}
    vars_seen = set()
    for cl in residual:
        a, b = cl
        vars_seen.add(a.var)
        vars_seen.add(b.var)
        adj.setdefault(node(a.complement()), []).append(node(b))
        adj.setdefault(node(b.complement()), []).append(node(a))
    n_nodes = 2 * n_vars
    adj_list = [adj.get(i, []) for i in range(n_nodes)]
    comp = _tarjan_scc(n_nodes, adj_list)
    values = dict(assignment)
    for v in vars_seen:
        if comp[2 * v] == comp[2 * v + 1]:
            return False, None
        values[v] = comp[2 * v] < comp[2 * v + 1]
    model = tuple(values.get(v, False) for v in range(n_vars))
    return True, model


def _solve_dpll(clauses, assignment, n_vars, node_budget):
    assign = dict(assignment)
    trail: list[tuple[int, bool]] = []  # (var, was_decision)
    nodes = 0

    def lit_value(lit):
        v = assign.get(lit.var)
        if v is None:
            return None
        return v != lit.negated

    def propagate():
        changed = True
        while changed:
            changed = False
            for cl in clauses:
                unassigned = None
                n_open = 0
                satisfied = False
                for lit in cl:
                    val = lit_value(lit)
                    if val is True:
                        satisfied = True
                        break
                    if val is None:
                        unassigned = lit
                        n_open += 1
                if satisfied:
                    continue
                if n_open == 0:
                    return False
                if n_open == 1:
                    assign[unassigned.var] = not unassigned.negated
                    trail.append((unassigned.var, False))
                    changed = True
        return True

    def force_negative_pure():
        # A variable occurring only negated in the not-yet-satisfied clauses can
        # be fixed to False: flipping it down never unsatisfies anything, so the
        # lexicographically smallest model of this branch has it False.
        polarity: dict[int, int] = {}  # var -> bitmask 1=positive 2=negative
        for cl in clauses:
            if any(lit_value(lit) is True for lit in cl):
                continue
            for lit in cl:
                if lit.var not in assign:
                    polarity[lit.var] = polarity.get(lit.var, 0) | (2 if lit.negated else 1)
        fixed = False
        for var, mask in polarity.items():
            if mask == 2:
                assign[var] = False
                trail.append((var, False))
                fixed = True
        return fixed

    while True:
        ok = propagate()
        if ok:
            while force_negative_pure():
                ok = propagate()
                if not ok:
                    break
        if ok:
            branch = None
            for cl in clauses:
                if any(lit_value(lit) is True for lit in cl):
                    continue
                for lit in cl:
                    if lit.var not in assign and (branch is None or lit.var < branch):
                        branch = lit.var
            if branch is None:
                model = tuple(assign.get(v, False) for v in range(n_vars))
                return True, model
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded(f"dpll exceeded its node budget of {node_budget}")
            assign[branch] = False
            trail.append((branch, True))
            continue
        # conflict: undo up to the most recent open decision and flip it
        flipped = False
        while trail:
            var, was_decision = trail.pop()
            took = assign.pop(var)
            if was_decision and took is False:
                assign[var] = True
                trail.append((var, False))
                flipped = True
                break
        if not flipped:
            return False, None


def _is_horn(residual) -> bool:
    return all(sum(not lit.negated for lit in cl) <= 1 for cl in residual)


def _is_binary(residual) -> bool:
    return all(len(cl) <= 2 for cl in residual)


def _check_model(problem: SatProblem, model) -> None:
    assert len(model) == problem.n_vars
    for i, b in problem.frozen:
        assert model[i] == b, "model must extend the frozen assignment"
    for cl in problem.clauses:
        assert cl.evaluate(model), "solver produced a non-model"


def solve(
    problem: SatProblem,
    strategy: str = "auto",
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SatVerdict:
    """Decide satisfiability and produce a total model extending ``frozen``."""
    if strategy not in STRATEGIES:
        raise UsageError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
    base = {i: b for i, b in problem.frozen}
    residual = _substitute(problem.clauses, base)
    if residual is None:
        return SatVerdict(False, None, "frozen")

    def done(sat, model, path):
        if sat:
            _check_model(problem, model)
            return SatVerdict(True, model, path)
        return SatVerdict(False, None, path)

    if strategy == "monotone-trivial":
        sat, model = _solve_monotone_trivial(residual, dict(base), problem.n_vars)
        if sat is None:
            raise UsageError(
                "monotone-trivial cannot decide: both all-positive and "
                "all-negative clauses remain after propagation"
            )
        return done(sat, model, "monotone-trivial")
    if strategy == "horn":
        if not _is_horn(residual):
            raise UsageError("horn strategy needs at most one positive literal per clause")
        sat, model = _solve_horn(residual, base, problem.n_vars)
        return done(sat, model, "horn")
    if strategy == "two-sat":
        sat, model = _solve_two_sat(residual, base, problem.n_vars)
        return done(sat, model, "two-sat")
    if strategy == "dpll":
        sat, model = _solve_dpll(residual, base, problem.n_vars, node_budget)
        return done(sat, model, "dpll")

    # auto: cheapest sound path first
    sat, model = _solve_monotone_trivial(residual, dict(base), problem.n_vars)
    if sat is not None:
        return done(sat, model, "monotone-trivial")
    if _is_horn(residual):
        sat, model = _solve_horn(residual, base, problem.n_vars)
        return done(sat, model, "horn")
    if _is_binary(residual):
        sat, model = _solve_two_sat(residual, base, problem.n_vars)
        return done(sat, model, "two-sat")
    sat, model = _solve_dpll(residual, base, problem.n_vars, node_budget)
    return done(sat, model, "dpll")


def consistency_check(desired: DesiredSet, agenda: Agenda) -> SatVerdict:
    """Is there any premise assignment meeting every goal in ``desired``?"""
    desired.validate_against(agenda)
    clauses: list[Clause] = []
    for i, b in desired.premise_goals:
        clauses.append(Clause((Literal(i, not b),)))
    for i, b in desired.conclusion_goals:
        cl = agenda.conclusion_clause(i)
        if b:
            clauses.append(cl)
        else:
            clauses.extend(Clause((lit.complement(),)) for lit in cl)
    problem = SatProblem.from_parts(agenda.n_premises, clauses)
    return solve(problem)
