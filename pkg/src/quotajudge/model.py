"""Core types for premise-based judgment aggregation under uniform quota rules.

An agenda has premise variables and conclusions; each conclusion is a
disjunctive clause over the premises.  Judges submit complete premise
assignments.  A uniform quota rule accepts a premise when the number of
accepting judges reaches the acceptance threshold, and the conclusions are
then read off from the accepted premises.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Mapping, NamedTuple


class DataError(ValueError):
    """Malformed or inconsistent input data (bad file, bad instance)."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UsageError(Exception):
    """The requested operation does not apply to the given input."""


class BudgetExceeded(Exception):
    """A search ran out of its configured budget; the instance is undecided."""


class Literal(NamedTuple):
    var: int
    negated: bool = False

    def holds(self, values) -> bool:
        return bool(values[self.var]) != self.negated

    def complement(self) -> "Literal":
        return Literal(self.var, not self.negated)


def pos(var: int) -> Literal:
    return Literal(var, False)


def neg(var: int) -> Literal:
    return Literal(var, True)


@dataclass(frozen=True)
class Clause:
    """A disjunction of literals over premise variables.

    Clauses are non-empty and never mention the same variable twice.
    """

    literals: tuple[Literal, ...]

    def __post_init__(self):
        if not self.literals:
            raise DataError("empty clause")
        seen = set()
        for lit in self.literals:
            if lit.var in seen:
                raise DataError(f"variable {lit.var} repeated in clause")
            seen.add(lit.var)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def variables(self) -> frozenset[int]:
        return frozenset(lit.var for lit in self.literals)

    def evaluate(self, values) -> bool:
        return any(lit.holds(values) for lit in self.literals)


def clause(*lits: int | Literal) -> Clause:
    """Build a clause from signed variable indices; ``-v`` is shorthand.

    Integer arguments use a 1-based DIMACS-style encoding (``clause(1, -3)``
    means ``x0 or not x2``) so that negation of variable 0 stays expressible.
    """
    out = []
    for l in lits:
        if isinstance(l, Literal):
            out.append(l)
        elif l > 0:
            out.append(Literal(l - 1, False))
        elif l < 0:
            out.append(Literal(-l - 1, True))
        else:
            raise DataError("0 is not a valid signed variable")
    return Clause(tuple(out))


@dataclass(frozen=True)
class Agenda:
    """Premise variable names plus named conclusion clauses."""

    premises: tuple[str, ...]
    conclusions: tuple[tuple[str, Clause], ...]

    def __post_init__(self):
        if not self.premises:
            raise DataError("agenda needs at least one premise")
        names = list(self.premises) + [name for name, _ in self.conclusions]
        if len(set(names)) != len(names):
            raise DataError("agenda names must be unique")
        for name, cl in self.conclusions:
            for lit in cl:
                if not 0 <= lit.var < len(self.premises):
                    raise DataError(f"conclusion {name!r} mentions unknown variable {lit.var}")

    @property
    def n_premises(self) -> int:
        return len(self.premises)

    @cached_property
    def premise_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.premises)}

    @cached_property
    def conclusion_index(self) -> dict[str, int]:
        return {name: i for i, (name, _) in enumerate(self.conclusions)}

    def conclusion_clause(self, i: int) -> Clause:
        return self.conclusions[i][1]

    def evaluate_conclusions(self, premise_values) -> tuple[bool, ...]:
        return tuple(cl.evaluate(premise_values) for _, cl in self.conclusions)


@dataclass(frozen=True)
class JudgmentSet:
    """One judge's complete premise assignment over an agenda."""

    agenda: Agenda
    premise_values: tuple[bool, ...]

    def __post_init__(self):
        if len(self.premise_values) != self.agenda.n_premises:
            raise DataError(
                f"judgment set has {len(self.premise_values)} values "
                f"for {self.agenda.n_premises} premises"
            )

    @cached_property
    def conclusion_values(self) -> tuple[bool, ...]:
        return self.agenda.evaluate_conclusions(self.premise_values)


class ThresholdPair(NamedTuple):
    accept: int
    reject: int


def thresholds(quota: Fraction, n_judges: int) -> ThresholdPair:
    """Acceptance/rejection thresholds of the quota rule for ``n_judges``.

    A premise is accepted when at least ``accept`` judges accept it and its
    negation is accepted when at least ``reject`` judges reject it; the two
    always sum to ``n_judges + 1``, so exactly one side wins.
    """
    if n_judges < 1:
        raise DataError("need at least one judge")
    q = Fraction(quota)
    if not 0 <= q < 1:
        raise DataError(f"quota must lie in [0, 1), got {q}")
    accept = math.floor(q * n_judges + 1)
    reject = math.ceil(n_judges - q * n_judges)
    assert accept + reject == n_judges + 1
    assert 1 <= accept <= n_judges
    return ThresholdPair(accept, reject)


@dataclass(frozen=True)
class Profile:
    """A complete profile: agenda, one judgment set per judge, and the quota."""

    agenda: Agenda
    judgments: tuple[JudgmentSet, ...]
    quota: Fraction

    def __post_init__(self):
        if len(self.judgments) < 2:
            raise DataError("a profile needs at least two judges")
        for j in self.judgments:
            if j.agenda != self.agenda:
                raise DataError("all judgment sets must share the profile's agenda")
        q = Fraction(self.quota)
        if not 0 <= q < 1:
            raise DataError(f"quota must lie in [0, 1), got {q}")
        object.__setattr__(self, "quota", q)

    @property
    def n_judges(self) -> int:
        return len(self.judgments)

    @cached_property
    def thresholds(self) -> ThresholdPair:
        return thresholds(self.quota, self.n_judges)

    @cached_property
    def support(self) -> tuple[int, ...]:
        """Number of judges accepting each premise."""
        return tuple(
            sum(j.premise_values[v] for j in self.judgments)
            for v in range(self.agenda.n_premises)
        )

    def support_excluding(self, judge: int) -> tuple[int, ...]:
        """Per-premise support among all judges except ``judge``."""
        row = self.judgments[judge].premise_values
        return tuple(s - int(v) for s, v in zip(self.support, row))


@dataclass(frozen=True)
class Outcome:
    agenda: Agenda
    premise_values: tuple[bool, ...]
    conclusion_values: tuple[bool, ...]

    def value(self, name: str) -> bool:
        idx = self.agenda.premise_index.get(name)
        if idx is not None:
            return self.premise_values[idx]
        return self.conclusion_values[self.agenda.conclusion_index[name]]


def outcome(profile: Profile) -> Outcome:
    """Collective outcome of the uniform quota rule on ``profile``."""
    accept = profile.thresholds.accept
    prem = tuple(s >= accept for s in profile.support)
    return Outcome(profile.agenda, prem, profile.agenda.evaluate_conclusions(prem))


def decision_variables(profile: Profile, judge: int) -> tuple[int, ...]:
    """Premises whose collective value follows ``judge``'s reported value.

    These are exactly the premises whose support among the other judges sits
    one short of the acceptance threshold; everything else is out of the
    judge's reach no matter what they report.
    """
    accept = profile.thresholds.accept
    others = profile.support_excluding(judge)
    return tuple(v for v, s in enumerate(others) if s == accept - 1)


def outcome_with_replacement(profile: Profile, judge: int, premise_values) -> Outcome:
    """Outcome after ``judge`` swaps in a different complete premise assignment."""
    values = tuple(bool(b) for b in premise_values)
    if len(values) != profile.agenda.n_premises:
        raise DataError("replacement must assign every premise")
    accept = profile.thresholds.accept
    others = profile.support_excluding(judge)
    prem = tuple(s + int(v) >= accept for s, v in zip(others, values))
    return Outcome(profile.agenda, prem, profile.agenda.evaluate_conclusions(prem))


@dataclass(frozen=True)
class DesiredSet:
    """Target values for a subset of the agenda, keyed by index.

    Goals are stored sorted by index so equal desired sets compare equal.
    """

    premise_goals: tuple[tuple[int, bool], ...]
    conclusion_goals: tuple[tuple[int, bool], ...]

    def __post_init__(self):
        for goals in (self.premise_goals, self.conclusion_goals):
            idxs = [i for i, _ in goals]
            if idxs != sorted(set(idxs)):
                raise DataError("desired set indices must be unique and sorted")

    @classmethod
    def from_goals(
        cls,
        premises: Mapping[int, bool] | None = None,
        conclusions: Mapping[int, bool] | None = None,
    ) -> "DesiredSet":
        p = tuple(sorted((i, bool(b)) for i, b in (premises or {}).items()))
        c = tuple(sorted((i, bool(b)) for i, b in (conclusions or {}).items()))
        return cls(p, c)

    @cached_property
    def premise_map(self) -> dict[int, bool]:
        return dict(self.premise_goals)

    @cached_property
    def conclusion_map(self) -> dict[int, bool]:
        return dict(self.conclusion_goals)

    def __len__(self) -> int:
        return len(self.premise_goals) + len(self.conclusion_goals)

    def validate_against(self, agenda: Agenda) -> None:
        for i, _ in self.premise_goals:
            if not 0 <= i < agenda.n_premises:
                raise DataError(f"desired premise index {i} out of range")
        for i, _ in self.conclusion_goals:
            if not 0 <= i < len(agenda.conclusions):
                raise DataError(f"desired conclusion index {i} out of range")


def unmet_goals(desired: DesiredSet, out: Outcome) -> int:
    """Number of desired entries the outcome gets wrong."""
    bad = sum(out.premise_values[i] != b for i, b in desired.premise_goals)
    bad += sum(out.conclusion_values[i] != b for i, b in desired.conclusion_goals)
    return bad


def _fresh_name(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def normalize_desired(
    profile: Profile,
    desired: DesiredSet,
    budget: int | None = None,
) -> tuple[Profile, DesiredSet]:
    """Rewrite an instance so the desired set speaks only about conclusions.

    Conclusions without a goal are dropped from the agenda.  Each desired
    premise ``x`` with goal ``b`` becomes a fresh conclusion ``x or x_aux``
    with the same goal, where ``x_aux`` is a fresh premise rejected by every
    judge.  The collective value of ``x_aux`` is pinned to reject, so the new
    conclusion always carries exactly the value of ``x``.

    That pinning only holds while nobody can push ``x_aux`` through: with an
    acceptance threshold of 1 a single report would flip it, and a briber
    with ``budget`` at or above the threshold could buy it, so both cases
    are rejected.
    """
    desired.validate_against(profile.agenda)
    accept = profile.thresholds.accept
    if accept == 1:
        raise DataError("cannot add pinned auxiliary premises: acceptance threshold is 1")
    if budget is not None and budget >= accept:
        raise DataError(
            f"budget {budget} reaches the acceptance threshold {accept}; "
            "auxiliary premises would not stay pinned"
        )

    agenda = profile.agenda
    taken = set(agenda.premises) | {n for n, _ in agenda.conclusions}
    new_premises = list(agenda.premises)
    aux_index: dict[int, int] = {}
    for i, _ in desired.premise_goals:
        aux_index[i] = len(new_premises)
        new_premises.append(_fresh_name(agenda.premises[i] + "_aux", taken))

    goal_map = desired.conclusion_map
    kept = [(j, name, cl) for j, (name, cl) in enumerate(agenda.conclusions) if j in goal_map]
    new_conclusions = [(name, cl) for _, name, cl in kept]
    new_goals = {pos_new: goal_map[j] for pos_new, (j, _, _) in enumerate(kept)}
    for i, b in desired.premise_goals:
        name = _fresh_name(agenda.premises[i] + "_goal", taken)
        new_goals[len(new_conclusions)] = b
        new_conclusions.append((name, Clause((pos(i), pos(aux_index[i])))))

    new_agenda = Agenda(tuple(new_premises), tuple(new_conclusions))
    pad = (False,) * len(aux_index)
    new_judgments = tuple(
        JudgmentSet(new_agenda, j.premise_values + pad) for j in profile.judgments
    )
    new_profile = Profile(new_agenda, new_judgments, profile.quota)
    return new_profile, DesiredSet.from_goals(conclusions=new_goals)


# ---------------------------------------------------------------------------
# Text instance format


@dataclass(frozen=True)
class ParsedInstance:
    profile: Profile
    manipulator: int | None = None  # 0-based judge index
    desired: DesiredSet | None = None
    budget: int | None = None


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def _parse_assignment(tok: str, lineno: int) -> tuple[str, bool]:
    name, sep, val = tok.partition("=")
    if not sep or val not in ("0", "1") or not _NAME_RE.match(name):
        raise DataError(f"expected name=0 or name=1, got {tok!r}", lineno)
    return name, val == "1"


def parse_instance(text: str) -> ParsedInstance:
    """Parse the plain-text instance format.

    Every problem in the package is written in one shared format::

        judges 3
        quota 1/2
        vars s c m h
        conc e = -s c
        conc r = -m -h
        judge 1: s=1 c=0 m=1 h=1
        ...
        manipulator 3
        desired: e=1 r=1
        budget 1

    ``#`` starts a comment, judge indices are 1-based, and ``-name`` inside a
    ``conc`` line negates a premise.  Errors report the offending line.
    """
    n_judges = None
    quota = None
    var_names: list[str] | None = None
    conc_lines: list[tuple[str, Clause, int]] = []
    judge_rows: dict[int, tuple[bool, ...]] = {}
    manipulator = None
    desired_line = None
    budget = None

    def need_vars(lineno):
        if var_names is None:
            raise DataError("vars must be declared first", lineno)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "judges":
            try:
                n_judges = int(rest)
            except ValueError:
                raise DataError(f"bad judge count {rest!r}", lineno) from None
            if n_judges < 2:
                raise DataError("need at least two judges", lineno)
        elif key == "quota":
            try:
                quota = Fraction(rest)
            except (ValueError, ZeroDivisionError):
                raise DataError(f"bad quota {rest!r}", lineno) from None
        elif key == "vars":
            if var_names is not None:
                raise DataError("vars declared twice", lineno)
            var_names = rest.split()
            if not var_names:
                raise DataError("vars line is empty", lineno)
            for name in var_names:
                if not _NAME_RE.match(name):
                    raise DataError(f"bad variable name {name!r}", lineno)
            if len(set(var_names)) != len(var_names):
                raise DataError("duplicate variable name", lineno)
        elif key == "conc":
            need_vars(lineno)
            name, sep, body = rest.partition("=")
            name = name.strip()
            if not sep or not _NAME_RE.match(name):
                raise DataError("expected: conc NAME = literals", lineno)
            lits = []
            for tok in body.split():
                negated = tok.startswith("-")
                vname = tok[1:] if negated else tok
                if vname not in var_names:
                    raise DataError(f"unknown variable {vname!r} in conclusion", lineno)
                lits.append(Literal(var_names.index(vname), negated))
            if not lits:
                raise DataError(f"conclusion {name!r} has no literals", lineno)
            try:
                conc_lines.append((name, Clause(tuple(lits)), lineno))
            except DataError as e:
                raise DataError(str(e), lineno) from None
        elif key == "judge":
            need_vars(lineno)
            head, sep, body = rest.partition(":")
            if not sep:
                raise DataError("expected: judge N: assignments", lineno)
            try:
                idx = int(head.strip())
            except ValueError:
                raise DataError(f"bad judge index {head.strip()!r}", lineno) from None
            if n_judges is None or not 1 <= idx <= n_judges:
                raise DataError(f"judge index {idx} out of range", lineno)
            if idx in judge_rows:
                raise DataError(f"judge {idx} declared twice", lineno)
            seen: dict[str, bool] = {}
            for tok in body.split():
                name, val = _parse_assignment(tok, lineno)
                if name not in var_names:
                    raise DataError(f"unknown variable {name!r}", lineno)
                if name in seen:
                    raise DataError(f"variable {name!r} assigned twice", lineno)
                seen[name] = val
            missing = [v for v in var_names if v not in seen]
            if missing:
                raise DataError(f"judge {idx} missing values for {' '.join(missing)}", lineno)
            judge_rows[idx] = tuple(seen[v] for v in var_names)
        elif key == "manipulator":
            try:
                manipulator = int(rest)
            except ValueError:
                raise DataError(f"bad manipulator index {rest!r}", lineno) from None
        elif key == "desired:" or (key == "desired" and rest.startswith(":")):
            body = rest[1:] if key == "desired" else rest
            desired_line = (body, lineno)
        elif key == "budget":
            try:
                budget = int(rest)
            except ValueError:
                raise DataError(f"bad budget {rest!r}", lineno) from None
            if budget < 0:
                raise DataError("budget must be non-negative", lineno)
        else:
            raise DataError(f"unknown directive {key!r}", lineno)

    if n_judges is None:
        raise DataError("missing 'judges' line")
    if quota is None:
        raise DataError("missing 'quota' line")
    if var_names is None:
        raise DataError("missing 'vars' line")
    missing_judges = [str(i) for i in range(1, n_judges + 1) if i not in judge_rows]
    if missing_judges:
        raise DataError(f"missing judge lines for {' '.join(missing_judges)}")

    agenda = Agenda(tuple(var_names), tuple((n, c) for n, c, _ in conc_lines))
    try:
        profile = Profile(
            agenda,
            tuple(JudgmentSet(agenda, judge_rows[i]) for i in range(1, n_judges + 1)),
            quota,
        )
    except DataError:
        raise

    manip_idx = None
    if manipulator is not None:
        if not 1 <= manipulator <= n_judges:
            raise DataError(f"manipulator index {manipulator} out of range")
        manip_idx = manipulator - 1

    desired = None
    if desired_line is not None:
        body, lineno = desired_line
        prem_goals: dict[int, bool] = {}
        conc_goals: dict[int, bool] = {}
        for tok in body.split():
            name, val = _parse_assignment(tok, lineno)
            if name in agenda.premise_index:
                prem_goals[agenda.premise_index[name]] = val
            elif name in agenda.conclusion_index:
                conc_goals[agenda.conclusion_index[name]] = val
            else:
                raise DataError(f"unknown agenda entry {name!r}", lineno)
        desired = DesiredSet.from_goals(prem_goals, conc_goals)
        from . import satkit

        verdict = satkit.consistency_check(desired, agenda)
        if not verdict.satisfiable:
            raise DataError("desired set is logically inconsistent", lineno)

    return ParsedInstance(profile, manip_idx, desired, budget)


def format_instance(inst: ParsedInstance) -> str:
    """Render an instance in the text format; parsing it back gives ``inst``."""
    profile = inst.profile
    agenda = profile.agenda
    lines = [f"judges {profile.n_judges}", f"quota {profile.quota}"]
    lines.append("vars " + " ".join(agenda.premises))
    for name, cl in agenda.conclusions:
        lits = " ".join(
            ("-" if lit.negated else "") + agenda.premises[lit.var] for lit in cl
        )
        lines.append(f"conc {name} = {lits}")
    for i, j in enumerate(profile.judgments, start=1):
        row = " ".join(
            f"{name}={int(v)}" for name, v in zip(agenda.premises, j.premise_values)
        )
        lines.append(f"judge {i}: {row}")
    if inst.manipulator is not None:
        lines.append(f"manipulator {inst.manipulator + 1}")
    if inst.desired is not None:
        parts = [f"{agenda.premises[i]}={int(b)}" for i, b in inst.desired.premise_goals]
        parts += [
            f"{agenda.conclusions[i][0]}={int(b)}" for i, b in inst.desired.conclusion_goals
        ]
        lines.append("desired: " + " ".join(parts))
    if inst.budget is not None:
        lines.append(f"budget {inst.budget}")
    return "\n".join(lines) + "\n"
