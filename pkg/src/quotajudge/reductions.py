"""Instance generators for the hardness constructions, plus quota transforms.

Each ``gen_*`` function deterministically builds the judgment-aggregation
instance that the matching hardness argument derives from its source object
(a graph, a monotone formula, a 0/1 matrix, another instance).  The point of
keeping them executable is that every argument can then be replayed end to
end: ``verify_reduction`` decides the source with a dumb brute-force decider,
decides the generated image with one of the independent oracles, and reports
whether the two verdicts agree.

Two transforms round the set out: ``quota_lift`` rebuilds an instance under a
different quota without changing any verdict, and ``mirror_negate`` swaps the
polarity of every premise, clause literal, and premise goal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .bribe import BriberyInstance
from .manip import ManipInstance
from .model import (
    Agenda,
    Clause,
    DataError,
    DesiredSet,
    JudgmentSet,
    Literal,
    Profile,
    decision_variables,
    neg,
    outcome,
    pos,
    unmet_goals,
)
from .oracle import bribery_oracle, manip_oracle, microbribery_oracle, sat_oracle
from .satkit import SatProblem


# --------------------------------------------------------------------------
# graphs and the other source objects


def _check_edges(n: int, edges, what: str) -> None:
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise DataError(f"{what} edge {e!r} is not a pair")
        u, v = e
        if not (isinstance(u, int) and isinstance(v, int)):
            raise DataError(f"{what} edge {e!r} has non-integer endpoints")
        if not 0 <= u < v < n:
            raise DataError(
                f"{what} edge {e!r} must satisfy 0 <= u < v < {n}"
            )
        if e in seen:
            raise DataError(f"duplicate {what} edge {e!r}")
        seen.add(e)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0..n_vertices-1``.

    Edges are stored sorted with ``u < v``; use :meth:`of` to build one from
    unordered pairs.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_vertices < 0:
            raise DataError("vertex count must not be negative")
        _check_edges(self.n_vertices, self.edges, "graph")
        if list(self.edges) != sorted(self.edges):
            raise DataError("edges must be sorted; use Graph.of")

    @classmethod
    def of(cls, n_vertices: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        edges = sorted((min(u, v), max(u, v)) for u, v in pairs)
        return cls(n_vertices, tuple(edges))

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def degrees(self) -> tuple[int, ...]:
        d = [0] * self.n_vertices
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return tuple(d)

    def regular_degree(self) -> int | None:
        """The common degree, or None when the graph is not regular (or empty)."""
        degs = set(self.degrees())
        if len(degs) != 1:
            return None
        return degs.pop()


def complete_graph(n: int) -> Graph:
    return Graph.of(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DataError("a cycle needs at least three vertices")
    return Graph.of(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.of(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def prism_graph() -> Graph:
    """Two triangles joined by a perfect matching (3-regular, 6 vertices)."""
    tri = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
    return Graph.of(6, tri + [(i, i + 3) for i in range(3)])


@dataclass(frozen=True)
class PvcGraph:
    """A graph with its edges split into a positive and a negative class.

    The associated decision problem asks for a vertex set that covers
    strictly more positive than negative edges (an edge counts as covered
    when at least one endpoint is chosen).
    """

    n_vertices: int
    eplus: tuple[tuple[int, int], ...]
    eminus: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_vertices < 0:
            raise DataError("vertex count must not be negative")
        _check_edges(self.n_vertices, self.eplus, "positive")
        _check_edges(self.n_vertices, self.eminus, "negative")
        if set(self.eplus) & set(self.eminus):
            raise DataError("positive and negative edge sets must be disjoint")
        if list(self.eplus) != sorted(self.eplus) or list(self.eminus) != sorted(
            self.eminus
        ):
            raise DataError("edges must be sorted; use PvcGraph.of")

    @classmethod
    def of(cls, n_vertices, plus, minus) -> "PvcGraph":
        ep = sorted((min(u, v), max(u, v)) for u, v in plus)
        em = sorted((min(u, v), max(u, v)) for u, v in minus)
        return cls(n_vertices, tuple(ep), tuple(em))


# --------------------------------------------------------------------------
# the plain-text formats for source objects
#
# Graphs:   "vertices N" then one "U V" line per edge (0-based endpoints).
# Split graphs: same, but each edge line starts with "+" or "-".
# Matrices: one row of 0/1 entries per line, whitespace-separated.
# Formulas: "vars N" then one clause per line as signed 1-based variable
#           numbers, DIMACS style ("1 -3" means x1 or not x3).
# "#" starts a comment in all four formats.


def _significant_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def _parse_vertex_header(lines, what):
    if not lines:
        raise DataError(f"empty {what} file")
    lineno, line = lines[0]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "vertices" or not parts[1].isdigit():
        raise DataError(f"expected 'vertices N', got {line!r}", lineno)
    return int(parts[1])


def _parse_endpoints(parts, lineno):
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError:
        raise DataError(f"bad edge endpoints {parts!r}", lineno) from None
    if u == v:
        raise DataError(f"self-loop at vertex {u}", lineno)
    return min(u, v), max(u, v)


def parse_graph(text: str) -> Graph:
    lines = _significant_lines(text)
    n = _parse_vertex_header(lines, "graph")
    pairs = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise DataError(f"expected 'U V', got {line!r}", lineno)
        pairs.append(_parse_endpoints(parts, lineno))
    try:
        return Graph.of(n, pairs)
    except DataError as exc:
        raise DataError(f"bad graph: {exc}") from None


def format_graph(g: Graph) -> str:
    lines = [f"vertices {g.n_vertices}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_pvc(text: str) -> PvcGraph:
    lines = _significant_lines(text)
    n = _parse_vertex_header(lines, "split-graph")
    plus, minus = [], []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] not in "+-":
            raise DataError(f"expected '+ U V' or '- U V', got {line!r}", lineno)
        (plus if parts[0] == "+" else minus).append(
            _parse_endpoints(parts[1:], lineno)
        )
    try:
        return PvcGraph.of(n, plus, minus)
    except DataError as exc:
        raise DataError(f"bad split graph: {exc}") from None


def format_pvc(p: PvcGraph) -> str:
    lines = [f"vertices {p.n_vertices}"]
    lines += [f"+ {u} {v}" for u, v in p.eplus]
    lines += [f"- {u} {v}" for u, v in p.eminus]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> tuple[tuple[int, ...], ...]:
    rows = []
    width = None
    for lineno, line in _significant_lines(text):
        parts = line.split()
        if any(p not in ("0", "1") for p in parts):
            raise DataError(f"matrix entries must be 0 or 1, got {line!r}", lineno)
        row = tuple(int(p) for p in parts)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise DataError(
                f"row has {len(row)} entries, expected {width}", lineno
            )
        rows.append(row)
    if not rows or width == 0:
        raise DataError("matrix must have at least one row and one column")
    return tuple(rows)


def format_matrix(rows: Sequence[Sequence[int]]) -> str:
    return "\n".join(" ".join(str(int(e)) for e in row) for row in rows) + "\n"


def parse_formula(text: str) -> SatProblem:
    lines = _significant_lines(text)
    if not lines:
        raise DataError("empty formula file")
    lineno, line = lines[0]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "vars" or not parts[1].isdigit():
        raise DataError(f"expected 'vars N', got {line!r}", lineno)
    n = int(parts[1])
    clauses = []
    for lineno, line in lines[1:]:
        lits = []
        for tok in line.split():
            try:
                val = int(tok)
            except ValueError:
                raise DataError(f"bad literal {tok!r}", lineno) from None
            if val == 0 or abs(val) > n:
                raise DataError(f"literal {val} out of range", lineno)
            lits.append(Literal(abs(val) - 1, val < 0))
        try:
            clauses.append(Clause(tuple(lits)))
        except DataError as exc:
            raise DataError(str(exc), lineno) from None
    return SatProblem.from_parts(n, clauses)


def format_formula(problem: SatProblem) -> str:
    if problem.frozen:
        raise DataError("formulas with frozen variables have no text form")
    lines = [f"vars {problem.n_vars}"]
    for cl in problem.clauses:
        lines.append(
            " ".join(str(-(l.var + 1) if l.negated else l.var + 1) for l in cl)
        )
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# brute-force deciders for the source problems


def clique_exists(g: Graph, k: int) -> bool:
    """Is there a clique on at least ``k`` vertices?"""
    if k <= 1:
        return k <= 0 or g.n_vertices >= 1
    if k > g.n_vertices:
        return False
    for sub in combinations(range(g.n_vertices), k):
        if all(g.has_edge(u, v) for u, v in combinations(sub, 2)):
            return True
    return False


def vertex_cover_exists(g: Graph, k: int) -> bool:
    """Is there a set of at most ``k`` vertices touching every edge?"""
    if k < 0:
        return False
    if k >= g.n_vertices or not g.edges:
        return True
    for sub in combinations(range(g.n_vertices), k):
        chosen = set(sub)
        if all(u in chosen or v in chosen for u, v in g.edges):
            return True
    return False


def positive_cover_exists(p: PvcGraph) -> bool:
    """Is there a vertex set covering strictly more positive than negative edges?

    Only vertices that touch a positive edge are worth choosing: dropping any
    other vertex keeps the positive count and can only lower the negative one,
    so the search space shrinks to subsets of the positively-involved vertices.
    """
    candidates = sorted({v for e in p.eplus for v in e})
    for r in range(len(candidates) + 1):
        for sub in combinations(candidates, r):
            chosen = set(sub)
            covered_plus = sum(u in chosen or v in chosen for u, v in p.eplus)
            covered_minus = sum(u in chosen or v in chosen for u, v in p.eminus)
            if covered_plus > covered_minus:
                return True
    return False


def lobbying_feasible(rows: Sequence[Sequence[int]], k: int) -> bool:
    """Can rewriting ``k`` rows give every column a strict majority of ones?"""
    m = len(rows)
    if k < 0:
        return False
    k = min(k, m)
    n = len(rows[0])
    for sub in combinations(range(m), k):
        chosen = set(sub)
        ok = True
        for col in range(n):
            ones = sum(rows[j][col] for j in range(m) if j not in chosen)
            if 2 * (ones + k) <= m:
                ok = False
                break
        if ok:
            return True
    return False


def colorable(g: Graph, k: int) -> bool:
    """Proper vertex colouring with ``k`` colours, by plain enumeration."""
    if g.n_vertices == 0:
        return True
    if k <= 0:
        return False
    for colours in product(range(k), repeat=g.n_vertices):
        if all(colours[u] != colours[v] for u, v in g.edges):
            return True
    return False


# --------------------------------------------------------------------------
# quota and polarity transforms


def quota_lift(inst: ManipInstance, q) -> ManipInstance:
    """Rebuild ``inst`` under quota ``q`` without changing any verdict.

    Every premise of the source is, from the manipulator's seat, either
    decided by them or completely out of reach.  The lifted profile recreates
    exactly that situation under the new quota: decided premises get one
    supporter short of the new threshold among the other judges, and every
    out-of-reach premise is reported unanimously at its collective value.
    The manipulator keeps their row and their goals, so each replacement
    report produces the same outcome in both instances.
    """
    q = Fraction(q)
    if not 0 < q < 1:
        raise DataError(f"lifted quota must lie strictly between 0 and 1, got {q}")
    n = max(math.ceil(1 / q), math.ceil(1 / (1 - q))) + 1
    tau = math.floor(q * n + 1)
    assert 2 <= tau <= n - 1  # guaranteed by the choice of n

    profile = inst.profile
    agenda = profile.agenda
    decided = set(inst.decision_vars)
    truth = inst.truthful.premise_values
    own = profile.judgments[inst.manipulator].premise_values

    rows = []
    for j in range(n - 1):
        rows.append(
            tuple(
                (j < tau - 1) if v in decided else truth[v]
                for v in range(agenda.n_premises)
            )
        )
    rows.append(own)
    lifted = Profile(agenda, tuple(JudgmentSet(agenda, r) for r in rows), q)
    out = ManipInstance(lifted, n - 1, inst.desired)
    assert out.decision_vars == inst.decision_vars
    assert out.truthful.premise_values == inst.truthful.premise_values
    return out


def _mirror_clause(cl: Clause) -> Clause:
    return Clause(tuple(Literal(l.var, not l.negated) for l in cl))


def mirror_negate(inst: ManipInstance) -> ManipInstance:
    """Swap the polarity of every premise throughout the instance.

    Judgment rows are complemented, every clause literal is negated, and
    premise goals are flipped; conclusion goals stay put because a mirrored
    clause evaluates on complemented values to exactly its old value.  The
    mirrored quota keeps the acceptance threshold complementary
    (``accept' = n - accept + 1``), which needs a small correction when
    ``q * n`` is an integer.
    """
    profile = inst.profile
    n = profile.n_judges
    q = profile.quota
    if (q * n).denominator == 1:
        q2 = 1 - q - Fraction(1, n)
    else:
        q2 = 1 - q
    agenda = profile.agenda
    agenda2 = Agenda(
        agenda.premises,
        tuple((name, _mirror_clause(cl)) for name, cl in agenda.conclusions),
    )
    rows = tuple(
        JudgmentSet(agenda2, tuple(not v for v in j.premise_values))
        for j in profile.judgments
    )
    profile2 = Profile(agenda2, rows, q2)
    assert profile2.thresholds.accept == n - profile.thresholds.accept + 1
    desired2 = DesiredSet(
        tuple((i, not b) for i, b in inst.desired.premise_goals),
        inst.desired.conclusion_goals,
    )
    return ManipInstance(profile2, inst.manipulator, desired2)


# --------------------------------------------------------------------------
# shared scaffolding for the generated instances


def _build_instance(premises, rows, conclusions, manipulator, quota, desired):
    """Assemble a ManipInstance from name/value lists.

    ``premises`` is a list of names, ``rows`` one premise-value list per
    judge, ``conclusions`` a list of (name, clause) pairs, and ``desired``
    either a DesiredSet or the string "conclusions" meaning: every conclusion
    at the manipulator's own value.
    """
    agenda = Agenda(tuple(premises), tuple(conclusions))
    judgments = tuple(
        JudgmentSet(agenda, tuple(bool(v) for v in row)) for row in rows
    )
    profile = Profile(agenda, judgments, quota)
    if desired == "conclusions":
        own = judgments[manipulator].conclusion_values
        desired = DesiredSet.from_goals(
            conclusions={i: own[i] for i in range(len(conclusions))}
        )
    return ManipInstance(profile, manipulator, desired)


def _split_uniform_monotone(f: SatProblem, pos_len, neg_len):
    """Partition a monotone formula's clauses by polarity and check lengths.

    ``pos_len``/``neg_len`` give the required clause length for each side
    (None accepts any uniform length and returns the one observed).
    """
    if f.frozen:
        raise DataError("formulas with frozen variables are not supported here")
    positive, negative = [], []
    for cl in f.clauses:
        negs = sum(l.negated for l in cl)
        if negs == 0:
            positive.append(cl)
        elif negs == len(cl.literals):
            negative.append(cl)
        else:
            raise DataError(
                "every clause must be all-positive or all-negative, "
                f"got a mixed one with {negs}/{len(cl.literals)} negations"
            )
    for side, want, name in ((positive, pos_len, "positive"), (negative, neg_len, "negative")):
        lengths = {len(cl.literals) for cl in side}
        if want is not None and lengths - {want}:
            raise DataError(
                f"{name} clauses must all have length {want}, got {sorted(lengths)}"
            )
        if want is None and len(lengths) > 1:
            raise DataError(
                f"{name} clauses must share one length, got {sorted(lengths)}"
            )
    return positive, negative


def _shift_clause(cl: Clause, offset: int) -> Clause:
    return Clause(tuple(Literal(l.var + offset, l.negated) for l in cl))


# --------------------------------------------------------------------------
# necessary-manipulation hardness


def gen_necessary_mplus(f: SatProblem) -> ManipInstance:
    """Instance whose necessary manipulation solves a monotone-SAT question.

    ``f`` must consist of all-positive clauses of one length and all-negative
    clauses of one length (at least 2).  The image pads each positive clause
    with a fresh premise ``y1``, keeps negative clauses verbatim, and adds a
    single all-negative clause over the ``y`` block; the manipulating third
    judge decides every ``x`` and ``y1``, and can meet the one unmet goal
    exactly by switching ``y1`` off and exhibiting a model of ``f``.
    """
    positive, negative = _split_uniform_monotone(f, None, None)
    k2 = len(negative[0].literals) if negative else 2
    if k2 < 2:
        raise DataError("negative clauses must have length at least 2")
    n = f.n_vars
    premises = [f"x{i + 1}" for i in range(n)] + [f"y{t + 1}" for t in range(k2)]
    rows = [
        [True] * (n + k2),
        [False] * n + [False] + [True] * (k2 - 1),
        [False] * n + [True] + [False] * (k2 - 1),
    ]
    conclusions = []
    for idx, cl in enumerate(positive, start=1):
        conclusions.append((f"cp{idx}", Clause(cl.literals + (pos(n),))))
    for idx, cl in enumerate(negative, start=1):
        conclusions.append((f"cn{idx}", cl))
    conclusions.append(("ny", Clause(tuple(neg(n + t) for t in range(k2)))))
    return _build_instance(
        premises, rows, conclusions, 2, Fraction(1, 2), "conclusions"
    )


def gen_necessary_m2p_m3m(f: SatProblem) -> ManipInstance:
    """Necessary-manipulation image for positive pairs plus negative triples.

    The clause family of the image is just ``{x or y}`` and
    ``{not x or not y or not z}``: positive source clauses reappear on a
    shadow ``z`` block, negative ones verbatim on ``x``, and chains
    ``x_i or y_i``, ``y_i or z_i``, ``not x_i or not y_i or not w``,
    ``not y_i or not z_i or not w`` force ``x = z`` whenever the manipulator
    switches ``w`` on to win the one unmet goal ``w or v``.
    """
    positive, negative = _split_uniform_monotone(f, 2, 3)
    n = f.n_vars
    w, v = 3 * n, 3 * n + 1
    premises = (
        [f"x{i + 1}" for i in range(n)]
        + [f"y{i + 1}" for i in range(n)]
        + [f"z{i + 1}" for i in range(n)]
        + ["w", "v"]
    )
    rows = [
        [True] * (3 * n) + [True, False],
        [False] * (3 * n) + [False, False],
        [False] * n + [True] * (2 * n) + [False, True],
    ]
    conclusions = [("wv", Clause((pos(w), pos(v))))]
    for idx, cl in enumerate(negative, start=1):
        conclusions.append((f"fn{idx}", cl))
    for idx, cl in enumerate(positive, start=1):
        conclusions.append((f"fz{idx}", _shift_clause(cl, 2 * n)))
    for i in range(n):
        conclusions.append((f"nxyw{i + 1}", Clause((neg(i), neg(n + i), neg(w)))))
    for i in range(n):
        conclusions.append(
            (f"nyzw{i + 1}", Clause((neg(n + i), neg(2 * n + i), neg(w))))
        )
    for i in range(n):
        conclusions.append((f"xy{i + 1}", Clause((pos(i), pos(n + i)))))
    for i in range(n):
        conclusions.append((f"yz{i + 1}", Clause((pos(n + i), pos(2 * n + i)))))
    return _build_instance(
        premises, rows, conclusions, 2, Fraction(1, 2), "conclusions"
    )


def _mirror_formula(f: SatProblem) -> SatProblem:
    return SatProblem.from_parts(
        f.n_vars, [_mirror_clause(cl) for cl in f.clauses]
    )


def gen_necessary_mms(f: SatProblem, i: int, j: int) -> ManipInstance:
    """Necessary-manipulation image for pairs plus one mixed clause shape.

    ``f`` mixes positive pairs, negative pairs, and clauses of length ``i``
    with exactly ``j`` negated literals (3 <= i, 0 < j < i).  For ``j >= 2``
    the construction pads the two blocking clauses of the pairs-only image
    with stuck filler premises until they land in the mixed shape; filler
    values are shared by all judges, so the padding cannot move.  ``j == 1``
    goes through the polarity mirror of the ``(i, i-1)`` image.
    """
    if i < 3:
        raise DataError("the mixed clause length must be at least 3")
    if not 0 < j < i:
        raise DataError("the mixed clause must be neither monotone nor antitone")
    if j == 1:
        return mirror_negate(gen_necessary_mms(_mirror_formula(f), i, i - 1))

    if f.frozen:
        raise DataError("formulas with frozen variables are not supported here")
    f1, f2, f3 = [], [], []
    for cl in f.clauses:
        negs = sum(l.negated for l in cl)
        shape = (len(cl.literals), negs)
        if shape == (2, 0):
            f1.append(cl)
        elif shape == (2, 2):
            f2.append(cl)
        elif shape == (i, j):
            f3.append(cl)
        else:
            raise DataError(
                f"clause shape {shape} is neither a pair nor ({i}, {j})"
            )

    n = f.n_vars
    n_pad = i - 3
    w = 3 * n + n_pad
    v = w + 1
    u = [3 * n + t for t in range(n_pad)]
    # Filler premise t is stuck true exactly when its clause slot is negated.
    u_vals = [t < j - 2 for t in range(n_pad)]
    premises = (
        [f"x{k + 1}" for k in range(n)]
        + [f"y{k + 1}" for k in range(n)]
        + [f"z{k + 1}" for k in range(n)]
        + [f"u{t + 1}" for t in range(n_pad)]
        + ["w", "v"]
    )
    rows = [
        [True] * (3 * n) + u_vals + [True, True],
        [False] * (3 * n) + u_vals + [False, True],
        [False] * n + [True] * (2 * n) + u_vals + [True, False],
    ]

    def padded(first: Literal, second: Literal) -> Clause:
        lits = [first, second]
        lits += [neg(u[t]) for t in range(j - 2)]
        lits.append(pos(w))
        lits += [pos(u[t]) for t in range(j - 2, n_pad)]
        return Clause(tuple(lits))

    conclusions = []
    for idx, cl in enumerate(f1, start=1):
        conclusions.append((f"fz{idx}", _shift_clause(cl, 2 * n)))
    for idx, cl in enumerate(f2, start=1):
        conclusions.append((f"fn{idx}", cl))
    for idx, cl in enumerate(f3, start=1):
        conclusions.append((f"fs{idx}", cl))
    conclusions.append(("nwv", Clause((neg(w), neg(v)))))
    for k in range(n):
        conclusions.append((f"pxyw{k + 1}", padded(neg(k), neg(n + k))))
    for k in range(n):
        conclusions.append((f"pyzw{k + 1}", padded(neg(n + k), neg(2 * n + k))))
    for k in range(n):
        conclusions.append((f"xy{k + 1}", Clause((pos(k), pos(n + k)))))
    for k in range(n):
        conclusions.append((f"yz{k + 1}", Clause((pos(n + k), pos(2 * n + k)))))
    return _build_instance(
        premises, rows, conclusions, 2, Fraction(1, 2), "conclusions"
    )


def gen_necessary_special_quota(f: SatProblem, n: int) -> ManipInstance:
    """Necessary manipulation under the near-unanimous quota ``(n-1)/n``.

    ``f`` mixes positive triples with negative pairs; the image runs ``n``
    judges, of which the last one manipulates, and acceptance requires all
    ``n`` votes.  Two stuck filler premises keep the single unmet goal
    ``v or u1 or u2`` winnable only by raising ``v``, which in turn forces
    ``w`` down and the chain premises into encoding a model of ``f``.
    """
    if n < 2:
        raise DataError("need at least two judges")
    positive, negative = _split_uniform_monotone(f, 3, 2)
    nv = f.n_vars
    w, v = 3 * nv, 3 * nv + 1
    u1, u2 = 3 * nv + 2, 3 * nv + 3
    premises = (
        [f"x{k + 1}" for k in range(nv)]
        + [f"y{k + 1}" for k in range(nv)]
        + [f"z{k + 1}" for k in range(nv)]
        + ["w", "v", "u1", "u2"]
    )
    helper_row = [True] * (3 * nv) + [True, True, False, False]
    manip_row = (
        [True] * nv + [False] * (2 * nv) + [True, False, True, True]
    )
    rows = [list(helper_row) for _ in range(n - 1)] + [manip_row]
    conclusions = [
        ("nwv", Clause((neg(w), neg(v)))),
        ("vuu", Clause((pos(v), pos(u1), pos(u2)))),
    ]
    for idx, cl in enumerate(positive, start=1):
        conclusions.append((f"fp{idx}", cl))
    for idx, cl in enumerate(negative, start=1):
        conclusions.append((f"fnz{idx}", _shift_clause(cl, 2 * nv)))
    for k in range(nv):
        conclusions.append((f"xyw{k + 1}", Clause((pos(k), pos(nv + k), pos(w)))))
    for k in range(nv):
        conclusions.append(
            (f"yzw{k + 1}", Clause((pos(nv + k), pos(2 * nv + k), pos(w))))
        )
    for k in range(nv):
        conclusions.append((f"nxy{k + 1}", Clause((neg(k), neg(nv + k)))))
    for k in range(nv):
        conclusions.append((f"nyz{k + 1}", Clause((neg(nv + k), neg(2 * nv + k)))))
    return _build_instance(
        premises, rows, conclusions, n - 1, Fraction(n - 1, n), "conclusions"
    )


# --------------------------------------------------------------------------
# pure clause-family gadgets (no judges involved)


def gen_sat_coloring(g: Graph, k: int) -> SatProblem:
    """Positive k-clauses plus negative pairs encoding proper k-colouring.

    Variable ``i*k + c`` says vertex ``i`` gets colour ``c``: one positive
    clause per vertex offers the colours, negative pairs forbid double
    colours and matching endpoint colours.
    """
    if k < 2:
        raise DataError("need at least two colours")
    clauses = []
    for i in range(g.n_vertices):
        clauses.append(Clause(tuple(pos(i * k + c) for c in range(k))))
    for i in range(g.n_vertices):
        for c, c2 in combinations(range(k), 2):
            clauses.append(Clause((neg(i * k + c), neg(i * k + c2))))
    for u, v in g.edges:
        for c in range(k):
            clauses.append(Clause((neg(u * k + c), neg(v * k + c))))
    return SatProblem.from_parts(g.n_vertices * k, clauses)


def gen_constant_gadget(k1: int, k2: int, target: int) -> SatProblem:
    """A monotone formula whose every model pins variable 0 at ``target``.

    Uses only all-positive clauses of length ``k1`` and all-negative clauses
    of length ``k2`` (both at least 2).  For ``target = 1``: blocks of fresh
    variables each carry a negative clause, so every model turns at least one
    variable per block off, and a positive clause joins variable 0 with every
    possible choice of one-per... of ``k1 - 1`` block variables — some such
    clause has all its block variables off, forcing variable 0 on.  The
    ``target = 0`` gadget is the polarity mirror with the roles swapped.
    """
    if k1 < 2 or k2 < 2:
        raise DataError("both clause lengths must be at least 2")
    if target not in (0, 1):
        raise DataError("target must be 0 or 1")
    if target == 1:
        n_blocks, block_size = k1 - 1, k2
    else:
        n_blocks, block_size = k2 - 1, k1
    n_vars = 1 + n_blocks * block_size
    others = range(1, n_vars)
    clauses = []
    for b in range(n_blocks):
        block = [1 + b * block_size + t for t in range(block_size)]
        if target == 1:
            clauses.append(Clause(tuple(neg(x) for x in block)))
        else:
            clauses.append(Clause(tuple(pos(x) for x in block)))
    for sub in combinations(others, n_blocks):
        if target == 1:
            clauses.append(Clause((pos(0),) + tuple(pos(x) for x in sub)))
        else:
            clauses.append(Clause((neg(0),) + tuple(neg(x) for x in sub)))
    return SatProblem.from_parts(n_vars, clauses)


# --------------------------------------------------------------------------
# closeness-manipulation (Hamming) hardness


def gen_pvc_from_cubic_vc(g: Graph, k: int) -> PvcGraph:
    """Split-edge graph whose positive-cover question is a vertex-cover one.

    ``g`` must be 3-regular and ``k`` a cover budget with ``n/2 <= k <= n``
    such that ``3n/4 - k/2`` is a whole number (the number of forced hub
    choices must come out integral, otherwise the counting argument has no
    witness to compare against and the input is rejected).
    """
    n = g.n_vertices
    if g.regular_degree() != 3:
        raise DataError("the source graph must be 3-regular")
    if not n / 2 <= k <= n:
        raise DataError(f"the cover budget must lie between {n}/2 and {n}")
    p = Fraction(3 * n, 4) - Fraction(k, 2)
    if p.denominator != 1 or p < 0:
        raise DataError(
            f"3n/4 - k/2 must be a nonnegative integer, got {p} "
            f"for n={n}, k={k}"
        )
    p = int(p)
    n_z = n - p
    y = [n, n + 1, n + 2]
    z = [n + 3 + t for t in range(n_z)]
    w = [n + 3 + n_z + t for t in range(3)]
    plus = list(g.edges)
    plus.append((y[0], y[1]))
    for zj in z:
        plus.append((zj, y[0]))
        plus.append((zj, y[1]))
    minus = []
    for x in range(n):
        for yt in y:
            minus.append((x, yt))
    for zj in z:
        for wt in w:
            minus.append((zj, wt))
    return PvcGraph.of(n + 3 + n_z + 3, plus, minus)


def gen_hamming_from_pvc(p: PvcGraph) -> ManipInstance:
    """Manipulation instance whose closeness question is a positive-cover one.

    Each vertex becomes a premise the third judge decides; positive edges
    become goal-met triples ``x_u or x_v or y`` and negative edges goal-unmet
    triples ``x_u or x_v or z``, with ``y`` and ``z`` stuck at rejected, so a
    report that raises a vertex set changes exactly the covered clauses.
    """
    n = p.n_vertices
    premises = [f"x{i + 1}" for i in range(n)] + ["y", "z"]
    rows = [
        [True] * n + [False, False],
        [False] * (n + 2),
        [False] * n + [True, False],
    ]
    y, z = n, n + 1
    conclusions = []
    for idx, (a, b) in enumerate(p.eplus, start=1):
        conclusions.append((f"ep{idx}", Clause((pos(a), pos(b), pos(y)))))
    for idx, (a, b) in enumerate(p.eminus, start=1):
        conclusions.append((f"em{idx}", Clause((pos(a), pos(b), pos(z)))))
    return _build_instance(
        premises, rows, conclusions, 2, Fraction(1, 2), "conclusions"
    )


def _regular_degree_or_fail(g: Graph) -> int:
    d = g.regular_degree()
    if d is None:
        raise DataError(
            "the source graph must be regular: the per-vertex copy count "
            "depends on one shared degree"
        )
    return d


def _copy_block(base_name, count, shared_idx, fresh, premises, rows, row_pattern):
    """Indices of the y-side premise for each of ``count`` clause copies.

    With shared copies every copy points at ``shared_idx``; in fresh mode a
    new premise (with the same three-judge column) is minted per copy.
    """
    if not fresh:
        return [shared_idx] * count
    out = []
    for t in range(count):
        out.append(len(premises))
        premises.append(f"{base_name}_{t + 1}")
        for row, val in zip(rows, row_pattern):
            row.append(val)
    return out


def gen_hamming_monotone_clique(
    g: Graph, k: int, fresh_vars: bool = False
) -> ManipInstance:
    """Closeness-manipulation instance that is feasible iff a k-clique exists.

    All conclusions are positive pairs.  The manipulator decides every vertex
    premise and the hub ``xs``; raising a vertex set S plus the hub loses the
    pair goals inside S, the covered edge goals and the hub pairs, and wins
    the per-vertex copies — the balance lands strictly negative exactly when
    S is a clique of size at least ``k``.  With ``fresh_vars`` every copied
    clause gets its own stuck partner premise instead of a shared one.
    """
    d = _regular_degree_or_fail(g)
    if k < 1:
        raise DataError("the clique size must be at least 1")
    n = g.n_vertices
    c_star = max(0, n - k + 1)
    premises = [f"x{i + 1}" for i in range(n)] + ["xs"]
    rows = [
        [True] * (n + 1),
        [False] * (n + 1),
        [False] * (n + 1),
    ]
    stuck = (False, False, True)  # the y-side three-judge column

    def add_stuck(name):
        premises.append(name)
        for row, val in zip(rows, stuck):
            row.append(val)
        return len(premises) - 1

    if fresh_vars:
        y = [
            _copy_block(f"y{i + 1}", d + 1, None, True, premises, rows, stuck)
            for i in range(n)
        ]
        ys = _copy_block("ys", c_star, None, True, premises, rows, stuck)
    else:
        y = [[add_stuck(f"y{i + 1}")] * (d + 1) for i in range(n)]
        ys_shared = add_stuck("ys")
        ys = [ys_shared] * c_star

    xs = n
    conclusions = []
    for a, b in combinations(range(n), 2):
        conclusions.append((f"nx{a + 1}_{b + 1}", Clause((neg(a), neg(b)))))
    for idx, (a, b) in enumerate(g.edges, start=1):
        conclusions.append((f"e{idx}", Clause((pos(a), pos(b)))))
    for i in range(n):
        conclusions.append((f"xs{i + 1}", Clause((pos(i), pos(xs)))))
    for i in range(n):
        for t in range(d + 1):
            conclusions.append((f"xy{i + 1}_{t + 1}", Clause((pos(i), pos(y[i][t])))))
    for t in range(c_star):
        conclusions.append((f"xsys{t + 1}", Clause((pos(xs), pos(ys[t])))))
    return _build_instance(
        premises, rows, conclusions, 2, Fraction(1, 2), "conclusions"
    )


@dataclass(frozen=True)
class _HornLayout:
    """Index bookkeeping for the pair-gadget construction."""

    n: int
    x: tuple[int, ...]
    xp: tuple[int, ...]
    xs: int
    e: tuple[tuple[int, ...], ...]
    f: tuple[tuple[int, ...], ...]
    nongadget_conc: tuple[int, ...]
    gadget_conc: tuple[tuple[int, ...], ...]


def _build_horn_clique(g: Graph, k: int, n_gadget, fresh_vars):
    d = _regular_degree_or_fail(g)
    if k < 1:
        raise DataError("the clique size must be at least 1")
    n = g.n_vertices
    c_star = max(0, n - k + 1)
    n_nongadget = (
        n * (n - 1) // 2 + len(g.edges) + n + n * (d + 1) + c_star
    )
    if n_gadget is None:
        # Large enough that a single mismatched vertex/shadow pair costs more
        # than every non-gadget goal put together.
        n_gadget = 2 * (n_nongadget + 2)
    if n_gadget < 2 or n_gadget % 2:
        raise DataError("the gadget size must be a positive even number")

    premises = [f"x{i + 1}" for i in range(n)]
    premises += [f"xp{i + 1}" for i in range(n)]
    premises.append("xs")
    rows = [
        [True] * n + [True] * n + [True],
        [False] * (2 * n + 1),
        [False] * n + [True] * n + [False],
    ]
    stuck = (False, False, True)

    def add(name, col):
        premises.append(name)
        for row, val in zip(rows, col):
            row.append(val)
        return len(premises) - 1

    if fresh_vars:
        y = [
            [add(f"y{i + 1}_{t + 1}", stuck) for t in range(d + 1)]
            for i in range(n)
        ]
        ys = [add(f"ys{t + 1}", stuck) for t in range(c_star)]
    else:
        y = [[add(f"y{i + 1}", stuck)] * (d + 1) for i in range(n)]
        shared = add("ys", stuck)
        ys = [shared] * c_star
    e = [
        tuple(add(f"e{i + 1}_{t + 1}", (True, False, False)) for t in range(n_gadget))
        for i in range(n)
    ]
    f = [
        tuple(add(f"f{i + 1}_{t + 1}", stuck) for t in range(n_gadget // 2))
        for i in range(n)
    ]

    x = tuple(range(n))
    xp = tuple(range(n, 2 * n))
    xs = 2 * n

    conclusions = []
    for a, b in combinations(range(n), 2):
        conclusions.append((f"pp{a + 1}_{b + 1}", Clause((pos(xp[a]), pos(xp[b])))))
    for idx, (a, b) in enumerate(g.edges, start=1):
        conclusions.append((f"e{idx}", Clause((pos(a), pos(b)))))
    for i in range(n):
        conclusions.append((f"xs{i + 1}", Clause((pos(i), pos(xs)))))
    for i in range(n):
        for t in range(d + 1):
            conclusions.append((f"xy{i + 1}_{t + 1}", Clause((pos(i), pos(y[i][t])))))
    for t in range(c_star):
        conclusions.append((f"xsys{t + 1}", Clause((pos(xs), pos(ys[t])))))
    nongadget = tuple(range(len(conclusions)))
    gadget_conc = []
    for i in range(n):
        start = len(conclusions)
        for t in range(n_gadget):
            conclusions.append((f"xe{i + 1}_{t + 1}", Clause((pos(i), pos(e[i][t])))))
        for t in range(n_gadget):
            conclusions.append(
                (f"xpe{i + 1}_{t + 1}", Clause((pos(xp[i]), pos(e[i][t]))))
            )
        for t in range(n_gadget // 2):
            conclusions.append((f"xf{i + 1}_{t + 1}", Clause((pos(i), pos(f[i][t])))))
        for t in range(n_gadget // 2):
            conclusions.append(
                (f"nxpf{i + 1}_{t + 1}", Clause((neg(xp[i]), pos(f[i][t]))))
            )
        gadget_conc.append(tuple(range(start, len(conclusions))))

    inst = _build_instance(
        premises, rows, conclusions, 2, Fraction(1, 2), "conclusions"
    )
    layout = _HornLayout(
        n, x, xp, xs, tuple(e), tuple(f), nongadget, tuple(gadget_conc)
    )
    return inst, layout


def gen_hamming_horn_clique(
    g: Graph,
    k: int,
    n_gadget: int | None = None,
    fresh_vars: bool = False,
    as_horn: bool = True,
) -> ManipInstance:
    """Clique hardness with every conclusion a pair of at most one positive.

    The construction swaps the negative pairs of the monotone clique image
    for positive pairs over shadow premises ``xp`` and welds each shadow to
    its vertex with a block of ``n_gadget`` disposable premises: moving a
    vertex without its shadow (or vice versa) costs half a block, which the
    default block size makes unaffordable.  The raw image has at most one
    *negative* literal per clause; ``as_horn`` applies the polarity mirror so
    the emitted instance is literally a Horn one.

    Small even ``n_gadget`` overrides make the image brute-forceable but
    below the sound threshold the clique question is no longer guaranteed to
    transfer; verification always uses the default.
    """
    inst, _ = _build_horn_clique(g, k, n_gadget, fresh_vars)
    return mirror_negate(inst) if as_horn else inst


def _unmet_over(conc, goals, idxs, row) -> int:
    return sum(conc[i][1].evaluate(row) != goals[i] for i in idxs)


def horn_clique_image_feasible(
    g: Graph, k: int, n_gadget: int | None = None, fresh_vars: bool = False
) -> bool:
    """Decide the pair-gadget image exhaustively, without the solver.

    The search space collapses because the disposable block of pair ``i``
    appears in no clause outside gadget ``i`` and each block premise sits in
    exactly two clauses, symmetrically: for a fixed choice on ``x``, ``xp``
    and ``xs`` the number of unmet gadget goals is affine in how many block
    premises are raised, so all-or-none is optimal and gadgets can be
    minimised independently.  Everything else the manipulator decides is
    enumerated outright, and rows are scored by evaluating the actual
    clauses.
    """
    inst, lay = _build_horn_clique(g, k, n_gadget, fresh_vars)
    profile = inst.profile
    conc = profile.agenda.conclusions
    goals = inst.desired.conclusion_map
    truth = list(inst.truthful.premise_values)
    n = lay.n

    flippable = set(lay.x) | set(lay.xp) | {lay.xs}
    for block in lay.e:
        flippable |= set(block)
    assert set(inst.decision_vars) == flippable
    gadget_vars = [
        {lay.x[i], lay.xp[i]} | set(lay.e[i]) | set(lay.f[i]) for i in range(n)
    ]
    for i, idxs in enumerate(lay.gadget_conc):
        for c in idxs:
            assert {l.var for l in conc[c][1]} <= gadget_vars[i]
    outside = set().union(*gadget_vars) - set(lay.x) - set(lay.xp) if n else set()
    for c in lay.nongadget_conc:
        assert not ({l.var for l in conc[c][1]} & outside)

    hd0 = _unmet_over(conc, goals, range(len(conc)), truth)

    # Per-gadget cost table: (vertex flipped, shadow flipped, block raised).
    table = []
    for i in range(n):
        entry = {}
        for a, b, t in product((0, 1), repeat=3):
            row = list(truth)
            row[lay.x[i]] = bool(a)
            row[lay.xp[i]] = not b
            for ev in lay.e[i]:
                row[ev] = bool(t)
            entry[a, b] = min(
                entry.get((a, b), math.inf),
                _unmet_over(conc, goals, lay.gadget_conc[i], row),
            )
        table.append(entry)

    best = hd0
    for s_mask in range(1 << n):
        raised = [bool((s_mask >> i) & 1) for i in range(n)]
        for sp_mask in range(1 << n):
            lowered = [bool((sp_mask >> i) & 1) for i in range(n)]
            gadget_cost = sum(
                table[i][int(raised[i]), int(lowered[i])] for i in range(n)
            )
            row = list(truth)
            for i in range(n):
                row[lay.x[i]] = raised[i]
                row[lay.xp[i]] = not lowered[i]
            for hub in (False, True):
                row[lay.xs] = hub
                total = gadget_cost + _unmet_over(
                    conc, goals, lay.nongadget_conc, row
                )
                best = min(best, total)
    return best < hd0


# --------------------------------------------------------------------------
# bribery hardness


def gen_bribery_from_hamming(inst: ManipInstance) -> BriberyInstance:
    """Single-bribe instance equivalent to a closeness-manipulation one.

    Premises the manipulator decides keep their reported columns; every other
    premise is rewritten to a unanimous column at its collective value, so no
    single bribed judge can move it and any bribed judge can move exactly the
    decided ones — which makes bribing one judge the same act as the
    manipulator's misreport.  Needs the acceptance threshold strictly inside
    ``[2, n-1]`` so unanimous columns really are out of one judge's reach.
    """
    profile = inst.profile
    n = profile.n_judges
    accept = profile.thresholds.accept
    if not 2 <= accept <= n - 1:
        raise DataError(
            "the single-bribe argument needs a threshold a lone judge can "
            f"never cross: 2 <= accept <= {n - 1}, got accept={accept}"
        )
    decided = set(inst.decision_vars)
    truth = inst.truthful.premise_values
    agenda = profile.agenda
    rows = []
    for j in profile.judgments:
        rows.append(
            tuple(
                j.premise_values[v] if v in decided else truth[v]
                for v in range(agenda.n_premises)
            )
        )
    bribed = Profile(
        agenda, tuple(JudgmentSet(agenda, r) for r in rows), profile.quota
    )
    return BriberyInstance(bribed, inst.desired, 1, "bribery")


def gen_bribery_from_lobbying(
    rows: Sequence[Sequence[int]], k: int
) -> BriberyInstance:
    """Bribery instance equivalent to a row-rewriting majority question.

    The matrix rows become judges voting on column premises (plus two stuck
    helpers), and the goals are arranged so the only way to gain is to push
    *every* column over the majority line — each raised column wins its two
    helper pairs but loses its premise goal and a chain pair, netting minus
    one only when all of them move.
    """
    m = len(rows)
    if m < 2:
        raise DataError("need at least two rows")
    n = len(rows[0])
    for r in rows:
        if len(r) != n:
            raise DataError("rows must share one width")
        if any(e not in (0, 1) for e in r):
            raise DataError("matrix entries must be 0 or 1")
    if n < 1:
        raise DataError("need at least one column")
    for col in range(n):
        ones = sum(r[col] for r in rows)
        if 2 * ones >= m:
            raise DataError(
                f"column {col} must start with a strict majority of zeros"
            )
    if not 0 <= k <= m // 2:
        raise DataError(f"the row budget must lie in [0, {m // 2}]")

    y1, y2 = n, n + 1
    premises = [f"x{i + 1}" for i in range(n)] + ["y1", "y2"]
    judge_rows = [tuple(bool(e) for e in r) + (False, False) for r in rows]
    conclusions = []
    for i in range(n):
        conclusions.append((f"xa{i + 1}", Clause((pos(i), pos(y1)))))
    for i in range(n):
        conclusions.append((f"xb{i + 1}", Clause((pos(i), pos(y2)))))
    for j in range(1, n):
        conclusions.append((f"xx{j + 1}", Clause((pos(0), pos(j)))))
    agenda = Agenda(tuple(premises), tuple(conclusions))
    profile = Profile(
        agenda,
        tuple(JudgmentSet(agenda, r) for r in judge_rows),
        Fraction(1, 2),
    )
    desired = DesiredSet.from_goals(
        premises={**{i: False for i in range(n)}, y1: True, y2: True},
        conclusions={
            **{i: True for i in range(2 * n)},
            **{2 * n + t: False for t in range(n - 1)},
        },
    )
    return BriberyInstance(profile, desired, k, "bribery")


def gen_microbribery_clique(
    g: Graph, s: int, three_judge: bool = False, fresh_vars: bool = False
) -> BriberyInstance:
    """Entry-bribery instance feasible iff the graph has an ``s``-clique.

    Vertex premises cost one entry flip each; partner premises are priced out
    of reach in the wide (default) variant and cost two in the three-judge
    one.  The briber's budget ``s + 1`` covers an s-clique plus the hub, and
    the copy counts are balanced so that exactly that purchase gains distance
    one.

    The wide variant carries a complete desired set, so each raised vertex
    also loses its premise goal; the per-vertex copy count compensates with
    one extra copy.  In the three-judge variant the shared partner premises
    are affordable, and for ``s >= 6`` flipping one saves a whole copy block
    at cost two — cheaper than the blocks are worth, which breaks the
    transfer; that regime therefore requires ``fresh_vars``, matching the
    footnote form where every copy has its own partner.
    """
    if s < 2 or s % 2:
        raise DataError("the clique size must be a positive even number")
    if three_judge and not fresh_vars and s >= 6:
        raise DataError(
            "with shared partner premises the three-judge variant only "
            "transfers for s in {2, 4}; pass fresh_vars=True for larger s"
        )
    n = g.n_vertices
    budget = s + 1
    if three_judge:
        c1, c2 = s // 2, s // 2 - 1
        up_rows, down_rows = 2, 1
    else:
        m = s + 1
        c1, c2 = s // 2 + 1, s // 2
        up_rows, down_rows = m + 1, m
    n_judges = up_rows + down_rows

    premises = [f"x{i + 1}" for i in range(n)] + ["xs"]
    up = [True] * (n + 1)
    down = [False] * (n + 1)
    rows = [up[:] for _ in range(up_rows)] + [down[:] for _ in range(down_rows)]

    def add_partner(name):
        premises.append(name)
        for row in rows:
            row.append(False)
        return len(premises) - 1

    if fresh_vars:
        y = [
            [add_partner(f"y{i + 1}_{t + 1}") for t in range(c1)] for i in range(n)
        ]
        ys = [add_partner(f"ys{t + 1}") for t in range(c2)]
    else:
        y = [[add_partner(f"y{i + 1}")] * c1 for i in range(n)]
        shared = add_partner("ys")
        ys = [shared] * c2

    xs = n
    conclusions = []
    for idx, (a, b) in enumerate(g.edges, start=1):
        conclusions.append((f"e{idx}", Clause((pos(a), pos(b)))))
    for i in range(n):
        conclusions.append((f"xxs{i + 1}", Clause((pos(i), pos(xs)))))
    for i in range(n):
        for t in range(c1):
            conclusions.append((f"xy{i + 1}_{t + 1}", Clause((pos(i), pos(y[i][t])))))
    for t in range(c2):
        conclusions.append((f"xsys{t + 1}", Clause((pos(xs), pos(ys[t])))))

    agenda = Agenda(tuple(premises), tuple(conclusions))
    profile = Profile(
        agenda,
        tuple(JudgmentSet(agenda, tuple(r)) for r in rows),
        Fraction(1, 2),
    )
    conclusion_goals = {}
    for idx in range(len(g.edges) + n):
        conclusion_goals[idx] = False
    for idx in range(len(g.edges) + n, len(conclusions)):
        conclusion_goals[idx] = True
    if three_judge:
        desired = DesiredSet.from_goals(conclusions=conclusion_goals)
    else:
        premise_goals = {v: False for v in range(n + 1)}
        premise_goals.update({v: True for v in range(n + 1, len(premises))})
        desired = DesiredSet.from_goals(
            premises=premise_goals, conclusions=conclusion_goals
        )
    return BriberyInstance(profile, desired, budget, "microbribery")


# --------------------------------------------------------------------------
# end-to-end verification


@dataclass(frozen=True)
class ReductionReport:
    """Outcome of replaying one reduction on one source object."""

    name: str
    source_yes: bool
    image_yes: bool
    detail: str = ""

    @property
    def agrees(self) -> bool:
        return self.source_yes == self.image_yes

    def __str__(self) -> str:
        verdict = "ok" if self.agrees else "MISMATCH"
        line = (
            f"{self.name}: source={'yes' if self.source_yes else 'no'} "
            f"image={'yes' if self.image_yes else 'no'} [{verdict}]"
        )
        return line + (f"\n{self.detail}" if self.detail else "")


def _formula_yes(f: SatProblem) -> bool:
    return sat_oracle(f.n_vars, f.clauses, dict(f.frozen) or None).satisfiable


def _necessary_image_yes(inst: ManipInstance) -> bool:
    return manip_oracle(
        inst.profile, inst.manipulator, inst.desired, "necessary"
    ).feasible


def _hamming_image_yes(inst: ManipInstance) -> bool:
    return manip_oracle(
        inst.profile, inst.manipulator, inst.desired, "hamming"
    ).feasible


def _verify_sat_coloring(g: Graph, k: int):
    image = gen_sat_coloring(g, k)
    return colorable(g, k), _formula_yes(image)


def _verify_constant_gadget(k1: int, k2: int, target: int):
    image = gen_constant_gadget(k1, k2, target)
    free = sat_oracle(image.n_vars, image.clauses)
    pinned = sat_oracle(image.n_vars, image.clauses, {0: target == 0})
    return True, free.satisfiable and not pinned.satisfiable


def _verify_necessary_mplus(f: SatProblem):
    return _formula_yes(f), _necessary_image_yes(gen_necessary_mplus(f))


def _verify_necessary_m2p_m3m(f: SatProblem):
    return _formula_yes(f), _necessary_image_yes(gen_necessary_m2p_m3m(f))


def _verify_necessary_mms(f: SatProblem, i: int, j: int):
    return _formula_yes(f), _necessary_image_yes(gen_necessary_mms(f, i, j))


def _verify_necessary_special_quota(f: SatProblem, n: int):
    return _formula_yes(f), _necessary_image_yes(
        gen_necessary_special_quota(f, n)
    )


def _verify_pvc_from_cubic_vc(g: Graph, k: int):
    image = gen_pvc_from_cubic_vc(g, k)
    return vertex_cover_exists(g, k), positive_cover_exists(image)


def _verify_hamming_from_pvc(p: PvcGraph):
    return positive_cover_exists(p), _hamming_image_yes(gen_hamming_from_pvc(p))


def _verify_hamming_monotone_clique(g: Graph, k: int, fresh_vars: bool = False):
    image = gen_hamming_monotone_clique(g, k, fresh_vars)
    return clique_exists(g, k), _hamming_image_yes(image)


def _verify_hamming_horn_clique(
    g: Graph, k: int, n_gadget: int | None = None, fresh_vars: bool = False
):
    return (
        clique_exists(g, k),
        horn_clique_image_feasible(g, k, n_gadget, fresh_vars),
    )


def _verify_bribery_from_hamming(inst: ManipInstance):
    image = gen_bribery_from_hamming(inst)
    src = manip_oracle(inst.profile, inst.manipulator, inst.desired, "hamming")
    img = bribery_oracle(image.profile, image.desired, image.budget)
    return src.feasible, img.feasible


def _verify_bribery_from_lobbying(rows, k: int):
    image = gen_bribery_from_lobbying(rows, k)
    img = bribery_oracle(image.profile, image.desired, image.budget)
    return lobbying_feasible(rows, k), img.feasible


def _verify_microbribery_clique(
    g: Graph, s: int, three_judge: bool = False, fresh_vars: bool = False
):
    image = gen_microbribery_clique(g, s, three_judge, fresh_vars)
    img = microbribery_oracle(image.profile, image.desired, image.budget)
    return clique_exists(g, s), img.feasible


def _verify_quota_lift(inst: ManipInstance, q, variant: str = "necessary"):
    image = quota_lift(inst, q)
    src = manip_oracle(inst.profile, inst.manipulator, inst.desired, variant)
    img = manip_oracle(image.profile, image.manipulator, image.desired, variant)
    return src.feasible, img.feasible


def _verify_mirror_negate(inst: ManipInstance, variant: str = "necessary"):
    image = mirror_negate(inst)
    src = manip_oracle(inst.profile, inst.manipulator, inst.desired, variant)
    img = manip_oracle(image.profile, image.manipulator, image.desired, variant)
    return src.feasible, img.feasible


_VERIFIERS = {
    "sat-coloring": _verify_sat_coloring,
    "constant-gadget": _verify_constant_gadget,
    "necessary-mplus": _verify_necessary_mplus,
    "necessary-m2p-m3m": _verify_necessary_m2p_m3m,
    "necessary-mms": _verify_necessary_mms,
    "necessary-special-quota": _verify_necessary_special_quota,
    "pvc-from-cubic-vc": _verify_pvc_from_cubic_vc,
    "hamming-from-pvc": _verify_hamming_from_pvc,
    "hamming-monotone-clique": _verify_hamming_monotone_clique,
    "hamming-horn-clique": _verify_hamming_horn_clique,
    "bribery-from-hamming": _verify_bribery_from_hamming,
    "bribery-from-lobbying": _verify_bribery_from_lobbying,
    "microbribery-clique": _verify_microbribery_clique,
    "quota-lift": _verify_quota_lift,
    "mirror-negate": _verify_mirror_negate,
}

REDUCTION_NAMES = tuple(sorted(_VERIFIERS))


def verify_reduction(name: str, *args, **kwargs) -> ReductionReport:
    """Replay the named reduction on one source and compare the two verdicts.

    The source side runs a plain brute-force decider, the image side one of
    the independent oracles — never the production solver — so agreement is
    evidence about the construction itself.  On disagreement the report's
    ``detail`` carries the arguments for replay.
    """
    try:
        verify = _VERIFIERS[name]
    except KeyError:
        raise DataError(
            f"unknown reduction {name!r}; known: {', '.join(REDUCTION_NAMES)}"
        ) from None
    source_yes, image_yes = verify(*args, **kwargs)
    detail = ""
    if source_yes != image_yes:
        shown = [repr(a) for a in args]
        shown += [f"{key}={val!r}" for key, val in kwargs.items()]
        detail = f"counterexample: verify_reduction({name!r}, {', '.join(shown)})"
    return ReductionReport(name, source_yes, image_yes, detail)
