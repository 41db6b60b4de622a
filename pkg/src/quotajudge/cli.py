"""Command-line interface.

One subcommand per question: ``outcome`` and ``decide`` report on a profile,
``manipulate`` and ``bribe`` decide the strategic questions, ``sat`` and
``classify`` expose the clause-level machinery, and ``gen``/``verify`` build
and replay the hardness constructions.  All input goes through the plain-text
formats of ``model`` and ``reductions``; every command is deterministic, and
``--json`` mirrors the text report as one stable JSON line.

Exit codes: 0 feasible/true, 1 infeasible/false, 2 undecided (a search gave
up on its budget), 64 usage error, 65 bad input data.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bribe as bribemod
from . import hamming as hammingmod
from . import manip as manipmod
from . import reductions, satkit
from .bribe import BriberyInstance
from .clausekit import dichotomy, family_membership
from .manip import ManipInstance
from .model import (
    BudgetExceeded,
    DataError,
    ParsedInstance,
    UsageError,
    decision_variables,
    format_instance,
    outcome,
    parse_instance,
)

EXIT_FEASIBLE = 0
EXIT_INFEASIBLE = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through our exit-code scheme."""

    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from None


def _emit(ns, text: str, payload: dict) -> None:
    if ns.json:
        print(json.dumps(payload, sort_keys=True))
    elif text:
        print(text)


def _assignment_line(names, values) -> str:
    return " ".join(f"{n}={int(v)}" for n, v in zip(names, values))


def _load_profile(ns):
    return parse_instance(_read(ns.file))


def _manip_instance(parsed: ParsedInstance) -> ManipInstance:
    if parsed.manipulator is None:
        raise DataError("the instance file names no manipulator")
    if parsed.desired is None:
        raise DataError("the instance file has no desired line")
    return ManipInstance(parsed.profile, parsed.manipulator, parsed.desired)


# --------------------------------------------------------------------------
# plain profile reports


def _cmd_outcome(ns) -> int:
    parsed = _load_profile(ns)
    out = outcome(parsed.profile)
    agenda = parsed.profile.agenda
    text = _assignment_line(
        agenda.premises + tuple(n for n, _ in agenda.conclusions),
        out.premise_values + out.conclusion_values,
    )
    payload = {
        "premises": {
            n: int(v) for n, v in zip(agenda.premises, out.premise_values)
        },
        "conclusions": {
            n: int(v)
            for (n, _), v in zip(agenda.conclusions, out.conclusion_values)
        },
    }
    _emit(ns, text, payload)
    return EXIT_FEASIBLE


def _cmd_decide(ns) -> int:
    parsed = _load_profile(ns)
    profile = parsed.profile
    if not 1 <= ns.judge <= profile.n_judges:
        raise DataError(
            f"judge {ns.judge} out of range: the profile has {profile.n_judges}"
        )
    decided = decision_variables(profile, ns.judge - 1)
    names = [profile.agenda.premises[v] for v in decided]
    _emit(ns, ", ".join(names), {"judge": ns.judge, "decides": names})
    return EXIT_FEASIBLE


# --------------------------------------------------------------------------
# manipulation


def _cmd_manipulate(ns) -> int:
    inst = _manip_instance(_load_profile(ns))
    if ns.variant == "hamming":
        return _manipulate_hamming(ns, inst)
    try:
        verdict = manipmod.solve(inst, ns.variant)
    except BudgetExceeded:
        _emit(ns, "undecided", {"variant": ns.variant, "verdict": "undecided"})
        return EXIT_UNDECIDED
    payload = {"variant": ns.variant, "feasible": verdict.feasible}
    if not verdict.feasible:
        _emit(ns, "infeasible", payload)
        return EXIT_INFEASIBLE
    agenda = inst.profile.agenda
    lines = ["feasible", "report: " + _assignment_line(agenda.premises, verdict.witness)]
    payload["report"] = {
        n: int(v) for n, v in zip(agenda.premises, verdict.witness)
    }
    if verdict.gained:
        lines.append(f"gained: {verdict.gained}")
        payload["gained"] = verdict.gained
    if verdict.sat_path:
        payload["path"] = verdict.sat_path
    if verdict.note:
        lines.append(f"note: {verdict.note}")
        payload["note"] = verdict.note
    _emit(ns, "\n".join(lines), payload)
    return EXIT_FEASIBLE


def _manipulate_hamming(ns, inst: ManipInstance) -> int:
    inst = inst.normalized()
    before = hammingmod.hd(inst.desired, inst.truthful)
    try:
        verdict = hammingmod.solve_hd(inst)
    except BudgetExceeded:
        _emit(ns, "undecided", {"variant": "hamming", "verdict": "undecided"})
        return EXIT_UNDECIDED
    payload = {
        "variant": "hamming",
        "feasible": verdict.feasible,
        "distance": before,
    }
    if not verdict.feasible:
        _emit(ns, "infeasible", payload)
        return EXIT_INFEASIBLE
    names = sorted(
        inst.profile.agenda.premises[v] for v in verdict.flips
    )
    after = hammingmod.replay_flips(inst, verdict.flips)
    lines = [
        "feasible",
        "flips: " + ", ".join(names),
        f"distance: {before} -> {after}",
    ]
    payload.update(
        {"flips": names, "distance_after": after, "method": verdict.method}
    )
    _emit(ns, "\n".join(lines), payload)
    return EXIT_FEASIBLE


# --------------------------------------------------------------------------
# bribery


def _cmd_bribe(ns) -> int:
    parsed = _load_profile(ns)
    if parsed.desired is None:
        raise DataError("the instance file has no desired line")
    budget = ns.budget if ns.budget is not None else parsed.budget
    if budget is None:
        raise DataError("no budget: add a 'budget' line or pass --budget")
    inst = BriberyInstance(parsed.profile, parsed.desired, budget, ns.mode)
    solver = (
        bribemod.solve_bribery
        if ns.mode == "bribery"
        else bribemod.solve_microbribery
    )
    try:
        verdict = solver(inst)
    except BudgetExceeded:
        _emit(ns, "undecided", {"mode": ns.mode, "verdict": "undecided"})
        return EXIT_UNDECIDED
    payload = {"mode": ns.mode, "feasible": verdict.feasible, "budget": budget}
    if not verdict.feasible:
        _emit(ns, "infeasible", payload)
        return EXIT_INFEASIBLE
    agenda = inst.profile.agenda
    plan = verdict.plan
    lines = ["feasible"]
    if verdict.delta is not None:
        lines.append(f"delta: {verdict.delta}")
        payload["delta"] = verdict.delta
    lines.append("judges: " + ", ".join(str(j + 1) for j in plan.judges))
    payload["judges"] = [j + 1 for j in plan.judges]
    for judge, var, value in plan.entries:
        lines.append(f"entry: judge {judge + 1} {agenda.premises[var]}={int(value)}")
    payload["entries"] = [
        [j + 1, agenda.premises[v], int(b)] for j, v, b in plan.entries
    ]
    payload["method"] = verdict.method
    _emit(ns, "\n".join(lines), payload)
    return EXIT_FEASIBLE


# --------------------------------------------------------------------------
# clause-level commands


def _cmd_sat(ns) -> int:
    problem = reductions.parse_formula(_read(ns.file))
    try:
        verdict = satkit.solve(problem, ns.strategy)
    except BudgetExceeded:
        _emit(ns, "undecided", {"verdict": "undecided"})
        return EXIT_UNDECIDED
    if not verdict.satisfiable:
        _emit(ns, "unsatisfiable", {"satisfiable": False, "path": verdict.path})
        return EXIT_INFEASIBLE
    model = [
        (i + 1) if v else -(i + 1) for i, v in enumerate(verdict.model)
    ]
    text = "satisfiable"
    if model:
        text += "\nmodel: " + " ".join(str(x) for x in model)
    _emit(ns, text, {"satisfiable": True, "model": model, "path": verdict.path})
    return EXIT_FEASIBLE


def _cmd_classify(ns) -> int:
    parsed = _load_profile(ns)
    report = family_membership(parsed.profile.agenda)
    verdict = dichotomy(report.shapes)
    shapes = sorted(report.shapes)
    lines = [
        "shapes: " + " ".join(f"({s.length},{s.negated})" for s in shapes),
        f"positive-monotone: {'yes' if report.positive_monotone else 'no'}",
        f"monotone: {'yes' if report.monotone else 'no'}",
        f"horn: {'yes' if report.horn else 'no'}",
        f"dichotomy: {verdict.label}",
    ]
    payload = {
        "shapes": [[s.length, s.negated] for s in shapes],
        "positive_monotone": report.positive_monotone,
        "monotone": report.monotone,
        "horn": report.horn,
        "max_length": report.max_length,
        "dichotomy": {
            "hard": verdict.hard,
            "condition": verdict.condition,
            "witness": [[s.length, s.negated] for s in verdict.witness],
            "label": verdict.label,
        },
    }
    _emit(ns, "\n".join(lines), payload)
    return EXIT_FEASIBLE


# --------------------------------------------------------------------------
# generators and verification
#
# Each reduction name maps to the kind of source it reads (``--in``) and the
# extra flags it consumes, shared between ``gen`` and ``verify``.

_GEN_SPECS = {
    "sat-coloring": ("graph", ("k",)),
    "constant-gadget": (None, ("k1", "k2", "target")),
    "necessary-mplus": ("formula", ()),
    "necessary-m2p-m3m": ("formula", ()),
    "necessary-mms": ("formula", ("i", "j")),
    "necessary-special-quota": ("formula", ("n",)),
    "pvc-from-cubic-vc": ("graph", ("k",)),
    "hamming-from-pvc": ("pvc", ()),
    "hamming-monotone-clique": ("graph", ("k", "fresh_vars")),
    "hamming-horn-clique": ("graph", ("k", "n_gadget", "fresh_vars")),
    "bribery-from-hamming": ("instance", ()),
    "bribery-from-lobbying": ("matrix", ("k",)),
    "microbribery-clique": ("graph", ("s", "three_judge", "fresh_vars")),
    "quota-lift": ("instance", ("q",)),
    "mirror-negate": ("instance", ()),
}

_SOURCE_PARSERS = {
    "graph": reductions.parse_graph,
    "pvc": reductions.parse_pvc,
    "matrix": reductions.parse_matrix,
    "formula": reductions.parse_formula,
}

_GENERATORS = {
    "sat-coloring": reductions.gen_sat_coloring,
    "constant-gadget": reductions.gen_constant_gadget,
    "necessary-mplus": reductions.gen_necessary_mplus,
    "necessary-m2p-m3m": reductions.gen_necessary_m2p_m3m,
    "necessary-mms": reductions.gen_necessary_mms,
    "necessary-special-quota": reductions.gen_necessary_special_quota,
    "pvc-from-cubic-vc": reductions.gen_pvc_from_cubic_vc,
    "hamming-from-pvc": reductions.gen_hamming_from_pvc,
    "hamming-monotone-clique": reductions.gen_hamming_monotone_clique,
    "hamming-horn-clique": reductions.gen_hamming_horn_clique,
    "bribery-from-hamming": reductions.gen_bribery_from_hamming,
    "bribery-from-lobbying": reductions.gen_bribery_from_lobbying,
    "microbribery-clique": reductions.gen_microbribery_clique,
    "quota-lift": reductions.quota_lift,
    "mirror-negate": reductions.mirror_negate,
}


def _gen_arguments(ns):
    source_kind, flags = _GEN_SPECS[ns.name]
    args = []
    if source_kind is not None:
        if ns.infile is None:
            raise UsageError(f"{ns.name} needs --in with a {source_kind} file")
        if source_kind == "instance":
            args.append(_manip_instance(parse_instance(_read(ns.infile))))
        else:
            args.append(_SOURCE_PARSERS[source_kind](_read(ns.infile)))
    kwargs = {}
    for flag in flags:
        value = getattr(ns, flag)
        if value is None:
            if flag in ("fresh_vars", "three_judge", "n_gadget"):
                continue  # optional, generator default applies
            raise UsageError(f"{ns.name} needs --{flag.replace('_', '-')}")
        kwargs[flag] = value
    return args, kwargs


def _render_generated(obj) -> tuple[str, str]:
    if isinstance(obj, satkit.SatProblem):
        return "formula", reductions.format_formula(obj)
    if isinstance(obj, reductions.PvcGraph):
        return "pvc", reductions.format_pvc(obj)
    if isinstance(obj, reductions.Graph):
        return "graph", reductions.format_graph(obj)
    if isinstance(obj, ManipInstance):
        parsed = ParsedInstance(obj.profile, obj.manipulator, obj.desired)
        return "instance", format_instance(parsed)
    if isinstance(obj, BriberyInstance):
        parsed = ParsedInstance(obj.profile, None, obj.desired, obj.budget)
        return "instance", format_instance(parsed)
    raise DataError(f"generator produced an unprintable {type(obj).__name__}")


def _cmd_gen(ns) -> int:
    args, kwargs = _gen_arguments(ns)
    kind, text = _render_generated(_GENERATORS[ns.name](*args, **kwargs))
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        if ns.json:
            print(json.dumps({"name": ns.name, "format": kind, "out": ns.out}, sort_keys=True))
    else:
        _emit(ns, text.rstrip("\n"), {"name": ns.name, "format": kind, "text": text})
    return EXIT_FEASIBLE


def _cmd_verify(ns) -> int:
    args, kwargs = _gen_arguments(ns)
    if ns.name in ("quota-lift", "mirror-negate"):
        kwargs["variant"] = ns.variant
    report = reductions.verify_reduction(ns.name, *args, **kwargs)
    payload = {
        "name": report.name,
        "source_yes": report.source_yes,
        "image_yes": report.image_yes,
        "agrees": report.agrees,
    }
    if report.detail:
        payload["detail"] = report.detail
    _emit(ns, str(report), payload)
    return EXIT_FEASIBLE if report.agrees else EXIT_INFEASIBLE


# --------------------------------------------------------------------------
# wiring


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quotajudge", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit one JSON line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("outcome", help="collective outcome of a profile")
    p.add_argument("file")
    p.set_defaults(func=_cmd_outcome)

    p = sub.add_parser("decide", help="premises a judge decides")
    p.add_argument("--judge", type=int, required=True, help="1-based judge index")
    p.add_argument("file")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("manipulate", help="single-judge manipulation questions")
    p.add_argument(
        "--variant",
        required=True,
        choices=manipmod.VARIANTS + ("hamming",),
    )
    p.add_argument("file")
    p.set_defaults(func=_cmd_manipulate)

    p = sub.add_parser("bribe", help="bribery and microbribery questions")
    p.add_argument("--mode", choices=bribemod.MODES, default="bribery")
    p.add_argument("--budget", type=int, help="overrides the file's budget line")
    p.add_argument("file")
    p.set_defaults(func=_cmd_bribe)

    p = sub.add_parser("sat", help="clause-set satisfiability")
    p.add_argument("--strategy", choices=satkit.STRATEGIES, default="auto")
    p.add_argument("file")
    p.set_defaults(func=_cmd_sat)

    p = sub.add_parser("classify", help="clause families and the dichotomy")
    p.add_argument("file")
    p.set_defaults(func=_cmd_classify)

    for command, func in (("gen", _cmd_gen), ("verify", _cmd_verify)):
        p = sub.add_parser(
            command,
            help=(
                "emit a reduction's image instance"
                if command == "gen"
                else "replay a reduction: brute-force source vs oracle image"
            ),
        )
        p.add_argument("name", choices=sorted(_GEN_SPECS))
        p.add_argument("--in", dest="infile", help="source file (kind depends on name)")
        p.add_argument("--k", type=int, help="clique size / cover or row budget / colours")
        p.add_argument("--s", type=int, help="clique size (microbribery)")
        p.add_argument("--i", type=int, help="mixed clause length")
        p.add_argument("--j", type=int, help="negated literals in the mixed clause")
        p.add_argument("--n", type=int, help="judge count (special quota)")
        p.add_argument("--q", type=_fraction, help="target quota (quota-lift)")
        p.add_argument("--k1", type=int, help="positive clause length")
        p.add_argument("--k2", type=int, help="negative clause length")
        p.add_argument("--target", type=int, choices=(0, 1), help="pinned value")
        p.add_argument("--gadget-n", dest="n_gadget", type=int, help="pair-gadget size")
        p.add_argument("--three-judge", dest="three_judge", action="store_const", const=True)
        p.add_argument("--fresh-vars", dest="fresh_vars", action="store_const", const=True)
        if command == "gen":
            p.add_argument("--out", help="write to a file instead of stdout")
        else:
            p.add_argument(
                "--variant",
                choices=manipmod.VARIANTS + ("hamming",),
                default="necessary",
                help="variant compared across quota-lift/mirror-negate",
            )
        p.set_defaults(func=func)

    return parser


def run(argv) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    return ns.func(ns)


def main(argv=None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except BudgetExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED


if __name__ == "__main__":
    raise SystemExit(main())
