"""Command-line front end.

Exit codes: 0 = success / true / equivalent, 1 = false / distinguished,
2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .aut import read_aut
from .errors import HmlkitError
from .evaluate import Evaluator
from .formula import cut, depth
from .grammar import format_formula, parse_formula
from .harness import EXPECTED_VERDICTS, Verdict, standard_suite, suite_ok
from .lts import (
    FiniteSystem,
    ProjectedState,
    counterexample_pair,
    parse_state,
    project,
    successors,
)
from .spectrum import (
    SUPPORTED,
    SemanticsId,
    equiv_by_semantics,
)

RESERVED_SYSTEMS = {
    "@left-counterexample": lambda: counterexample_pair()[0],
    "@right-counterexample": lambda: counterexample_pair()[1],
}


def load_system(ref: str):
    """A `.aut` path, or one of the reserved fixture names."""
    if ref in RESERVED_SYSTEMS:
        return RESERVED_SYSTEMS[ref]()
    if ref.startswith("@"):
        known = ", ".join(sorted(RESERVED_SYSTEMS))
        raise HmlkitError(f"unknown reserved system {ref!r}; known: {known}")
    return read_aut(ref)


def _semantics(text: str) -> SemanticsId:
    for sem in SemanticsId:
        if sem.value == text:
            return sem
    catalogue = ", ".join(s.value for s in SemanticsId)
    raise HmlkitError(f"unknown semantics {text!r}; catalogue: {catalogue}")


def _default_state(system, text: str | None):
    if text is not None:
        return parse_state(system, text)
    if isinstance(system, FiniteSystem):
        return system.root
    return parse_state(system, "root")


def cmd_eval(args) -> int:
    system = load_system(args.lts)
    state = parse_state(system, args.state)
    phi = parse_formula(args.formula)
    result = Evaluator(system).satisfies(state, phi)
    print("true" if result else "false")
    return 0 if result else 1


def cmd_equiv(args) -> int:
    sem = _semantics(args.semantics)
    sys1 = load_system(args.lts1)
    sys2 = load_system(args.lts2)
    s = _default_state(sys1, args.state1)
    t = _default_state(sys2, args.state2)
    verdict = equiv_by_semantics(sys1, s, sys2, t, sem, args.bound)
    if verdict.equivalent:
        print("equivalent")
        return 0
    print(f"distinguished by: {format_formula(verdict.witness)}")
    return 1


def cmd_project(args) -> int:
    system = load_system(args.lts)
    state = parse_state(system, args.state)
    start = project(system, state, args.n)
    seen: set = set()
    frontier = [start]
    lines = []
    while frontier:
        current = frontier.pop()
        if current in seen:
            continue
        seen.add(current)
        if isinstance(system, FiniteSystem):
            actions = sorted(system.alphabet)
        else:
            actions = [system.action]
        for action in actions:
            budget = current.budget - 1 if current.budget > 0 else 0
            for nxt in successors(system, current, action, budget):
                lines.append(f"{current} -{action.name}-> {nxt}")
                frontier.append(nxt)
    for line in sorted(lines):
        print(line)
    return 0


def cmd_cut(args) -> int:
    phi = parse_formula(args.formula)
    print(format_formula(cut(args.n, phi)))
    return 0


def cmd_spectrum_report(args) -> int:
    sys1 = load_system(args.lts1)
    sys2 = load_system(args.lts2)
    s = _default_state(sys1, args.state1)
    t = _default_state(sys2, args.state2)
    distinguished = False
    for sem in SemanticsId:
        label = sem.value.ljust(22)
        if sem not in SUPPORTED:
            print(f"{label} unsupported")
            continue
        verdict = equiv_by_semantics(sys1, s, sys2, t, sem, args.bound)
        if verdict.equivalent:
            print(f"{label} equivalent")
        else:
            distinguished = True
            print(f"{label} distinguished: {format_formula(verdict.witness)}")
    return 1 if distinguished else 0


def cmd_check_all(args) -> int:
    reports = standard_suite(seed=args.seed)
    for report in reports:
        print(report.line())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as handle:
            json.dump([r.as_dict() for r in reports], handle, indent=2)
            handle.write("\n")
    ok = suite_ok(reports)
    bad = [
        r.name
        for r in reports
        if r.verdict is not EXPECTED_VERDICTS.get(r.name, Verdict.PASS)
    ]
    if not ok:
        print(f"unexpected verdicts: {', '.join(bad)}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hmlkit",
        description="Hennessy-Milner logic toolkit over labelled transition systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a formula at a state")
    p.add_argument("--lts", required=True, help=".aut file or @fixture name")
    p.add_argument("--state", required=True)
    p.add_argument("--formula", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("equiv", help="decide one semantics on a pair of systems")
    p.add_argument("--lts1", required=True)
    p.add_argument("--lts2", required=True)
    p.add_argument("--semantics", required=True)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--state1", default=None)
    p.add_argument("--state2", default=None)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("project", help="print the reachable projected transitions")
    p.add_argument("--lts", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("cut", help="truncate a formula at a modal depth")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--formula", required=True)
    p.set_defaults(func=cmd_cut)

    p = sub.add_parser(
        "spectrum-report", help="pairwise verdicts for every semantics"
    )
    p.add_argument("--lts1", required=True)
    p.add_argument("--lts2", required=True)
    p.add_argument("--state1", default=None)
    p.add_argument("--state2", default=None)
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(func=cmd_spectrum_report)

    p = sub.add_parser("check-all", help="run the full property-check suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", default=None, help="also dump reports to this file")
    p.set_defaults(func=cmd_check_all)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (HmlkitError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
