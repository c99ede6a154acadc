"""Acceptance criteria, one test per criterion.

Every test prints a single pass/fail line (visible with `pytest -s`);
the assertions pin the stated tolerances exactly. Seeded randomness only.
"""

import math
import random
import time
from itertools import combinations

import pytest

from hmlkit.evaluate import Evaluator
from hmlkit.formula import (
    Conj,
    Diamond,
    HOLE,
    NATURALS,
    Power,
    Schematic,
    TOP,
    complement,
    cut,
    depth,
    to_positive,
    unbounded_run_conjunction,
)
from hmlkit.grammar import format_formula
from hmlkit.harness import (
    AIP_SEMANTICS,
    ModalSetSpec,
    Verdict,
    build_corpus,
    check_aip,
    check_conjunction_compactness,
    check_disjunction_compactness,
    check_necessity,
    check_negation_compactness,
    check_thm_hml,
    family_entries,
    finite_entries,
    random_formula,
    random_term,
)
from hmlkit.lts import Action, FamilyRoot, ProjectedState, from_term, project
from hmlkit.spectrum import (
    CharacterizationSet,
    SemanticsId,
    bisimilar,
    equiv_by_semantics,
)

A, B = Action("a"), Action("b")
AB = frozenset({A, B})
CORPUS = build_corpus()
FINITE = finite_entries(CORPUS)


def report(number: int, label: str, ok: bool, elapsed: float) -> None:
    verdict = "PASS" if ok else "FAIL"
    print(f"acceptance {number} ({label}): {verdict} [{elapsed:.2f}s]")
    assert ok, f"criterion {number} ({label}) failed"


def test_criterion_1_counterexample_reproduction():
    start = time.monotonic()
    left_entry, right_entry = family_entries(CORPUS)
    ev_left = Evaluator(left_entry.system)
    ev_right = Evaluator(right_entry.system)
    infinite = Diamond(A, unbounded_run_conjunction(A))
    ok = not ev_left.satisfies(FamilyRoot(), infinite)
    ok &= ev_right.satisfies(FamilyRoot(), infinite)
    for size in range(1, 10):
        for combo in combinations(range(9), size):
            finite_version = Diamond(A, Conj(Schematic(Power(A, TOP), frozenset(combo))))
            ok &= ev_left.satisfies(FamilyRoot(), finite_version)
    elapsed = time.monotonic() - start
    report(1, "counterexample reproduction", ok and elapsed < 1.0, elapsed)


def test_criterion_2_compactness_suites():
    start = time.monotonic()
    reports = [
        check_conjunction_compactness(CORPUS, seed=0, trials=350),
        check_disjunction_compactness(CORPUS, seed=1, trials=350),
        check_negation_compactness(CORPUS, seed=2, trials=350),
    ]
    total = sum(r.trials for r in reports)
    ok = all(r.verdict is Verdict.PASS for r in reports) and total >= 1000
    elapsed = time.monotonic() - start
    report(2, f"compactness suites ({total} trials)", ok and elapsed < 60.0, elapsed)


def test_criterion_3_finite_restriction():
    start = time.monotonic()
    closed = ModalSetSpec(((HOLE, A), (Diamond(A, HOLE), A)), closed=True)
    unclosed = ModalSetSpec(((HOLE, A),), closed=False)
    fixture = ModalSetSpec(((Diamond(A, HOLE), A),), closed=True)
    positive = check_thm_hml(closed, CORPUS, seed=3)
    control_a = check_thm_hml(unclosed, CORPUS, expect_divergence=True, seed=4)
    control_b = check_thm_hml(
        fixture, CORPUS, expect_divergence=True, include_family=True, seed=5
    )
    ok = positive.verdict is Verdict.PASS
    ok &= control_a.verdict is Verdict.PASS and "a-loop" in control_a.witness.system
    ok &= (
        control_b.verdict is Verdict.PASS
        and "counterexample" in control_b.witness.system
    )
    elapsed = time.monotonic() - start
    report(3, "finite restriction theorem", ok, elapsed)


def test_criterion_4_hennessy_milner_desk_check():
    start = time.monotonic()
    ok = True
    checked = 0
    for e1 in FINITE:
        for e2 in FINITE:
            bound = e1.system.num_states + e2.system.num_states
            modal = equiv_by_semantics(
                e1.system, e1.root, e2.system, e2.root, SemanticsId.BISIMULATION, bound
            ).equivalent
            ok &= modal == bisimilar(e1.system, e1.root, e2.system, e2.root)
            checked += 1
    rng = random.Random(1234)
    for _ in range(200):
        sys1 = from_term(random_term(rng, 6), alphabet=AB)
        sys2 = from_term(random_term(rng, 6), alphabet=AB)
        bound = sys1.num_states + sys2.num_states
        modal = equiv_by_semantics(
            sys1, 0, sys2, 0, SemanticsId.BISIMULATION, bound
        ).equivalent
        ok &= modal == bisimilar(sys1, 0, sys2, 0)
        checked += 1
    elapsed = time.monotonic() - start
    report(4, f"bisimulation agreement ({checked} pairs)", ok and elapsed < 30.0, elapsed)


def test_criterion_5_projection_settles_finite_depth():
    start = time.monotonic()
    rng = random.Random(777)
    ok = True
    tightness = None
    for entry in CORPUS:
        system = entry.system
        states = (
            list(system.states)
            if not hasattr(system, "action")
            else [FamilyRoot()]
        )
        formulas = [
            random_formula(rng, 4, system.alphabet, finite_schematic_probability=0.1)
            for _ in range(30)
        ]
        ev = Evaluator(system)
        for state in states:
            for phi in formulas:
                d = depth(phi)
                base = ev.satisfies(state, phi)
                for n in range(d, d + 4):
                    ok &= ev.satisfies(ProjectedState(state, n), phi) == base
                if tightness is None:
                    for n in range(0, d):
                        if ev.satisfies(ProjectedState(state, n), phi) != base:
                            tightness = (entry.name, state, format_formula(phi), n)
                            break
    ok &= tightness is not None
    elapsed = time.monotonic() - start
    report(5, f"projection agreement, tight at {tightness!r}", ok, elapsed)


def test_criterion_6_cut_agreement():
    start = time.monotonic()
    rng = random.Random(888)
    ok = True
    for entry in FINITE:
        system = entry.system
        formulas = [
            random_formula(
                rng,
                4,
                system.alphabet,
                schematic_probability=0.12,
                finite_schematic_probability=0.08,
            )
            for _ in range(15)
        ]
        ev = Evaluator(system)
        for state in system.states:
            for phi in formulas:
                for n in range(6):
                    lhs = ev.satisfies(project(system, state, n), phi)
                    rhs = ev.satisfies(state, cut(n, phi))
                    ok &= lhs == rhs
    left_entry, right_entry = family_entries(CORPUS)
    for entry in (left_entry, right_entry):
        ev = Evaluator(entry.system)
        for phi in (
            unbounded_run_conjunction(A),
            Diamond(A, unbounded_run_conjunction(A)),
            Diamond(A, Diamond(A, TOP)),
        ):
            for n in range(6):
                lhs = ev.satisfies(project(entry.system, FamilyRoot(), n), phi)
                rhs = ev.satisfies(FamilyRoot(), cut(n, phi))
                ok &= lhs == rhs
    elapsed = time.monotonic() - start
    report(6, "cut/projection agreement", ok, elapsed)


def test_criterion_7_aip_desk_check():
    start = time.monotonic()
    n_max = 2 * max(e.system.num_states for e in FINITE)
    ok = True
    for sem in AIP_SEMANTICS:
        result = check_aip(sem, CORPUS, n_max=n_max, seed=9)
        ok &= result.verdict is Verdict.PASS
    control = CharacterizationSet(
        None, frozenset({A}), math.inf, (unbounded_run_conjunction(A),)
    )
    violation = check_aip(control, CORPUS, expect_violation=True, seed=9, name="ctl")
    ok &= violation.verdict is Verdict.PASS and "a-loop" in violation.witness.system
    elapsed = time.monotonic() - start
    report(7, "approximation induction", ok, elapsed)


def test_criterion_8_necessity():
    start = time.monotonic()
    trace = check_necessity(SemanticsId.TRACE, CORPUS, seed=10)
    bisim = check_necessity(SemanticsId.BISIMULATION, CORPUS, seed=11)
    probe = check_necessity(SemanticsId.REACHABILITY_EXAMPLE, CORPUS, seed=12)
    ok = trace.verdict is Verdict.PASS and bisim.verdict is Verdict.PASS
    ok &= probe.verdict is Verdict.VACUOUS and probe.witness is not None
    ok &= probe.witness.states != ()
    elapsed = time.monotonic() - start
    report(8, "cut-image necessity + compositionality probe", ok, elapsed)


def test_criterion_9_translation_coherence():
    start = time.monotonic()
    rng = random.Random(999)
    ok = True
    for entry in FINITE:
        system = entry.system
        ev = Evaluator(system)
        formulas = [
            random_formula(rng, 3, system.alphabet, schematic_probability=0.1)
            for _ in range(25)
        ]
        for state in system.states:
            for phi in formulas:
                pos = to_positive(phi)
                ok &= ev.satisfies(state, phi) == ev.satisfies(state, pos)
                ok &= complement(complement(pos)) == pos
    elapsed = time.monotonic() - start
    report(9, "translation coherence", ok, elapsed)
