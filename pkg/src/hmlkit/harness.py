"""Executable property checks over a deterministic desk-scale corpus.

Every check returns a CheckReport: name, verdict (pass / fail / vacuous),
trial count, seed, and a witness when there is something to point at. A
failing witness always re-runs to the same verdict because every check is
a pure function of its seed.

Two checks assert *expected* divergences rather than agreements: the
restriction theorem's controls (a modal set without its finite
sub-conjunction closure; the infinitely-branching fixture pair) and the
approximation-induction control built from the unbounded-run conjunction.
These pass exactly when the documented discrepancy shows up.

The corpus contains every process term of size <= 4 over {a, b} (so the
deadlock term `0` is included), the single-state a-loop, and both
infinitely-branching fixtures.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass
from enum import Enum

from .errors import HmlkitError
from .evaluate import Evaluator
from .formula import (
    BOT,
    HOLE,
    NATURALS,
    Box,
    Conj,
    Diamond,
    Disj,
    FiniteFamily,
    Formula,
    Neg,
    Polarity,
    Power,
    Schematic,
    TOP,
    complement,
    context_polarity,
    cut,
    depth,
    substitute,
    unbounded_run_conjunction,
)
from .grammar import format_formula
from .lts import (
    NIL,
    Action,
    Choice,
    FamilyRoot,
    FamilySystem,
    FiniteSystem,
    Prefix,
    ProcessTerm,
    ProjectedState,
    a_loop,
    counterexample_pair,
    format_term,
    from_term,
    project,
)
from .spectrum import (
    CharacterizationSet,
    SemanticsId,
    char_formulas,
    equiv_by_semantics,
    equiv_modulo,
    reachable_action,
)


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    VACUOUS = "vacuous"


@dataclass(frozen=True)
class Witness:
    system: str
    states: tuple[str, ...] = ()
    formula: str | None = None
    detail: str | None = None

    def summary(self) -> str:
        parts = [f"system={self.system}"]
        if self.states:
            parts.append("states=" + ",".join(self.states))
        if self.formula:
            parts.append(f"formula={self.formula!r}")
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)


@dataclass(frozen=True)
class CheckReport:
    name: str
    verdict: Verdict
    trials: int
    seed: int
    witness: Witness | None = None

    def line(self) -> str:
        out = f"{self.name} {self.verdict.value} trials={self.trials} seed={self.seed}"
        if self.witness is not None:
            out += f" [{self.witness.summary()}]"
        return out

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "verdict": self.verdict.value,
            "trials": self.trials,
            "seed": self.seed,
            "witness": asdict(self.witness) if self.witness else None,
        }
        return out


# ---------------------------------------------------------------------------
# Corpus


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    system: FiniteSystem | FamilySystem
    root: object


DEFAULT_ACTIONS = (Action("a"), Action("b"))


def enumerate_terms(max_size: int, actions=DEFAULT_ACTIONS) -> list[ProcessTerm]:
    """All process terms up to the node count, with binary choices."""
    by_size: dict[int, list[ProcessTerm]] = {1: [NIL]}
    for size in range(2, max_size + 1):
        terms: list[ProcessTerm] = []
        for action in actions:
            terms.extend(Prefix(action, t) for t in by_size[size - 1])
        for left_size in range(1, size - 1):
            right_size = size - 1 - left_size
            for left in by_size[left_size]:
                for right in by_size[right_size]:
                    terms.append(Choice((left, right)))
        by_size[size] = terms
    out: list[ProcessTerm] = []
    for size in range(1, max_size + 1):
        out.extend(by_size[size])
    return out


def build_corpus(max_term_size: int = 4, actions=DEFAULT_ACTIONS) -> tuple[CorpusEntry, ...]:
    alphabet = frozenset(actions)
    entries = [
        CorpusEntry(format_term(t), from_term(t, alphabet), 0)
        for t in enumerate_terms(max_term_size, actions)
    ]
    entries.append(CorpusEntry("a-loop", a_loop(actions[0]), 0))
    left, right = counterexample_pair(actions[0])
    entries.append(CorpusEntry("@left-counterexample", left, FamilyRoot()))
    entries.append(CorpusEntry("@right-counterexample", right, FamilyRoot()))
    return tuple(entries)


def finite_entries(corpus) -> list[CorpusEntry]:
    return [e for e in corpus if isinstance(e.system, FiniteSystem)]


def family_entries(corpus) -> list[CorpusEntry]:
    return [e for e in corpus if isinstance(e.system, FamilySystem)]


# ---------------------------------------------------------------------------
# Random generators (seeded; the suite must replay byte-identically)


def random_term(rng: random.Random, max_size: int, actions=DEFAULT_ACTIONS) -> ProcessTerm:
    if max_size <= 1:
        return NIL
    roll = rng.random()
    if roll < 0.25:
        return NIL
    if roll < 0.7 or max_size < 3:
        return Prefix(rng.choice(actions), random_term(rng, max_size - 1, actions))
    split = rng.randint(1, max_size - 2)
    return Choice(
        (
            random_term(rng, split, actions),
            random_term(rng, max_size - 1 - split, actions),
        )
    )


def random_formula(
    rng: random.Random,
    max_depth: int,
    alphabet,
    *,
    negation: bool = True,
    neg_probability: float = 0.3,
    schematic_probability: float = 0.0,
    finite_schematic_probability: float = 0.0,
    max_nodes: int = 14,
) -> Formula:
    """Depth-bounded random formula, weighted toward diamonds and
    conjunctions. Without `negation` the positive grammar (F, box,
    disjunction) is used instead."""
    actions = sorted(alphabet)
    budget = [max_nodes]

    def go(d: int) -> Formula:
        budget[0] -= 1
        if budget[0] <= 0 or d <= 0:
            return TOP if negation or rng.random() < 0.8 else BOT
        roll = rng.random()
        if negation and roll < neg_probability:
            return Neg(go(d))
        roll = rng.random()
        if schematic_probability and roll < schematic_probability:
            return Conj(Schematic(Power(rng.choice(actions), TOP), NATURALS))
        if finite_schematic_probability and roll < schematic_probability + finite_schematic_probability:
            top = rng.randint(0, min(3, d))
            indices = frozenset(rng.sample(range(top + 1), rng.randint(1, top + 1)))
            return Conj(Schematic(Power(rng.choice(actions), TOP), indices))
        roll = rng.random()
        if roll < 0.45:
            return Diamond(rng.choice(actions), go(d - 1))
        if not negation and roll < 0.6:
            return Box(rng.choice(actions), go(d - 1))
        if not negation and roll < 0.72:
            arity = rng.randint(0, 2)
            return Disj(FiniteFamily(tuple(go(d) for _ in range(arity))))
        if roll < 0.9:
            arity = rng.randint(0, 2)
            ctor = Conj
            return ctor(FiniteFamily(tuple(go(d) for _ in range(arity))))
        return TOP

    return go(max_depth)


def random_context(
    rng: random.Random,
    max_layers: int,
    alphabet,
    *,
    negation: bool = True,
    neg_probability: float = 0.3,
) -> Formula:
    """A context: the hole wrapped in 0..max_layers random layers."""
    actions = sorted(alphabet)
    ctx: Formula = HOLE
    for _ in range(rng.randint(0, max_layers)):
        roll = rng.random()
        if negation and roll < neg_probability:
            ctx = Neg(ctx)
            continue
        roll = rng.random()
        if roll < 0.45:
            ctx = Diamond(rng.choice(actions), ctx)
        elif not negation and roll < 0.65:
            ctx = Box(rng.choice(actions), ctx)
        elif roll < 0.85:
            sibling = random_formula(
                rng, 2, alphabet, negation=negation, max_nodes=6
            )
            members = [ctx, sibling] if rng.random() < 0.5 else [sibling, ctx]
            ctx = Conj(FiniteFamily(tuple(members)))
        elif not negation:
            sibling = random_formula(rng, 2, alphabet, negation=False, max_nodes=6)
            ctx = Disj(FiniteFamily((ctx, sibling)))
        else:
            ctx = Diamond(rng.choice(actions), ctx)
    return ctx


def _index_set_samples(rng: random.Random, stabilization: int) -> list[frozenset[int]]:
    """Finite index sets J: exhaustive over {0..4}, ladders past the
    stabilization point, plus a few random sets."""
    out: list[frozenset[int]] = []
    from itertools import combinations

    for size in range(1, 6):
        out.extend(frozenset(c) for c in combinations(range(5), size))
    for top in range(5, max(9, stabilization + 3)):
        out.append(frozenset(range(top + 1)))
    for _ in range(3):
        size = rng.randint(1, 8)
        out.append(frozenset(rng.sample(range(13), size)))
    return out


# ---------------------------------------------------------------------------
# Compactness checks


def _power_conj(action: Action, indices) -> Conj:
    return Conj(Schematic(Power(action, TOP), indices))


def _power_disj(action: Action, indices, box: bool = False) -> Disj:
    body = BOT if box else TOP
    return Disj(Schematic(Power(action, body, box), indices))


def check_conjunction_compactness(
    corpus=None, seed: int = 0, trials: int = 350, name: str = "conjunction_compactness"
) -> CheckReport:
    """On finite systems, a context applied to the unbounded family must
    agree with all finite-subset versions; on the infinitely-branching
    left fixture, the diamond context must disagree (and does)."""
    corpus = corpus if corpus is not None else build_corpus()
    rng = random.Random(seed)
    done = 0
    for _ in range(trials):
        entry = rng.choice(finite_entries(corpus))
        system = entry.system
        state = rng.randrange(system.num_states)
        ctx = random_context(rng, 3, system.alphabet, negation=False)
        action = rng.choice(sorted(system.alphabet))
        ev = Evaluator(system)
        infinite = ev.satisfies(state, substitute(ctx, _power_conj(action, NATURALS)))
        for indices in _index_set_samples(rng, system.num_states):
            finite = ev.satisfies(state, substitute(ctx, _power_conj(action, indices)))
            if infinite and not finite:
                return CheckReport(
                    name,
                    Verdict.FAIL,
                    done,
                    seed,
                    Witness(
                        entry.name,
                        (str(state),),
                        format_formula(substitute(ctx, _power_conj(action, indices))),
                        "finite subset disagrees with the unbounded family",
                    ),
                )
            if not infinite and finite and indices >= frozenset(range(system.num_states + 1)):
                # A stabilization-covering subset must already fail.
                return CheckReport(
                    name,
                    Verdict.FAIL,
                    done,
                    seed,
                    Witness(
                        entry.name,
                        (str(state),),
                        format_formula(substitute(ctx, _power_conj(action, indices))),
                        "no finite subset reproduces the failure",
                    ),
                )
        done += 1

    # The documented counterexample: the diamond context over the left
    # fixture separates the unbounded family from every finite subset.
    for entry in family_entries(corpus):
        system = entry.system
        ev = Evaluator(system)
        action = system.action
        ctx = Diamond(action, HOLE)
        infinite = ev.satisfies(entry.root, substitute(ctx, _power_conj(action, NATURALS)))
        expected = system.has_infinite_branch
        finite_all = all(
            ev.satisfies(entry.root, substitute(ctx, _power_conj(action, frozenset(range(top + 1)))))
            for top in range(9)
        )
        if infinite != expected or not finite_all:
            return CheckReport(
                name,
                Verdict.FAIL,
                done,
                seed,
                Witness(
                    entry.name,
                    ("root",),
                    format_formula(substitute(ctx, _power_conj(action, NATURALS))),
                    "fixture did not reproduce the documented divergence",
                ),
            )
        done += 1
    return CheckReport(name, Verdict.PASS, done, seed)


def check_disjunction_compactness(
    corpus=None, seed: int = 0, trials: int = 350, name: str = "disjunction_compactness"
) -> CheckReport:
    """Dual of the conjunction check: the unbounded disjunction holds iff
    some finite subset does; verified through the complement transport."""
    corpus = corpus if corpus is not None else build_corpus()
    rng = random.Random(seed)
    done = 0
    for _ in range(trials):
        entry = rng.choice(finite_entries(corpus))
        system = entry.system
        state = rng.randrange(system.num_states)
        ctx = random_context(rng, 3, system.alphabet, negation=False)
        action = rng.choice(sorted(system.alphabet))
        box = rng.random() < 0.5
        ev = Evaluator(system)
        full = substitute(ctx, _power_disj(action, NATURALS, box))
        infinite = ev.satisfies(state, full)
        if ev.satisfies(state, complement(full)) == infinite:
            return CheckReport(
                name,
                Verdict.FAIL,
                done,
                seed,
                Witness(entry.name, (str(state),), format_formula(full), "complement transport failed"),
            )
        some_finite = any(
            ev.satisfies(state, substitute(ctx, _power_disj(action, indices, box)))
            for indices in _index_set_samples(rng, system.num_states)
        )
        if infinite != some_finite:
            return CheckReport(
                name,
                Verdict.FAIL,
                done,
                seed,
                Witness(
                    entry.name,
                    (str(state),),
                    format_formula(full),
                    f"unbounded={infinite} but finite-subset witness={some_finite}",
                ),
            )
        done += 1
    return CheckReport(name, Verdict.PASS, done, seed)


def check_negation_compactness(
    corpus=None, seed: int = 0, trials: int = 350, name: str = "negation_compactness"
) -> CheckReport:
    """Contexts with negation: positive polarity uses the for-all-subsets
    clause, negative polarity the exists-a-subset clause."""
    corpus = corpus if corpus is not None else build_corpus()
    rng = random.Random(seed)
    done = 0
    for _ in range(trials):
        entry = rng.choice(finite_entries(corpus))
        system = entry.system
        state = rng.randrange(system.num_states)
        ctx = random_context(rng, 3, system.alphabet, negation=True)
        action = rng.choice(sorted(system.alphabet))
        polarity = context_polarity(ctx)
        ev = Evaluator(system)
        infinite = ev.satisfies(state, substitute(ctx, _power_conj(action, NATURALS)))
        finite_values = [
            ev.satisfies(state, substitute(ctx, _power_conj(action, indices)))
            for indices in _index_set_samples(rng, system.num_states)
        ]
        expected = all(finite_values) if polarity is Polarity.POSITIVE else any(finite_values)
        if infinite != expected:
            return CheckReport(
                name,
                Verdict.FAIL,
                done,
                seed,
                Witness(
                    entry.name,
                    (str(state),),
                    format_formula(substitute(ctx, _power_conj(action, NATURALS))),
                    f"polarity={polarity.value} unbounded={infinite} finite-clause={expected}",
                ),
            )
        done += 1
    return CheckReport(name, Verdict.PASS, done, seed)


# ---------------------------------------------------------------------------
# Restriction theorem (finite sub-conjunction closure)


@dataclass(frozen=True)
class ModalSetSpec:
    """A modal set generated by contexts around the power family: each
    generator contributes the unbounded member and, when closed, every
    finite-subset member."""

    generators: tuple[tuple[Formula, Action], ...]
    closed: bool


def _modal_set_equiv(spec: ModalSetSpec, ev1, s, ev2, t, rng, include_infinite: bool) -> bool:
    sizes = max(getattr(ev1.system, "num_states", 4), getattr(ev2.system, "num_states", 4))
    for ctx, action in spec.generators:
        if include_infinite:
            phi = substitute(ctx, _power_conj(action, NATURALS))
            if ev1.satisfies(s, phi) != ev2.satisfies(t, phi):
                return False
        if spec.closed:
            for indices in _index_set_samples(rng, sizes):
                phi = substitute(ctx, _power_conj(action, indices))
                if ev1.satisfies(s, phi) != ev2.satisfies(t, phi):
                    return False
    return True


def check_thm_hml(
    o_spec: ModalSetSpec,
    corpus=None,
    mode: str = "fin",
    expect_divergence: bool = False,
    include_family: bool = False,
    seed: int = 0,
    name: str = "finite_restriction",
) -> CheckReport:
    """Restricting the modal set to finite sub-conjunctions must induce the
    same equivalence on finite systems when the finite members are present;
    the controls assert the documented divergences instead."""
    if mode not in ("fin", "fdp"):
        raise ValueError("mode must be 'fin' or 'fdp'")
    corpus = corpus if corpus is not None else build_corpus()
    if not o_spec.closed and not expect_divergence:
        return CheckReport(
            name,
            Verdict.VACUOUS,
            0,
            seed,
            Witness("-", (), None, "modal set lacks its finite sub-conjunction closure"),
        )
    entries = list(corpus) if include_family else finite_entries(corpus)
    rng = random.Random(seed)
    pairs = 0
    divergence: Witness | None = None
    for i, e1 in enumerate(entries):
        for e2 in entries[i + 1 :]:
            ev1, ev2 = Evaluator(e1.system), Evaluator(e2.system)
            eq_full = _modal_set_equiv(o_spec, ev1, e1.root, ev2, e2.root, rng, True)
            eq_restricted = (
                _modal_set_equiv(o_spec, ev1, e1.root, ev2, e2.root, rng, False)
                if o_spec.closed
                else True  # the restriction of an unclosed singleton is empty
            )
            pairs += 1
            if eq_full != eq_restricted:
                if divergence is None:
                    divergence = Witness(
                        f"{e1.name} vs {e2.name}",
                        (str(e1.root), str(e2.root)),
                        None,
                        f"full={eq_full} restricted={eq_restricted}",
                    )
                if not expect_divergence:
                    return CheckReport(name, Verdict.FAIL, pairs, seed, divergence)
    if expect_divergence:
        if divergence is None:
            return CheckReport(
                name,
                Verdict.FAIL,
                pairs,
                seed,
                Witness("-", (), None, "expected divergence never showed up"),
            )
        return CheckReport(name, Verdict.PASS, pairs, seed, divergence)
    return CheckReport(name, Verdict.PASS, pairs, seed)


# ---------------------------------------------------------------------------
# Projection lemmas


def check_finite_depth_projection(
    corpus=None, seed: int = 0, trials: int = 250, name: str = "projection_agreement_fdp"
) -> CheckReport:
    """Finite-depth formulas are settled by the projections at their depth
    and beyond; somewhere in the corpus the depth bound is tight."""
    corpus = corpus if corpus is not None else build_corpus()
    rng = random.Random(seed)
    tightness: Witness | None = None
    done = 0
    for _ in range(trials):
        entry = rng.choice(list(corpus))
        system = entry.system
        if isinstance(system, FiniteSystem):
            state = rng.randrange(system.num_states)
            alphabet = system.alphabet
        else:
            state = entry.root
            alphabet = system.alphabet
        phi = random_formula(
            rng, 4, alphabet, negation=True, finite_schematic_probability=0.1
        )
        d = depth(phi)
        assert d != math.inf
        ev = Evaluator(system)
        base = ev.satisfies(state, phi)
        for n in range(d, d + 4):
            if ev.satisfies(ProjectedState(state, n), phi) != base:
                return CheckReport(
                    name,
                    Verdict.FAIL,
                    done,
                    seed,
                    Witness(
                        entry.name,
                        (str(state), f"n={n}"),
                        format_formula(phi),
                        "projection at depth >= d(phi) disagrees",
                    ),
                )
        if tightness is None:
            for n in range(0, d):
                if ev.satisfies(ProjectedState(state, n), phi) != base:
                    tightness = Witness(
                        entry.name,
                        (str(state), f"n={n}"),
                        format_formula(phi),
                        f"tight: projection below d(phi)={d} disagrees",
                    )
                    break
        done += 1
    if tightness is None:
        # Guaranteed tightness case: <a>T at the root of a.0, n=0.
        system = from_term(Prefix(Action("a"), NIL))
        phi = Diamond(Action("a"), TOP)
        ev = Evaluator(system)
        if ev.satisfies(0, phi) and not ev.satisfies(ProjectedState(0, 0), phi):
            tightness = Witness("a.0", ("0", "n=0"), format_formula(phi), "tight: d(phi)=1")
        else:
            return CheckReport(
                name,
                Verdict.FAIL,
                done,
                seed,
                Witness("a.0", (), format_formula(phi), "no tightness witness found"),
            )
    return CheckReport(name, Verdict.PASS, done, seed, tightness)


def check_cut_lemma(
    corpus=None, seed: int = 0, trials: int = 300, name: str = "cut_projection_agreement"
) -> CheckReport:
    """A projected state satisfies a formula iff the plain state satisfies
    its depth-cut."""
    corpus = corpus if corpus is not None else build_corpus()
    rng = random.Random(seed)
    done = 0
    fixed_family_formulas = None
    for _ in range(trials):
        entry = rng.choice(list(corpus))
        system = entry.system
        if isinstance(system, FiniteSystem):
            state = rng.randrange(system.num_states)
            phi = random_formula(
                rng,
                4,
                system.alphabet,
                negation=True,
                schematic_probability=0.12,
                finite_schematic_probability=0.08,
            )
        else:
            state = entry.root
            if fixed_family_formulas is None:
                a = system.action
                fixed_family_formulas = [
                    unbounded_run_conjunction(a),
                    Diamond(a, unbounded_run_conjunction(a)),
                    Diamond(a, Diamond(a, TOP)),
                    Neg(Diamond(a, TOP)),
                ]
            phi = rng.choice(fixed_family_formulas)
        n = rng.randint(0, 5)
        ev = Evaluator(system)
        lhs = ev.satisfies(project(system, state, n), phi)
        rhs = ev.satisfies(state, cut(n, phi))
        if lhs != rhs:
            return CheckReport(
                name,
                Verdict.FAIL,
                done,
                seed,
                Witness(
                    entry.name,
                    (str(state), f"n={n}"),
                    format_formula(phi),
                    f"projected={lhs} cut={rhs}",
                ),
            )
        done += 1
    return CheckReport(name, Verdict.PASS, done, seed)


# ---------------------------------------------------------------------------
# Approximation induction


def _aip_equiv(o, sys1, s, sys2, t) -> bool:
    if isinstance(o, SemanticsId):
        return equiv_by_semantics(sys1, s, sys2, t, o).equivalent
    return equiv_modulo(sys1, s, sys2, t, o).equivalent


def _has_infinite_depth(chars: CharacterizationSet) -> bool:
    return any(depth(phi) == math.inf for phi in chars.formulas)


def check_aip(
    o,
    corpus=None,
    n_max: int | None = None,
    expect_violation: bool = False,
    seed: int = 0,
    name: str | None = None,
) -> CheckReport:
    """If all projections up to n_max are equivalent, the states must be;
    with `expect_violation` the check passes only when some pair defeats
    the implication (the unbounded-conjunction control)."""
    corpus = corpus if corpus is not None else build_corpus()
    entries = finite_entries(corpus)
    if name is None:
        name = f"aip_{o.value.replace('-', '_')}" if isinstance(o, SemanticsId) else "aip"
    if n_max is None:
        n_max = 2 * max(e.system.num_states for e in entries)
    if isinstance(o, CharacterizationSet) and _has_infinite_depth(o) and not expect_violation:
        return CheckReport(
            name,
            Verdict.VACUOUS,
            0,
            seed,
            Witness("-", (), None, "modal set contains an infinite-depth formula"),
        )
    pairs = 0
    violation: Witness | None = None
    for i, e1 in enumerate(entries):
        for e2 in entries[i + 1 :]:
            antecedent = True
            for n in range(n_max + 1):
                if not _aip_equiv(
                    o,
                    e1.system,
                    project(e1.system, e1.root, n),
                    e2.system,
                    project(e2.system, e2.root, n),
                ):
                    antecedent = False
                    break
            pairs += 1
            if not antecedent:
                continue
            if not _aip_equiv(o, e1.system, e1.root, e2.system, e2.root):
                if violation is None:
                    violation = Witness(
                        f"{e1.name} vs {e2.name}",
                        (str(e1.root), str(e2.root)),
                        None,
                        "all projections equivalent yet the states differ",
                    )
                if not expect_violation:
                    return CheckReport(name, Verdict.FAIL, pairs, seed, violation)
    if expect_violation:
        if violation is None:
            return CheckReport(
                name,
                Verdict.FAIL,
                pairs,
                seed,
                Witness("-", (), None, "expected violation never showed up"),
            )
        return CheckReport(name, Verdict.PASS, pairs, seed, violation)
    return CheckReport(name, Verdict.PASS, pairs, seed)


# ---------------------------------------------------------------------------
# Necessity of finite depth


_NECESSITY_BOUNDS: dict[SemanticsId, tuple[tuple[tuple[str, ...], int], ...]] = {
    SemanticsId.TRACE: ((("a", "b"), 4),),
    SemanticsId.COMPLETED_TRACE: ((("a", "b"), 3),),
    SemanticsId.FAILURES: ((("a", "b"), 3),),
    SemanticsId.READINESS: ((("a", "b"), 3),),
    SemanticsId.SIMULATION: ((("a", "b"), 2),),
    SemanticsId.READY_SIMULATION: ((("a", "b"), 2),),
    SemanticsId.BISIMULATION: ((("a", "b"), 1), (("a",), 2)),
}


def check_necessity(
    sem: SemanticsId,
    corpus=None,
    n_max: int | None = None,
    seed: int = 0,
    name: str | None = None,
) -> CheckReport:
    """Compositionality probe, then: the cut-image of the characterization
    induces the same equivalence. Non-compositional semantics report
    vacuous with the violating pair."""
    corpus = corpus if corpus is not None else build_corpus()
    entries = finite_entries(corpus)
    if name is None:
        name = f"necessity_{sem.value.replace('-', '_')}"
    if n_max is None:
        n_max = 2 * max(e.system.num_states for e in entries)

    for i, e1 in enumerate(entries):
        for e2 in entries[i + 1 :]:
            if not _aip_equiv(sem, e1.system, e1.root, e2.system, e2.root):
                continue
            for n in range(n_max + 1):
                if not _aip_equiv(
                    sem,
                    e1.system,
                    project(e1.system, e1.root, n),
                    e2.system,
                    project(e2.system, e2.root, n),
                ):
                    return CheckReport(
                        name,
                        Verdict.VACUOUS,
                        0,
                        seed,
                        Witness(
                            f"{e1.name} vs {e2.name}",
                            (str(e1.root), str(e2.root), f"n={n}"),
                            None,
                            "not compositional: equivalent states with "
                            "inequivalent projections",
                        ),
                    )

    if sem not in _NECESSITY_BOUNDS:
        return CheckReport(
            name,
            Verdict.FAIL,
            0,
            seed,
            Witness(
                "-",
                (),
                None,
                "compositionality probe passed but no materializable "
                "characterization bounds are configured",
            ),
        )
    pairs = 0
    for actions, bound in _NECESSITY_BOUNDS[sem]:
        alphabet = frozenset(Action(a) for a in actions)
        base = char_formulas(sem, alphabet, bound)
        max_depth = max((int(depth(f)) for f in base.formulas), default=0)
        cut_image_map: dict[Formula, None] = {}
        for phi in base.formulas:
            for n in range(min(n_max, max_depth) + 1):
                cut_image_map.setdefault(cut(n, phi))
        cut_image = list(cut_image_map)
        image_set = CharacterizationSet(
            None,
            alphabet,
            max((depth(f) for f in cut_image), default=0),
            tuple(cut_image),
        )
        for i, e1 in enumerate(entries):
            for e2 in entries[i + 1 :]:
                eq_base = equiv_modulo(e1.system, e1.root, e2.system, e2.root, base)
                eq_image = equiv_modulo(e1.system, e1.root, e2.system, e2.root, image_set)
                pairs += 1
                if eq_base.equivalent != eq_image.equivalent:
                    return CheckReport(
                        name,
                        Verdict.FAIL,
                        pairs,
                        seed,
                        Witness(
                            f"{e1.name} vs {e2.name}",
                            (str(e1.root), str(e2.root)),
                            None,
                            f"base={eq_base.equivalent} cut-image={eq_image.equivalent}",
                        ),
                    )
    return CheckReport(name, Verdict.PASS, pairs, seed)


def check_reachability_soundness(
    corpus=None, n_max: int | None = None, seed: int = 0, name: str = "reachability_aip_soundness"
) -> CheckReport:
    """Approximation induction holds for the action-reachability
    equivalence: projection-wise agreement implies agreement."""
    corpus = corpus if corpus is not None else build_corpus()
    entries = finite_entries(corpus)
    if n_max is None:
        n_max = 2 * max(e.system.num_states for e in entries)
    pairs = 0
    for i, e1 in enumerate(entries):
        for e2 in entries[i + 1 :]:
            union = sorted(e1.system.alphabet | e2.system.alphabet)

            def reach_equal(state1, state2, bound1, bound2) -> bool:
                return all(
                    reachable_action(e1.system, state1, a, bound1)
                    == reachable_action(e2.system, state2, a, bound2)
                    for a in union
                )

            antecedent = all(
                reach_equal(
                    project(e1.system, e1.root, n), project(e2.system, e2.root, n), n, n
                )
                for n in range(n_max + 1)
            )
            pairs += 1
            if antecedent and not reach_equal(
                e1.root, e2.root, e1.system.num_states, e2.system.num_states
            ):
                return CheckReport(
                    name,
                    Verdict.FAIL,
                    pairs,
                    seed,
                    Witness(
                        f"{e1.name} vs {e2.name}",
                        (str(e1.root), str(e2.root)),
                        None,
                        "projection-wise reachability agreement without agreement",
                    ),
                )
    return CheckReport(name, Verdict.PASS, pairs, seed)


# ---------------------------------------------------------------------------
# The standard suite


AIP_SEMANTICS = (
    SemanticsId.TRACE,
    SemanticsId.COMPLETED_TRACE,
    SemanticsId.FAILURES,
    SemanticsId.READINESS,
    SemanticsId.SIMULATION,
    SemanticsId.READY_SIMULATION,
    SemanticsId.BISIMULATION,
)


def standard_suite(seed: int = 0, corpus=None) -> list[CheckReport]:
    corpus = corpus if corpus is not None else build_corpus()
    a = Action("a")
    closed_spec = ModalSetSpec(((HOLE, a), (Diamond(a, HOLE), a)), closed=True)
    unclosed_spec = ModalSetSpec(((HOLE, a),), closed=False)
    fixture_spec = ModalSetSpec(((Diamond(a, HOLE), a),), closed=True)
    control_chars = CharacterizationSet(
        None, frozenset({a}), math.inf, (unbounded_run_conjunction(a),)
    )
    reports = [
        check_conjunction_compactness(corpus, seed),
        check_disjunction_compactness(corpus, seed + 1),
        check_negation_compactness(corpus, seed + 2),
        check_thm_hml(closed_spec, corpus, seed=seed + 3, name="finite_restriction_closed"),
        check_thm_hml(
            unclosed_spec,
            corpus,
            expect_divergence=True,
            seed=seed + 4,
            name="finite_restriction_nonclosed_control",
        ),
        check_thm_hml(
            fixture_spec,
            corpus,
            expect_divergence=True,
            include_family=True,
            seed=seed + 5,
            name="finite_restriction_infinite_branching_control",
        ),
        check_finite_depth_projection(corpus, seed + 6),
        check_cut_lemma(corpus, seed + 7),
    ]
    reports.extend(check_aip(sem, corpus, seed=seed + 8) for sem in AIP_SEMANTICS)
    reports.append(
        check_aip(
            control_chars,
            corpus,
            expect_violation=True,
            seed=seed + 9,
            name="aip_unbounded_conjunction_control",
        )
    )
    reports.append(check_necessity(SemanticsId.TRACE, corpus, seed=seed + 10))
    reports.append(check_necessity(SemanticsId.BISIMULATION, corpus, seed=seed + 11))
    reports.append(
        check_necessity(
            SemanticsId.REACHABILITY_EXAMPLE,
            corpus,
            seed=seed + 12,
            name="necessity_reachability_probe",
        )
    )
    reports.append(check_reachability_soundness(corpus, seed=seed + 13))
    return reports


EXPECTED_VERDICTS = {
    "necessity_reachability_probe": Verdict.VACUOUS,
}


def suite_ok(reports) -> bool:
    return all(
        r.verdict is EXPECTED_VERDICTS.get(r.name, Verdict.PASS) for r in reports
    )
