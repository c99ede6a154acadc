"""Modal characterizations of process semantics and their deciders.

Each supported semantics has two independent routes:

* a modal route: a set of distinguishing formulas, either materialized
  (``char_formulas``, guarded against the double-exponential blow-up of the
  simulation/bisimulation normal forms) or decided lazily at a depth bound
  (``equiv_by_semantics``). The lazy route induces exactly the relation of
  the depth-bounded formula set: trace-decorated semantics evaluate every
  candidate formula whose diamond prefix occurs in either system (all
  others are false on both sides), and the simulation family runs the
  depth-k refinement that mirrors formula depth, reconstructing an explicit
  distinguishing formula on failure.

* a direct decider: trace/failure/ready set construction, partition
  refinement, greatest-simulation fixpoints, reachability search. These act
  as oracles for the modal route and never look at formulas.

Failure-trace, ready-trace, and deeper nested simulations are catalogued
but raise UnsupportedSemanticsError.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .errors import CharacterizationSizeError, UnsupportedSemanticsError
from .evaluate import Evaluator
from .formula import (
    TOP,
    Conj,
    Diamond,
    Disj,
    FiniteFamily,
    Formula,
    Neg,
    depth,
)
from .grammar import format_formula
from .lts import (
    Action,
    FiniteSystem,
    ProjectedState,
    TransitionSystem,
    enabled_actions,
    successors,
    validate_state,
)


class SemanticsId(Enum):
    TRACE = "trace"
    COMPLETED_TRACE = "completed-trace"
    FAILURES = "failures"
    READINESS = "readiness"
    SIMULATION = "simulation"
    READY_SIMULATION = "ready-simulation"
    BISIMULATION = "bisimulation"
    REACHABILITY_EXAMPLE = "reachability-example"
    # Catalogued but not implemented:
    FAILURE_TRACE = "failure-trace"
    READY_TRACE = "ready-trace"
    NESTED_SIMULATION_2 = "nested-simulation-2"


SUPPORTED = frozenset(
    {
        SemanticsId.TRACE,
        SemanticsId.COMPLETED_TRACE,
        SemanticsId.FAILURES,
        SemanticsId.READINESS,
        SemanticsId.SIMULATION,
        SemanticsId.READY_SIMULATION,
        SemanticsId.BISIMULATION,
        SemanticsId.REACHABILITY_EXAMPLE,
    }
)


def _require_supported(sem: SemanticsId) -> None:
    if sem not in SUPPORTED:
        supported = ", ".join(sorted(s.value for s in SUPPORTED))
        raise UnsupportedSemanticsError(
            f"{sem.value} is catalogued but not implemented; supported: {supported}"
        )


def _require_finite(system: TransitionSystem) -> FiniteSystem:
    if not isinstance(system, FiniteSystem):
        raise ValueError("this operation needs a finite system")
    return system


def _canonical_sort(formulas) -> tuple[Formula, ...]:
    return tuple(sorted(set(formulas), key=lambda f: (depth(f), format_formula(f))))


@dataclass(frozen=True)
class CharacterizationSet:
    """A finite, bounded-depth generator of one semantics' formula set."""

    semantics: SemanticsId | None
    alphabet: frozenset[Action]
    depth_bound: float
    formulas: tuple[Formula, ...]

    def __post_init__(self):
        for phi in self.formulas:
            if depth(phi) > self.depth_bound:
                raise ValueError("member depth exceeds the declared bound")


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    witness: Formula | None = None

    def __bool__(self) -> bool:
        return self.equivalent


# ---------------------------------------------------------------------------
# Formula builders


def trace_formula(trace: tuple[Action, ...], tail: Formula = TOP) -> Formula:
    out = tail
    for action in reversed(trace):
        out = Diamond(action, out)
    return out


def refusal_conjunction(refused) -> Conj:
    """The conjunction of `not <a> T` over the refused actions."""
    return Conj(
        FiniteFamily(tuple(Neg(Diamond(a, TOP)) for a in sorted(refused)))
    )


def menu_conjunction(refused, offered) -> Conj:
    members = [Neg(Diamond(a, TOP)) for a in sorted(refused)]
    members.extend(Diamond(b, TOP) for b in sorted(offered))
    return Conj(FiniteFamily(tuple(members)))


def _conj_of(members) -> Formula:
    canon = _canonical_sort(members)
    if not canon:
        return TOP
    if len(canon) == 1:
        return canon[0]
    return Conj(FiniteFamily(canon))


def _all_traces(alphabet, bound: int):
    actions = sorted(alphabet)
    level: list[tuple[Action, ...]] = [()]
    out = [()]
    for _ in range(bound):
        level = [trace + (a,) for trace in level for a in actions]
        out.extend(level)
    return out


def _subsets(items):
    items = sorted(items)
    for size in range(len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, size))


# ---------------------------------------------------------------------------
# Characterization generators


def char_set_size(sem: SemanticsId, alphabet, depth_bound: int) -> int:
    """Upper bound on the member count of char_formulas, cheap to compute."""
    _require_supported(sem)
    n = len(alphabet)
    traces = sum(n**k for k in range(depth_bound + 1))
    if sem is SemanticsId.TRACE:
        return traces
    if sem is SemanticsId.COMPLETED_TRACE:
        return 2 * traces
    if sem is SemanticsId.FAILURES:
        return traces * 2**n
    if sem is SemanticsId.READINESS:
        return traces * 3**n
    if sem is SemanticsId.REACHABILITY_EXAMPLE:
        return n * traces
    primes = 0
    members = 1
    for _ in range(depth_bound):
        primes += n * members
        if sem is SemanticsId.SIMULATION:
            literals = primes
        elif sem is SemanticsId.READY_SIMULATION:
            literals = primes + n
        else:
            literals = 2 * primes
        if literals > 60:
            return 2**60
        members = 2**literals
    return members


def char_formulas(
    sem: SemanticsId, alphabet, depth_bound: int, max_size: int = 20000
) -> CharacterizationSet:
    """Materialize the modal characterization up to the bound.

    For the trace-decorated semantics the bound counts the diamond prefix
    length, as in the catalogue's grammars; the stored depth_bound is the
    actual maximal member depth. Simulation-family sets enumerate the
    canonical conjunction-of-literals normal form, which has the same
    distinguishing power as the full depth-bounded logic.
    """
    _require_supported(sem)
    alphabet = frozenset(alphabet)
    if depth_bound < 0:
        raise ValueError("depth bound must be >= 0")
    estimated = char_set_size(sem, alphabet, depth_bound)
    if estimated > max_size:
        raise CharacterizationSizeError(
            f"{sem.value} at bound {depth_bound} over {len(alphabet)} actions "
            f"has about {estimated} formulas (limit {max_size})"
        )

    formulas: list[Formula] = []
    if sem is SemanticsId.TRACE:
        formulas = [trace_formula(t) for t in _all_traces(alphabet, depth_bound)]
    elif sem is SemanticsId.COMPLETED_TRACE:
        deadlocked = refusal_conjunction(alphabet)
        for t in _all_traces(alphabet, depth_bound):
            formulas.append(trace_formula(t))
            formulas.append(trace_formula(t, deadlocked))
    elif sem is SemanticsId.FAILURES:
        for t in _all_traces(alphabet, depth_bound):
            for refused in _subsets(alphabet):
                formulas.append(trace_formula(t, refusal_conjunction(refused)))
    elif sem is SemanticsId.READINESS:
        for t in _all_traces(alphabet, depth_bound):
            for refused in _subsets(alphabet):
                for offered in _subsets(alphabet - refused):
                    formulas.append(trace_formula(t, menu_conjunction(refused, offered)))
    elif sem is SemanticsId.REACHABILITY_EXAMPLE:
        traces = _all_traces(alphabet, depth_bound)
        for action in sorted(alphabet):
            disjuncts = _canonical_sort(
                trace_formula(t, Diamond(action, TOP)) for t in traces
            )
            formulas.append(Disj(FiniteFamily(disjuncts)))
    else:
        formulas = _simulation_family_formulas(sem, alphabet, depth_bound)

    canon = _canonical_sort(formulas)
    bound = max((depth(f) for f in canon), default=0)
    return CharacterizationSet(sem, alphabet, bound, canon)


def _simulation_family_formulas(sem, alphabet, depth_bound: int) -> list[Formula]:
    actions = sorted(alphabet)
    level = [TOP]
    primes: list[Formula] = []
    for _ in range(depth_bound):
        for action in actions:
            for phi in level:
                prime = Diamond(action, phi)
                if prime not in primes:
                    primes.append(prime)
        if sem is SemanticsId.SIMULATION:
            literals = list(primes)
        elif sem is SemanticsId.READY_SIMULATION:
            literals = list(primes) + [Neg(Diamond(a, TOP)) for a in actions]
        else:
            literals = list(primes) + [Neg(p) for p in primes]
        level = []
        for size in range(len(literals) + 1):
            for combo in combinations(range(len(literals)), size):
                level.append(_conj_of(literals[i] for i in combo))
        level = list(dict.fromkeys(level))
    return level


# ---------------------------------------------------------------------------
# Direct deciders


def _trace_derivatives(system, state, bound: int):
    """All (trace, end state) pairs with |trace| <= bound."""
    _require_finite(system)
    validate_state(system, state)
    actions = sorted(system.alphabet)
    out: set = set()
    frontier = {((), state)}
    for _ in range(bound + 1):
        new = set()
        for trace, s in frontier:
            if (trace, s) in out:
                continue
            out.add((trace, s))
            if len(trace) < bound:
                for a in actions:
                    for t in successors(system, s, a):
                        new.add((trace + (a,), t))
        frontier = new
        if not frontier:
            break
    return out


def trace_sets(system, state, bound: int) -> frozenset:
    """All action sequences of length <= bound enabled from `state`."""
    return frozenset(t for (t, _) in _trace_derivatives(system, state, bound))


def completed_traces(system, state, bound: int) -> frozenset:
    """Traces of length <= bound that end in a deadlocked state."""
    return frozenset(
        t
        for (t, s) in _trace_derivatives(system, state, bound)
        if not enabled_actions(system, s)
    )


def failures(system, state, bound: int, alphabet=None) -> frozenset:
    """(trace, refusal set) pairs: the refusal is disabled after the trace."""
    base = frozenset(alphabet) if alphabet is not None else system.alphabet
    out = set()
    for trace, s in _trace_derivatives(system, state, bound):
        refusable = base - enabled_actions(system, s)
        for refused in _subsets(refusable):
            out.add((trace, refused))
    return frozenset(out)


def ready_sets(system, state, bound: int) -> frozenset:
    """(trace, exact enabled-action set) pairs."""
    return frozenset(
        (t, enabled_actions(system, s))
        for (t, s) in _trace_derivatives(system, state, bound)
    )


def bisimilar(sys1, s, sys2, t) -> bool:
    """Partition refinement over the disjoint union of the two systems."""
    _require_finite(sys1)
    _require_finite(sys2)
    validate_state(sys1, s)
    validate_state(sys2, t)
    states = [(0, u) for u in sys1.states] + [(1, v) for v in sys2.states]
    systems = (sys1, sys2)
    alphabet = sorted(sys1.alphabet | sys2.alphabet)
    block = {st: 0 for st in states}
    while True:
        signatures = {}
        for st in states:
            side, u = st
            sig = frozenset(
                (a.name, block[(side, v)])
                for a in alphabet
                for v in systems[side].successor_list(u, a)
            )
            signatures[st] = (block[st], sig)
        renumber: dict = {}
        new_block = {}
        for st in states:
            sig = signatures[st]
            if sig not in renumber:
                renumber[sig] = len(renumber)
            new_block[st] = renumber[sig]
        if new_block == block:
            return block[(0, s)] == block[(1, t)]
        block = new_block


def simulated_by(sys1, s, sys2, t, ready: bool = False) -> bool:
    """Greatest simulation of sys1-states by sys2-states; the ready variant
    additionally requires equal enabled-action sets at related pairs."""
    _require_finite(sys1)
    _require_finite(sys2)
    validate_state(sys1, s)
    validate_state(sys2, t)
    alphabet = sorted(sys1.alphabet | sys2.alphabet)
    relation = {
        (u, v)
        for u in sys1.states
        for v in sys2.states
        if not ready or sys1.enabled(u) == sys2.enabled(v)
    }
    changed = True
    while changed:
        changed = False
        for (u, v) in sorted(relation):
            ok = all(
                any((u2, v2) in relation for v2 in sys2.successor_list(v, a))
                for a in alphabet
                for u2 in sys1.successor_list(u, a)
            )
            if not ok:
                relation.discard((u, v))
                changed = True
    return (s, t) in relation


def reachable_action(system, state, action: Action, bound: int) -> bool:
    """Whether a state with `action` enabled is reachable within `bound`
    steps (any labels); bound 0 checks the state itself."""
    validate_state(system, state)
    actions = sorted(system.alphabet) if isinstance(system, FiniteSystem) else [action]
    frontier = {state}
    seen = set()
    for _ in range(bound + 1):
        new = set()
        for s in frontier:
            if s in seen:
                continue
            seen.add(s)
            if successors(system, s, action, 1):
                return True
            for a in actions:
                new.update(successors(system, s, a, 1))
        frontier = new - seen
        if not frontier:
            break
    return False


def decider_equivalent(sem: SemanticsId, sys1, s, sys2, t, bound: int | None = None) -> bool:
    """Verdict of the direct decider for one semantics (no formulas)."""
    _require_supported(sem)
    _require_finite(sys1)
    _require_finite(sys2)
    if bound is None:
        bound = default_bound(sem, sys1, sys2)
    union = sys1.alphabet | sys2.alphabet
    if sem is SemanticsId.TRACE:
        return trace_sets(sys1, s, bound) == trace_sets(sys2, t, bound)
    if sem is SemanticsId.COMPLETED_TRACE:
        return trace_sets(sys1, s, bound) == trace_sets(sys2, t, bound) and completed_traces(
            sys1, s, bound
        ) == completed_traces(sys2, t, bound)
    if sem is SemanticsId.FAILURES:
        return failures(sys1, s, bound, union) == failures(sys2, t, bound, union)
    if sem is SemanticsId.READINESS:
        return ready_sets(sys1, s, bound) == ready_sets(sys2, t, bound)
    if sem is SemanticsId.SIMULATION:
        return simulated_by(sys1, s, sys2, t) and simulated_by(sys2, t, sys1, s)
    if sem is SemanticsId.READY_SIMULATION:
        return simulated_by(sys1, s, sys2, t, ready=True) and simulated_by(
            sys2, t, sys1, s, ready=True
        )
    if sem is SemanticsId.BISIMULATION:
        return bisimilar(sys1, s, sys2, t)
    # Reachability example: agreement of reachable_action per action.
    return all(
        reachable_action(sys1, s, a, sys1.num_states)
        == reachable_action(sys2, t, a, sys2.num_states)
        for a in sorted(union)
    )


# ---------------------------------------------------------------------------
# Modal-route equivalences


def default_bound(sem: SemanticsId, sys1, sys2) -> int:
    """|S1|+|S2| for the simulation family, |S1|*|S2| for trace-decorated
    semantics; both stabilize every bounded iterate at desk scale."""
    n1, n2 = sys1.num_states, sys2.num_states
    if sem in (
        SemanticsId.BISIMULATION,
        SemanticsId.SIMULATION,
        SemanticsId.READY_SIMULATION,
    ):
        return n1 + n2
    if sem is SemanticsId.REACHABILITY_EXAMPLE:
        return max(n1, n2)
    return n1 * n2


def equiv_modulo(sys1, s, sys2, t, chars: CharacterizationSet) -> EquivalenceVerdict:
    """Agreement on every formula of the set; each state is evaluated in
    its own system. Returns a distinguishing formula on failure."""
    ev1, ev2 = Evaluator(sys1), Evaluator(sys2)
    for phi in chars.formulas:
        if ev1.satisfies(s, phi) != ev2.satisfies(t, phi):
            return EquivalenceVerdict(False, phi)
    return EquivalenceVerdict(True)


def equiv_by_semantics(
    sys1, s, sys2, t, sem: SemanticsId, bound: int | None = None
) -> EquivalenceVerdict:
    """Depth-bounded modal equivalence without materializing the formula
    set; same induced relation as the depth-bounded characterization."""
    _require_supported(sem)
    _require_finite(sys1)
    _require_finite(sys2)
    validate_state(sys1, s)
    validate_state(sys2, t)
    if bound is None:
        bound = default_bound(sem, sys1, sys2)
    if sem is SemanticsId.BISIMULATION:
        witness = _bisim_distinguisher(sys1, s, sys2, t, bound, {})
        verdict = EquivalenceVerdict(witness is None, witness)
    elif sem in (SemanticsId.SIMULATION, SemanticsId.READY_SIMULATION):
        ready = sem is SemanticsId.READY_SIMULATION
        witness = _sim_distinguisher(sys1, s, sys2, t, bound, ready, {})
        if witness is None:
            witness = _sim_distinguisher(sys2, t, sys1, s, bound, ready, {})
        verdict = EquivalenceVerdict(witness is None, witness)
    else:
        verdict = _trace_family_equiv(sys1, s, sys2, t, sem, bound)
    if not verdict.equivalent:
        lhs = Evaluator(sys1).satisfies(s, verdict.witness)
        rhs = Evaluator(sys2).satisfies(t, verdict.witness)
        if lhs == rhs:
            raise AssertionError("distinguishing witness failed its re-check")
    return verdict


def _trace_family_equiv(sys1, s, sys2, t, sem, bound) -> EquivalenceVerdict:
    union = sys1.alphabet | sys2.alphabet
    candidates = sorted(
        trace_sets(sys1, s, bound) | trace_sets(sys2, t, bound),
        key=lambda tr: (len(tr), tuple(a.name for a in tr)),
    )
    formulas: list[Formula] = []
    if sem is SemanticsId.TRACE:
        formulas = [trace_formula(tr) for tr in candidates]
    elif sem is SemanticsId.COMPLETED_TRACE:
        deadlocked = refusal_conjunction(union)
        for tr in candidates:
            formulas.append(trace_formula(tr))
            formulas.append(trace_formula(tr, deadlocked))
    elif sem is SemanticsId.FAILURES:
        for tr in candidates:
            for refused in _subsets(union):
                formulas.append(trace_formula(tr, refusal_conjunction(refused)))
    elif sem is SemanticsId.READINESS:
        for tr in candidates:
            for refused in _subsets(union):
                for offered in _subsets(union - refused):
                    formulas.append(trace_formula(tr, menu_conjunction(refused, offered)))
    elif sem is SemanticsId.REACHABILITY_EXAMPLE:
        for action in sorted(union):
            disjuncts = _canonical_sort(
                trace_formula(tr, Diamond(action, TOP)) for tr in candidates
            )
            formulas.append(Disj(FiniteFamily(disjuncts)))
    else:  # pragma: no cover - guarded by _require_supported
        raise UnsupportedSemanticsError(sem.value)
    ev1, ev2 = Evaluator(sys1), Evaluator(sys2)
    for phi in formulas:
        if ev1.satisfies(s, phi) != ev2.satisfies(t, phi):
            return EquivalenceVerdict(False, phi)
    return EquivalenceVerdict(True)


def _succ_sorted(system, state, action):
    return successors(system, state, action, None)


def _bisim_distinguisher(sys1, x, sys2, y, k, memo) -> Formula | None:
    """A formula of depth <= k satisfied by x (in sys1) but not y (in sys2),
    or None when the states are k-step bisimilar."""
    # The recursion swaps the systems, so the key must say which side each
    # state belongs to.
    key = (id(sys1), x, id(sys2), y, k)
    if key in memo:
        return memo[key]
    result = None
    if k > 0:
        for action in sorted(sys1.alphabet | sys2.alphabet):
            xs = _succ_sorted(sys1, x, action)
            ys = _succ_sorted(sys2, y, action)
            for x2 in xs:
                parts = []
                for y2 in ys:
                    d = _bisim_distinguisher(sys1, x2, sys2, y2, k - 1, memo)
                    if d is None:
                        break
                    parts.append(d)
                else:
                    result = Diamond(action, _conj_of(parts))
                    break
            if result is not None:
                break
            for y2 in ys:
                parts = []
                for x2 in xs:
                    d = _bisim_distinguisher(sys2, y2, sys1, x2, k - 1, memo)
                    if d is None:
                        break
                    parts.append(d)
                else:
                    result = Neg(Diamond(action, _conj_of(parts)))
                    break
            if result is not None:
                break
    memo[key] = result
    return result


def _sim_distinguisher(sys1, x, sys2, y, k, ready, memo) -> Formula | None:
    """A simulation-grammar formula satisfied by x but not y, or None when
    y simulates x for k rounds."""
    key = (x, y, k)
    if key in memo:
        return memo[key]
    result = None
    if k > 0:
        if ready:
            mine = enabled_actions(sys1, x)
            theirs = enabled_actions(sys2, y)
            only_mine = sorted(mine - theirs)
            only_theirs = sorted(theirs - mine)
            if only_mine:
                result = Diamond(only_mine[0], TOP)
            elif only_theirs:
                result = Neg(Diamond(only_theirs[0], TOP))
        if result is None:
            for action in sorted(sys1.alphabet | sys2.alphabet):
                xs = _succ_sorted(sys1, x, action)
                ys = _succ_sorted(sys2, y, action)
                for x2 in xs:
                    parts = []
                    for y2 in ys:
                        d = _sim_distinguisher(sys1, x2, sys2, y2, k - 1, ready, memo)
                        if d is None:
                            break
                        parts.append(d)
                    else:
                        result = Diamond(action, _conj_of(parts))
                        break
                if result is not None:
                    break
    memo[key] = result
    return result
