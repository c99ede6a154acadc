"""Labelled transition systems, process terms, and projection operators.

Two kinds of system live here. ``FiniteSystem`` is an explicit finite LTS
with dense integer state ids. ``FamilySystem`` finitely describes the two
infinitely-branching fixtures used throughout the test harness: a root
fanning out to a-chains of every finite length, optionally extended with
one branch carrying an infinite a-run. Family systems expose successors
only through depth-budgeted representative sets.

Projection wraps a state with a step budget instead of materializing the
truncated system: a projected state of a cyclic system is acyclic but
exponentially larger when expanded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, UnknownStateError


@dataclass(frozen=True, order=True)
class Action:
    """An action label; equality is exact text equality."""

    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("action name must be non-empty")

    def __str__(self) -> str:
        return self.name


# ---------------------------------------------------------------------------
# Process terms


class ProcessTerm:
    """Base class for Nil / Prefix / Choice trees."""


@dataclass(frozen=True)
class Nil(ProcessTerm):
    pass


@dataclass(frozen=True)
class Prefix(ProcessTerm):
    action: Action
    rest: ProcessTerm


@dataclass(frozen=True)
class Choice(ProcessTerm):
    branches: tuple[ProcessTerm, ...]

    def __post_init__(self):
        if not self.branches:
            raise ValueError("Choice needs at least one branch")


NIL = Nil()


def term_size(t: ProcessTerm) -> int:
    """Node count of the term tree."""
    match t:
        case Nil():
            return 1
        case Prefix(_, rest):
            return 1 + term_size(rest)
        case Choice(branches):
            return 1 + sum(term_size(b) for b in branches)
    raise TypeError(f"not a process term: {t!r}")


def term_actions(t: ProcessTerm) -> frozenset[Action]:
    match t:
        case Nil():
            return frozenset()
        case Prefix(action, rest):
            return term_actions(rest) | {action}
        case Choice(branches):
            out: frozenset[Action] = frozenset()
            for b in branches:
                out |= term_actions(b)
            return out
    raise TypeError(f"not a process term: {t!r}")


def format_term(t: ProcessTerm) -> str:
    """Render in the term grammar; `.` binds tighter than `+`."""
    match t:
        case Nil():
            return "0"
        case Prefix(action, rest):
            body = format_term(rest)
            if isinstance(rest, Choice):
                body = f"({body})"
            return f"{action.name}.{body}"
        case Choice(branches):
            return " + ".join(
                f"({format_term(b)})" if isinstance(b, Choice) else format_term(b)
                for b in branches
            )
    raise TypeError(f"not a process term: {t!r}")


_TERM_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|[0.+()]|\S")


def parse_term(text: str) -> ProcessTerm:
    """Parse the term grammar: `0`, `a.P`, `P + Q`, parentheses.

    `+` is right-associative and `.` binds tighter than `+`.
    """
    tokens: list[tuple[str, int, int]] = []
    for lineno, line in enumerate(text.splitlines() or [""], start=1):
        for m in _TERM_TOKEN.finditer(line):
            tokens.append((m.group(), lineno, m.start() + 1))
    pos = 0

    def peek() -> str | None:
        return tokens[pos][0] if pos < len(tokens) else None

    def err(message: str) -> ParseError:
        if pos < len(tokens):
            _, line, col = tokens[pos]
        elif tokens:
            _, line, col = tokens[-1]
        else:
            line, col = 1, 1
        return ParseError(message, line, col)

    def expect(tok: str) -> None:
        nonlocal pos
        if peek() != tok:
            raise err(f"expected {tok!r}")
        pos += 1

    def parse_choice() -> ProcessTerm:
        nonlocal pos
        left = parse_prefix()
        if peek() == "+":
            pos += 1
            right = parse_choice()
            return Choice((left, right))
        return left

    def parse_prefix() -> ProcessTerm:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise err("unexpected end of input")
        if tok == "0":
            pos += 1
            return NIL
        if tok == "(":
            pos += 1
            inner = parse_choice()
            expect(")")
            return inner
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            pos += 1
            expect(".")
            return Prefix(Action(tok), parse_prefix())
        raise err(f"unexpected token {tok!r}")

    result = parse_choice()
    if pos < len(tokens):
        raise err(f"trailing input {peek()!r}")
    return result


# ---------------------------------------------------------------------------
# Finite systems


@dataclass(frozen=True)
class FiniteSystem:
    """Finite LTS with dense state ids 0..num_states-1 and a designated root."""

    num_states: int
    alphabet: frozenset[Action]
    transitions: frozenset[tuple[int, Action, int]]
    root: int = 0
    _succ: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.num_states < 1:
            raise ValueError("a system needs at least one state")
        if not (0 <= self.root < self.num_states):
            raise ValueError(f"root {self.root} out of range")
        succ: dict[tuple[int, Action], list[int]] = {}
        for (src, act, dst) in self.transitions:
            if not (0 <= src < self.num_states and 0 <= dst < self.num_states):
                raise ValueError(f"transition endpoint out of range: {(src, act, dst)}")
            if act not in self.alphabet:
                raise ValueError(f"transition label {act} not in alphabet")
            succ.setdefault((src, act), []).append(dst)
        for targets in succ.values():
            targets.sort()
        object.__setattr__(self, "_succ", succ)

    @property
    def states(self) -> range:
        return range(self.num_states)

    def successor_list(self, state: int, action: Action) -> tuple[int, ...]:
        if not (0 <= state < self.num_states):
            raise UnknownStateError(f"state {state!r} not in system")
        return tuple(self._succ.get((state, action), ()))

    def enabled(self, state: int) -> frozenset[Action]:
        return frozenset(a for a in self.alphabet if self.successor_list(state, a))


def from_term(
    term: ProcessTerm, alphabet: frozenset[Action] | None = None
) -> FiniteSystem:
    """Expand a process term into its finite LTS.

    State ids are assigned depth-first, left-to-right over the reachable
    term occurrences, so the same term always yields the identical system.
    Distinct occurrences of structurally equal subterms stay distinct
    states.
    """

    def initial_moves(t: ProcessTerm) -> list[tuple[Action, ProcessTerm]]:
        match t:
            case Nil():
                return []
            case Prefix(action, rest):
                return [(action, rest)]
            case Choice(branches):
                moves: list[tuple[Action, ProcessTerm]] = []
                for b in branches:
                    moves.extend(initial_moves(b))
                return moves
        raise TypeError(f"not a process term: {t!r}")

    transitions: list[tuple[int, Action, int]] = []
    counter = 0

    def visit(t: ProcessTerm) -> int:
        nonlocal counter
        my_id = counter
        counter += 1
        for action, target in initial_moves(t):
            transitions.append((my_id, action, visit(target)))
        return my_id

    visit(term)
    full_alphabet = term_actions(term) if alphabet is None else alphabet
    if not term_actions(term) <= full_alphabet:
        raise ValueError("alphabet must cover every action in the term")
    return FiniteSystem(
        num_states=counter,
        alphabet=frozenset(full_alphabet),
        transitions=frozenset(transitions),
        root=0,
    )


def system_from_text(text: str, alphabet: frozenset[Action] | None = None) -> FiniteSystem:
    return from_term(parse_term(text), alphabet)


def a_loop(action: Action = Action("a")) -> FiniteSystem:
    """One state with a single self-loop."""
    return FiniteSystem(1, frozenset({action}), frozenset({(0, action, 0)}))


def deadlock(alphabet: frozenset[Action] = frozenset({Action("a")})) -> FiniteSystem:
    """One state, no transitions."""
    return FiniteSystem(1, frozenset(alphabet), frozenset())


# ---------------------------------------------------------------------------
# Family systems (the infinitely-branching fixtures)


@dataclass(frozen=True)
class FamilyRoot:
    def __str__(self) -> str:
        return "root"


@dataclass(frozen=True)
class Chain:
    """Head of an a-chain with exactly `length` steps left."""

    length: int

    def __str__(self) -> str:
        return f"chain:{self.length}"


@dataclass(frozen=True)
class Loop:
    """The state carrying the infinite a-run (right fixture only)."""

    def __str__(self) -> str:
        return "loop"


FamilyState = FamilyRoot | Chain | Loop


@dataclass(frozen=True)
class FamilySystem:
    """Root with an a-successor Chain(n) for every natural n.

    With ``has_infinite_branch`` the root gains one extra successor whose
    a-runs never end. ``successor_list(state, a, budget)`` returns a
    representative set that is faithful for every formula of depth at most
    ``budget``: chains of length >= budget are budget-step-indistinguishable
    from Chain(budget).

    ``unbounded_run(state)`` answers whether the state has a-runs of every
    finite length; this is the only fact about the infinite branching that
    schematic conjunctions need.
    """

    name: str
    action: Action
    has_infinite_branch: bool

    @property
    def alphabet(self) -> frozenset[Action]:
        return frozenset({self.action})

    def _check(self, state) -> None:
        if isinstance(state, FamilyRoot):
            return
        if isinstance(state, Chain) and state.length >= 0:
            return
        if isinstance(state, Loop) and self.has_infinite_branch:
            return
        raise UnknownStateError(f"state {state!r} not in {self.name}")

    def successor_list(self, state, action: Action, budget: int):
        self._check(state)
        if action != self.action:
            return ()
        match state:
            case FamilyRoot():
                reps: tuple = tuple(Chain(i) for i in range(budget + 1))
                if self.has_infinite_branch:
                    reps += (Loop(),)
                return reps
            case Chain(length):
                return (Chain(length - 1),) if length >= 1 else ()
            case Loop():
                return (Loop(),)
        raise UnknownStateError(f"state {state!r} not in {self.name}")

    def enabled(self, state) -> frozenset[Action]:
        self._check(state)
        if isinstance(state, Chain) and state.length == 0:
            return frozenset()
        return frozenset({self.action})

    def unbounded_run(self, state) -> bool:
        self._check(state)
        match state:
            case FamilyRoot():
                # Chains of every finite length hang off the root, so runs
                # of every finite length exist even on the left fixture.
                return True
            case Chain(_):
                return False
            case Loop():
                return True
        return False


TransitionSystem = FiniteSystem | FamilySystem


def counterexample_pair(action: Action = Action("a")) -> tuple[FamilySystem, FamilySystem]:
    """The two infinitely-branching systems: arbitrary-length finite
    a-chains, and the same plus one branch with an unending a-run."""
    left = FamilySystem("left-counterexample", action, has_infinite_branch=False)
    right = FamilySystem("right-counterexample", action, has_infinite_branch=True)
    return left, right


# ---------------------------------------------------------------------------
# Projection


@dataclass(frozen=True)
class ProjectedState:
    """A state paired with the number of steps it may still take."""

    base: object
    budget: int

    def __post_init__(self):
        if self.budget < 0:
            raise ValueError("projection budget must be >= 0")

    def __str__(self) -> str:
        return f"{self.base}@{self.budget}"


def project(system: TransitionSystem, state, n: int) -> ProjectedState:
    """Wrap `state` so that every transition strictly decreases the budget;
    budget 0 admits no transitions. The wrapper composes with successors()
    and the evaluator; no truncated system is ever materialized."""
    validate_state(system, state)
    return ProjectedState(state, n)


def validate_state(system: TransitionSystem, state) -> None:
    if isinstance(state, ProjectedState):
        validate_state(system, state.base)
        return
    if isinstance(system, FiniteSystem):
        if not (isinstance(state, int) and 0 <= state < system.num_states):
            raise UnknownStateError(f"state {state!r} not in system")
    else:
        system._check(state)


def successors(system: TransitionSystem, state, action: Action, depth_budget: int | None = None):
    """All action-successors of `state` (finite kind, budget ignored) or a
    depth-budget-faithful representative set (family kind)."""
    if isinstance(state, ProjectedState):
        if state.budget == 0:
            validate_state(system, state.base)
            return ()
        inner = successors(system, state.base, action, depth_budget)
        return tuple(ProjectedState(s, state.budget - 1) for s in inner)
    if isinstance(system, FiniteSystem):
        return system.successor_list(state, action)
    if depth_budget is None:
        raise ValueError("family systems need a depth budget for successor enumeration")
    return system.successor_list(state, action, depth_budget)


def enabled_actions(system: TransitionSystem, state) -> frozenset[Action]:
    if isinstance(state, ProjectedState):
        if state.budget == 0:
            validate_state(system, state.base)
            return frozenset()
        return enabled_actions(system, state.base)
    return system.enabled(state)


def materialize_projection(system: FiniteSystem, state: int, n: int) -> FiniteSystem:
    """Explicit depth-n unrolling of a finite system from `state`.

    Exists as an independent cross-check for the lazy wrapper; exponential
    in general, so only used at small n.
    """
    validate_state(system, state)
    ids: dict[tuple[int, int], int] = {}
    transitions: list[tuple[int, Action, int]] = []

    def visit(s: int, budget: int) -> int:
        key = (s, budget)
        if key in ids:
            return ids[key]
        ids[key] = len(ids)
        my_id = ids[key]
        if budget > 0:
            for a in sorted(system.alphabet):
                for t in system.successor_list(s, a):
                    transitions.append((my_id, a, visit(t, budget - 1)))
        return my_id

    visit(state, n)
    return FiniteSystem(
        num_states=len(ids),
        alphabet=system.alphabet,
        transitions=frozenset(transitions),
        root=0,
    )


def parse_state(system: TransitionSystem, text: str):
    """Parse a CLI state reference: an integer id, or `root`, `chain:K`,
    `loop` for family systems."""
    if isinstance(system, FiniteSystem):
        try:
            state = int(text)
        except ValueError:
            raise UnknownStateError(f"expected an integer state id, got {text!r}")
        validate_state(system, state)
        return state
    if text == "root":
        return FamilyRoot()
    if text == "loop":
        state = Loop()
        validate_state(system, state)
        return state
    m = re.fullmatch(r"chain:(\d+)", text)
    if m:
        return Chain(int(m.group(1)))
    raise UnknownStateError(f"unknown family state {text!r} (use root, chain:K, loop)")
