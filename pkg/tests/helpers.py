"""Shared test utilities: independent oracles and bounded exhaustive
formula enumeration. Everything here deliberately avoids the package's
evaluator/decider code paths so it can serve as a cross-check."""

from __future__ import annotations

from functools import lru_cache

from hmlkit.formula import TOP, Conj, Diamond, FiniteFamily, Neg
from hmlkit.lts import Action, FiniteSystem


def longest_walk(system: FiniteSystem, state: int, action: Action) -> float:
    """Length of the longest walk along `action` edges; inf if a cycle is
    reachable. Independent oracle for iterated-diamond instances."""

    def walk(s: int, on_path: frozenset[int]) -> float:
        if s in on_path:
            return float("inf")
        best = 0.0
        for t in system.successor_list(s, action):
            best = max(best, 1 + walk(t, on_path | {s}))
            if best == float("inf"):
                break
        return best

    return walk(state, frozenset())


def brute_traces(system: FiniteSystem, state: int, bound: int) -> frozenset:
    """Trace enumeration by plain recursion, no memoization."""
    if bound == 0:
        return frozenset({()})
    out = {()}
    for action in sorted(system.alphabet):
        for t in system.successor_list(state, action):
            out |= {(action,) + rest for rest in brute_traces(system, t, bound - 1)}
    return frozenset(out)


def enumerate_formulas(actions, max_depth: int, max_nodes: int, negation: bool = True):
    """Every negation-logic formula up to the given depth and node count,
    with conjunction arity <= 2. Exhaustive at small sizes."""
    actions = tuple(actions)

    @lru_cache(maxsize=None)
    def build(depth_left: int, nodes: int) -> frozenset:
        out = {TOP}
        if nodes <= 1:
            return frozenset(out)
        smaller = build(depth_left, nodes - 1)
        if negation:
            out.update(Neg(f) for f in smaller)
        if depth_left > 0:
            for f in build(depth_left - 1, nodes - 1):
                out.update(Diamond(a, f) for a in actions)
        out.add(Conj(FiniteFamily(())))
        out.update(Conj(FiniteFamily((f,))) for f in smaller)
        for left_nodes in range(1, nodes - 1):
            for f in build(depth_left, left_nodes):
                for g in build(depth_left, nodes - 1 - left_nodes):
                    out.add(Conj(FiniteFamily((f, g))))
        return frozenset(out)

    return sorted(build(max_depth, max_nodes), key=repr)
