"""The satisfaction relation over finite, family, and projected states.

Schematic families over all naturals are the only semantically infinite
objects here, and they are decided exactly, never approximated:

* constant templates (no power node) collapse to the template itself;
* on finite systems, a power template with body T (diamond) or F (box)
  stabilizes within the system's state count, because an a-walk as long as
  the state count revisits a state; the family then equals the finite
  conjunction/disjunction of the instances up to that bound. At a projected
  state the bound scales to (budget+1) * state count, the size of the
  projected state space.
* on family systems, the bare iterated-diamond family is answered by the
  fixture's unbounded-run oracle; the bare iterated-box dual by its
  negation. Whatever collapses to instance 0 by monotonicity is evaluated
  directly.

Every other combination raises UnsupportedSchematicError.
"""

from __future__ import annotations

from .errors import UnsupportedSchematicError
from .formula import (
    BOT,
    TOP,
    Bot,
    Box,
    Conj,
    Diamond,
    Disj,
    Family,
    FiniteFamily,
    Formula,
    Neg,
    Power,
    Schematic,
    Top,
    children,
    family_members,
    instantiate,
    is_unbounded_schematic,
    probe_depth,
)
from .lts import (
    FamilySystem,
    FiniteSystem,
    ProjectedState,
    TransitionSystem,
    successors,
    validate_state,
)


def _find_power(template: Formula) -> tuple[Power | None, int]:
    """The template's in-scope power node and the negations above it."""
    if isinstance(template, Power):
        return template, 0
    if isinstance(template, (Conj, Disj)) and isinstance(template.family, Schematic):
        return None, 0
    bump = 1 if isinstance(template, Neg) else 0
    for child in children(template):
        power, negs = _find_power(child)
        if power is not None:
            return power, negs + bump
    return None, 0


def _template_direction(template: Formula) -> str:
    """'antitone' when instance(n+1) implies instance(n), 'monotone' for
    the reverse. Only power bodies T (diamond) / F (box) are verifiable."""
    power, negs = _find_power(template)
    assert power is not None
    if not power.box and power.body == TOP:
        core_antitone = True
    elif power.box and power.body == BOT:
        core_antitone = False
    else:
        raise UnsupportedSchematicError(
            "only <a>^n T / [a]^n F power templates have a verifiable limit"
        )
    if negs % 2 == 1:
        core_antitone = not core_antitone
    return "antitone" if core_antitone else "monotone"


class Evaluator:
    """Satisfaction checker for one transition system.

    The memo cache is keyed by (state, formula) and is observationally
    transparent: evaluation is pure, so cached and fresh results coincide.
    ``family_budget_slack`` widens every family representative budget; any
    slack must leave results unchanged (the representative contract), which
    the tests exercise.
    """

    def __init__(
        self,
        system: TransitionSystem,
        schematic_bound: int | None = None,
        use_memo: bool = True,
        family_budget_slack: int = 0,
    ):
        if schematic_bound is not None and schematic_bound < 0:
            raise ValueError("schematic_bound must be >= 0")
        self.system = system
        self.schematic_bound = schematic_bound
        self.use_memo = use_memo
        self.family_budget_slack = family_budget_slack
        self._memo: dict = {}

    # -- entry points -----------------------------------------------------

    def satisfies(self, state, phi: Formula) -> bool:
        validate_state(self.system, state)
        return self._sat(state, phi)

    def satisfying_set(self, phi: Formula) -> frozenset[int]:
        """Bottom-up satisfying set; finite systems only."""
        if not isinstance(self.system, FiniteSystem):
            raise ValueError("satisfying sets are defined for finite systems only")
        return self._sat_set(phi)

    # -- recursive evaluation ---------------------------------------------

    def _sat(self, state, phi: Formula) -> bool:
        key = (state, phi)
        if self.use_memo and key in self._memo:
            return self._memo[key]
        result = self._sat_raw(state, phi)
        if self.use_memo:
            self._memo[key] = result
        return result

    def _succ(self, state, action, body: Formula):
        budget = None
        if isinstance(self.system, FamilySystem):
            budget = probe_depth(body) + self.family_budget_slack
        return successors(self.system, state, action, budget)

    def _sat_raw(self, state, phi: Formula) -> bool:
        match phi:
            case Top():
                return True
            case Bot():
                return False
            case Neg(body):
                return not self._sat(state, body)
            case Diamond(action, body):
                return any(self._sat(s, body) for s in self._succ(state, action, body))
            case Box(action, body):
                return all(self._sat(s, body) for s in self._succ(state, action, body))
            case Conj(family):
                return self._sat_family(state, family, is_conj=True)
            case Disj(family):
                return self._sat_family(state, family, is_conj=False)
        raise ValueError(f"cannot evaluate {phi!r}")

    def _sat_family(self, state, family: Family, is_conj: bool) -> bool:
        if not is_unbounded_schematic(family):
            members = family_members(family)
            if is_conj:
                return all(self._sat(state, m) for m in members)
            return any(self._sat(state, m) for m in members)
        return self._sat_unbounded(state, family, is_conj)

    def _instance_bound(self, state) -> int:
        base = (
            self.schematic_bound
            if self.schematic_bound is not None
            else self.system.num_states
        )
        if isinstance(state, ProjectedState):
            # The projected system has (budget+1) * |S| states; the base
            # system's count is not a sound stabilization index here.
            base = max(base, (state.budget + 1) * self.system.num_states)
        return base

    def _sat_unbounded(self, state, family: Schematic, is_conj: bool) -> bool:
        template = family.template
        power, _ = _find_power(template)
        if power is None:
            # Constant family: every instance is the template itself.
            return self._sat(state, template)

        if isinstance(self.system, FiniteSystem):
            _template_direction(template)  # stabilization needs a T/F power body
            bound = self._instance_bound(state)
            instances = (instantiate(template, i) for i in range(bound + 1))
            if is_conj:
                return all(self._sat(state, inst) for inst in instances)
            return any(self._sat(state, inst) for inst in instances)

        direction = _template_direction(template)
        if (direction == "antitone") != is_conj:
            # Conjunction of a monotone family / disjunction of an antitone
            # one collapse to instance 0, which has finite depth.
            return self._sat(state, instantiate(template, 0))

        # The limit side. Only the bare power templates are decidable on a
        # family system, via the unbounded-run oracle.
        if template != power:
            raise UnsupportedSchematicError(
                "family systems decide only bare power templates over all naturals"
            )
        if isinstance(state, ProjectedState):
            # Any instance beyond the projection budget is false (diamond)
            # or true (box), settling the limit.
            return not is_conj
        if power.action == self.system.action:
            runs = self.system.unbounded_run(state)
            return runs if is_conj else not runs
        # Foreign action: instance 1 decides unless it disagrees with the
        # limit direction, which cannot happen on the fixtures.
        first = self._sat(state, instantiate(template, 1))
        if is_conj and not first:
            return False
        if not is_conj and first:
            return True
        raise UnsupportedSchematicError(
            f"cannot decide the limit of {power.action} instances on this system"
        )

    # -- bottom-up sets ----------------------------------------------------

    def _all_states(self) -> frozenset[int]:
        return frozenset(self.system.states)

    def _sat_set(self, phi: Formula) -> frozenset[int]:
        system = self.system
        match phi:
            case Top():
                return self._all_states()
            case Bot():
                return frozenset()
            case Neg(body):
                return self._all_states() - self._sat_set(body)
            case Diamond(action, body):
                target = self._sat_set(body)
                return frozenset(
                    s
                    for s in system.states
                    if any(t in target for t in system.successor_list(s, action))
                )
            case Box(action, body):
                target = self._sat_set(body)
                return frozenset(
                    s
                    for s in system.states
                    if all(t in target for t in system.successor_list(s, action))
                )
            case Conj(family):
                return self._family_set(family, is_conj=True)
            case Disj(family):
                return self._family_set(family, is_conj=False)
        raise ValueError(f"cannot evaluate {phi!r}")

    def _family_set(self, family: Family, is_conj: bool) -> frozenset[int]:
        if is_unbounded_schematic(family):
            power, _ = _find_power(family.template)
            if power is None:
                return self._sat_set(family.template)
            _template_direction(family.template)  # validates the power body
            bound = (
                self.schematic_bound
                if self.schematic_bound is not None
                else self.system.num_states
            )
            members = [instantiate(family.template, i) for i in range(bound + 1)]
        else:
            members = list(family_members(family))
        out = self._all_states() if is_conj else frozenset()
        for member in members:
            if is_conj:
                out &= self._sat_set(member)
            else:
                out |= self._sat_set(member)
        return out


def satisfies(system: TransitionSystem, state, phi: Formula, **kwargs) -> bool:
    """One-shot satisfaction check with a fresh evaluator."""
    return Evaluator(system, **kwargs).satisfies(state, phi)
