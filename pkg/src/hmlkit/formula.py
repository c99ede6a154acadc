"""Formula syntax for the two modal logics, measures, and transformations.

The negation logic has exactly T, conjunction, diamond, and negation; the
negation-free logic adds F, disjunction, and box instead of negation. One
set of node classes covers both; ``in_negation_logic`` / ``in_positive_logic``
tell them apart.

Infinite conjunctions and disjunctions are representable only as schematic
families: a template with at most one ``Power`` node (an iterated modality
``<a>^n`` / ``[a]^n``) indexed over all naturals or an explicit finite set.
Instantiating at n replaces the Power node by n nested modalities.
Templates over all naturals must be antitone in the index (each instance
implies the previous one); the complement of an antitone family is monotone
and is likewise supported by the evaluator.

A context is a formula tree with exactly one ``Hole`` leaf; its polarity is
the parity of the negations above the hole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .errors import UnsupportedSchematicError
from .lts import Action


class Formula:
    """Base class for all formula nodes."""


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Diamond(Formula):
    action: Action
    body: Formula


@dataclass(frozen=True)
class Box(Formula):
    action: Action
    body: Formula


@dataclass(frozen=True)
class Neg(Formula):
    body: Formula


@dataclass(frozen=True)
class Hole(Formula):
    pass


@dataclass(frozen=True)
class Power(Formula):
    """Template-only node: the index-many-fold modality around `body`."""

    action: Action
    body: Formula
    box: bool = False


@dataclass(frozen=True)
class AllNaturals:
    def __str__(self) -> str:
        return "N"


NATURALS = AllNaturals()


@dataclass(frozen=True)
class FiniteFamily:
    members: tuple[Formula, ...]


@dataclass(frozen=True)
class Schematic:
    template: Formula
    indices: AllNaturals | frozenset[int]

    def __post_init__(self):
        count = _power_count(self.template)
        if count > 1:
            raise ValueError("a template may contain at most one power node")
        if _hole_count(self.template):
            raise ValueError("templates may not contain holes")
        if not isinstance(self.indices, AllNaturals) and not self.indices:
            raise ValueError("explicit index sets must be non-empty")


Family = FiniteFamily | Schematic


@dataclass(frozen=True)
class Conj(Formula):
    family: Family


@dataclass(frozen=True)
class Disj(Formula):
    family: Family


TOP = Top()
BOT = Bot()
HOLE = Hole()


def conj(*members: Formula) -> Conj:
    return Conj(FiniteFamily(tuple(members)))


def disj(*members: Formula) -> Disj:
    return Disj(FiniteFamily(tuple(members)))


def diamond_chain(action: Action, n: int, body: Formula = TOP) -> Formula:
    """n nested diamonds around `body`."""
    out = body
    for _ in range(n):
        out = Diamond(action, out)
    return out


def unbounded_run_conjunction(action: Action) -> Conj:
    """The schematic conjunction asserting a-runs of every finite length."""
    return Conj(Schematic(Power(action, TOP), NATURALS))


# ---------------------------------------------------------------------------
# Structure helpers


def children(phi: Formula) -> tuple[Formula, ...]:
    match phi:
        case Top() | Bot() | Hole():
            return ()
        case Diamond(_, body) | Box(_, body) | Neg(body) | Power(_, body, _):
            return (body,)
        case Conj(family) | Disj(family):
            if isinstance(family, FiniteFamily):
                return family.members
            return (family.template,)
    raise TypeError(f"not a formula: {phi!r}")


def rebuild(phi: Formula, new_children: tuple[Formula, ...]) -> Formula:
    match phi:
        case Top() | Bot() | Hole():
            return phi
        case Diamond(action, _):
            return Diamond(action, new_children[0])
        case Box(action, _):
            return Box(action, new_children[0])
        case Neg(_):
            return Neg(new_children[0])
        case Power(action, _, box):
            return Power(action, new_children[0], box)
        case Conj(family):
            if isinstance(family, FiniteFamily):
                return Conj(FiniteFamily(new_children))
            return Conj(Schematic(new_children[0], family.indices))
        case Disj(family):
            if isinstance(family, FiniteFamily):
                return Disj(FiniteFamily(new_children))
            return Disj(Schematic(new_children[0], family.indices))
    raise TypeError(f"not a formula: {phi!r}")


def subformula_at(phi: Formula, path: tuple[int, ...]) -> Formula:
    node = phi
    for step in path:
        kids = children(node)
        if not (0 <= step < len(kids)):
            raise ValueError(f"path {path} does not address a subformula")
        node = kids[step]
    return node


def replace_at(phi: Formula, path: tuple[int, ...], new: Formula) -> Formula:
    if not path:
        return new
    kids = list(children(phi))
    if not (0 <= path[0] < len(kids)):
        raise ValueError(f"path {path} does not address a subformula")
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return rebuild(phi, tuple(kids))


def _power_count(phi: Formula) -> int:
    """Power nodes bound by the *enclosing* family: nested schematic
    families open their own index scope and are not descended into."""
    match phi:
        case Power(_, body, _):
            return 1 + _power_count(body)
        case Conj(family) | Disj(family) if isinstance(family, Schematic):
            return 0
        case _:
            return sum(_power_count(c) for c in children(phi))


def _hole_count(phi: Formula) -> int:
    own = 1 if isinstance(phi, Hole) else 0
    return own + sum(_hole_count(c) for c in children(phi))


def hole_count(phi: Formula) -> int:
    return _hole_count(phi)


def in_negation_logic(phi: Formula) -> bool:
    """Nodes drawn from T / conjunction / diamond / negation only
    (holes pass; power nodes must be diamond-flavoured)."""
    match phi:
        case Bot() | Disj(_) | Box(_, _):
            return False
        case Power(_, _, box):
            return not box and all(in_negation_logic(c) for c in children(phi))
        case _:
            return all(in_negation_logic(c) for c in children(phi))


def in_positive_logic(phi: Formula) -> bool:
    """No negation node anywhere (holes pass)."""
    if isinstance(phi, Neg):
        return False
    return all(in_positive_logic(c) for c in children(phi))


def instantiate(template: Formula, n: int) -> Formula:
    """Replace the template's in-scope power node by n nested modalities.

    Nested schematic families keep their own templates: their power nodes
    are bound by their own index, not this one.
    """
    match template:
        case Power(action, body, box):
            out = body
            wrap = Box if box else Diamond
            for _ in range(n):
                out = wrap(action, out)
            return out
        case Conj(family) | Disj(family) if isinstance(family, Schematic):
            return template
        case _:
            kids = children(template)
            if not kids:
                return template
            return rebuild(template, tuple(instantiate(c, n) for c in kids))


def family_members(family: Family, indices: tuple[int, ...] | None = None):
    """Instantiated members of a family; explicit-index schematics expand
    in ascending index order. AllNaturals requires `indices`."""
    if isinstance(family, FiniteFamily):
        return family.members
    if isinstance(family.indices, AllNaturals):
        if indices is None:
            raise UnsupportedSchematicError(
                "cannot expand a family over all naturals without a bound"
            )
        return tuple(instantiate(family.template, i) for i in indices)
    return tuple(instantiate(family.template, i) for i in sorted(family.indices))


def is_unbounded_schematic(family: Family) -> bool:
    return isinstance(family, Schematic) and isinstance(family.indices, AllNaturals)


# ---------------------------------------------------------------------------
# Measures


def depth(phi: Formula) -> int | float:
    """Modal depth; infinity for power templates over all naturals."""
    match phi:
        case Top() | Bot() | Hole():
            return 0
        case Diamond(_, body) | Box(_, body):
            return 1 + depth(body)
        case Neg(body):
            return depth(body)
        case Power(_, _, _):
            raise ValueError("depth of a bare template is index-dependent")
        case Conj(family) | Disj(family):
            if isinstance(family, FiniteFamily):
                return max((depth(m) for m in family.members), default=0)
            if isinstance(family.indices, AllNaturals):
                if _power_count(family.template) > 0:
                    return math.inf
                return depth(family.template)
            return max(depth(m) for m in family_members(family))
    raise TypeError(f"not a formula: {phi!r}")


def complexity(phi: Formula) -> int:
    """Size measure: 1 for T, +1 per modality/negation, 1 + max over
    conjunction members. Only defined once every family is instantiable."""
    match phi:
        case Top() | Bot():
            return 1
        case Diamond(_, body) | Box(_, body) | Neg(body):
            return 1 + complexity(body)
        case Conj(family) | Disj(family):
            if is_unbounded_schematic(family):
                raise UnsupportedSchematicError(
                    "complexity is undefined for families over all naturals"
                )
            members = family_members(family)
            return 1 + max((complexity(m) for m in members), default=0)
    raise TypeError(f"complexity undefined for {phi!r}")


def infinite_conj_nesting(phi: Formula, *, require_infinite_depth: bool = False) -> int:
    """Length of the longest chain of nested infinite conjunctions.

    With ``require_infinite_depth`` only infinite families whose own depth
    is infinite contribute to the chain.
    """
    match phi:
        case Top() | Bot() | Hole():
            return 0
        case Diamond(_, body) | Box(_, body) | Neg(body) | Power(_, body, _):
            return infinite_conj_nesting(body, require_infinite_depth=require_infinite_depth)
        case Conj(family) | Disj(family):
            if isinstance(family, FiniteFamily):
                return max(
                    (
                        infinite_conj_nesting(m, require_infinite_depth=require_infinite_depth)
                        for m in family.members
                    ),
                    default=0,
                )
            inner = infinite_conj_nesting(
                family.template, require_infinite_depth=require_infinite_depth
            )
            if not isinstance(family.indices, AllNaturals):
                return inner
            counts = not require_infinite_depth or depth(phi) == math.inf
            return (1 if counts else 0) + inner
    raise TypeError(f"not a formula: {phi!r}")


# ---------------------------------------------------------------------------
# Complement and the positive translation


def complement(phi: Formula) -> Formula:
    """Negation-eliminating dual on the negation-free logic: swaps T/F,
    conjunction/disjunction, diamond/box. An involution."""
    match phi:
        case Top():
            return BOT
        case Bot():
            return TOP
        case Hole():
            return HOLE
        case Diamond(action, body):
            return Box(action, complement(body))
        case Box(action, body):
            return Diamond(action, complement(body))
        case Power(action, body, box):
            return Power(action, complement(body), not box)
        case Conj(family):
            return Disj(_complement_family(family))
        case Disj(family):
            return Conj(_complement_family(family))
        case Neg(_):
            raise ValueError("complement is defined on negation-free formulas only")
    raise TypeError(f"not a formula: {phi!r}")


def _complement_family(family: Family) -> Family:
    if isinstance(family, FiniteFamily):
        return FiniteFamily(tuple(complement(m) for m in family.members))
    return Schematic(complement(family.template), family.indices)


def to_positive(phi: Formula) -> Formula:
    """Translate a negation-logic formula to an equivalent negation-free
    one; negation becomes the complement of the translated body."""
    match phi:
        case Top():
            return TOP
        case Hole():
            return HOLE
        case Diamond(action, body):
            return Diamond(action, to_positive(body))
        case Power(action, body, False):
            return Power(action, to_positive(body), False)
        case Neg(body):
            return complement(to_positive(body))
        case Conj(family):
            if isinstance(family, FiniteFamily):
                return Conj(FiniteFamily(tuple(to_positive(m) for m in family.members)))
            return Conj(Schematic(to_positive(family.template), family.indices))
    raise ValueError(f"not a negation-logic formula: {phi!r}")


# ---------------------------------------------------------------------------
# Contexts


class Polarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


def _hole_path(phi: Formula) -> tuple[int, ...] | None:
    if isinstance(phi, Hole):
        return ()
    for i, child in enumerate(children(phi)):
        sub = _hole_path(child)
        if sub is not None:
            return (i,) + sub
    return None


def substitute(context: Formula, plug: Formula) -> Formula:
    """Replace the context's unique hole by `plug`."""
    n = hole_count(context)
    if n != 1:
        raise ValueError(f"a context needs exactly one hole, found {n}")
    path = _hole_path(context)
    return replace_at(context, path, plug)


def context_polarity(context: Formula) -> Polarity:
    """Parity of the negations above the hole: even is positive."""
    n = hole_count(context)
    if n != 1:
        raise ValueError(f"a context needs exactly one hole, found {n}")
    negs = 0
    node = context
    for step in _hole_path(context):
        if isinstance(node, Neg):
            negs += 1
        node = children(node)[step]
    return Polarity.POSITIVE if negs % 2 == 0 else Polarity.NEGATIVE


def translate_context(context: Formula) -> Formula:
    """Positive translation of a negation-logic context; the hole passes
    through both the translation and the complement unchanged."""
    if hole_count(context) != 1:
        raise ValueError("a context needs exactly one hole")
    return to_positive(context)


# ---------------------------------------------------------------------------
# cut


def cut(n: int, phi: Formula) -> Formula:
    """Truncate at modal depth n: diamonds at depth n become false (boxes
    become true), so the result has depth at most n.

    In the negation logic false is encoded as ``not T``; in the
    negation-free logic the primitive F (and T for boxes) is used.
    """
    if n < 0:
        raise ValueError("cut depth must be >= 0")
    # Formulas living in both grammars get the negation-logic encoding.
    positive = in_positive_logic(phi) and not in_negation_logic(phi)
    return _cut(n, phi, positive)


def _cut(n: int, phi: Formula, positive: bool) -> Formula:
    match phi:
        case Top() | Bot():
            return phi
        case Neg(body):
            return Neg(_cut(n, body, positive))
        case Diamond(action, body):
            if n == 0:
                return BOT if positive else Neg(TOP)
            return Diamond(action, _cut(n - 1, body, positive))
        case Box(action, body):
            if n == 0:
                return TOP
            return Box(action, _cut(n - 1, body, positive))
        case Conj(family):
            return Conj(_cut_family(n, family, positive))
        case Disj(family):
            return Disj(_cut_family(n, family, positive))
    raise ValueError(f"cut undefined for {phi!r}")


def _cut_family(n: int, family: Family, positive: bool) -> FiniteFamily:
    if isinstance(family, FiniteFamily):
        return FiniteFamily(tuple(_cut(n, m, positive) for m in family.members))
    if isinstance(family.indices, AllNaturals):
        # Instances above n+1 all cut to the same formula: the power node's
        # modalities exhaust any budget <= n.
        indices: tuple[int, ...] = tuple(range(n + 2))
    else:
        indices = tuple(sorted(family.indices))
    cuts = []
    for member in family_members(family, indices):
        c = _cut(n, member, positive)
        if c not in cuts:
            cuts.append(c)
    return FiniteFamily(tuple(cuts))


# ---------------------------------------------------------------------------
# Finite sub-conjunctions


def finite_subconjunctions(
    phi: Formula, path: tuple[int, ...], bound: int
) -> list[Formula]:
    """All replacements of the addressed all-naturals conjunction by the
    same family restricted to a non-empty J within {0..bound}, re-embedded
    at the address. Subsets are enumerated by (size, elements)."""
    node = subformula_at(phi, path)
    if not (isinstance(node, Conj) and is_unbounded_schematic(node.family)):
        raise ValueError(
            "address must name a conjunction over a schematic all-naturals family"
        )
    template = node.family.template
    out = []
    universe = range(bound + 1)
    for size in range(1, bound + 2):
        for combo in combinations(universe, size):
            restricted = Conj(Schematic(template, frozenset(combo)))
            out.append(replace_at(phi, path, restricted))
    return out


# ---------------------------------------------------------------------------
# Depth budget for family representative enumeration


def probe_depth(phi: Formula) -> int:
    """Finite successor budget that makes family representative sets
    faithful for `phi`: like depth, but an all-naturals family only needs
    its first instance probed (the limit is decided pointwise)."""
    match phi:
        case Top() | Bot() | Hole():
            return 0
        case Diamond(_, body) | Box(_, body):
            return 1 + probe_depth(body)
        case Neg(body):
            return probe_depth(body)
        case Conj(family) | Disj(family):
            if isinstance(family, FiniteFamily):
                return max((probe_depth(m) for m in family.members), default=0)
            if isinstance(family.indices, AllNaturals):
                return probe_depth(instantiate(family.template, 1))
            return max(probe_depth(m) for m in family_members(family))
    raise TypeError(f"probe_depth undefined for {phi!r}")
