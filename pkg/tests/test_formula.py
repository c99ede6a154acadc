"""Formula measures, transformations, contexts, and cut."""

import math
import random

import pytest

from hmlkit.errors import UnsupportedSchematicError
from hmlkit.formula import (
    BOT,
    HOLE,
    NATURALS,
    Box,
    Conj,
    Diamond,
    Disj,
    FiniteFamily,
    Neg,
    Polarity,
    Power,
    Schematic,
    TOP,
    complement,
    complexity,
    conj,
    context_polarity,
    cut,
    depth,
    diamond_chain,
    finite_subconjunctions,
    hole_count,
    in_negation_logic,
    in_positive_logic,
    infinite_conj_nesting,
    instantiate,
    substitute,
    to_positive,
    translate_context,
    unbounded_run_conjunction,
)
from hmlkit.grammar import format_formula
from hmlkit.harness import random_context, random_formula
from hmlkit.lts import Action

from helpers import enumerate_formulas

A, B = Action("a"), Action("b")
UNBOUNDED = unbounded_run_conjunction(A)


# ---------------------------------------------------------------------------
# depth


def test_depth_base_cases():
    assert depth(TOP) == 0
    assert depth(BOT) == 0
    assert depth(Diamond(A, TOP)) == 1
    assert depth(Box(A, Diamond(B, TOP))) == 2
    assert depth(Neg(Diamond(A, TOP))) == 1
    assert depth(conj()) == 0
    assert depth(conj(TOP, Diamond(A, TOP))) == 1


def test_depth_of_unbounded_family_is_infinite():
    assert depth(UNBOUNDED) == math.inf
    assert depth(Diamond(A, UNBOUNDED)) == math.inf
    # Instances have the expected finite depths.
    for n in range(6):
        assert depth(instantiate(UNBOUNDED.family.template, n)) == n


def test_depth_of_constant_and_finite_index_families():
    constant = Conj(Schematic(Diamond(A, TOP), NATURALS))
    assert depth(constant) == 1
    finite = Conj(Schematic(Power(A, TOP), frozenset({0, 4})))
    assert depth(finite) == 4


# ---------------------------------------------------------------------------
# complexity


def test_complexity_clauses():
    assert complexity(TOP) == 1
    assert complexity(Neg(Diamond(A, TOP))) == 3
    assert complexity(conj(TOP, Diamond(A, TOP))) == 3
    assert complexity(conj()) == 1


def test_complexity_rejects_unbounded_families():
    with pytest.raises(UnsupportedSchematicError):
        complexity(UNBOUNDED)
    assert complexity(Conj(Schematic(Power(A, TOP), frozenset({2})))) == 4


# ---------------------------------------------------------------------------
# nesting measure


def test_nesting_measure_examples():
    assert infinite_conj_nesting(TOP) == 0
    assert infinite_conj_nesting(TOP, require_infinite_depth=True) == 0
    assert infinite_conj_nesting(UNBOUNDED) == 1
    assert infinite_conj_nesting(UNBOUNDED, require_infinite_depth=True) == 1
    constant = Conj(Schematic(Diamond(A, TOP), NATURALS))
    assert infinite_conj_nesting(constant) == 1
    assert infinite_conj_nesting(constant, require_infinite_depth=True) == 0


def test_nesting_measure_nested_families():
    nested = Conj(Schematic(Power(A, conj(UNBOUNDED)), NATURALS))
    assert infinite_conj_nesting(nested) == 2
    # Finite index sets never contribute.
    finite = Conj(Schematic(Power(A, TOP), frozenset({1, 2})))
    assert infinite_conj_nesting(finite) == 0


# ---------------------------------------------------------------------------
# complement


def test_complement_table():
    assert complement(TOP) == BOT
    assert complement(BOT) == TOP
    assert complement(Diamond(A, TOP)) == Box(A, BOT)
    assert complement(Box(A, BOT)) == Diamond(A, TOP)
    assert complement(disj_pair()) == Conj(
        FiniteFamily((Box(A, BOT), Diamond(B, BOT)))
    )


def disj_pair():
    return Disj(FiniteFamily((Diamond(A, TOP), Box(B, TOP))))


def test_complement_schematic_flips_the_power():
    flipped = complement(UNBOUNDED)
    assert flipped == Disj(Schematic(Power(A, BOT, box=True), NATURALS))


def test_complement_rejects_negation():
    with pytest.raises(ValueError):
        complement(Neg(TOP))


def test_complement_is_involution_exhaustive():
    for phi in enumerate_formulas([A, B], 2, 5, negation=False):
        pos = to_positive(phi)
        assert complement(complement(pos)) == pos


def test_complement_is_involution_random():
    rng = random.Random(7)
    for _ in range(300):
        phi = random_formula(rng, 3, [A, B], negation=False)
        assert complement(complement(phi)) == phi
    assert complement(complement(UNBOUNDED)) == UNBOUNDED


# ---------------------------------------------------------------------------
# positive translation


def test_to_positive_examples():
    assert to_positive(TOP) == TOP
    assert to_positive(Neg(Diamond(A, TOP))) == Box(A, BOT)
    assert to_positive(Neg(Neg(Diamond(A, TOP)))) == Diamond(A, TOP)
    assert to_positive(Neg(conj(Diamond(A, TOP), TOP))) == Disj(
        FiniteFamily((Box(A, BOT), BOT))
    )


def test_to_positive_output_is_negation_free():
    rng = random.Random(11)
    for _ in range(300):
        phi = random_formula(rng, 3, [A, B], negation=True)
        assert in_negation_logic(phi)
        assert in_positive_logic(to_positive(phi))


def test_to_positive_rejects_positive_only_nodes():
    with pytest.raises(ValueError):
        to_positive(BOT)
    with pytest.raises(ValueError):
        to_positive(Box(A, TOP))


# ---------------------------------------------------------------------------
# contexts


def test_substitute_examples():
    assert substitute(HOLE, Diamond(A, TOP)) == Diamond(A, TOP)
    assert substitute(Diamond(A, HOLE), TOP) == Diamond(A, TOP)
    assert substitute(Neg(HOLE), Diamond(A, TOP)) == Neg(Diamond(A, TOP))


def test_substitute_requires_exactly_one_hole():
    with pytest.raises(ValueError):
        substitute(TOP, TOP)
    with pytest.raises(ValueError):
        substitute(conj(HOLE, HOLE), TOP)


def test_context_polarity():
    assert context_polarity(HOLE) is Polarity.POSITIVE
    assert context_polarity(Neg(HOLE)) is Polarity.NEGATIVE
    assert context_polarity(Neg(Diamond(A, Neg(HOLE)))) is Polarity.POSITIVE
    assert context_polarity(conj(Diamond(A, TOP), Neg(HOLE))) is Polarity.NEGATIVE


def test_context_polarity_counts_negations_above_hole_only():
    ctx = conj(Neg(Diamond(A, TOP)), Diamond(B, HOLE))
    assert context_polarity(ctx) is Polarity.POSITIVE


def test_translate_context_examples():
    assert translate_context(HOLE) == HOLE
    assert translate_context(Neg(HOLE)) == HOLE
    assert translate_context(Diamond(A, HOLE)) == Diamond(A, HOLE)


def test_context_translation_lemma():
    """Translation commutes with plugging, through the complement for
    negative contexts."""
    rng = random.Random(23)
    for _ in range(400):
        ctx = random_context(rng, 3, [A, B], negation=True)
        phi = random_formula(rng, 2, [A, B], negation=True, max_nodes=8)
        direct = to_positive(substitute(ctx, phi))
        translated = translate_context(ctx)
        if context_polarity(ctx) is Polarity.POSITIVE:
            assert direct == substitute(translated, to_positive(phi))
        else:
            assert direct == substitute(translated, complement(to_positive(phi)))


# ---------------------------------------------------------------------------
# cut


def test_cut_examples():
    assert cut(0, Diamond(A, TOP)) == Neg(TOP)
    assert cut(3, TOP) == TOP
    assert cut(1, Diamond(A, Diamond(A, TOP))) == Diamond(A, Neg(TOP))
    assert cut(2, Neg(Diamond(A, TOP))) == Neg(Diamond(A, TOP))


def test_cut_positive_logic_uses_primitives():
    assert cut(0, Diamond(A, BOT)) == BOT
    assert cut(0, Box(A, TOP)) == TOP
    assert cut(1, Box(A, Box(B, TOP))) == Box(A, TOP)


def test_cut_depth_bound():
    rng = random.Random(5)
    for _ in range(400):
        phi = random_formula(
            rng, 4, [A, B], negation=True, schematic_probability=0.15
        )
        for n in range(5):
            assert depth(cut(n, phi)) <= n


def test_cut_of_unbounded_family_is_finite():
    result = cut(2, UNBOUNDED)
    assert isinstance(result.family, FiniteFamily)
    members = result.family.members
    assert members == (
        TOP,
        Diamond(A, TOP),
        Diamond(A, Diamond(A, TOP)),
        Diamond(A, Diamond(A, Neg(TOP))),
    )


def test_cut_identity_beyond_depth():
    phi = Diamond(A, Neg(Diamond(B, TOP)))
    assert cut(2, phi) == phi
    assert cut(9, phi) == phi


# ---------------------------------------------------------------------------
# finite sub-conjunctions


def test_finite_subconjunctions_bound_one():
    out = finite_subconjunctions(UNBOUNDED, (), 1)
    template = UNBOUNDED.family.template
    assert out == [
        Conj(Schematic(template, frozenset({0}))),
        Conj(Schematic(template, frozenset({1}))),
        Conj(Schematic(template, frozenset({0, 1}))),
    ]


def test_finite_subconjunctions_bound_zero():
    out = finite_subconjunctions(UNBOUNDED, (), 0)
    assert out == [Conj(Schematic(UNBOUNDED.family.template, frozenset({0})))]


def test_finite_subconjunctions_preserves_context():
    wrapped = Diamond(A, UNBOUNDED)
    out = finite_subconjunctions(wrapped, (0,), 0)
    assert out == [
        Diamond(A, Conj(Schematic(UNBOUNDED.family.template, frozenset({0}))))
    ]


def test_finite_subconjunctions_bad_address():
    with pytest.raises(ValueError):
        finite_subconjunctions(Diamond(A, TOP), (0,), 1)
    with pytest.raises(ValueError):
        finite_subconjunctions(UNBOUNDED, (0, 0, 0), 1)


# ---------------------------------------------------------------------------
# misc structure


def test_instantiate_expands_the_power():
    template = Neg(Power(A, TOP))
    assert instantiate(template, 0) == Neg(TOP)
    assert instantiate(template, 2) == Neg(Diamond(A, Diamond(A, TOP)))
    boxed = Power(A, BOT, box=True)
    assert instantiate(boxed, 2) == Box(A, Box(A, BOT))


def test_instantiate_leaves_nested_families_alone():
    template = Power(A, conj(UNBOUNDED))
    inst = instantiate(template, 1)
    assert inst == Diamond(A, conj(UNBOUNDED))


def test_template_validation():
    with pytest.raises(ValueError):
        Schematic(conj(Power(A, TOP), Power(B, TOP)), NATURALS)
    with pytest.raises(ValueError):
        Schematic(HOLE, NATURALS)
    with pytest.raises(ValueError):
        Schematic(Power(A, TOP), frozenset())


def test_hole_count():
    assert hole_count(TOP) == 0
    assert hole_count(conj(HOLE, Diamond(A, HOLE))) == 2


def test_logic_membership():
    assert in_negation_logic(Neg(conj(Diamond(A, TOP))))
    assert not in_negation_logic(Box(A, TOP))
    assert not in_negation_logic(BOT)
    assert in_positive_logic(Box(A, BOT))
    assert not in_positive_logic(Neg(TOP))
    assert in_negation_logic(UNBOUNDED) and in_positive_logic(UNBOUNDED)


def test_diamond_chain():
    assert diamond_chain(A, 0) == TOP
    assert diamond_chain(A, 2) == Diamond(A, Diamond(A, TOP))
