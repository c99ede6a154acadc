"""Hennessy-Milner logic toolkit.

Labelled transition systems (finite and infinitely-branching fixture
families), the two modal logics with schematic infinite families, formula
transformations, projection operators, spectrum equivalence checkers, and
an executable property-check harness.
"""

from .errors import (
    AutFormatError,
    CharacterizationSizeError,
    HmlkitError,
    ParseError,
    UnknownStateError,
    UnsupportedSchematicError,
    UnsupportedSemanticsError,
)
from .lts import (
    Action,
    Chain,
    Choice,
    FamilyRoot,
    FamilySystem,
    FiniteSystem,
    Loop,
    Nil,
    NIL,
    Prefix,
    ProcessTerm,
    ProjectedState,
    a_loop,
    counterexample_pair,
    deadlock,
    enabled_actions,
    format_term,
    from_term,
    materialize_projection,
    parse_term,
    project,
    successors,
    system_from_text,
)
from .aut import format_aut, parse_aut, read_aut, write_aut
from .formula import (
    BOT,
    HOLE,
    NATURALS,
    AllNaturals,
    Bot,
    Box,
    Conj,
    Diamond,
    Disj,
    FiniteFamily,
    Formula,
    Hole,
    Neg,
    Polarity,
    Power,
    Schematic,
    TOP,
    Top,
    complement,
    complexity,
    conj,
    context_polarity,
    cut,
    depth,
    diamond_chain,
    disj,
    finite_subconjunctions,
    infinite_conj_nesting,
    instantiate,
    substitute,
    to_positive,
    translate_context,
    unbounded_run_conjunction,
)
from .grammar import format_formula, parse_formula
from .evaluate import Evaluator, satisfies
from .spectrum import (
    CharacterizationSet,
    EquivalenceVerdict,
    SemanticsId,
    bisimilar,
    char_formulas,
    completed_traces,
    decider_equivalent,
    default_bound,
    equiv_by_semantics,
    equiv_modulo,
    failures,
    ready_sets,
    reachable_action,
    simulated_by,
    trace_sets,
)
from .harness import (
    CheckReport,
    CorpusEntry,
    Verdict,
    Witness,
    build_corpus,
    standard_suite,
    suite_ok,
)

__version__ = "0.1.0"
