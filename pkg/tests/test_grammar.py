"""Formula text grammar: golden strings, round trips, error positions."""

import random

import pytest

from hmlkit.errors import ParseError
from hmlkit.formula import (
    BOT,
    NATURALS,
    Box,
    Conj,
    Diamond,
    Disj,
    FiniteFamily,
    Neg,
    Power,
    Schematic,
    TOP,
    complement,
    cut,
    to_positive,
    unbounded_run_conjunction,
)
from hmlkit.grammar import format_formula, parse_formula
from hmlkit.harness import random_formula
from hmlkit.lts import Action

A, B = Action("a"), Action("b")


GOLDEN = [
    ("T", TOP),
    ("F", BOT),
    ("<a> T", Diamond(A, TOP)),
    ("[b] F", Box(B, BOT)),
    ("not <a> T", Neg(Diamond(A, TOP))),
    ("and()", Conj(FiniteFamily(()))),
    ("and(T, <a> T)", Conj(FiniteFamily((TOP, Diamond(A, TOP))))),
    ("or(F, [a] T)", Disj(FiniteFamily((BOT, Box(A, TOP))))),
    ("AND{n in N} <a>^n T", unbounded_run_conjunction(A)),
    ("AND{n in {0,2,5}} <a>^n T", Conj(Schematic(Power(A, TOP), frozenset({0, 2, 5})))),
    ("OR{n in N} [a]^n F", Disj(Schematic(Power(A, BOT, box=True), NATURALS))),
    ("not and(not <a> T, not <b> T)", Neg(Conj(FiniteFamily((Neg(Diamond(A, TOP)), Neg(Diamond(B, TOP))))))),
]


@pytest.mark.parametrize("text,expected", GOLDEN)
def test_golden_parse(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("text,expected", GOLDEN)
def test_golden_print(text, expected):
    assert format_formula(expected) == text


def test_whitespace_insensitive():
    assert parse_formula("<a>T") == Diamond(A, TOP)
    assert parse_formula("  and( T ,<a>   T )  ") == Conj(
        FiniteFamily((TOP, Diamond(A, TOP)))
    )
    assert parse_formula("AND{ n in N }<a>^n T") == unbounded_run_conjunction(A)


def test_round_trip_random():
    rng = random.Random(99)
    for _ in range(500):
        phi = random_formula(
            rng,
            4,
            [A, B],
            negation=rng.random() < 0.5,
            schematic_probability=0.1,
            finite_schematic_probability=0.1,
        )
        assert parse_formula(format_formula(phi)) == phi


def test_round_trip_through_transforms():
    rng = random.Random(100)
    for _ in range(200):
        phi = random_formula(rng, 3, [A, B], negation=True, schematic_probability=0.1)
        pos = to_positive(phi)
        for variant in (phi, pos, complement(pos), cut(2, phi)):
            assert parse_formula(format_formula(variant)) == variant


def test_alternate_binder_name_is_canonicalized():
    assert parse_formula("AND{k in N} <a>^k T") == unbounded_run_conjunction(A)


def test_parse_errors_report_position():
    with pytest.raises(ParseError) as err:
        parse_formula("and(T, ")
    assert err.value.line == 1 and err.value.column >= 6
    with pytest.raises(ParseError) as err:
        parse_formula("not\nnot ]")
    assert err.value.line == 2


@pytest.mark.parametrize(
    "text",
    [
        "",
        "Q",
        "<a>",
        "<> T",
        "and(T",
        "and T",
        "AND{n in M} <a>^n T",
        "AND{n in {}} <a>^n T",
        "<a>^n T",  # power outside a family
        "AND{n in N} <a>^m T",  # wrong index variable
        "AND{n in N} and(<a>^n T, <b>^n T)",  # two powers in one scope
        "T T",  # trailing input
    ],
)
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_formula(text)
