"""Aldebaran .aut reading and writing."""

import pytest

from hmlkit.aut import format_aut, parse_aut, read_aut, write_aut
from hmlkit.errors import AutFormatError
from hmlkit.lts import Action, parse_term, from_term

A, B = Action("a"), Action("b")

GOLDEN = """des (0, 4, 5)
(0, "a", 1)
(0, "a", 3)
(1, "b", 2)
(3, "c", 4)
"""


def test_format_golden():
    system = from_term(parse_term("a.b.0 + a.c.0"))
    assert format_aut(system) == GOLDEN


def test_parse_golden_round_trip():
    system = parse_aut(GOLDEN)
    assert system.num_states == 5
    assert system.root == 0
    assert format_aut(system) == GOLDEN


def test_parse_tolerates_whitespace():
    text = 'des ( 1 , 1 , 2 )\n ( 0 , "a" , 1 ) \n'
    system = parse_aut(text)
    assert system.root == 1
    assert system.transitions == {(0, A, 1)}


def test_empty_system():
    text = "des (0, 0, 1)\n"
    system = parse_aut(text)
    assert system.num_states == 1
    assert format_aut(system) == text


def test_labels_quoted_verbatim():
    system = parse_aut('des (0, 1, 2)\n(0, "tau_1 x", 1)\n')
    (event,) = {a.name for (_, a, _) in system.transitions}
    assert event == "tau_1 x"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "des (0, 1, 2)\n",  # missing transition
        'des (0, 0, 0)\n',  # no states
        'des (5, 0, 2)\n',  # root out of range
        'des (0, 1, 2)\n(0, "a", 9)\n',  # target out of range
        'des (0, 1, 2)\n(0, a, 1)\n',  # unquoted label
        'des (0, 1, 2)\n(0, "", 1)\n',  # empty label
        'nonsense\n',
    ],
)
def test_malformed_aut(text):
    with pytest.raises(AutFormatError):
        parse_aut(text)


def test_file_round_trip(tmp_path):
    system = from_term(parse_term("a.0 + b.a.0"), alphabet=frozenset({A, B}))
    path = tmp_path / "sys.aut"
    write_aut(str(path), system)
    again = read_aut(str(path))
    assert again == system
