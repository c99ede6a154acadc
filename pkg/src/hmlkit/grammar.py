"""Text grammar for formulas: parsing and canonical printing.

    T | F | <a> phi | [a] phi | not phi
      | and(phi, ..., phi) | or(phi, ..., phi)
      | AND{n in N} tpl | AND{n in {0,2,5}} tpl | OR{n in ...} tpl

Templates use the iterated-modality node ``<a>^n phi`` (or ``[a]^n phi``),
`n` being the family's index variable. The grammar is prefix throughout, so
no parentheses are needed; whitespace is insignificant. Every formula the
package prints re-parses to a structurally equal tree.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .formula import (
    BOT,
    TOP,
    AllNaturals,
    Bot,
    Box,
    Conj,
    Diamond,
    Disj,
    FiniteFamily,
    Formula,
    Hole,
    NATURALS,
    Neg,
    Power,
    Schematic,
    Top,
)
from .lts import Action

_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+|[<>\[\]^{}(),]|\S")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def format_formula(phi: Formula) -> str:
    match phi:
        case Top():
            return "T"
        case Bot():
            return "F"
        case Hole():
            return "[]"
        case Neg(body):
            return f"not {format_formula(body)}"
        case Diamond(action, body):
            return f"<{action.name}> {format_formula(body)}"
        case Box(action, body):
            return f"[{action.name}] {format_formula(body)}"
        case Power(action, body, box):
            brackets = f"[{action.name}]" if box else f"<{action.name}>"
            return f"{brackets}^n {format_formula(body)}"
        case Conj(family):
            return _format_family("and", "AND", family)
        case Disj(family):
            return _format_family("or", "OR", family)
    raise TypeError(f"not a formula: {phi!r}")


def _format_family(finite_kw: str, schematic_kw: str, family) -> str:
    if isinstance(family, FiniteFamily):
        inner = ", ".join(format_formula(m) for m in family.members)
        return f"{finite_kw}({inner})"
    if isinstance(family.indices, AllNaturals):
        index_set = "N"
    else:
        index_set = "{" + ",".join(str(i) for i in sorted(family.indices)) + "}"
    return f"{schematic_kw}{{n in {index_set}}} {format_formula(family.template)}"


class _Parser:
    def __init__(self, text: str):
        self.tokens: list[tuple[str, int, int]] = []
        for lineno, line in enumerate(text.splitlines() or [""], start=1):
            for m in _TOKEN.finditer(line):
                self.tokens.append((m.group(), lineno, m.start() + 1))
        self.pos = 0
        self.binders: list[str] = []

    def error(self, message: str) -> ParseError:
        if self.pos < len(self.tokens):
            _, line, col = self.tokens[self.pos]
        elif self.tokens:
            _, line, col = self.tokens[-1]
        else:
            line, col = 1, 1
        return ParseError(message, line, col)

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.peek()
        if got != tok:
            raise self.error(f"expected {tok!r}, got {got!r}")
        self.pos += 1

    def ident(self, what: str) -> str:
        tok = self.peek()
        if tok is None or not _IDENT.fullmatch(tok):
            raise self.error(f"expected {what}, got {tok!r}")
        self.pos += 1
        return tok

    def formula(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input")
        if tok == "T":
            self.take()
            return TOP
        if tok == "F":
            self.take()
            return BOT
        if tok == "not":
            self.take()
            return Neg(self.formula())
        if tok in ("and", "or"):
            self.take()
            members = self.member_list()
            family = FiniteFamily(members)
            return Conj(family) if tok == "and" else Disj(family)
        if tok in ("AND", "OR"):
            self.take()
            family = self.schematic()
            return Conj(family) if tok == "AND" else Disj(family)
        if tok == "<":
            return self.modality(box=False)
        if tok == "[":
            return self.modality(box=True)
        raise self.error(f"unexpected token {tok!r}")

    def member_list(self) -> tuple[Formula, ...]:
        self.expect("(")
        members: list[Formula] = []
        if self.peek() == ")":
            self.take()
            return ()
        members.append(self.formula())
        while self.peek() == ",":
            self.take()
            members.append(self.formula())
        self.expect(")")
        return tuple(members)

    def schematic(self) -> Schematic:
        self.expect("{")
        binder = self.ident("an index variable")
        self.expect("in")
        tok = self.peek()
        indices: AllNaturals | frozenset[int]
        if tok == "N":
            self.take()
            indices = NATURALS
        elif tok == "{":
            self.take()
            values = [self.number()]
            while self.peek() == ",":
                self.take()
                values.append(self.number())
            self.expect("}")
            indices = frozenset(values)
        else:
            raise self.error(f"expected N or an index set, got {tok!r}")
        self.expect("}")
        self.binders.append(binder)
        try:
            template = self.formula()
        finally:
            self.binders.pop()
        try:
            return Schematic(template, indices)
        except ValueError as exc:
            raise self.error(str(exc))

    def number(self) -> int:
        tok = self.peek()
        if tok is None or not tok.isdigit():
            raise self.error(f"expected a number, got {tok!r}")
        self.pos += 1
        return int(tok)

    def modality(self, box: bool) -> Formula:
        open_tok, close_tok = ("[", "]") if box else ("<", ">")
        self.expect(open_tok)
        action = Action(self.ident("an action name"))
        self.expect(close_tok)
        if self.peek() == "^":
            self.take()
            var = self.ident("the index variable")
            if not self.binders:
                raise self.error("iterated modality outside a schematic family")
            if var != self.binders[-1]:
                raise self.error(
                    f"index variable {var!r} does not match binder {self.binders[-1]!r}"
                )
            return Power(action, self.formula(), box)
        body = self.formula()
        return Box(action, body) if box else Diamond(action, body)


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    result = parser.formula()
    if parser.pos < len(parser.tokens):
        raise parser.error(f"trailing input {parser.peek()!r}")
    return result
