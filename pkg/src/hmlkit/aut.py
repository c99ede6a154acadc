"""Aldebaran `.aut` reader/writer for finite systems.

Header: ``des (<root>, <#transitions>, <#states>)``, then one transition
per line: ``(<from>, "<label>", <to>)``. States are 0-based; labels are
quoted verbatim (no escape sequences).
"""

from __future__ import annotations

import re

from .errors import AutFormatError
from .lts import Action, FiniteSystem

_HEADER = re.compile(r"des\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*")
_EDGE = re.compile(r"\(\s*(\d+)\s*,\s*\"([^\"]*)\"\s*,\s*(\d+)\s*\)\s*")


def parse_aut(text: str) -> FiniteSystem:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise AutFormatError("empty .aut content")
    header = _HEADER.fullmatch(lines[0])
    if not header:
        raise AutFormatError(f"bad header: {lines[0]!r}")
    root, n_trans, n_states = (int(g) for g in header.groups())
    if n_states < 1:
        raise AutFormatError("state count must be >= 1")
    if root >= n_states:
        raise AutFormatError(f"root {root} out of range for {n_states} states")
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        m = _EDGE.fullmatch(line)
        if not m:
            raise AutFormatError(f"bad transition on line {lineno}: {line!r}")
        src, label, dst = int(m.group(1)), m.group(2), int(m.group(3))
        if not label:
            raise AutFormatError(f"empty label on line {lineno}")
        if src >= n_states or dst >= n_states:
            raise AutFormatError(f"state out of range on line {lineno}: {line!r}")
        edges.append((src, Action(label), dst))
    if len(edges) != n_trans:
        raise AutFormatError(
            f"header promises {n_trans} transitions, found {len(edges)}"
        )
    return FiniteSystem(
        num_states=n_states,
        alphabet=frozenset(a for (_, a, _) in edges),
        transitions=frozenset(edges),
        root=root,
    )


def format_aut(system: FiniteSystem) -> str:
    edges = sorted(system.transitions, key=lambda e: (e[0], e[1].name, e[2]))
    lines = [f"des ({system.root}, {len(edges)}, {system.num_states})"]
    lines.extend(f'({src}, "{act.name}", {dst})' for (src, act, dst) in edges)
    return "\n".join(lines) + "\n"


def read_aut(path: str) -> FiniteSystem:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_aut(handle.read())


def write_aut(path: str, system: FiniteSystem) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_aut(system))
