"""Exception types shared across the package."""


class HmlkitError(Exception):
    """Base class for all errors raised by hmlkit."""


class UnknownStateError(HmlkitError):
    """A state reference does not belong to the transition system."""


class UnsupportedSchematicError(HmlkitError):
    """A schematic formula family cannot be decided on the given system.

    Raised instead of silently approximating: only constant templates and
    bare power templates (diamond over T, box over F) have a decidable
    limit on the supported system kinds.
    """


class UnsupportedSemanticsError(HmlkitError):
    """The semantics is catalogued but has no generator/decider."""


class CharacterizationSizeError(HmlkitError):
    """Materializing the characterization set would exceed the size guard."""


class ParseError(HmlkitError):
    """Syntax error in a formula or process-term text, with position info."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class AutFormatError(HmlkitError):
    """Malformed Aldebaran .aut content."""
