"""Domain errors raised across the workbench.

Every error carries a stable ``code`` string that the HTTP layer and CLI
echo verbatim, so clients can match on names instead of Python classes.
"""

from __future__ import annotations


class AnnotationError(Exception):
    """Base class for all workbench errors."""

    code = "AnnotationError"


class BadRange(AnnotationError):
    """Span offsets are out of bounds or empty."""

    code = "BadRange"


class OverlapError(AnnotationError):
    """A span would partially overlap an existing human span."""

    code = "OverlapError"


class UnknownLabel(AnnotationError):
    """Label is not defined in the active schema."""

    code = "UnknownLabel"


class NoSpanAtCursor(AnnotationError):
    """No span covers the given offset."""

    code = "NoSpanAtCursor"


class NothingToUndo(AnnotationError):
    code = "NothingToUndo"


class MalformedMarkup(AnnotationError):
    """Inline annotation markup cannot be parsed. ``position`` is the
    character offset of the offending input."""

    code = "MalformedMarkup"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (offset {position})")
        self.position = position


class ReservedSequenceInText(AnnotationError):
    """Raw text contains a marker sequence reserved by the inline format."""

    code = "ReservedSequenceInText"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (offset {position})")
        self.position = position


class SchemaInvalid(AnnotationError):
    code = "SchemaInvalid"


class UnknownKey(AnnotationError):
    """Shortcut key has no label bound to it."""

    code = "UnknownKey"

    def __init__(self, key: str):
        super().__init__(f"no label bound to shortcut key {key!r}")
        self.key = key


class EmptyCommand(AnnotationError):
    code = "EmptyCommand"


class CommandSyntaxError(AnnotationError):
    """Annotation command does not match the ``(count letter)+`` grammar.
    ``position`` points at the offending character."""

    code = "SyntaxError"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class RangeOverflow(AnnotationError):
    """Command spans would extend past the end of the document."""

    code = "RangeOverflow"


class RecommenderDisabled(AnnotationError):
    """Suggestions were requested while the recommender is switched off."""

    code = "Disabled"


class UnknownSurface(AnnotationError):
    """Surface string is not present in the lexicon."""

    code = "UnknownSurface"


class LexiconFormatError(AnnotationError):
    """A lexicon file line cannot be parsed. ``line`` is 1-based."""

    code = "FormatError"

    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (line {line})")
        self.line = line


class MisalignedSpan(AnnotationError):
    """A span boundary does not coincide with token boundaries."""

    code = "MisalignedSpan"


class IllegalTagSequence(AnnotationError):
    """A tag sequence is invalid for its scheme. ``line`` is 1-based."""

    code = "IllegalTagSequence"

    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (line {line})")
        self.line = line


class OverlapInInput(AnnotationError):
    """A span set handed to the scorer contains overlapping spans."""

    code = "OverlapInInput"


class TextMismatch(AnnotationError):
    """Two annotated files do not share the same underlying text."""

    code = "TextMismatch"


class TooFewFiles(AnnotationError):
    code = "TooFewFiles"


class NoConfig(AnnotationError):
    """Project directory has no configuration file."""

    code = "NoConfig"


class UnknownDocument(AnnotationError):
    code = "UnknownDocument"


class StaleVersion(AnnotationError):
    """A mutation carried a document version older than the current one."""

    code = "StaleVersion"
