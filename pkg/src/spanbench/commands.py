"""Batch annotation command language.

A command is a run of ``<count><key>`` pairs, e.g. ``2A3D2B``: starting
at the cursor, annotate the next 2 characters with the label bound to
``A``, the following 3 with ``D``'s label, then 2 more with ``B``'s.
Counts are decimal integers ≥ 1; keys are ASCII letters resolved
case-insensitively against the schema. A command applies atomically and
occupies a single undo step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CommandSyntaxError, EmptyCommand, RangeOverflow
from .schema import LabelSchema
from .session import AnnotationSession, annotate_spans
from .spans import LabeledSpan

_DIGITS = "0123456789"


@dataclass(frozen=True)
class CommandInstruction:
    """One ``<count><key>`` pair: annotate ``length`` characters via ``key``."""

    length: int
    key: str


def parse_command(cmd: str, schema: LabelSchema | None = None) -> list[CommandInstruction]:
    """Parse a command string into instructions.

    With a schema, shortcut keys are resolved eagerly so unknown keys
    fail before anything is applied (raises UnknownKey).
    """
    if cmd == "":
        raise EmptyCommand("command string is empty")
    instructions: list[CommandInstruction] = []
    i = 0
    n = len(cmd)
    while i < n:
        if cmd[i] not in _DIGITS:
            if cmd[i].isascii() and cmd[i].isalpha():
                raise CommandSyntaxError("shortcut key without a preceding count", position=i)
            raise CommandSyntaxError(f"unexpected character {cmd[i]!r}", position=i)
        j = i
        while j < n and cmd[j] in _DIGITS:
            j += 1
        count = int(cmd[i:j])
        if count == 0:
            raise CommandSyntaxError("span count must be positive", position=i)
        if j == n:
            raise CommandSyntaxError("trailing count without a shortcut key", position=i)
        key = cmd[j]
        if not (key.isascii() and key.isalpha()):
            raise CommandSyntaxError(f"unexpected character {key!r}", position=j)
        if schema is not None:
            schema.label_for_key(key)
        instructions.append(CommandInstruction(length=count, key=key))
        i = j + 1
    return instructions


def apply_command(
    session: AnnotationSession, cursor: int, instructions: Sequence[CommandInstruction]
) -> list[LabeledSpan]:
    """Lay spans down consecutively from ``cursor``, atomically.

    Equivalent to annotating each instruction's range in sequence, but
    any failure leaves the document untouched and the whole batch is one
    undo step. The session cursor lands after the last span.
    """
    if not instructions:
        return []
    total = sum(ins.length for ins in instructions)
    if cursor < 0 or cursor + total > len(session.document.text):
        raise RangeOverflow(
            f"command covers [{cursor},{cursor + total}) but text length is "
            f"{len(session.document.text)}"
        )
    labels = [session.schema.label_for_key(ins.key) for ins in instructions]

    doc = session.document
    created: list[LabeledSpan] = []
    pos = cursor
    for ins, label in zip(instructions, labels):
        doc, span = annotate_spans(doc, pos, pos + ins.length, label, session.schema)
        created.append(span)
        pos += ins.length

    session.undo_stack.append(session.document)
    session.document = doc
    session.cursor = pos
    return created


def run_command(session: AnnotationSession, cursor: int, cmd: str) -> list[LabeledSpan]:
    """Parse then apply a command string."""
    return apply_command(session, cursor, parse_command(cmd, session.schema))
