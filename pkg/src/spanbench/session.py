"""Annotation session: span mutations with undo.

A session owns one document and applies the select-and-press operations:
annotate a range, relabel the span under the cursor, delete it, undo.
Every mutating operation pushes the prior document onto the undo stack,
so ``undo`` restores exact earlier states (documents are immutable).

Sessions are single-writer: callers must serialize mutations to one
session themselves (the HTTP service holds a per-document lock).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import BadRange, NoSpanAtCursor, NothingToUndo, OverlapError, UnknownLabel
from .schema import LabelSchema
from .spans import AnnotatedDocument, LabeledSpan, Origin


def annotate_spans(
    document: AnnotatedDocument, start: int, end: int, label: str, schema: LabelSchema
) -> tuple[AnnotatedDocument, LabeledSpan]:
    """Pure annotate step shared by single and batch annotation.

    Returns the new document and the span that now carries ``label``.
    A range lying entirely inside one existing human span relabels that
    span in place (its boundaries win); any overlapped suggestion is
    consumed. Partial overlap with a human span is an error.
    """
    if not (0 <= start < end <= len(document.text)):
        raise BadRange(
            f"range [{start},{end}) out of bounds for text of length {len(document.text)}"
        )
    if not schema.has_label(label):
        raise UnknownLabel(f"label {label!r} is not defined in the schema")

    overlapping = document.overlapping_spans(start, end)
    if overlapping:
        if len(overlapping) == 1 and overlapping[0].contains(start, end):
            # relabel case: existing boundaries are kept
            target = overlapping[0]
            new_span = replace(target, label=label)
            spans = tuple(new_span if s is target else s for s in document.spans)
            return document.with_spans(spans=spans), new_span
        ranges = ", ".join(f"[{s.start},{s.end})" for s in overlapping)
        raise OverlapError(f"range [{start},{end}) partially overlaps human span(s) {ranges}")

    new_span = LabeledSpan(start, end, label, Origin.HUMAN)
    consumed = document.overlapping_suggestions(start, end)
    suggestions = tuple(s for s in document.suggestions if s not in consumed)
    spans = document.spans + (new_span,)
    return document.with_spans(spans=spans, suggestions=suggestions), new_span


@dataclass
class AnnotationSession:
    """Mutable editing state over an immutable document."""

    document: AnnotatedDocument
    schema: LabelSchema
    cursor: int = 0
    undo_stack: list[AnnotatedDocument] = field(default_factory=list)
    # Suggestions vetoed in the current suggest pass, as (start, end, label).
    vetoed: set[tuple[int, int, str]] = field(default_factory=set)

    @property
    def can_undo(self) -> bool:
        return bool(self.undo_stack)

    def _push_undo(self) -> None:
        self.undo_stack.append(self.document)

    def annotate(self, start: int, end: int, label: str) -> LabeledSpan:
        """Annotate ``[start, end)`` with ``label``; returns the resulting span."""
        new_doc, span = annotate_spans(self.document, start, end, label, self.schema)
        self._push_undo()
        self.document = new_doc
        return span

    def annotate_key(self, start: int, end: int, key: str) -> LabeledSpan:
        return self.annotate(start, end, self.schema.label_for_key(key))

    def relabel_at(self, pos: int, label: str) -> LabeledSpan:
        """Relabel the span under ``pos``. A relabeled suggestion becomes human."""
        if not self.schema.has_label(label):
            raise UnknownLabel(f"label {label!r} is not defined in the schema")
        target = self.document.span_at(pos)
        if target is None:
            raise NoSpanAtCursor(f"no span covers offset {pos}")
        self._push_undo()
        if target.origin is Origin.HUMAN:
            new_span = replace(target, label=label)
            spans = tuple(new_span if s is target else s for s in self.document.spans)
            self.document = self.document.with_spans(spans=spans)
        else:
            new_span = LabeledSpan(target.start, target.end, label, Origin.HUMAN)
            suggestions = tuple(s for s in self.document.suggestions if s is not target)
            self.document = self.document.with_spans(
                spans=self.document.spans + (new_span,), suggestions=suggestions
            )
        return new_span

    def relabel_key(self, pos: int, key: str) -> LabeledSpan:
        return self.relabel_at(pos, self.schema.label_for_key(key))

    def delete_at(self, pos: int) -> LabeledSpan:
        """Remove the span under ``pos``. Deleting a suggestion vetoes it
        for the remainder of the current suggest pass."""
        target = self.document.span_at(pos)
        if target is None:
            raise NoSpanAtCursor(f"no span covers offset {pos}")
        self._push_undo()
        if target.origin is Origin.HUMAN:
            spans = tuple(s for s in self.document.spans if s is not target)
            self.document = self.document.with_spans(spans=spans)
        else:
            suggestions = tuple(s for s in self.document.suggestions if s is not target)
            self.document = self.document.with_spans(suggestions=suggestions)
            self.vetoed.add(target.triple)
        return target

    def undo(self) -> None:
        if not self.undo_stack:
            raise NothingToUndo("undo stack is empty")
        self.document = self.undo_stack.pop()

    def set_suggestions(self, suggestions) -> None:
        """Replace the suggestion overlay without touching the undo stack.

        Overlay refreshes are system actions, not user edits. Suggestions
        that collide with human spans or each other are dropped (earliest
        span wins), so output from any plugged-in suggester is safe here.
        """
        kept: list[LabeledSpan] = []
        for sug in sorted(suggestions, key=lambda s: (s.start, s.end)):
            if any(sug.overlaps(h) for h in self.document.spans):
                continue
            if any(sug.overlaps(k) for k in kept):
                continue
            kept.append(replace(sug, origin=Origin.RECOMMENDED))
        self.document = self.document.with_spans(suggestions=tuple(kept))

    def clear_suggestions(self) -> None:
        self.set_suggestions(())

    def clear_vetoes(self) -> None:
        """Start a new suggest pass: previously vetoed spans may reappear."""
        self.vetoed.clear()
