"""Labeled spans and annotated documents.

Offsets are Unicode code point indices into the document text, half-open
``[start, end)``. Documents are immutable values: every mutation builds a
new document, which makes undo snapshots exact and cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .errors import BadRange, OverlapError, UnknownLabel


class Origin(str, Enum):
    HUMAN = "human"
    RECOMMENDED = "recommended"


@dataclass(frozen=True)
class LabeledSpan:
    """Half-open character interval with a label."""

    start: int
    end: int
    label: str
    origin: Origin = Origin.HUMAN

    def __post_init__(self) -> None:
        if self.start < 0 or self.end <= self.start:
            raise BadRange(f"invalid span range [{self.start}, {self.end})")
        if not self.label:
            raise UnknownLabel("span label must be non-empty")

    def overlaps(self, other: "LabeledSpan") -> bool:
        return self.start < other.end and other.start < self.end

    def covers(self, pos: int) -> bool:
        return self.start <= pos < self.end

    def contains(self, start: int, end: int) -> bool:
        return self.start <= start and end <= self.end

    @property
    def triple(self) -> tuple[int, int, str]:
        return (self.start, self.end, self.label)


def _sorted_spans(spans) -> tuple[LabeledSpan, ...]:
    return tuple(sorted(spans, key=lambda s: (s.start, s.end, s.label)))


def _check_disjoint(spans: tuple[LabeledSpan, ...], what: str) -> None:
    for prev, cur in zip(spans, spans[1:]):
        if prev.overlaps(cur):
            raise OverlapError(
                f"{what} overlap: [{prev.start},{prev.end}) and [{cur.start},{cur.end})"
            )


@dataclass(frozen=True)
class AnnotatedDocument:
    """Raw text plus human spans and a recommended-span overlay.

    Human spans are pairwise disjoint; suggestions are disjoint from each
    other and from human spans. Span origins are normalized on
    construction, so callers may hand over spans of either origin.
    """

    text: str
    spans: tuple[LabeledSpan, ...] = ()
    suggestions: tuple[LabeledSpan, ...] = ()

    def __post_init__(self) -> None:
        spans = _sorted_spans(
            s if s.origin is Origin.HUMAN else replace(s, origin=Origin.HUMAN)
            for s in self.spans
        )
        suggestions = _sorted_spans(
            s if s.origin is Origin.RECOMMENDED else replace(s, origin=Origin.RECOMMENDED)
            for s in self.suggestions
        )
        object.__setattr__(self, "spans", spans)
        object.__setattr__(self, "suggestions", suggestions)

        length = len(self.text)
        for span in self.spans + self.suggestions:
            if span.end > length:
                raise BadRange(
                    f"span [{span.start},{span.end}) exceeds text length {length}"
                )
        _check_disjoint(self.spans, "human spans")
        _check_disjoint(self.suggestions, "suggestions")
        for sug in self.suggestions:
            for span in self.spans:
                if sug.overlaps(span):
                    raise OverlapError(
                        f"suggestion [{sug.start},{sug.end}) overlaps human span "
                        f"[{span.start},{span.end})"
                    )

    @property
    def length(self) -> int:
        return len(self.text)

    def surface(self, span: LabeledSpan) -> str:
        return self.text[span.start:span.end]

    def human_span_at(self, pos: int) -> LabeledSpan | None:
        for span in self.spans:
            if span.covers(pos):
                return span
        return None

    def suggestion_at(self, pos: int) -> LabeledSpan | None:
        for span in self.suggestions:
            if span.covers(pos):
                return span
        return None

    def span_at(self, pos: int) -> LabeledSpan | None:
        """The unique span (human or suggestion) covering ``pos``, if any."""
        return self.human_span_at(pos) or self.suggestion_at(pos)

    def overlapping_spans(self, start: int, end: int) -> list[LabeledSpan]:
        return [s for s in self.spans if s.start < end and start < s.end]

    def overlapping_suggestions(self, start: int, end: int) -> list[LabeledSpan]:
        return [s for s in self.suggestions if s.start < end and start < s.end]

    def with_spans(
        self,
        spans: tuple[LabeledSpan, ...] | None = None,
        suggestions: tuple[LabeledSpan, ...] | None = None,
    ) -> "AnnotatedDocument":
        return AnnotatedDocument(
            text=self.text,
            spans=self.spans if spans is None else spans,
            suggestions=self.suggestions if suggestions is None else suggestions,
        )

    def unannotated_gaps(self) -> list[tuple[int, int]]:
        """Maximal intervals not covered by any human span."""
        gaps: list[tuple[int, int]] = []
        pos = 0
        for span in self.spans:
            if pos < span.start:
                gaps.append((pos, span.start))
            pos = span.end
        if pos < len(self.text):
            gaps.append((pos, len(self.text)))
        return gaps
