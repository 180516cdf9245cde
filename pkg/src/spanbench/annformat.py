"""Inline ``.ann`` markup: parsing and serialization.

An annotated file embeds labels directly in the text::

    [@New York#Location*] is big

``[@`` opens a span, ``#`` separates the surface from its label, and
``*]`` closes it. Newlines are preserved verbatim and surfaces may
contain them. Raw text containing ``[@`` or ``*]`` cannot be represented
and is rejected at import instead of being escaped.
"""

from __future__ import annotations

from .errors import MalformedMarkup, ReservedSequenceInText, UnknownLabel
from .schema import LabelSchema
from .spans import AnnotatedDocument, LabeledSpan

OPEN = "[@"
SEP = "#"
CLOSE = "*]"


def validate_raw_text(text: str) -> None:
    """Reject raw document text that collides with the markup markers."""
    for marker in (OPEN, CLOSE):
        pos = text.find(marker)
        if pos != -1:
            raise ReservedSequenceInText(
                f"text contains reserved marker {marker!r}", position=pos
            )


def parse_ann(raw: str, schema: LabelSchema) -> AnnotatedDocument:
    """Parse inline markup into a document with human spans.

    The returned document's text is the input with markup removed; span
    offsets index into that stripped text.
    """
    pieces: list[str] = []
    length = 0
    spans: list[LabeledSpan] = []
    i = 0
    n = len(raw)
    while i < n:
        if raw.startswith(OPEN, i):
            close = raw.find(CLOSE, i + len(OPEN))
            if close == -1:
                raise MalformedMarkup("unterminated span markup", position=i)
            body = raw[i + len(OPEN):close]
            nested = body.find(OPEN)
            if nested != -1:
                raise MalformedMarkup(
                    "nested span markup", position=i + len(OPEN) + nested
                )
            sep = body.rfind(SEP)
            if sep == -1:
                raise MalformedMarkup("span markup without label separator", position=i)
            surface = body[:sep]
            label = body[sep + 1:]
            if not surface:
                raise MalformedMarkup("span markup with empty surface", position=i)
            if not label:
                raise MalformedMarkup("span markup with empty label", position=i)
            if not schema.has_label(label):
                raise UnknownLabel(f"label {label!r} is not defined in the schema")
            spans.append(LabeledSpan(length, length + len(surface), label))
            pieces.append(surface)
            length += len(surface)
            i = close + len(CLOSE)
        elif raw.startswith(CLOSE, i):
            raise MalformedMarkup("stray span terminator", position=i)
        else:
            nxt = _next_marker(raw, i)
            pieces.append(raw[i:nxt])
            length += nxt - i
            i = nxt
    return AnnotatedDocument(text="".join(pieces), spans=tuple(spans))


def _next_marker(raw: str, i: int) -> int:
    """Index of the next marker occurrence after plain text at ``i``."""
    nxt = len(raw)
    for marker in (OPEN, CLOSE):
        pos = raw.find(marker, i)
        if pos != -1:
            nxt = min(nxt, pos)
    return nxt


def serialize_ann(document: AnnotatedDocument) -> str:
    """Render a document back to inline markup.

    Suggestions are not serialized; only human spans appear in the file.
    Raw text is re-checked defensively, since documents built by hand
    could carry marker collisions that import would have rejected.
    """
    validate_raw_text(document.text)
    out: list[str] = []
    last = 0
    for span in document.spans:
        for marker in (OPEN, CLOSE, SEP):
            if marker in span.label:
                # schema validation forbids this; hand-built documents
                # could still smuggle a label that breaks the markup
                raise ReservedSequenceInText(
                    f"label {span.label!r} contains reserved marker {marker!r}",
                    position=span.start,
                )
        out.append(document.text[last:span.start])
        out.append(f"{OPEN}{document.text[span.start:span.end]}{SEP}{span.label}{CLOSE}")
        last = span.end
    out.append(document.text[last:])
    return "".join(out)
