"""Token-per-line export of annotated documents.

Each output line is ``surface SPACE tag``; sentences (newline-delimited
in the source text) are separated by one empty line. Tags follow either
the BIO scheme (B-X/I-X/O) or BIOES (adds E-X for span-final tokens and
S-X for single-token spans). Suggestions are not exported; their tokens
come out as O.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import IllegalTagSequence, MisalignedSpan
from .spans import AnnotatedDocument, LabeledSpan, Origin

_WORD_RE = re.compile(r"\S+")


class TagScheme(str, Enum):
    BIO = "bio"
    BIOES = "bioes"


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int
    sentence_index: int


def tokenize(document: AnnotatedDocument | str, mode: str) -> list[Token]:
    """Split a document into tokens.

    ``word`` mode splits on whitespace runs; ``char`` mode yields one
    token per non-whitespace character. Sentence boundaries are newline
    characters in both modes.
    """
    text = document.text if isinstance(document, AnnotatedDocument) else document
    if mode not in ("word", "char"):
        raise ValueError(f"unknown tokenization mode {mode!r}")
    tokens: list[Token] = []
    offset = 0
    for sentence_index, sentence in enumerate(text.split("\n")):
        if mode == "word":
            for match in _WORD_RE.finditer(sentence):
                tokens.append(
                    Token(
                        surface=match.group(),
                        start=offset + match.start(),
                        end=offset + match.end(),
                        sentence_index=sentence_index,
                    )
                )
        else:
            for i, ch in enumerate(sentence):
                if not ch.isspace():
                    tokens.append(
                        Token(surface=ch, start=offset + i, end=offset + i + 1,
                              sentence_index=sentence_index)
                    )
        offset += len(sentence) + 1
    return tokens


def _covered_token_range(
    tokens: Sequence[Token], span: LabeledSpan, mode: str
) -> tuple[int, int] | None:
    """Indices [first, last] of tokens covered by ``span``.

    Raises MisalignedSpan when a token straddles the span boundary, or
    when a word-mode span covers no token at all. Char-mode spans over
    pure whitespace cover nothing and are silently dropped (single-char
    tokens can never straddle a boundary).
    """
    first = last = None
    for idx, tok in enumerate(tokens):
        if tok.start < span.end and span.start < tok.end:
            if not (span.start <= tok.start and tok.end <= span.end):
                raise MisalignedSpan(
                    f"span [{span.start},{span.end}) boundary falls inside token "
                    f"{tok.surface!r} at [{tok.start},{tok.end})"
                )
            if first is None:
                first = idx
            last = idx
    if first is None:
        if mode == "word":
            raise MisalignedSpan(
                f"span [{span.start},{span.end}) does not align with any token"
            )
        return None
    return first, last


def export(document: AnnotatedDocument, scheme: TagScheme, mode: str) -> list[str]:
    """Render a document as token-per-line output lines.

    Blank separator lines appear between sentences that carry tokens.
    """
    scheme = TagScheme(scheme)
    tokens = tokenize(document, mode)
    tags = ["O"] * len(tokens)
    for span in document.spans:
        covered = _covered_token_range(tokens, span, mode)
        if covered is None:
            continue
        first, last = covered
        if scheme is TagScheme.BIO:
            tags[first] = f"B-{span.label}"
            for idx in range(first + 1, last + 1):
                tags[idx] = f"I-{span.label}"
        else:
            if first == last:
                tags[first] = f"S-{span.label}"
            else:
                tags[first] = f"B-{span.label}"
                for idx in range(first + 1, last):
                    tags[idx] = f"I-{span.label}"
                tags[last] = f"E-{span.label}"

    lines: list[str] = []
    prev_sentence: int | None = None
    for tok, tag in zip(tokens, tags):
        if prev_sentence is not None and tok.sentence_index != prev_sentence:
            lines.append("")
        lines.append(f"{tok.surface} {tag}")
        prev_sentence = tok.sentence_index
    return lines


def export_text(document: AnnotatedDocument, scheme: TagScheme, mode: str) -> str:
    """Full file body: lines joined with newlines plus a trailing newline."""
    lines = export(document, scheme, mode)
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def _parse_rows(lines: Sequence[str]) -> list[tuple[int, str, str]]:
    """(line_no, surface, tag) rows; blank separator lines are skipped.

    Validation and conversion treat the rows as one continuous stream:
    blank lines are formatting between sentences, not span resets, so a
    span crossing a newline in the source text stays representable.
    """
    rows: list[tuple[int, str, str]] = []
    for line_no, line in enumerate(lines, start=1):
        if line == "":
            continue
        sep = line.rfind(" ")
        if sep <= 0:
            raise IllegalTagSequence(f"line is not 'surface tag': {line!r}", line=line_no)
        rows.append((line_no, line[:sep], line[sep + 1:]))
    return rows


def _parse_tag(tag: str, line_no: int) -> tuple[str, str | None]:
    if tag == "O":
        return "O", None
    if len(tag) > 2 and tag[1] == "-" and tag[0] in "BIES":
        return tag[0], tag[2:]
    raise IllegalTagSequence(f"malformed tag {tag!r}", line=line_no)


def _check_bio(rows: list[tuple[int, str, str]]) -> None:
    prev_kind, prev_label = "O", None
    for line_no, _, tag in rows:
        kind, label = _parse_tag(tag, line_no)
        if kind in ("E", "S"):
            raise IllegalTagSequence(f"tag {tag!r} is not valid in BIO", line=line_no)
        if kind == "I" and not (prev_kind in ("B", "I") and prev_label == label):
            raise IllegalTagSequence(f"{tag!r} does not continue a span", line=line_no)
        prev_kind, prev_label = kind, label


def _check_bioes(rows: list[tuple[int, str, str]]) -> None:
    open_label: str | None = None
    for line_no, _, tag in rows:
        kind, label = _parse_tag(tag, line_no)
        if kind in ("I", "E"):
            if open_label != label:
                raise IllegalTagSequence(f"{tag!r} does not continue a span", line=line_no)
            if kind == "E":
                open_label = None
        else:
            if open_label is not None:
                raise IllegalTagSequence(
                    f"{tag!r} interrupts an unfinished span", line=line_no
                )
            if kind == "B":
                open_label = label
    if open_label is not None:
        raise IllegalTagSequence(
            f"stream ends inside a B-{open_label} span", line=rows[-1][0]
        )


def _bio_to_bioes(tags: list[str]) -> list[str]:
    out: list[str] = []
    for i, tag in enumerate(tags):
        kind, label = tag[0], tag[2:]
        if kind == "O":
            out.append(tag)
            continue
        next_continues = i + 1 < len(tags) and tags[i + 1] == f"I-{label}"
        if kind == "B":
            out.append(f"B-{label}" if next_continues else f"S-{label}")
        else:
            out.append(f"I-{label}" if next_continues else f"E-{label}")
    return out


def _bioes_to_bio(tags: list[str]) -> list[str]:
    mapping = {"S": "B", "E": "I", "B": "B", "I": "I"}
    return [tag if tag == "O" else f"{mapping[tag[0]]}-{tag[2:]}" for tag in tags]


def convert_scheme(
    lines: Sequence[str], src: TagScheme, dst: TagScheme
) -> list[str]:
    """Convert exported lines between tag schemes, validating strictly.

    BIO↔BIOES conversion is a bijection on well-formed sequences; blank
    separator lines are preserved in place.
    """
    src = TagScheme(src)
    dst = TagScheme(dst)
    rows = _parse_rows(lines)
    if src is TagScheme.BIO:
        _check_bio(rows)
    else:
        _check_bioes(rows)
    if src is dst:
        return list(lines)

    tags = [tag for _, _, tag in rows]
    new_tags = _bio_to_bioes(tags) if dst is TagScheme.BIOES else _bioes_to_bio(tags)
    converted = {
        line_no: f"{surface} {new_tag}"
        for (line_no, surface, _), new_tag in zip(rows, new_tags)
    }
    return [
        converted.get(line_no, line) for line_no, line in enumerate(lines, start=1)
    ]


def spans_from_tags(
    tokens: Sequence[Token], tags: Sequence[str], scheme: TagScheme
) -> tuple[LabeledSpan, ...]:
    """Decode a tag sequence back into character-offset spans.

    Inverse of ``export`` for documents whose spans align with token
    boundaries; used to verify round-trips through tag space.
    """
    scheme = TagScheme(scheme)
    if len(tokens) != len(tags):
        raise ValueError("token/tag length mismatch")
    spans: list[LabeledSpan] = []
    open_start: int | None = None
    open_label: str | None = None
    prev_end = 0

    def close(end: int) -> None:
        nonlocal open_start, open_label
        if open_start is not None:
            spans.append(LabeledSpan(open_start, end, open_label, Origin.HUMAN))
            open_start = open_label = None

    for tok, tag in zip(tokens, tags):
        kind = tag[0]
        label = tag[2:] if tag != "O" else None
        if kind == "O":
            close(prev_end)
        elif kind == "B" or kind == "S":
            close(prev_end)
            open_start, open_label = tok.start, label
            if kind == "S":
                close(tok.end)
        elif kind in ("I", "E"):
            if open_label != label:
                close(prev_end)
                open_start, open_label = tok.start, label
            if kind == "E":
                close(tok.end)
        prev_end = tok.end
    close(prev_end)
    return tuple(spans)


def parse_export_lines(lines: Iterable[str]) -> list[tuple[str, str]]:
    """(surface, tag) pairs from output lines, skipping blank separators."""
    pairs: list[tuple[str, str]] = []
    for line_no, line in enumerate(lines, start=1):
        if line == "":
            continue
        sep = line.rfind(" ")
        if sep <= 0:
            raise IllegalTagSequence(f"line is not 'surface tag': {line!r}", line=line_no)
        pairs.append((line[:sep], line[sep + 1:]))
    return pairs
