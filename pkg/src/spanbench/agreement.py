"""Annotator agreement: exact-match span scoring and comparison reports.

Matching is strict on boundaries. At full level a matched pair must also
agree on the label; boundary level ignores labels. Precision/recall
treat the first document as gold, which only affects their order:
swapping arguments swaps P and R and leaves F1 unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import OverlapInInput, TextMismatch, TooFewFiles
from .spans import AnnotatedDocument, LabeledSpan


class MatchLevel(str, Enum):
    FULL = "full"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class AgreementScore:
    """Match counts with derived precision/recall/F1.

    Degenerate cases follow the usual sequence-labeling convention:
    a score over an empty set is 0, not undefined.
    """

    matched: int
    gold_count: int
    pred_count: int

    @property
    def precision(self) -> float:
        return self.matched / self.pred_count if self.pred_count else 0.0

    @property
    def recall(self) -> float:
        return self.matched / self.gold_count if self.gold_count else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r > 0 else 0.0


def _check_no_overlap(spans: Sequence[LabeledSpan], side: str) -> None:
    ordered = sorted(spans, key=lambda s: (s.start, s.end))
    for prev, cur in zip(ordered, ordered[1:]):
        if prev.overlaps(cur):
            raise OverlapInInput(
                f"{side} spans overlap: [{prev.start},{prev.end}) and [{cur.start},{cur.end})"
            )


def match_spans(
    gold: Sequence[LabeledSpan], pred: Sequence[LabeledSpan], level: MatchLevel
) -> list[tuple[LabeledSpan, LabeledSpan]]:
    """One-to-one matched (gold, pred) pairs at the given level.

    With exact boundary equality and non-overlapping inputs, at most one
    pred span can share boundaries with a gold span, so the matching is
    unique.
    """
    level = MatchLevel(level)
    _check_no_overlap(gold, "gold")
    _check_no_overlap(pred, "pred")
    by_boundary = {(p.start, p.end): p for p in pred}
    pairs: list[tuple[LabeledSpan, LabeledSpan]] = []
    for g in sorted(gold, key=lambda s: (s.start, s.end)):
        p = by_boundary.get((g.start, g.end))
        if p is None:
            continue
        if level is MatchLevel.BOUNDARY or g.label == p.label:
            pairs.append((g, p))
    return pairs


def score_spans(
    gold: Sequence[LabeledSpan],
    pred: Sequence[LabeledSpan],
    level: MatchLevel,
    label: str | None = None,
) -> AgreementScore:
    """Score two span sets. A ``label`` restricts both sides (full level only)."""
    if label is not None:
        if MatchLevel(level) is not MatchLevel.FULL:
            raise ValueError("per-label scores are defined at full level only")
        gold = [s for s in gold if s.label == label]
        pred = [s for s in pred if s.label == label]
    matched = len(match_spans(gold, pred, level))
    return AgreementScore(matched=matched, gold_count=len(gold), pred_count=len(pred))


def score_pair(
    doc_a: AnnotatedDocument,
    doc_b: AnnotatedDocument,
    level: MatchLevel,
    label: str | None = None,
) -> AgreementScore:
    """Score annotator B against annotator A (A as gold) on shared text."""
    if doc_a.text != doc_b.text:
        raise TextMismatch("documents do not share the same text")
    return score_spans(doc_a.spans, doc_b.spans, level, label)


@dataclass
class AgreementMatrix:
    """Pairwise scores for every ordered annotator pair, both levels."""

    annotators: list[str]
    cells: dict[tuple[str, str], dict[MatchLevel, AgreementScore]]

    def score(self, a: str, b: str, level: MatchLevel) -> AgreementScore:
        return self.cells[(a, b)][MatchLevel(level)]

    def f1(self, a: str, b: str, level: MatchLevel) -> float:
        return self.score(a, b, level).f1


def build_matrix(files: Sequence[tuple[str, AnnotatedDocument]]) -> AgreementMatrix:
    """Score every annotator pair over the same underlying text."""
    if len(files) < 2:
        raise TooFewFiles(f"need at least 2 annotated files, got {len(files)}")
    names = [name for name, _ in files]
    if len(set(names)) != len(names):
        raise ValueError("annotator names must be unique")
    for i in range(len(files)):
        for j in range(i + 1, len(files)):
            if files[i][1].text != files[j][1].text:
                raise TextMismatch(
                    f"documents {files[i][0]!r} and {files[j][0]!r} do not share the same text"
                )
    cells: dict[tuple[str, str], dict[MatchLevel, AgreementScore]] = {}
    for name_a, doc_a in files:
        for name_b, doc_b in files:
            cells[(name_a, name_b)] = {
                level: score_pair(doc_a, doc_b, level) for level in MatchLevel
            }
    return AgreementMatrix(annotators=names, cells=cells)


class SegmentStatus(str, Enum):
    AGREED = "agreed"                  # identical span in both documents
    LABEL_CONFLICT = "label_conflict"  # same boundaries, different label
    ONLY_A = "only_A"
    ONLY_B = "only_B"
    DISAGREED = "disagreed"            # both annotated, boundaries differ
    PLAIN = "plain"


@dataclass(frozen=True)
class DiffSegment:
    start: int
    end: int
    status: SegmentStatus


@dataclass
class ComparisonReport:
    """Pairwise comparison: per-label scores, overall scores, content diff.

    ``diff_segments`` partition [0, len(text)): the text is cut at every
    span boundary from either annotator and each piece gets exactly one
    status.
    """

    name_a: str
    name_b: str
    text: str
    per_label: dict[str, AgreementScore]
    overall_full: AgreementScore
    overall_boundary: AgreementScore
    diff_segments: list[DiffSegment]


def _classify(a: LabeledSpan | None, b: LabeledSpan | None) -> SegmentStatus:
    if a is None and b is None:
        return SegmentStatus.PLAIN
    if b is None:
        return SegmentStatus.ONLY_A
    if a is None:
        return SegmentStatus.ONLY_B
    if a.start == b.start and a.end == b.end:
        return SegmentStatus.AGREED if a.label == b.label else SegmentStatus.LABEL_CONFLICT
    return SegmentStatus.DISAGREED


def compare_report(
    doc_a: AnnotatedDocument,
    doc_b: AnnotatedDocument,
    name_a: str,
    name_b: str,
) -> ComparisonReport:
    """Build the full pairwise comparison for two annotators."""
    if doc_a.text != doc_b.text:
        raise TextMismatch("documents do not share the same text")

    labels = sorted({s.label for s in doc_a.spans} | {s.label for s in doc_b.spans})
    per_label = {
        label: score_pair(doc_a, doc_b, MatchLevel.FULL, label) for label in labels
    }

    cuts = {0, len(doc_a.text)}
    for span in doc_a.spans + doc_b.spans:
        cuts.add(span.start)
        cuts.add(span.end)
    ordered = sorted(cuts)
    segments: list[DiffSegment] = []
    for start, end in zip(ordered, ordered[1:]):
        a = doc_a.human_span_at(start)
        b = doc_b.human_span_at(start)
        segments.append(DiffSegment(start=start, end=end, status=_classify(a, b)))

    return ComparisonReport(
        name_a=name_a,
        name_b=name_b,
        text=doc_a.text,
        per_label=per_label,
        overall_full=score_pair(doc_a, doc_b, MatchLevel.FULL),
        overall_boundary=score_pair(doc_a, doc_b, MatchLevel.BOUNDARY),
        diff_segments=segments,
    )
