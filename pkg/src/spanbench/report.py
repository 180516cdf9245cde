"""Deterministic rendering of comparison reports and agreement matrices.

Markdown and TeX renderings of the same report carry identical numbers
(four decimal places) and the same segment sequence; only the markup
differs. TeX output is a standalone document.
"""

from __future__ import annotations

import csv
import io
import json

from .agreement import AgreementMatrix, AgreementScore, ComparisonReport, MatchLevel, SegmentStatus

# Status colors, shared with the web UI's diff view.
STATUS_COLORS = {
    SegmentStatus.AGREED: "1F77B4",
    SegmentStatus.LABEL_CONFLICT: "9467BD",
    SegmentStatus.ONLY_A: "D62728",
    SegmentStatus.ONLY_B: "FF7F0E",
    SegmentStatus.DISAGREED: "E377C2",
}

_TEX_SPECIALS = {
    "\\": r"\textbackslash{}",
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}


def tex_escape(text: str) -> str:
    return "".join(_TEX_SPECIALS.get(ch, ch) for ch in text)


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def _score_cells(score: AgreementScore) -> list[str]:
    return [
        str(score.matched),
        str(score.gold_count),
        str(score.pred_count),
        _fmt(score.precision),
        _fmt(score.recall),
        _fmt(score.f1),
    ]


def _cell_text(text: str) -> str:
    # JSON escaping keeps newlines and quotes unambiguous in table cells
    return json.dumps(text, ensure_ascii=False).replace("|", "\\u007c")


def _status_name(status: SegmentStatus) -> str:
    return status.value


def _render_markdown(report: ComparisonReport) -> str:
    out: list[str] = []
    out.append(f"# Annotator comparison: {report.name_a} vs {report.name_b}")
    out.append("")
    out.append(f"File A (gold): {report.name_a}")
    out.append(f"File B: {report.name_b}")
    out.append("")
    out.append("## Scores by label (full level)")
    out.append("")
    out.append("| Label | Matched | Count A | Count B | Precision | Recall | F1 |")
    out.append("| --- | --- | --- | --- | --- | --- | --- |")
    for label in sorted(report.per_label):
        cells = _score_cells(report.per_label[label])
        out.append("| " + " | ".join([label] + cells) + " |")
    out.append("")
    out.append("## Overall scores")
    out.append("")
    out.append("| Level | Matched | Count A | Count B | Precision | Recall | F1 |")
    out.append("| --- | --- | --- | --- | --- | --- | --- |")
    out.append("| full | " + " | ".join(_score_cells(report.overall_full)) + " |")
    out.append("| boundary | " + " | ".join(_score_cells(report.overall_boundary)) + " |")
    out.append("")
    out.append("## Segments")
    out.append("")
    out.append("| Range | Status | Text |")
    out.append("| --- | --- | --- |")
    for seg in report.diff_segments:
        text = report.text[seg.start:seg.end]
        out.append(
            f"| [{seg.start},{seg.end}) | {_status_name(seg.status)} | {_cell_text(text)} |"
        )
    out.append("")
    out.append("## Content comparison")
    out.append("")
    pieces: list[str] = []
    for seg in report.diff_segments:
        text = report.text[seg.start:seg.end]
        if seg.status is SegmentStatus.PLAIN:
            pieces.append(text)
        else:
            pieces.append(f'<span class="seg-{_status_name(seg.status)}">{text}</span>')
    out.append("".join(pieces))
    out.append("")
    return "\n".join(out)


def _render_tex(report: ComparisonReport) -> str:
    out: list[str] = []
    out.append(r"\documentclass{article}")
    out.append(r"\usepackage[utf8]{inputenc}")
    out.append(r"\usepackage[T1]{fontenc}")
    out.append(r"\usepackage{xcolor}")
    out.append(r"\usepackage{longtable}")
    for status, rgb in STATUS_COLORS.items():
        out.append(rf"\definecolor{{seg{status.value.replace('_', '')}}}{{HTML}}{{{rgb}}}")
    out.append(r"\begin{document}")
    title = tex_escape(f"Annotator comparison: {report.name_a} vs {report.name_b}")
    out.append(rf"\section*{{{title}}}")
    out.append(rf"File A (gold): {tex_escape(report.name_a)} \\")
    out.append(rf"File B: {tex_escape(report.name_b)}")
    out.append("")
    out.append(r"\subsection*{Scores by label (full level)}")
    out.append(r"\begin{longtable}{lrrrrrr}")
    out.append(r"Label & Matched & Count A & Count B & Precision & Recall & F1 \\")
    out.append(r"\hline")
    for label in sorted(report.per_label):
        cells = _score_cells(report.per_label[label])
        out.append(" & ".join([tex_escape(label)] + cells) + r" \\")
    out.append(r"\end{longtable}")
    out.append("")
    out.append(r"\subsection*{Overall scores}")
    out.append(r"\begin{longtable}{lrrrrrr}")
    out.append(r"Level & Matched & Count A & Count B & Precision & Recall & F1 \\")
    out.append(r"\hline")
    out.append("full & " + " & ".join(_score_cells(report.overall_full)) + r" \\")
    out.append("boundary & " + " & ".join(_score_cells(report.overall_boundary)) + r" \\")
    out.append(r"\end{longtable}")
    out.append("")
    out.append(r"\subsection*{Segments}")
    out.append(r"\begin{longtable}{lll}")
    out.append(r"Range & Status & Text \\")
    out.append(r"\hline")
    for seg in report.diff_segments:
        text = report.text[seg.start:seg.end]
        # braces stop TeX reading "[..." as an optional argument of the
        # previous row's \\
        out.append(
            rf"{{[{seg.start},{seg.end})}} & {tex_escape(_status_name(seg.status))} & "
            + tex_escape(_cell_text(text))
            + r" \\"
        )
    out.append(r"\end{longtable}")
    out.append("")
    out.append(r"\subsection*{Content comparison}")
    out.append(r"\noindent")
    pieces = []
    for seg in report.diff_segments:
        text = tex_escape(report.text[seg.start:seg.end]).replace("\n", r"\\" + "\n")
        if seg.status is SegmentStatus.PLAIN:
            pieces.append(text)
        else:
            pieces.append(rf"\textcolor{{seg{seg.status.value.replace('_', '')}}}{{{text}}}")
    out.append("".join(pieces))
    out.append(r"\end{document}")
    out.append("")
    return "\n".join(out)


def render_report(report: ComparisonReport, fmt: str) -> str:
    """Render a comparison report as ``markdown``/``md`` or ``tex``."""
    fmt = fmt.lower()
    if fmt in ("markdown", "md"):
        return _render_markdown(report)
    if fmt in ("tex", "latex"):
        return _render_tex(report)
    raise ValueError(f"unknown report format {fmt!r}")


def render_matrix_markdown(matrix: AgreementMatrix) -> str:
    """Two F1 grids (full and boundary level) as Markdown tables."""
    out: list[str] = []
    out.append("# Annotator agreement matrix")
    for level, heading in ((MatchLevel.FULL, "Full level F1"), (MatchLevel.BOUNDARY, "Boundary level F1")):
        out.append("")
        out.append(f"## {heading}")
        out.append("")
        out.append("| |" + "".join(f" {name} |" for name in matrix.annotators))
        out.append("| --- |" + " --- |" * len(matrix.annotators))
        for row in matrix.annotators:
            cells = [_fmt(matrix.f1(row, col, level)) for col in matrix.annotators]
            out.append(f"| {row} |" + "".join(f" {c} |" for c in cells))
    out.append("")
    return "\n".join(out)


def matrix_csv_lines(matrix: AgreementMatrix) -> list[str]:
    """CSV rows ``annotator,annotator,full_f1,boundary_f1`` for every cell."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["annotator", "annotator", "full_f1", "boundary_f1"])
    for a in matrix.annotators:
        for b in matrix.annotators:
            writer.writerow(
                [a, b, _fmt(matrix.f1(a, b, MatchLevel.FULL)), _fmt(matrix.f1(a, b, MatchLevel.BOUNDARY))]
            )
    return buf.getvalue().splitlines()
