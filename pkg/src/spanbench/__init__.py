"""Text span annotation workbench.

Core engine for labeling character spans in text via shortcut-style
operations and a batch command language, with lexicon-based suggestion
of recurring spans, token-per-line export in BIO/BIOES schemes, and
inter-annotator agreement analysis.
"""

from .annformat import parse_ann, serialize_ann, validate_raw_text
from .agreement import (
    AgreementMatrix,
    AgreementScore,
    ComparisonReport,
    DiffSegment,
    MatchLevel,
    SegmentStatus,
    build_matrix,
    compare_report,
    match_spans,
    score_pair,
)
from .commands import CommandInstruction, apply_command, parse_command, run_command
from .export import TagScheme, Token, convert_scheme, export, export_text, spans_from_tags, tokenize
from .lexicon import Lexicon
from .project import DocumentWorkbench, Project, open_project, scaffold_project
from .recommend import LexiconSuggester, SuggesterConfig, fmm_suggest, set_enabled
from .report import render_matrix_markdown, render_report, matrix_csv_lines
from .schema import DELETE_KEY, LabelSchema, load_schema, save_schema
from .session import AnnotationSession
from .spans import AnnotatedDocument, LabeledSpan, Origin

__all__ = [
    "AgreementMatrix",
    "AgreementScore",
    "AnnotatedDocument",
    "AnnotationSession",
    "CommandInstruction",
    "ComparisonReport",
    "DELETE_KEY",
    "DiffSegment",
    "DocumentWorkbench",
    "LabelSchema",
    "LabeledSpan",
    "Lexicon",
    "LexiconSuggester",
    "MatchLevel",
    "Origin",
    "Project",
    "SegmentStatus",
    "SuggesterConfig",
    "TagScheme",
    "Token",
    "apply_command",
    "build_matrix",
    "compare_report",
    "convert_scheme",
    "export",
    "export_text",
    "fmm_suggest",
    "load_schema",
    "match_spans",
    "matrix_csv_lines",
    "open_project",
    "parse_ann",
    "parse_command",
    "render_matrix_markdown",
    "render_report",
    "run_command",
    "save_schema",
    "scaffold_project",
    "score_pair",
    "serialize_ann",
    "set_enabled",
    "spans_from_tags",
    "tokenize",
    "validate_raw_text",
]

__version__ = "0.1.0"
