"""Span suggestions via forward maximum matching over the lexicon.

The default suggester scans each unannotated gap left to right and, at
every position, takes the longest lexicon surface that matches the text
and fits inside the gap. Matched regions become recommended spans
labeled with the surface's dominant label. The suggester interface is
pluggable so a statistical model can replace the matcher later.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Protocol

from .errors import RecommenderDisabled
from .lexicon import Lexicon
from .spans import AnnotatedDocument, LabeledSpan, Origin

_NO_VETOES: frozenset[tuple[int, int, str]] = frozenset()


@dataclass
class SuggesterConfig:
    """Recommender switches: on/off and the minimum surface length.

    Surfaces shorter than ``min_surface_len`` never produce suggestions;
    the default of 2 suppresses noisy single-character matches.
    """

    enabled: bool = True
    min_surface_len: int = 2

    def __post_init__(self) -> None:
        if self.min_surface_len < 1:
            raise ValueError("min_surface_len must be >= 1")


def set_enabled(config: SuggesterConfig, flag: bool) -> SuggesterConfig:
    """Flip the recommender switch. Callers clear overlays on disable."""
    config.enabled = flag
    return config


class Suggester(Protocol):
    """Anything that proposes recommended spans for a document."""

    def suggest(
        self,
        document: AnnotatedDocument,
        vetoed: AbstractSet[tuple[int, int, str]] = _NO_VETOES,
    ) -> list[LabeledSpan]:
        ...


def fmm_suggest(
    lexicon: Lexicon,
    config: SuggesterConfig,
    document: AnnotatedDocument,
    vetoed: AbstractSet[tuple[int, int, str]] = _NO_VETOES,
) -> list[LabeledSpan]:
    """Forward-maximum-matching scan over the document's unannotated gaps.

    At position p the longest matching surface wins and the scan resumes
    at its end; with no match the scan advances one character. Spans
    vetoed in the current pass are skipped (their region is still
    consumed, so no fragment of a vetoed span gets re-suggested).
    """
    if not config.enabled:
        raise RecommenderDisabled("recommendation is switched off")
    text = document.text
    min_len = config.min_surface_len
    suggestions: list[LabeledSpan] = []
    # hold the lexicon lock for the whole pass so a concurrent learn
    # cannot be observed half-applied
    with lexicon.lock:
        if len(lexicon) == 0 or lexicon.max_entry_len < min_len:
            return suggestions
        for gap_start, gap_end in document.unannotated_gaps():
            p = gap_start
            while p < gap_end:
                cap = min(lexicon.max_entry_len, gap_end - p)
                match_len = 0
                for length in range(cap, min_len - 1, -1):
                    if text[p:p + length] in lexicon:
                        match_len = length
                        break
                if match_len == 0:
                    p += 1
                    continue
                surface = text[p:p + match_len]
                label = lexicon.dominant_label(surface)
                if (p, p + match_len, label) not in vetoed:
                    suggestions.append(
                        LabeledSpan(p, p + match_len, label, Origin.RECOMMENDED)
                    )
                p += match_len
    return suggestions


class LexiconSuggester:
    """Default suggester: forward maximum matching over a lexicon."""

    def __init__(self, lexicon: Lexicon, config: SuggesterConfig):
        self.lexicon = lexicon
        self.config = config

    def suggest(
        self,
        document: AnnotatedDocument,
        vetoed: AbstractSet[tuple[int, int, str]] = _NO_VETOES,
    ) -> list[LabeledSpan]:
        return fmm_suggest(self.lexicon, self.config, document, vetoed)
