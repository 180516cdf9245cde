import itertools
import random

import pytest

from spanbench import (
    AnnotatedDocument,
    AnnotationSession,
    LabeledSpan,
    Lexicon,
    LexiconSuggester,
    Origin,
    SuggesterConfig,
    fmm_suggest,
    set_enabled,
)
from spanbench.errors import RecommenderDisabled

from oracles import brute_force_suggest


def lex_from(pairs):
    lex = Lexicon()
    lex.learn(pairs)
    return lex


def triples(spans):
    return [(s.start, s.end, s.label) for s in spans]


class TestFmm:
    def test_longest_match_wins(self):
        lex = lex_from([("New York", "Location"), ("New York City", "Location")])
        doc = AnnotatedDocument(text="New York City")
        got = fmm_suggest(lex, SuggesterConfig(), doc)
        expected = brute_force_suggest(
            {"New York": "Location", "New York City": "Location"}, 2, doc.text, []
        )
        assert triples(got) == expected == [(0, 13, "Location")]

    def test_no_suggestions_inside_human_spans(self):
        lex = lex_from([("New York", "Location")])
        doc = AnnotatedDocument(
            text="New York is New York",
            spans=(LabeledSpan(0, 8, "Location"),),
        )
        got = fmm_suggest(lex, SuggesterConfig(), doc)
        assert triples(got) == [(12, 20, "Location")]

    def test_empty_lexicon_suggests_nothing(self):
        doc = AnnotatedDocument(text="anything at all")
        assert fmm_suggest(Lexicon(), SuggesterConfig(), doc) == []

    def test_match_cannot_cross_a_human_span(self):
        lex = lex_from([("abcd", "Misc"), ("ab", "Misc")])
        doc = AnnotatedDocument(text="abcd", spans=(LabeledSpan(2, 4, "Location"),))
        got = fmm_suggest(lex, SuggesterConfig(), doc)
        assert triples(got) == [(0, 2, "Misc")]

    def test_min_surface_len_filters_short_matches(self):
        lex = lex_from([("a", "Misc"), ("bc", "Misc")])
        doc = AnnotatedDocument(text="abc")
        got = fmm_suggest(lex, SuggesterConfig(min_surface_len=2), doc)
        assert triples(got) == [(1, 3, "Misc")]
        got1 = fmm_suggest(lex, SuggesterConfig(min_surface_len=1), doc)
        assert triples(got1) == [(0, 1, "Misc"), (1, 3, "Misc")]

    def test_disabled_raises(self):
        doc = AnnotatedDocument(text="x")
        with pytest.raises(RecommenderDisabled):
            fmm_suggest(Lexicon(), SuggesterConfig(enabled=False), doc)

    def test_dominant_label_used(self):
        lex = lex_from([("Jordan", "Person"), ("Jordan", "Person"), ("Jordan", "Location")])
        doc = AnnotatedDocument(text="Jordan")
        got = fmm_suggest(lex, SuggesterConfig(), doc)
        assert triples(got) == [(0, 6, "Person")]

    def test_vetoed_span_skipped_but_region_consumed(self):
        lex = lex_from([("abcd", "Misc"), ("cd", "Misc")])
        doc = AnnotatedDocument(text="abcd")
        got = fmm_suggest(lex, SuggesterConfig(), doc, vetoed={(0, 4, "Misc")})
        assert got == []

    def test_matches_brute_force_on_small_grid(self):
        """Exhaustive scan over a reduced alphabet/lexicon grid."""
        alphabet = "ab"
        pool = [
            "".join(p)
            for n in (1, 2, 3)
            for p in itertools.product(alphabet, repeat=n)
        ]
        texts = [
            "".join(p)
            for n in range(0, 7)
            for p in itertools.product(alphabet, repeat=n)
        ]
        lexica = [()] + [(s,) for s in pool] + list(itertools.combinations(pool, 2))
        config = SuggesterConfig(min_surface_len=1)
        checked = 0
        for surfaces in lexica:
            mapping = {s: "Misc" for s in surfaces}
            lex = lex_from([(s, "Misc") for s in surfaces])
            for text in texts[:40]:
                doc = AnnotatedDocument(text=text)
                got = triples(fmm_suggest(lex, config, doc))
                want = brute_force_suggest(mapping, 1, text, [])
                assert got == want, (surfaces, text)
                checked += 1
        assert checked > 4000


class TestVetoReplay:
    def test_vetoed_suggestion_absent_within_same_pass(self, schema):
        lex = lex_from([("New York", "Location")])
        config = SuggesterConfig()
        doc = AnnotatedDocument(text="New York is big")
        session = AnnotationSession(document=doc, schema=schema)
        session.set_suggestions(fmm_suggest(lex, config, doc, vetoed=session.vetoed))
        assert triples(session.document.suggestions) == [(0, 8, "Location")]

        session.delete_at(3)  # veto
        replay = fmm_suggest(lex, config, session.document, vetoed=session.vetoed)
        assert triples(replay) == []

        session.clear_vetoes()  # a new pass may re-suggest
        again = fmm_suggest(lex, config, session.document, vetoed=session.vetoed)
        assert triples(again) == [(0, 8, "Location")]


class TestEnableDisable:
    def test_toggle_twice_is_identity(self):
        config = SuggesterConfig(enabled=True, min_surface_len=3)
        set_enabled(config, False)
        set_enabled(config, True)
        assert config == SuggesterConfig(enabled=True, min_surface_len=3)

    def test_suggestions_reappear_after_reenabling(self):
        lex = lex_from([("abc", "Misc")])
        config = SuggesterConfig()
        doc = AnnotatedDocument(text="abc")
        set_enabled(config, False)
        with pytest.raises(RecommenderDisabled):
            fmm_suggest(lex, config, doc)
        set_enabled(config, True)
        assert triples(fmm_suggest(lex, config, doc)) == [(0, 3, "Misc")]


class StubSuggester:
    """Constant-output suggester exercising the pluggable interface."""

    def __init__(self, spans):
        self.spans = spans

    def suggest(self, document, vetoed=frozenset()):
        return [s for s in self.spans if s.triple not in vetoed]


class TestPluggability:
    def test_stub_suggester_drives_core_flows(self, schema):
        doc = AnnotatedDocument(text="New York is big")
        session = AnnotationSession(document=doc, schema=schema)
        stub = StubSuggester([LabeledSpan(0, 8, "Location"), LabeledSpan(12, 15, "Misc")])

        session.set_suggestions(stub.suggest(session.document, session.vetoed))
        assert len(session.document.suggestions) == 2

        # confirm one suggestion, veto the other
        session.annotate(0, 8, "Location")
        session.delete_at(13)
        assert triples(session.document.spans) == [(0, 8, "Location")]
        assert session.document.suggestions == ()

        # replaying the stub respects the veto and the human span
        session.set_suggestions(stub.suggest(session.document, session.vetoed))
        assert session.document.suggestions == ()

        session.undo()
        session.undo()
        assert session.document.text == doc.text
        assert triples(session.document.suggestions) == [(0, 8, "Location"), (12, 15, "Misc")]

    def test_stub_output_overlapping_humans_is_sanitized(self, schema):
        doc = AnnotatedDocument(text="abcdef", spans=(LabeledSpan(0, 3, "Misc"),))
        session = AnnotationSession(document=doc, schema=schema)
        stub = StubSuggester([LabeledSpan(1, 5, "Misc"), LabeledSpan(4, 6, "Misc")])
        session.set_suggestions(stub.suggest(session.document, session.vetoed))
        assert triples(session.document.suggestions) == [(4, 6, "Misc")]


class TestLexiconSuggester:
    def test_interface_wraps_fmm(self):
        lex = lex_from([("abc", "Misc")])
        suggester = LexiconSuggester(lex, SuggesterConfig())
        doc = AnnotatedDocument(text="xx abc yy")
        assert triples(suggester.suggest(doc)) == [(3, 6, "Misc")]
