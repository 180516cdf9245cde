import random

import pytest

from spanbench import Lexicon
from spanbench.errors import LexiconFormatError, UnknownSurface

from oracles import dominant_from_log


def test_learning_twice_bumps_count():
    lex = Lexicon()
    lex.learn([("New York", "Location")])
    lex.learn([("New York", "Location")])
    assert lex.count("New York", "Location") == 2
    assert lex.max_entry_len == 8


def test_learn_empty_is_noop():
    lex = Lexicon()
    lex.learn([])
    assert len(lex) == 0
    assert lex.revision == 0


def test_learn_rejects_empty_surface():
    with pytest.raises(ValueError):
        Lexicon().learn([("", "Location")])


def test_dominant_label_majority():
    lex = Lexicon()
    lex.learn([("Paris", "Location")] * 3 + [("Paris", "Person")])
    assert lex.dominant_label("Paris") == "Location"


def test_dominant_label_tie_goes_to_most_recent():
    lex = Lexicon()
    lex.learn([("Paris", "Location"), ("Paris", "Person")])
    assert lex.dominant_label("Paris") == "Person"
    lex.learn([("Paris", "Location")])
    assert lex.dominant_label("Paris") == "Location"


def test_dominant_label_unknown_surface():
    with pytest.raises(UnknownSurface):
        Lexicon().dominant_label("ghost")


def test_dominant_label_matches_replay_log_oracle():
    rng = random.Random(314)
    surfaces = ["aa", "bb", "cc", "dd"]
    labels = ["L1", "L2", "L3"]
    log = [(rng.choice(surfaces), rng.choice(labels)) for _ in range(100)]
    lex = Lexicon()
    lex.learn(log)
    for surface in {s for s, _ in log}:
        assert lex.dominant_label(surface) == dominant_from_log(log, surface)


def test_save_load_round_trip(tmp_path):
    rng = random.Random(2718)
    alphabet = "ab\t\n\\ x"
    for case in range(1000):
        lex = Lexicon()
        pairs = [
            (
                "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 6))),
                rng.choice(["L1", "L2"]),
            )
            for _ in range(rng.randint(0, 10))
        ]
        lex.learn(pairs)
        path = tmp_path / f"lex{case % 4}.tsv"
        lex.save(path)
        assert Lexicon.load(path) == lex


def test_load_empty_file(tmp_path):
    path = tmp_path / "empty.tsv"
    path.write_text("", encoding="utf-8")
    lex = Lexicon.load(path)
    assert len(lex) == 0


@pytest.mark.parametrize(
    "content,line",
    [
        ("New York\tLocation\t2\n", 1),          # missing field
        ("a\tL\tx\t1\n", 1),                      # non-integer count
        ("ok\tL\t1\t1\nbad\tL\t0\t1\n", 2),       # zero count
        ("a\\z\tL\t1\t1\n", 1),                   # bad escape
    ],
)
def test_corrupted_line_reports_line_number(tmp_path, content, line):
    path = tmp_path / "bad.tsv"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(LexiconFormatError) as err:
        Lexicon.load(path)
    assert err.value.line == line


def test_relearning_only_bumps_counts():
    lex = Lexicon()
    lex.learn([("Berlin", "Location"), ("ACME", "Organization")])
    before = sorted(lex.surfaces())
    lex.learn([("Berlin", "Location")])
    assert sorted(lex.surfaces()) == before
    assert lex.count("Berlin", "Location") == 2


def test_concurrent_learns_and_suggest_passes_stay_consistent():
    """Suggest passes never observe half-applied learn batches."""
    import threading

    from spanbench import AnnotatedDocument, SuggesterConfig, fmm_suggest

    lex = Lexicon()
    # each batch is all-or-nothing from a suggest pass's point of view:
    # "ab" alone may match, "abcd" must win once its batch is in
    doc = AnnotatedDocument(text="abcd" * 4)
    config = SuggesterConfig(min_surface_len=2)
    errors = []

    def learner():
        for _ in range(200):
            lex.learn([("ab", "Misc"), ("abcd", "Misc")])

    def suggester():
        for _ in range(200):
            got = [(s.start, s.end) for s in fmm_suggest(lex, config, doc)]
            # with the batch applied atomically, either nothing is known
            # yet or the 4-char surface dominates every match
            if got and got != [(i, i + 4) for i in range(0, 16, 4)]:
                errors.append(got)

    threads = [threading.Thread(target=learner) for _ in range(3)]
    threads += [threading.Thread(target=suggester) for _ in range(3)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert errors == []
    assert lex.count("ab", "Misc") == 600
    assert lex.count("abcd", "Misc") == 600
    assert lex.revision == 1200
