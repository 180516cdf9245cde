from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spanbench import AnnotatedDocument, AnnotationSession, LabelSchema

from oracles import random_nonoverlapping_spans


def write_project(
    root: Path,
    schema: LabelSchema,
    docs: dict[str, str],
    settings: dict | None = None,
) -> Path:
    """Materialize a project directory with config and .ann files."""
    root.mkdir(parents=True, exist_ok=True)
    config = {
        "schema": schema.to_dict(),
        "settings": settings or {},
        "lexicon": "lexicon.tsv",
    }
    (root / "project.json").write_text(
        json.dumps(config, ensure_ascii=False, indent=2), encoding="utf-8"
    )
    for doc_id, content in docs.items():
        (root / f"{doc_id}.ann").write_text(content, encoding="utf-8")
    return root


@pytest.fixture
def schema() -> LabelSchema:
    return LabelSchema.from_pairs(
        [("a", "Location"), ("b", "Organization"), ("c", "Person"), ("d", "Misc")]
    )


@pytest.fixture
def doc(schema) -> AnnotatedDocument:
    return AnnotatedDocument(text="New York is big")


@pytest.fixture
def session(doc, schema) -> AnnotationSession:
    return AnnotationSession(document=doc, schema=schema)


def make_random_document(rng: random.Random, schema: LabelSchema, max_len=40, max_spans=4):
    """Random text (letters, spaces, newlines) with disjoint human spans."""
    alphabet = "abcdefg XY\n"
    n = rng.randint(0, max_len)
    text = "".join(rng.choice(alphabet) for _ in range(n))
    triples = random_nonoverlapping_spans(rng, len(text), max_spans, list(schema.labels))
    from spanbench import LabeledSpan

    spans = tuple(LabeledSpan(s, e, lab) for s, e, lab in triples)
    return AnnotatedDocument(text=text, spans=spans)
