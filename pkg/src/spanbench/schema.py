"""Shortcut-key label schema and its JSON file format.

A schema is an ordered map from single-letter shortcut keys to label
names. Keys are case-insensitive (``a`` and ``A`` address the same
label); the deletion key ``q`` is reserved and can never carry a label.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import SchemaInvalid, UnknownKey

DELETE_KEY = "q"

# Sequences with structural meaning in the inline .ann format. Labels
# containing any of these could not be serialized unambiguously.
RESERVED_LABEL_SEQUENCES = ("[@", "*]", "#")


def _valid_key(key: str) -> bool:
    return len(key) == 1 and key.isascii() and key.isalpha()


@dataclass(frozen=True)
class LabelSchema:
    """Ordered (shortcut key, label name) pairs."""

    entries: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        seen_keys: set[str] = set()
        seen_labels: set[str] = set()
        for key, label in self.entries:
            if not _valid_key(key):
                raise SchemaInvalid(f"shortcut key must be a single ASCII letter, got {key!r}")
            folded = key.lower()
            if folded == DELETE_KEY:
                raise SchemaInvalid(f"shortcut key {DELETE_KEY!r} is reserved for deletion")
            if folded in seen_keys:
                raise SchemaInvalid(f"duplicate shortcut key {key!r}")
            seen_keys.add(folded)
            if not label:
                raise SchemaInvalid("label names must be non-empty")
            for seq in RESERVED_LABEL_SEQUENCES:
                if seq in label:
                    raise SchemaInvalid(f"label {label!r} contains reserved sequence {seq!r}")
            if "\t" in label or "\n" in label or "\r" in label:
                raise SchemaInvalid(f"label {label!r} contains control characters")
            if label in seen_labels:
                raise SchemaInvalid(f"duplicate label {label!r}")
            seen_labels.add(label)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "LabelSchema":
        return cls(entries=tuple((k, v) for k, v in pairs))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for _, label in self.entries)

    @property
    def keys(self) -> tuple[str, ...]:
        return tuple(key for key, _ in self.entries)

    def has_label(self, label: str) -> bool:
        return label in self.labels

    def label_for_key(self, key: str) -> str:
        """Resolve a shortcut key case-insensitively. Raises UnknownKey."""
        folded = key.lower()
        for entry_key, label in self.entries:
            if entry_key.lower() == folded:
                return label
        raise UnknownKey(key)

    def key_for_label(self, label: str) -> str | None:
        for entry_key, entry_label in self.entries:
            if entry_label == label:
                return entry_key
        return None

    def to_dict(self) -> dict:
        return {"labels": [{"key": k, "name": v} for k, v in self.entries]}


def schema_from_dict(data: dict) -> LabelSchema:
    """Build a schema from the ``{"labels": [{"key", "name"}, ...]}`` shape."""
    try:
        rows = data["labels"]
        pairs = [(str(row["key"]), str(row["name"])) for row in rows]
    except (KeyError, TypeError) as exc:
        raise SchemaInvalid(f"bad schema structure: {exc}") from exc
    return LabelSchema.from_pairs(pairs)


def load_schema(path: str | Path) -> LabelSchema:
    raw = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaInvalid(f"schema file is not valid JSON: {exc}") from exc
    return schema_from_dict(data)


def save_schema(schema: LabelSchema, path: str | Path) -> None:
    Path(path).write_text(json.dumps(schema.to_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
