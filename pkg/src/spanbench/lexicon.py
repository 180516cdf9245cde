"""Dynamically growing lexicon of annotated surface strings.

The lexicon accumulates (surface, label) observations as spans get
annotated. Each pair keeps an occurrence count and the sequence number
of its most recent observation; the dominant label for a surface is the
most frequent one, with ties going to the most recently seen.

File format: one record per line, TAB-separated ``surface label count
seq``. Surfaces and labels are escaped (``\\``, ``\\t``, ``\\n``) so
that arbitrary annotated text round-trips.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import LexiconFormatError, UnknownSurface


@dataclass
class LabelStat:
    count: int
    last_seen: int


def _escape(field: str) -> str:
    return field.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unescape(field: str, line_no: int) -> str:
    out: list[str] = []
    i = 0
    while i < len(field):
        ch = field[i]
        if ch == "\\":
            if i + 1 >= len(field):
                raise LexiconFormatError("dangling escape character", line=line_no)
            nxt = field[i + 1]
            if nxt == "\\":
                out.append("\\")
            elif nxt == "t":
                out.append("\t")
            elif nxt == "n":
                out.append("\n")
            else:
                raise LexiconFormatError(f"unknown escape \\{nxt}", line=line_no)
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


class Lexicon:
    """Surface-string store powering forward maximum matching.

    Learning is serialized against whole suggest passes: ``learn`` holds
    ``lock`` for the full batch and the matcher holds it for an entire
    scan, so a pass never observes a half-applied batch.
    """

    def __init__(self) -> None:
        self._entries: dict[str, dict[str, LabelStat]] = {}
        self._seq = 0
        self._max_len = 0
        self._lock = threading.RLock()

    @property
    def lock(self) -> threading.RLock:
        return self._lock

    def __contains__(self, surface: str) -> bool:
        return surface in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lexicon):
            return NotImplemented
        return self._entries == other._entries

    @property
    def max_entry_len(self) -> int:
        """Length in characters of the longest stored surface."""
        return self._max_len

    @property
    def revision(self) -> int:
        """Monotone counter; changes whenever the lexicon learns."""
        return self._seq

    def surfaces(self) -> Iterator[str]:
        return iter(self._entries)

    def learn(self, pairs: Iterable[tuple[str, str]]) -> None:
        """Record annotated (surface, label) observations."""
        with self._lock:
            for surface, label in pairs:
                if not surface:
                    raise ValueError("cannot learn an empty surface")
                self._seq += 1
                stats = self._entries.setdefault(surface, {})
                stat = stats.get(label)
                if stat is None:
                    stats[label] = LabelStat(count=1, last_seen=self._seq)
                else:
                    stat.count += 1
                    stat.last_seen = self._seq
                if len(surface) > self._max_len:
                    self._max_len = len(surface)

    def dominant_label(self, surface: str) -> str:
        """Most frequent label for ``surface``; recency breaks ties."""
        with self._lock:
            stats = self._entries.get(surface)
            if not stats:
                raise UnknownSurface(f"surface {surface!r} is not in the lexicon")
            return max(stats.items(), key=lambda kv: (kv[1].count, kv[1].last_seen))[0]

    def count(self, surface: str, label: str) -> int:
        return self._entries.get(surface, {}).get(label, LabelStat(0, 0)).count

    def labels_for(self, surface: str) -> dict[str, LabelStat]:
        stats = self._entries.get(surface)
        if stats is None:
            raise UnknownSurface(f"surface {surface!r} is not in the lexicon")
        return dict(stats)

    def save(self, path: str | Path) -> None:
        with self._lock:
            lines = []
            for surface in sorted(self._entries):
                for label in sorted(self._entries[surface]):
                    stat = self._entries[surface][label]
                    lines.append(
                        f"{_escape(surface)}\t{_escape(label)}\t{stat.count}\t{stat.last_seen}"
                    )
            Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Lexicon":
        lex = cls()
        raw = Path(path).read_text(encoding="utf-8")
        for line_no, line in enumerate(raw.splitlines(), start=1):
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise LexiconFormatError(
                    f"expected 4 TAB-separated fields, got {len(fields)}", line=line_no
                )
            surface = _unescape(fields[0], line_no)
            label = _unescape(fields[1], line_no)
            try:
                count = int(fields[2])
                seq = int(fields[3])
            except ValueError:
                raise LexiconFormatError("count and seq must be integers", line=line_no)
            if not surface or count < 1 or seq < 1:
                raise LexiconFormatError("invalid record values", line=line_no)
            lex._entries.setdefault(surface, {})[label] = LabelStat(count=count, last_seen=seq)
            lex._seq = max(lex._seq, seq)
            lex._max_len = max(lex._max_len, len(surface))
        return lex
