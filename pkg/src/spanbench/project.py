"""Project persistence and per-document orchestration.

A project is a directory with a ``project.json`` config (schema +
settings), the ``.ann`` documents, and the lexicon file. The
DocumentWorkbench wires one document's session to the recommender and
to autosave: every successful mutation learns the affected span,
refreshes the suggestion overlay, and writes the file atomically. The
HTTP service and the CLI both drive documents exclusively through it,
so scripted and served mutation sequences produce identical files.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .annformat import parse_ann, serialize_ann
from .commands import run_command
from .errors import AnnotationError, NoConfig, RecommenderDisabled, SchemaInvalid
from .lexicon import Lexicon
from .recommend import LexiconSuggester, SuggesterConfig, Suggester
from .schema import LabelSchema, schema_from_dict
from .session import AnnotationSession
from .spans import LabeledSpan

CONFIG_NAME = "project.json"
DEFAULT_LEXICON_NAME = "lexicon.tsv"


def atomic_write_text(path: str | Path, content: str) -> None:
    """Write via a temp file in the same directory plus rename, so a
    crash mid-write leaves the previous file intact."""
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(content)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


@dataclass
class ProjectSettings:
    recommend: bool = True
    min_surface_len: int = 2
    export_scheme: str = "bio"
    export_mode: str = "word"

    @classmethod
    def from_dict(cls, data: dict) -> "ProjectSettings":
        return cls(
            recommend=bool(data.get("recommend", True)),
            min_surface_len=int(data.get("min_surface_len", 2)),
            export_scheme=str(data.get("export_scheme", "bio")),
            export_mode=str(data.get("export_mode", "word")),
        )

    def to_dict(self) -> dict:
        return {
            "recommend": self.recommend,
            "min_surface_len": self.min_surface_len,
            "export_scheme": self.export_scheme,
            "export_mode": self.export_mode,
        }


@dataclass
class Project:
    root: Path
    schema: LabelSchema
    settings: ProjectSettings
    lexicon_path: Path
    lexicon: Lexicon
    documents: dict[str, Path] = field(default_factory=dict)
    load_errors: dict[str, str] = field(default_factory=dict)

    def document_ids(self) -> list[str]:
        return sorted(self.documents)

    def save_config(self) -> None:
        data = {
            "schema": self.schema.to_dict(),
            "settings": self.settings.to_dict(),
            "lexicon": self.lexicon_path.name,
        }
        atomic_write_text(self.root / CONFIG_NAME, json.dumps(data, ensure_ascii=False, indent=2) + "\n")

    def save_lexicon(self) -> None:
        self.lexicon.save(self.lexicon_path)


def open_project(path: str | Path) -> Project:
    """Load a project directory: config, lexicon, and document index.

    Malformed ``.ann`` files are recorded in ``load_errors`` per file
    instead of failing the whole project.
    """
    root = Path(path)
    config_path = root / CONFIG_NAME
    if not config_path.is_file():
        raise NoConfig(f"no {CONFIG_NAME} in {root}")
    try:
        data = json.loads(config_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaInvalid(f"config is not valid JSON: {exc}") from exc
    if "schema" not in data:
        raise SchemaInvalid("config has no schema section")
    schema = schema_from_dict(data["schema"])
    settings = ProjectSettings.from_dict(data.get("settings", {}))
    lexicon_path = root / str(data.get("lexicon", DEFAULT_LEXICON_NAME))
    lexicon = Lexicon.load(lexicon_path) if lexicon_path.is_file() else Lexicon()

    project = Project(
        root=root,
        schema=schema,
        settings=settings,
        lexicon_path=lexicon_path,
        lexicon=lexicon,
    )
    for ann_path in sorted(root.glob("*.ann")):
        doc_id = ann_path.name[: -len(".ann")]
        try:
            parse_ann(ann_path.read_text(encoding="utf-8"), schema)
        except AnnotationError as exc:
            project.load_errors[doc_id] = f"{exc.code}: {exc}"
            continue
        project.documents[doc_id] = ann_path
    return project


def scaffold_project(path: str | Path, schema: LabelSchema) -> Project:
    """Create an empty project directory with a default config."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    project = Project(
        root=root,
        schema=schema,
        settings=ProjectSettings(),
        lexicon_path=root / DEFAULT_LEXICON_NAME,
        lexicon=Lexicon(),
    )
    project.save_config()
    return project


class DocumentWorkbench:
    """One document's session wired to suggestions and autosave.

    Each mutating call: applies the edit, learns the affected span into
    the lexicon (which starts a new suggest pass), refreshes the
    suggestion overlay, bumps the version, and autosaves. Undo restores
    the exact pre-mutation document, overlay included, and does not
    relearn or refresh.
    """

    def __init__(
        self,
        session: AnnotationSession,
        lexicon: Lexicon,
        config: SuggesterConfig,
        path: Path | None = None,
        suggester: Suggester | None = None,
    ):
        self.session = session
        self.lexicon = lexicon
        self.config = config
        self.path = path
        self.suggester = suggester if suggester is not None else LexiconSuggester(lexicon, config)
        self.version = 0
        self._last_saved = serialize_ann(session.document)
        self._pass_revision = lexicon.revision

    @classmethod
    def from_file(
        cls,
        path: str | Path,
        schema: LabelSchema,
        lexicon: Lexicon,
        config: SuggesterConfig,
        suggester: Suggester | None = None,
    ) -> "DocumentWorkbench":
        path = Path(path)
        document = parse_ann(path.read_text(encoding="utf-8"), schema)
        session = AnnotationSession(document=document, schema=schema)
        return cls(session, lexicon, config, path=path, suggester=suggester)

    @property
    def document(self):
        return self.session.document

    def annotate(self, start: int, end: int, key: str) -> LabeledSpan:
        span = self.session.annotate_key(start, end, key)
        self._learn([span])
        self._finish_mutation(refresh=True)
        return span

    def command(self, cmd: str, cursor: int) -> list[LabeledSpan]:
        spans = run_command(self.session, cursor, cmd)
        self._learn(spans)
        self._finish_mutation(refresh=True)
        return spans

    def relabel(self, pos: int, key: str) -> LabeledSpan:
        span = self.session.relabel_key(pos, key)
        self._learn([span])
        self._finish_mutation(refresh=True)
        return span

    def delete(self, pos: int) -> LabeledSpan:
        span = self.session.delete_at(pos)
        self._finish_mutation(refresh=True)
        return span

    def undo(self) -> None:
        self.session.undo()
        self._finish_mutation(refresh=False)

    def set_recommend(self, enabled: bool) -> None:
        self.config.enabled = enabled
        self.refresh_suggestions()
        self.version += 1

    def refresh_suggestions(self) -> None:
        if self.lexicon.revision != self._pass_revision:
            # the lexicon grew: a new suggest pass begins, vetoes expire
            self.session.clear_vetoes()
            self._pass_revision = self.lexicon.revision
        try:
            suggestions = self.suggester.suggest(self.document, vetoed=self.session.vetoed)
        except RecommenderDisabled:
            suggestions = []
        self.session.set_suggestions(suggestions)

    def _learn(self, spans: list[LabeledSpan]) -> None:
        self.lexicon.learn(
            [(self.document.surface(span), span.label) for span in spans]
        )

    def _finish_mutation(self, refresh: bool) -> None:
        if refresh:
            self.refresh_suggestions()
        self.version += 1
        self.save()

    def save(self) -> bool:
        """Autosave the document if its serialization changed."""
        content = serialize_ann(self.document)
        if content == self._last_saved:
            return False
        if self.path is not None:
            atomic_write_text(self.path, content)
        self._last_saved = content
        return True
