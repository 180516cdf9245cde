"""HTTP facade over a project.

Every mutating endpoint maps 1:1 onto a workbench operation and returns
the full updated document payload (text, spans, suggestions, version),
so clients never re-derive annotation state locally. Mutations carry the
document version they were computed against; a stale version is
rejected with 409 so concurrent tabs cannot silently overwrite each
other. Mutations on one document are serialized behind a per-document
lock.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from .agreement import build_matrix, compare_report, MatchLevel
from .annformat import parse_ann
from .errors import (
    AnnotationError,
    OverlapError,
    SchemaInvalid,
    StaleVersion,
    UnknownDocument,
)
from .export import TagScheme, export_text
from .project import DocumentWorkbench, Project
from .report import matrix_csv_lines, render_matrix_markdown, render_report
from .recommend import SuggesterConfig
from .schema import schema_from_dict
from .spans import AnnotatedDocument

_CONFLICT_ERRORS = (OverlapError, StaleVersion)


class AnnotateBody(BaseModel):
    start: int
    end: int
    key: str
    version: int


class CommandBody(BaseModel):
    cmd: str
    cursor: int
    version: int


class RelabelBody(BaseModel):
    pos: int
    key: str
    version: int


class DeleteBody(BaseModel):
    pos: int
    version: int


class UndoBody(BaseModel):
    version: int


class RecommendBody(BaseModel):
    enabled: bool


class SchemaLabel(BaseModel):
    key: str
    name: str


class SchemaBody(BaseModel):
    labels: list[SchemaLabel]


class ProjectState:
    """Shared service state: the project plus lazily created workbenches."""

    def __init__(self, project: Project):
        self.project = project
        self.config = SuggesterConfig(
            enabled=project.settings.recommend,
            min_surface_len=project.settings.min_surface_len,
        )
        self.workbenches: dict[str, DocumentWorkbench] = {}
        self.doc_locks: dict[str, threading.Lock] = {}
        self._state_lock = threading.Lock()

    def lock_for(self, doc_id: str) -> threading.Lock:
        with self._state_lock:
            if doc_id not in self.doc_locks:
                self.doc_locks[doc_id] = threading.Lock()
            return self.doc_locks[doc_id]

    def workbench(self, doc_id: str) -> DocumentWorkbench:
        if doc_id not in self.project.documents:
            raise UnknownDocument(f"no document {doc_id!r}")
        with self._state_lock:
            bench = self.workbenches.get(doc_id)
            if bench is None:
                bench = DocumentWorkbench.from_file(
                    self.project.documents[doc_id],
                    self.project.schema,
                    self.project.lexicon,
                    self.config,
                )
                if self.config.enabled:
                    bench.refresh_suggestions()
                self.workbenches[doc_id] = bench
            return bench

    def load_document(self, doc_id: str) -> AnnotatedDocument:
        if doc_id not in self.project.documents:
            raise UnknownDocument(f"no document {doc_id!r}")
        bench = self.workbenches.get(doc_id)
        if bench is not None:
            return bench.document
        raw = self.project.documents[doc_id].read_text(encoding="utf-8")
        return parse_ann(raw, self.project.schema)


def _error_payload(exc: AnnotationError) -> dict:
    payload = {"error": exc.code, "message": str(exc)}
    position = getattr(exc, "position", None)
    if position is None:
        position = getattr(exc, "line", None)
    if position is not None:
        payload["position"] = position
    return payload


def _status_for(exc: AnnotationError) -> int:
    if isinstance(exc, UnknownDocument):
        return 404
    if isinstance(exc, _CONFLICT_ERRORS):
        return 409
    return 400


def _doc_payload(doc_id: str, bench: DocumentWorkbench) -> dict:
    doc = bench.document
    return {
        "id": doc_id,
        "text": doc.text,
        "spans": [
            {"start": s.start, "end": s.end, "label": s.label, "origin": s.origin.value}
            for s in doc.spans
        ],
        "suggestions": [
            {"start": s.start, "end": s.end, "label": s.label, "origin": s.origin.value}
            for s in doc.suggestions
        ],
        "version": bench.version,
    }


def create_app(project: Project) -> FastAPI:
    """Build the service application for one project."""
    # the default interactive docs would shadow the document listing
    app = FastAPI(docs_url=None, redoc_url=None, openapi_url=None)
    # the browser UI is served statically from another origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    state = ProjectState(project)
    app.state.project_state = state

    @app.exception_handler(AnnotationError)
    async def handle_domain_error(request: Request, exc: AnnotationError):
        return JSONResponse(status_code=_status_for(exc), content=_error_payload(exc))

    def mutate(doc_id: str, version: int, action) -> dict:
        bench = state.workbench(doc_id)
        with state.lock_for(doc_id):
            if version != bench.version:
                raise StaleVersion(
                    f"document version is {bench.version}, request carried {version}"
                )
            revision = state.project.lexicon.revision
            action(bench)
            if state.project.lexicon.revision != revision:
                state.project.save_lexicon()
            return _doc_payload(doc_id, bench)

    @app.get("/docs")
    def list_documents():
        docs = []
        for doc_id in state.project.document_ids():
            bench = state.workbenches.get(doc_id)
            docs.append(
                {"id": doc_id, "version": bench.version if bench else 0}
            )
        # the listing doubles as the UI bootstrap payload
        return {
            "documents": docs,
            "errors": state.project.load_errors,
            "schema": state.project.schema.to_dict(),
            "recommend": state.config.enabled,
        }

    @app.get("/docs/{doc_id}")
    def get_document(doc_id: str):
        bench = state.workbench(doc_id)
        return _doc_payload(doc_id, bench)

    @app.post("/docs/{doc_id}/annotate")
    def annotate(doc_id: str, body: AnnotateBody):
        return mutate(
            doc_id, body.version, lambda b: b.annotate(body.start, body.end, body.key)
        )

    @app.post("/docs/{doc_id}/command")
    def command(doc_id: str, body: CommandBody):
        return mutate(doc_id, body.version, lambda b: b.command(body.cmd, body.cursor))

    @app.post("/docs/{doc_id}/relabel")
    def relabel(doc_id: str, body: RelabelBody):
        return mutate(doc_id, body.version, lambda b: b.relabel(body.pos, body.key))

    @app.post("/docs/{doc_id}/delete")
    def delete(doc_id: str, body: DeleteBody):
        return mutate(doc_id, body.version, lambda b: b.delete(body.pos))

    @app.post("/docs/{doc_id}/undo")
    def undo(doc_id: str, body: UndoBody):
        return mutate(doc_id, body.version, lambda b: b.undo())

    @app.post("/recommend")
    def set_recommend(body: RecommendBody):
        state.config.enabled = body.enabled
        state.project.settings.recommend = body.enabled
        for bench in state.workbenches.values():
            bench.set_recommend(body.enabled)
        state.project.save_config()
        return {"enabled": state.config.enabled}

    @app.put("/schema")
    def put_schema(body: SchemaBody):
        new_schema = schema_from_dict(
            {"labels": [{"key": row.key, "name": row.name} for row in body.labels]}
        )
        used = set()
        for doc_id in state.project.document_ids():
            used.update(s.label for s in state.load_document(doc_id).spans)
        missing = sorted(used - set(new_schema.labels))
        if missing:
            raise SchemaInvalid(
                "schema update would orphan annotated labels: " + ", ".join(missing)
            )
        state.project.schema = new_schema
        for bench in state.workbenches.values():
            bench.session.schema = new_schema
        state.project.save_config()
        return new_schema.to_dict()

    @app.get("/docs/{doc_id}/export")
    def export_document(
        doc_id: str,
        scheme: str | None = Query(default=None),
        mode: str | None = Query(default=None),
    ):
        doc = state.load_document(doc_id)
        scheme = scheme or state.project.settings.export_scheme
        mode = mode or state.project.settings.export_mode
        try:
            tag_scheme = TagScheme(scheme.lower())
        except ValueError:
            raise AnnotationError(f"unknown scheme {scheme!r}")
        if mode not in ("word", "char"):
            raise AnnotationError(f"unknown mode {mode!r}")
        body = export_text(doc, tag_scheme, mode)
        return PlainTextResponse(body)

    @app.get("/admin/matrix")
    def admin_matrix(fmt: str = Query(default="json", alias="format")):
        files = [
            (doc_id, state.load_document(doc_id))
            for doc_id in state.project.document_ids()
        ]
        matrix = build_matrix(files)
        if fmt == "csv":
            return PlainTextResponse("\n".join(matrix_csv_lines(matrix)) + "\n")
        if fmt == "markdown":
            return PlainTextResponse(render_matrix_markdown(matrix))
        return {
            "annotators": matrix.annotators,
            "full_f1": [
                [matrix.f1(a, b, MatchLevel.FULL) for b in matrix.annotators]
                for a in matrix.annotators
            ],
            "boundary_f1": [
                [matrix.f1(a, b, MatchLevel.BOUNDARY) for b in matrix.annotators]
                for a in matrix.annotators
            ],
        }

    @app.get("/admin/report")
    def admin_report(
        a: str,
        b: str,
        fmt: str = Query(default="md", alias="format"),
    ):
        if fmt.lower() not in ("md", "markdown", "tex", "latex"):
            raise AnnotationError(f"unknown report format {fmt!r}")
        doc_a = state.load_document(a)
        doc_b = state.load_document(b)
        report = compare_report(doc_a, doc_b, a, b)
        return PlainTextResponse(render_report(report, fmt))

    return app


def serve(project: Project, host: str = "127.0.0.1", port: int = 8000) -> None:
    """Run the service with uvicorn (blocking)."""
    import uvicorn

    uvicorn.run(create_app(project), host=host, port=port)
