"""Command line entry points.

    spanbench serve --project DIR --port 8000
    spanbench export doc.ann --schema schema.json --scheme bioes --mode word
    spanbench maa a.ann b.ann c.ann --schema schema.json --out matrix.md
    spanbench pac a.ann b.ann --schema schema.json --format tex --out report.tex
    spanbench annotate doc.ann --schema schema.json --command 2A3D2B --at 0
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .agreement import build_matrix, compare_report
from .annformat import parse_ann
from .errors import AnnotationError
from .export import TagScheme, export_text
from .lexicon import Lexicon
from .project import DocumentWorkbench, open_project
from .recommend import SuggesterConfig
from .report import matrix_csv_lines, render_matrix_markdown, render_report
from .schema import LabelSchema, load_schema


def _resolve_schema(project_dir: str | None, schema_path: str | None) -> LabelSchema:
    if project_dir:
        return open_project(project_dir).schema
    if schema_path:
        return load_schema(schema_path)
    raise click.UsageError("provide --project or --schema to resolve labels")


def _load_doc(path: str, schema: LabelSchema):
    return parse_ann(Path(path).read_text(encoding="utf-8"), schema)


def _emit(content: str, out: str | None) -> None:
    if out:
        Path(out).write_text(content, encoding="utf-8")
    else:
        click.echo(content, nl=False)


@click.group()
def main() -> None:
    """Text span annotation workbench."""


@main.command()
@click.option("--project", "project_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--recommend", type=click.Choice(["on", "off"]), default=None,
              help="Override the project's recommendation setting.")
def serve(project_dir: str, host: str, port: int, recommend: str | None) -> None:
    """Run the annotation service for a project directory."""
    from .server import serve as run_server

    project = open_project(project_dir)
    if recommend is not None:
        project.settings.recommend = recommend == "on"
    run_server(project, host=host, port=port)


@main.command()
@click.argument("ann_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--project", "project_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--schema", "schema_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--scheme", type=click.Choice(["bio", "bioes"]), default="bio", show_default=True)
@click.option("--mode", type=click.Choice(["word", "char"]), default="word", show_default=True)
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None,
              help="Output file (default: stdout).")
def export(ann_file: str, project_dir: str | None, schema_path: str | None,
           scheme: str, mode: str, out: str | None) -> None:
    """Export an annotated file as token-per-line tags."""
    schema = _resolve_schema(project_dir, schema_path)
    doc = _load_doc(ann_file, schema)
    _emit(export_text(doc, TagScheme(scheme), mode), out)


@main.command()
@click.argument("ann_files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--project", "project_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--schema", "schema_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Markdown matrix output (default: stdout).")
@click.option("--csv", "csv_out", type=click.Path(dir_okay=False), default=None,
              help="Also write the matrix as CSV.")
def maa(ann_files: tuple[str, ...], project_dir: str | None, schema_path: str | None,
        out: str | None, csv_out: str | None) -> None:
    """Multi-annotator analysis: pairwise F1 matrix over annotated files."""
    schema = _resolve_schema(project_dir, schema_path)
    files = [(Path(f).name[:-len(".ann")] if f.endswith(".ann") else Path(f).name,
              _load_doc(f, schema)) for f in ann_files]
    matrix = build_matrix(files)
    _emit(render_matrix_markdown(matrix), out)
    if csv_out:
        Path(csv_out).write_text("\n".join(matrix_csv_lines(matrix)) + "\n", encoding="utf-8")


@main.command()
@click.argument("file_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("file_b", type=click.Path(exists=True, dir_okay=False))
@click.option("--project", "project_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--schema", "schema_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["md", "tex"]), default="md", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Report output (default: stdout).")
def pac(file_a: str, file_b: str, project_dir: str | None, schema_path: str | None,
        fmt: str, out: str | None) -> None:
    """Pairwise annotator comparison report for two annotated files."""
    schema = _resolve_schema(project_dir, schema_path)
    doc_a = _load_doc(file_a, schema)
    doc_b = _load_doc(file_b, schema)
    name_a = Path(file_a).name[:-len(".ann")] if file_a.endswith(".ann") else Path(file_a).name
    name_b = Path(file_b).name[:-len(".ann")] if file_b.endswith(".ann") else Path(file_b).name
    report = compare_report(doc_a, doc_b, name_a, name_b)
    _emit(render_report(report, fmt), out)


@main.command()
@click.argument("ann_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--project", "project_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--schema", "schema_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--command", "cmd", required=True, help="Batch command, e.g. 2A3D2B.")
@click.option("--at", "cursor", required=True, type=int, help="Start offset of the command.")
def annotate(ann_file: str, project_dir: str | None, schema_path: str | None,
             cmd: str, cursor: int) -> None:
    """Apply a batch annotation command to a file and save it in place."""
    if project_dir:
        project = open_project(project_dir)
        schema, lexicon = project.schema, project.lexicon
    else:
        schema, lexicon = _resolve_schema(None, schema_path), Lexicon()
    config = SuggesterConfig(enabled=False)
    bench = DocumentWorkbench.from_file(ann_file, schema, lexicon, config)
    spans = bench.command(cmd, cursor)
    if project_dir:
        project.save_lexicon()
    click.echo(f"annotated {len(spans)} span(s) in {ann_file}")


def run() -> None:  # pragma: no cover
    try:
        main(standalone_mode=True)
    except AnnotationError as exc:
        click.echo(f"error: {exc.code}: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":  # pragma: no cover
    run()
