"""Command-line interface: interactive chat, script validation, transcript
replay, corpus statistics, graph export, and the HTTP server."""

from __future__ import annotations

import json
import sys
from dataclasses import asdict
from pathlib import Path

import click

from .engine import new_session
from .metrics import compute_stats
from .pack import (
    ManifestMissing,
    PackValidationFailed,
    available_builtin_packs,
    resolve_pack,
)
from .parser import parse_with_diagnostics
from .qa import answer_or_delegate, load_qa_table
from .store import (
    InteractionRecord,
    TranscriptStore,
    context_graph,
    read_transcript,
    replay_transcript,
)
from .validate import validate


def _load_pack_or_fail(name_or_path: str):
    try:
        return resolve_pack(name_or_path)
    except (ManifestMissing, PackValidationFailed) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


@click.group()
def main() -> None:
    """Scripted-context conversational agent."""


@main.command()
@click.argument("pack")
@click.option("--qa-table", type=click.Path(exists=True), default=None,
              help="Question/answer table tried before the agent.")
@click.option("--transcripts", type=click.Path(), default=None,
              help="Directory to persist this chat's interaction records.")
def chat(pack: str, qa_table: str | None, transcripts: str | None) -> None:
    """Interactive REPL against PACK (built-in name or manifest path)."""
    loaded = _load_pack_or_fail(pack)
    provider = load_qa_table(qa_table) if qa_table else None
    store = TranscriptStore(transcripts) if transcripts else None
    state = new_session(loaded.script_set)
    session_id = "cli"
    click.echo(f"pack {loaded.name!r}, context {state.current_context!r} "
               f"(empty line or Ctrl-D to quit)")
    turn = 0
    while True:
        try:
            utterance = click.prompt("bạn", prompt_suffix="> ", default="",
                                     show_default=False)
        except (click.Abort, EOFError):
            break
        if not utterance.strip():
            break
        source = state.current_context
        result = answer_or_delegate(utterance, provider, state)
        turn += 1
        click.echo(result.response_text)
        trace = " → ".join([source] + result.transitions)
        click.echo(click.style(f"  [{result.origin}] {trace}", dim=True))
        if store is not None:
            store.append_interaction(InteractionRecord(
                session_id=session_id, turn=turn, utterance=utterance,
                response=result.response_text,
                matched_context=result.matched_context,
                transitions=list(result.transitions), origin=result.origin))


@main.command("validate")
@click.argument("path", type=click.Path(exists=True))
def validate_cmd(path: str) -> None:
    """Check a .fscript file or a pack manifest; exit 0 iff no errors."""
    target = Path(path)
    diagnostics = []
    if target.suffix == ".fscript":
        parsed, diagnostics = parse_with_diagnostics(
            target.read_text(encoding="utf-8"), source_name=target.name)
        if parsed is not None:
            diagnostics = diagnostics + validate(parsed)
    else:
        # Pack manifest: validate the combined script set without the
        # loader's warning strictness.
        manifest_path = target / "pack.json" if target.is_dir() else target
        data = json.loads(Path(manifest_path).read_text(encoding="utf-8"))
        contexts = []
        for rel in data["script_files"]:
            script = Path(manifest_path).parent / rel
            parsed, diags = parse_with_diagnostics(
                script.read_text(encoding="utf-8"), source_name=rel)
            diagnostics.extend(diags)
            if parsed is not None:
                contexts.extend(parsed.contexts)
        if not any(d.is_error for d in diagnostics):
            from .ast import ScriptSet

            combined = ScriptSet(tuple(contexts),
                                 default_context=data["default_context"],
                                 source_name=data.get("name", str(manifest_path)))
            diagnostics.extend(validate(combined))
    for diag in diagnostics:
        click.echo(diag.format())
    errors = [d for d in diagnostics if d.is_error]
    click.echo(f"{len(errors)} error(s), {len(diagnostics) - len(errors)} warning(s)")
    sys.exit(1 if errors else 0)


@main.command("replay")
@click.argument("pack")
@click.argument("transcript", type=click.Path(exists=True))
def replay_cmd(pack: str, transcript: str) -> None:
    """Re-run a stored transcript against PACK; exit 0 iff clean."""
    loaded = _load_pack_or_fail(pack)
    records = read_transcript(transcript)
    report = replay_transcript(loaded.script_set, records)
    click.echo(report.format())
    sys.exit(0 if report.clean else 1)


@main.command("stats")
@click.argument("transcript_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--ratings", "ratings_file", type=click.Path(exists=True), default=None,
              help="JSON list of 1..5 ratings (default: ratings.json in the directory).")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def stats_cmd(transcript_dir: str, ratings_file: str | None, as_json: bool) -> None:
    """Aggregate metrics over every transcript in a directory."""
    root = Path(transcript_dir)
    records = []
    for path in sorted(root.glob("*.jsonl")):
        records.extend(read_transcript(path))
    ratings_path = Path(ratings_file) if ratings_file else root / "ratings.json"
    ratings = []
    if ratings_path.exists():
        ratings = json.loads(ratings_path.read_text(encoding="utf-8"))
    stats = compute_stats(records, ratings)
    if as_json:
        click.echo(json.dumps(asdict(stats), ensure_ascii=False, indent=2))
        return
    click.echo(f"sessions: {stats.sessions}")
    click.echo(f"interactions: {stats.interactions}")
    click.echo(f"satisfied: {stats.satisfied}")
    click.echo(f"accuracy: {stats.accuracy_percent}%")
    click.echo(f"interactions/session: {stats.avg_interactions_per_session:.3g} "
               f"(headline {stats.avg_interactions_headline})")
    failures = " ".join(f"{k}={v}" for k, v in stats.failure_breakdown.items())
    click.echo(f"failures: {failures}")
    histogram = " ".join(f"{k}:{v}" for k, v in stats.rating_histogram.items())
    click.echo(f"ratings: {histogram}")


@main.command("graph")
@click.argument("pack")
@click.option("--format", "fmt", type=click.Choice(["edges", "dot"]), default="edges")
def graph_cmd(pack: str, fmt: str) -> None:
    """Print PACK's goto adjacency as an edge list or Graphviz DOT."""
    loaded = _load_pack_or_fail(pack)
    graph = context_graph(loaded.script_set)
    if fmt == "dot":
        click.echo(f'digraph "{loaded.name}" {{')
        for source in graph:
            for target in sorted(graph[source]):
                click.echo(f'  "{source}" -> "{target}";')
        click.echo("}")
    else:
        for source in graph:
            for target in sorted(graph[source]):
                click.echo(f"{source} -> {target}")


@main.command("serve")
@click.option("--pack", "pack_refs", multiple=True,
              help="Pack name or manifest path (repeatable; default: all built-ins).")
@click.option("--listen", default="127.0.0.1:8040", show_default=True,
              metavar="ADDR:PORT")
@click.option("--transcripts", type=click.Path(), default="transcripts",
              show_default=True, help="Directory for interaction records.")
@click.option("--qa-table", type=click.Path(exists=True), default=None)
@click.option("--ui-dir", type=click.Path(exists=True, file_okay=False), default=None,
              help="Serve a static chat UI from this directory.")
def serve_cmd(pack_refs: tuple[str, ...], listen: str, transcripts: str,
              qa_table: str | None, ui_dir: str | None) -> None:
    """Run the HTTP chat service."""
    import uvicorn

    from .service import create_app

    refs = list(pack_refs) or list(available_builtin_packs())
    packs = {}
    for ref in refs:
        loaded = _load_pack_or_fail(ref)
        packs[loaded.name] = loaded
    provider = load_qa_table(qa_table) if qa_table else None
    app = create_app(packs, TranscriptStore(transcripts), provider, ui_dir=ui_dir)
    host, _, port = listen.rpartition(":")
    click.echo(f"serving packs {sorted(packs)} on http://{listen}")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")


if __name__ == "__main__":
    main()
