"""Interaction persistence and transcript tooling.

Records are kept one JSON object per line, one file per session.  The module
also provides the regression replay (re-run a stored transcript against a
script set and report the first divergence) and static goto-graph extraction.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .ast import ScriptSet
from .engine import EngineConfig, new_session, process_turn

ORIGINS = ("qa", "agent", "fallback")
FAILURE_REASONS = ("pattern_construction", "hierarchy_organization")

_SESSION_ID_RE = re.compile(r"[A-Za-z0-9_-]+")


class NonConsecutiveTurn(Exception):
    pass


class DuplicateTurn(Exception):
    pass


@dataclass
class InteractionRecord:
    session_id: str
    turn: int
    utterance: str
    response: str
    matched_context: Optional[str] = None
    transitions: list[str] = field(default_factory=list)
    origin: str = "agent"
    satisfied: Optional[bool] = None
    failure_reason: Optional[str] = None

    def __post_init__(self) -> None:
        if self.origin not in ORIGINS:
            raise ValueError(f"origin must be one of {ORIGINS}, got {self.origin!r}")
        if self.failure_reason is not None:
            if self.failure_reason not in FAILURE_REASONS:
                raise ValueError(
                    f"failure_reason must be one of {FAILURE_REASONS}, "
                    f"got {self.failure_reason!r}")
            if self.satisfied is not False:
                raise ValueError("failure_reason requires satisfied == False")
        if not _SESSION_ID_RE.fullmatch(self.session_id):
            raise ValueError(f"bad session id {self.session_id!r}")
        if self.turn < 1:
            raise ValueError("turn numbers start at 1")


def record_to_json(record: InteractionRecord) -> str:
    return json.dumps(asdict(record), ensure_ascii=False)


def record_from_json(line: str) -> InteractionRecord:
    return InteractionRecord(**json.loads(line))


def read_transcript(path: str | Path) -> list[InteractionRecord]:
    records = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            records.append(record_from_json(line))
    return records


def write_transcript(path: str | Path, records: Iterable[InteractionRecord]) -> None:
    lines = [record_to_json(r) for r in records]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


class TranscriptStore:
    """Append-only per-session JSONL storage under one directory.

    Appends are serialized; records within a session must arrive with
    consecutive turn numbers starting at 1.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._turn_counts: dict[str, int] = {}
        for path in self.root.glob("*.jsonl"):
            self._turn_counts[path.stem] = len(read_transcript(path))

    def _path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.jsonl"

    def append_interaction(self, record: InteractionRecord) -> None:
        with self._lock:
            count = self._turn_counts.get(record.session_id, 0)
            if record.turn <= count:
                raise DuplicateTurn(
                    f"session {record.session_id} already has turn {record.turn}")
            if record.turn != count + 1:
                raise NonConsecutiveTurn(
                    f"session {record.session_id}: expected turn {count + 1}, "
                    f"got {record.turn}")
            with self._path(record.session_id).open("a", encoding="utf-8") as fh:
                fh.write(record_to_json(record) + "\n")
            self._turn_counts[record.session_id] = record.turn

    def sessions(self) -> list[str]:
        return sorted(self._turn_counts)

    def read_session(self, session_id: str) -> list[InteractionRecord]:
        path = self._path(session_id)
        if not path.exists():
            return []
        return read_transcript(path)

    def read_all(self) -> list[InteractionRecord]:
        records = []
        for session_id in self.sessions():
            records.extend(self.read_session(session_id))
        return records


# ---------------------------------------------------------------------------
# Regression replay
# ---------------------------------------------------------------------------

def normalize_ws(text: str) -> str:
    return " ".join(text.split())


@dataclass(frozen=True)
class DivergenceReport:
    clean: bool
    turn: Optional[int] = None
    field: Optional[str] = None
    expected: Optional[object] = None
    actual: Optional[object] = None

    def format(self) -> str:
        if self.clean:
            return "clean"
        return (f"divergence at turn {self.turn} ({self.field}): "
                f"expected {self.expected!r}, got {self.actual!r}")


def replay_transcript(
    script_set: ScriptSet,
    transcript: list[InteractionRecord],
    config: Optional[EngineConfig] = None,
) -> DivergenceReport:
    """Re-run a stored transcript through a fresh session."""
    state = new_session(script_set, config)
    for record in transcript:
        result = process_turn(state, record.utterance)
        if normalize_ws(result.response_text) != normalize_ws(record.response):
            return DivergenceReport(False, record.turn, "response",
                                    record.response, result.response_text)
        if result.transitions != list(record.transitions):
            return DivergenceReport(False, record.turn, "transitions",
                                    list(record.transitions), result.transitions)
    return DivergenceReport(True)


# ---------------------------------------------------------------------------
# Static context graph
# ---------------------------------------------------------------------------

def context_graph(script_set: ScriptSet) -> dict[str, set[str]]:
    """Adjacency of goto transformations: edge (a, b) iff a rule of context a
    contains ``#goto(b)``.  Every context appears as a key."""
    graph: dict[str, set[str]] = {ctx.name: set() for ctx in script_set.contexts}
    for ctx in script_set.contexts:
        for rule in ctx.rules:
            for goto in rule.gotos():
                graph[ctx.name].add(goto.target)
    return graph
