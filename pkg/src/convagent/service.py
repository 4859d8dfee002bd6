"""HTTP chat service.

Conversational state lives in an in-memory session registry; every posted
message also appends one interaction record to the transcript store.
Requests for the same session are serialized with a per-session lock;
distinct sessions proceed in parallel.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .engine import DialogueState, EngineConfig, new_session
from .pack import LoadedPack
from .qa import AnswerProvider, answer_or_delegate
from .store import InteractionRecord, TranscriptStore, context_graph


class CreateSessionRequest(BaseModel):
    pack: str


class MessageRequest(BaseModel):
    utterance: str


@dataclass
class _Session:
    session_id: str
    pack_name: str
    created_at: str
    state: DialogueState
    lock: threading.Lock = field(default_factory=threading.Lock)
    turns: int = 0


def create_app(
    packs: dict[str, LoadedPack],
    store: TranscriptStore,
    provider: Optional[AnswerProvider] = None,
    config: Optional[EngineConfig] = None,
    ui_dir: Optional[str] = None,
) -> FastAPI:
    app = FastAPI(title="convagent", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, _Session] = {}
    registry_lock = threading.Lock()

    @app.post("/api/sessions", status_code=201)
    def create_session(request: CreateSessionRequest):
        pack = packs.get(request.pack)
        if pack is None:
            raise HTTPException(404, f"unknown pack {request.pack!r}")
        session = _Session(
            session_id=uuid.uuid4().hex,
            pack_name=pack.name,
            created_at=datetime.now(timezone.utc).isoformat(),
            state=new_session(pack.script_set, config),
        )
        with registry_lock:
            sessions[session.session_id] = session
        return {
            "session_id": session.session_id,
            "pack_name": session.pack_name,
            "created_at": session.created_at,
            "current_context": session.state.current_context,
        }

    @app.post("/api/sessions/{session_id}/messages")
    def post_message(session_id: str, request: MessageRequest):
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(404, f"unknown session {session_id!r}")
        if not request.utterance.strip():
            raise HTTPException(400, "utterance must not be empty")
        with session.lock:
            result = answer_or_delegate(request.utterance, provider, session.state)
            session.turns += 1
            record = InteractionRecord(
                session_id=session.session_id,
                turn=session.turns,
                utterance=request.utterance,
                response=result.response_text,
                matched_context=result.matched_context,
                transitions=list(result.transitions),
                origin=result.origin,
            )
            store.append_interaction(record)
            return {
                "response": result.response_text,
                "origin": result.origin,
                "matched_context": result.matched_context,
                "transitions": result.transitions,
                "cycle_suggested": result.cycle_suggested,
                "turn": session.turns,
                "current_context": session.state.current_context,
            }

    @app.get("/api/sessions/{session_id}")
    def get_transcript(session_id: str):
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(404, f"unknown session {session_id!r}")
        from dataclasses import asdict

        return [asdict(r) for r in store.read_session(session_id)]

    @app.get("/api/packs/{name}/graph")
    def get_graph(name: str):
        pack = packs.get(name)
        if pack is None:
            raise HTTPException(404, f"unknown pack {name!r}")
        graph = context_graph(pack.script_set)
        return {ctx: sorted(targets) for ctx, targets in graph.items()}

    @app.get("/api/packs")
    def list_packs():
        return {
            name: {
                "contexts": len(pack.script_set.contexts),
                "default_context": pack.script_set.default_context,
                "locale": pack.manifest.locale,
            }
            for name, pack in packs.items()
        }

    if ui_dir:
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
