"""Synthetic labeled evaluation corpus.

The original study's student utterances were never published, so the repo
ships a generated stand-in: 30 sessions totaling 417 interactions, 331 of
them labeled satisfying, the 86 failures split 75/11 across the two failure
reasons, and a 3/1/13/9/4 satisfaction-rating histogram.  Utterances are
engine-driven fixtures, not study data; only the aggregate numbers are
meaningful.
"""

from __future__ import annotations

import random
from pathlib import Path
from typing import Sequence

from .ast import ScriptSet
from .engine import new_session, process_turn
from .store import InteractionRecord, write_transcript

SESSION_COUNT = 30
INTERACTION_COUNT = 417
SATISFIED_COUNT = 331
PATTERN_FAILURES = 75
HIERARCHY_FAILURES = 11
RATINGS = [1] * 3 + [2] * 1 + [3] * 13 + [4] * 9 + [5] * 4

_SEED = 2012

_UTTERANCE_BANK = [
    "môn học tiên quyết là gì ?",
    "Có. Tôi muốn biết.",
    "khóa luận là gì ?",
    "tín chỉ là gì ?",
    "giờ tín chỉ là gì ?",
    "Các loại môn học trong giảng dạy tín chỉ ?",
    "môn học điều kiện là gì ?",
    "Tôi không muốn biết về nó.",
    "chương trình đào tạo là gì ?",
    "hình thức đào tạo là gì ?",
    "hình thức dạy học là gì ?",
    "lên lớp là gì ?",
    "thực hành là gì ?",
    "tự học bắt buộc là gì ?",
    "quy định là gì ?",
    "môn học bắt buộc là gì ?",
    "môn học tự chọn là gì ?",
    "cho tôi hỏi về môn học",
    "điểm thi được tính thế nào ?",
    "Không.",
]


def _session_lengths() -> list[int]:
    # 27 x 14 + 3 x 13 = 417, average 13.9 (headline 14).
    lengths = [14] * 27 + [13] * 3
    assert sum(lengths) == INTERACTION_COUNT
    return lengths


def make_synthetic_corpus(
    script_set: ScriptSet,
) -> tuple[list[InteractionRecord], list[int]]:
    """Deterministically generate the labeled corpus against a script set."""
    rng = random.Random(_SEED)
    unsatisfied = sorted(rng.sample(range(INTERACTION_COUNT),
                                    PATTERN_FAILURES + HIERARCHY_FAILURES))
    reason_of = {idx: "pattern_construction" for idx in unsatisfied[:PATTERN_FAILURES]}
    reason_of.update({idx: "hierarchy_organization"
                      for idx in unsatisfied[PATTERN_FAILURES:]})

    records: list[InteractionRecord] = []
    global_idx = 0
    bank_idx = 0
    for session_no, length in enumerate(_session_lengths(), start=1):
        session_id = f"s{session_no:02d}"
        state = new_session(script_set)
        for turn in range(1, length + 1):
            utterance = _UTTERANCE_BANK[bank_idx % len(_UTTERANCE_BANK)]
            bank_idx += 1
            result = process_turn(state, utterance)
            failure = reason_of.get(global_idx)
            records.append(InteractionRecord(
                session_id=session_id,
                turn=turn,
                utterance=utterance,
                response=result.response_text,
                matched_context=result.matched_context,
                transitions=list(result.transitions),
                origin=result.origin,
                satisfied=failure is None,
                failure_reason=failure,
            ))
            global_idx += 1

    assert len(records) == INTERACTION_COUNT
    assert sum(1 for r in records if r.satisfied) == SATISFIED_COUNT
    return records, list(RATINGS)


def write_corpus(script_set: ScriptSet, out_dir: str | Path) -> Path:
    """Write one JSONL file per session plus ``ratings.json``."""
    import json

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records, ratings = make_synthetic_corpus(script_set)
    by_session: dict[str, list[InteractionRecord]] = {}
    for record in records:
        by_session.setdefault(record.session_id, []).append(record)
    for session_id, session_records in by_session.items():
        write_transcript(out_dir / f"{session_id}.jsonl", session_records)
    (out_dir / "ratings.json").write_text(json.dumps(ratings), encoding="utf-8")
    return out_dir
