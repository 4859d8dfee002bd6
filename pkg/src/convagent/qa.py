"""Question-answering fallback routing.

A provider gets the first shot at every utterance; when it has no answer (or
fails), the utterance is delegated to the dialogue engine.  The provider is a
contract, not an implementation — ``table_lookup_provider`` is the shipped
stub, answering on normalized exact-question equality.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Optional

from .engine import DialogueState, ORIGIN_QA, TurnResult, process_turn
from .tokenizer import PUNCTUATION, tokenize

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class QaOutcome:
    """Either an answer or a report that none exists."""

    text: Optional[str] = None

    @property
    def answered(self) -> bool:
        return self.text is not None


NO_ANSWER = QaOutcome()


def answered(text: str) -> QaOutcome:
    if not text:
        raise ValueError("an answered outcome needs non-empty text")
    return QaOutcome(text)


@dataclass(frozen=True)
class AnswerProvider:
    ask: Callable[[str], QaOutcome]
    identifier: str = "provider"


def normalize_question(question: str) -> str:
    """Tokenized, punctuation-stripped form used for table lookups."""
    tokens = tokenize(question).tokens
    return " ".join(t for t in tokens if not all(ch in PUNCTUATION for ch in t))


def table_lookup_provider(
    entries: Mapping[str, str], identifier: str = "lookup-table",
) -> AnswerProvider:
    table = {normalize_question(q): a for q, a in entries.items() if a}

    def ask(utterance: str) -> QaOutcome:
        answer = table.get(normalize_question(utterance))
        return answered(answer) if answer else NO_ANSWER

    return AnswerProvider(ask=ask, identifier=identifier)


def load_qa_table(path: str | Path, identifier: Optional[str] = None) -> AnswerProvider:
    """Read a knowledge table: UTF-8 lines of ``question<TAB>answer``."""
    path = Path(path)
    entries: dict[str, str] = {}
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or "\t" not in line:
            continue
        question, answer = line.split("\t", 1)
        entries[question] = answer.strip()
    return table_lookup_provider(entries, identifier or path.name)


def answer_or_delegate(
    utterance: str,
    provider: Optional[AnswerProvider],
    state: DialogueState,
) -> TurnResult:
    """Try the provider; on no answer (or any provider failure) run the engine.

    An answered outcome leaves the dialogue state untouched.
    """
    provider_failed = False
    if provider is not None:
        try:
            outcome = provider.ask(utterance)
        except Exception:
            log.warning("provider %r failed; delegating to the agent",
                        provider.identifier, exc_info=True)
            provider_failed = True
            outcome = NO_ANSWER
        if outcome.answered:
            return TurnResult(
                response_text=outcome.text,
                matched=True,
                origin=ORIGIN_QA,
            )
    result = process_turn(state, utterance)
    result.provider_failed = provider_failed
    return result
