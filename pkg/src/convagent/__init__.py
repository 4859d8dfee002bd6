"""Scripted-context conversational agent.

Contexts are authored in a small scripting language (``.fscript``), matched
against tokenized utterances with wildcard patterns, and chained through
``#goto`` transformations; a pluggable question-answering provider gets the
first shot at every utterance and the agent backs it up.
"""

from .ast import (
    Alternation,
    Capture,
    ContextScript,
    Diagnostic,
    Goto,
    Literal,
    PatternExpr,
    ResponseBody,
    ResponseExpr,
    Rule,
    ScriptSet,
    Text,
    Wildcard,
    render_script_set,
)
from .engine import (
    DialogueState,
    EngineConfig,
    InvalidScriptSet,
    TurnResult,
    new_session,
    process_turn,
    replay,
)
from .matcher import MatchResult, Span, match_pattern, substitute
from .metrics import CorpusStats, EmptyCorpus, compute_stats
from .oracle import InputTooLong, oracle_match
from .pack import (
    LoadedPack,
    ManifestMissing,
    PackManifest,
    PackValidationFailed,
    available_builtin_packs,
    load_pack,
    resolve_pack,
)
from .parser import ScriptSyntaxError, parse_script_set, parse_with_diagnostics
from .qa import (
    AnswerProvider,
    QaOutcome,
    answer_or_delegate,
    load_qa_table,
    table_lookup_provider,
)
from .store import (
    DivergenceReport,
    DuplicateTurn,
    InteractionRecord,
    NonConsecutiveTurn,
    TranscriptStore,
    context_graph,
    read_transcript,
    replay_transcript,
    write_transcript,
)
from .tokenizer import TokenSeq, tokenize
from .validate import validate

__version__ = "0.1.0"
