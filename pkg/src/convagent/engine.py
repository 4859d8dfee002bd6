"""Per-session dialogue engine.

Each turn routes an utterance through the current context's rules (first
match wins), then — if nothing matched — through the triggers of all contexts
in file order.  A matched rule emits one response body (cycled round-robin),
substitutes captures, and then executes its ``#goto`` actions: each goto
moves the current context and, when it carries a synthetic input, re-runs the
routing against that input in the target context.  Goto executions per turn
are capped; repeated back-and-forth transitions between the same pair of
contexts trip a cycle suggestion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .ast import ContextScript, Rule, ScriptSet
from .matcher import MatchResult, match_pattern, resolve_items, substitute
from .tokenizer import TokenSeq, tokenize
from .validate import validate

DEFAULT_FALLBACK = "Bạn muốn biết thông tin gì?"
DEFAULT_CYCLE_SUGGESTION = (
    "Chúng ta đang quay lại giữa hai chủ đề này. "
    "Bạn có muốn hỏi về một chủ đề khác không?"
)

ORIGIN_AGENT = "agent"
ORIGIN_FALLBACK = "fallback"
ORIGIN_QA = "qa"


class InvalidScriptSet(Exception):
    """The script set has validation errors and cannot drive a session."""

    def __init__(self, diagnostics):
        self.diagnostics = diagnostics
        super().__init__("; ".join(d.format() for d in diagnostics))


@dataclass
class EngineConfig:
    fallback_response: str = DEFAULT_FALLBACK
    max_goto_chain: int = 8
    cycle_threshold: int = 3
    cycle_suggestion: str = DEFAULT_CYCLE_SUGGESTION

    def __post_init__(self) -> None:
        if self.max_goto_chain < 1:
            raise ValueError("max_goto_chain must be >= 1")
        if self.cycle_threshold < 2:
            raise ValueError("cycle_threshold must be >= 2")


@dataclass
class TurnResult:
    response_text: str
    matched: bool
    matched_context: Optional[str] = None
    matched_rule_ordinal: Optional[int] = None
    transitions: list[str] = field(default_factory=list)
    via_trigger: bool = False
    fallback_used: bool = False
    cycle_suggested: bool = False
    goto_chain_exceeded: bool = False
    origin: str = ORIGIN_AGENT
    provider_failed: bool = False


@dataclass
class DialogueState:
    script_set: ScriptSet
    config: EngineConfig
    current_context: str
    rule_cursors: dict[tuple[str, int], int] = field(default_factory=dict)
    transition_log: list[tuple[str, str, int]] = field(default_factory=list)
    turn_count: int = 0
    cycle_counters: dict[tuple[str, str], int] = field(default_factory=dict)
    last_transition_pair: Optional[tuple[str, str]] = None


def new_session(script_set: ScriptSet, config: Optional[EngineConfig] = None) -> DialogueState:
    """Start a session at the set's default context.

    Raises :class:`InvalidScriptSet` when validation reports errors.
    """
    errors = [d for d in validate(script_set) if d.is_error]
    if errors:
        raise InvalidScriptSet(errors)
    return DialogueState(
        script_set=script_set,
        config=config or EngineConfig(),
        current_context=script_set.default_context,
    )


class _Turn:
    """Mutable scratch for one turn's routing."""

    def __init__(self, state: DialogueState):
        self.state = state
        self.pieces: list[str] = []
        self.transitions: list[str] = []
        self.matched_context: Optional[str] = None
        self.matched_rule_ordinal: Optional[int] = None
        self.via_trigger = False
        self.cycle_suggested = False
        self.goto_budget = state.config.max_goto_chain
        self.goto_chain_exceeded = False


def _first_matching_rule(
    ctx: ContextScript, tokens: TokenSeq,
) -> tuple[Optional[Rule], Optional[MatchResult]]:
    for rule in ctx.rules:
        result = match_pattern(rule.pattern, tokens)
        if result.matched:
            return rule, result
    return None, None


def _enter_context(turn: _Turn, target: str) -> None:
    state = turn.state
    source = state.current_context
    if source == target:
        return
    state.current_context = target
    state.transition_log.append((source, target, state.turn_count))
    turn.transitions.append(target)
    pair = (source, target) if source < target else (target, source)
    if pair == state.last_transition_pair:
        count = state.cycle_counters.get(pair, 0) + 1
    else:
        if state.last_transition_pair is not None:
            state.cycle_counters[state.last_transition_pair] = 0
        count = 1
    state.cycle_counters[pair] = count
    state.last_transition_pair = pair
    if count == state.config.cycle_threshold:
        turn.cycle_suggested = True


def _run_input(turn: _Turn, utterance: str) -> bool:
    """Steps (1)-(3): tokenize, try current-context rules, then triggers.

    Returns whether any rule matched; appends produced text and executes
    gotos (which may recurse through synthetic inputs).
    """
    state = turn.state
    tokens = tokenize(utterance)
    ctx = state.script_set[state.current_context]
    rule, result = _first_matching_rule(ctx, tokens)

    if rule is None:
        for candidate in state.script_set.contexts:
            if candidate.trigger is None:
                # A trigger-less context never activates from the scan; the
                # current one already had its chance in the rule pass above.
                continue
            if not match_pattern(candidate.trigger, tokens).matched:
                continue
            rule, result = _first_matching_rule(candidate, tokens)
            if rule is None:
                # Committed to the first matching trigger; its rules decline,
                # so the turn falls through to the fallback untouched.
                return False
            turn.via_trigger = True
            _enter_context(turn, candidate.name)
            ctx = candidate
            break
        else:
            return False

    _execute_rule(turn, ctx, rule, result)
    return True


def _execute_rule(turn: _Turn, ctx: ContextScript, rule: Rule, result: MatchResult) -> None:
    state = turn.state
    key = (ctx.name, rule.ordinal)
    cursor = state.rule_cursors.get(key, 0)
    body = rule.response.alternatives[cursor]
    state.rule_cursors[key] = (cursor + 1) % len(rule.response.alternatives)

    turn.matched_context = ctx.name
    turn.matched_rule_ordinal = rule.ordinal

    text, actions = substitute(body, result)
    if text:
        turn.pieces.append(text)

    for action in actions:
        if turn.goto_budget <= 0:
            turn.goto_chain_exceeded = True
            return
        turn.goto_budget -= 1
        _enter_context(turn, action.target)
        if action.synthetic_input is not None:
            synthetic = resolve_items(action.synthetic_input, result)
            _run_input(turn, synthetic)
            if turn.goto_chain_exceeded:
                return


def process_turn(state: DialogueState, utterance: str) -> TurnResult:
    """Route one utterance; always returns a result, never raises."""
    state.turn_count += 1
    turn = _Turn(state)
    matched = _run_input(turn, utterance)

    if not matched:
        return TurnResult(
            response_text=state.config.fallback_response,
            matched=False,
            fallback_used=True,
            origin=ORIGIN_FALLBACK,
        )

    if turn.cycle_suggested:
        turn.pieces.append(state.config.cycle_suggestion)
    return TurnResult(
        response_text=" ".join(p for p in turn.pieces if p),
        matched=True,
        matched_context=turn.matched_context,
        matched_rule_ordinal=turn.matched_rule_ordinal,
        transitions=turn.transitions,
        via_trigger=turn.via_trigger,
        cycle_suggested=turn.cycle_suggested,
        goto_chain_exceeded=turn.goto_chain_exceeded,
        origin=ORIGIN_AGENT,
    )


def replay(
    script_set: ScriptSet,
    turns: list[str],
    config: Optional[EngineConfig] = None,
) -> list[TurnResult]:
    """Run a fresh session over the utterances; deterministic."""
    state = new_session(script_set, config)
    return [process_turn(state, utterance) for utterance in turns]
