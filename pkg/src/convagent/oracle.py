"""Exhaustive matching oracle for small inputs.

``oracle_match`` enumerates every alternation-branch choice and every
wildcard span assignment, keeps all full matches, and returns the one whose
decision trace (branch indices and span lengths, read left to right) is
lexicographically minimal — exactly the lazy binding the backtracking matcher
is supposed to produce.  It exists to check the matcher, so it shares no code
with it beyond the AST types.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .ast import Alternation, Literal, PatternExpr, Wildcard
from .matcher import MatchResult, Span
from .tokenizer import TokenSeq

ORACLE_MAX_TOKENS = 12

_WILD = ("w",)
_LIT = "lit"


class InputTooLong(Exception):
    """Input exceeds the exhaustive-search bound."""


def _resolutions(elements: tuple) -> Iterator[tuple[list, list]]:
    """Yield (decision template, flat element list) for every branch choice.

    Template entries are ``("b", i)`` for a chosen branch index or ``("w",)``
    placeholders later filled with span lengths; flat entries are
    ``("lit", token)`` or ``("w",)``.
    """
    if not elements:
        yield [], []
        return
    head, rest = elements[0], elements[1:]
    if isinstance(head, Literal):
        head_options = [([], [(_LIT, head.token)])]
    elif isinstance(head, Wildcard):
        head_options = [([_WILD], [_WILD])]
    else:
        assert isinstance(head, Alternation)
        head_options = []
        for b_idx, branch in enumerate(head.branches):
            for t, f in _resolutions(branch.elements):
                head_options.append(([("b", b_idx)] + t, f))
    for head_template, head_flat in head_options:
        for rest_template, rest_flat in _resolutions(rest):
            yield head_template + rest_template, head_flat + rest_flat


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative ints summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for tail in _compositions(total - first, parts - 1):
            yield (first,) + tail


def oracle_match(pattern: PatternExpr, input: TokenSeq) -> MatchResult:
    tokens = input.tokens
    if len(tokens) > ORACLE_MAX_TOKENS:
        raise InputTooLong(
            f"oracle accepts at most {ORACLE_MAX_TOKENS} tokens, got {len(tokens)}")

    best_trace: Optional[tuple[int, ...]] = None
    best_spans: Optional[list[Span]] = None

    for template, flat in _resolutions(pattern.elements):
        literal_count = sum(1 for f in flat if f != _WILD)
        wildcard_count = len(flat) - literal_count
        remaining = len(tokens) - literal_count
        if remaining < 0:
            continue
        for lengths in _compositions(remaining, wildcard_count):
            pos = 0
            spans: list[Span] = []
            ok = True
            length_iter = iter(lengths)
            for f in flat:
                if f == _WILD:
                    step = next(length_iter)
                    spans.append(Span(pos, pos + step))
                    pos += step
                else:
                    if pos >= len(tokens) or tokens[pos] != f[1]:
                        ok = False
                        break
                    pos += 1
            if not ok or pos != len(tokens):
                continue
            filled = iter(lengths)
            trace = tuple(
                entry[1] if entry[0] == "b" else next(filled)
                for entry in template
            )
            if best_trace is None or trace < best_trace:
                best_trace = trace
                best_spans = spans

    if best_spans is None:
        return MatchResult(False, input=input)
    captures = {i + 1: span for i, span in enumerate(best_spans)}
    return MatchResult(True, captures, Span(0, len(tokens)), input=input)
