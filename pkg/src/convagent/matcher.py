"""Pattern matching over token sequences.

A pattern matches when it consumes the whole input: a literal consumes one
equal token (case-sensitive, NFC), a wildcard consumes zero or more tokens,
and an alternation consumes whatever one of its branches consumes.  Where
several decompositions exist, matching is lazy — the leftmost wildcard takes
the shortest span and alternation branches are tried in order — so capture
bindings are deterministic.  Wildcards are numbered 1..n left to right across
the flattened chosen branch; capture 0 is the whole input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .ast import Alternation, Capture, Goto, Literal, PatternExpr, ResponseBody, Text, Wildcard
from .tokenizer import TokenSeq


@dataclass(frozen=True)
class Span:
    """Half-open token index range within the matched input."""

    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class MatchResult:
    matched: bool
    captures: dict[int, Span] = field(default_factory=dict)
    whole: Optional[Span] = None
    input: Optional[TokenSeq] = field(default=None, compare=False)

    def capture_tokens(self, index: int) -> tuple[str, ...]:
        span = self.whole if index == 0 else self.captures.get(index)
        if span is None or self.input is None:
            return ()
        return self.input.tokens[span.start:span.end]

    def capture_text(self, index: int) -> str:
        return " ".join(self.capture_tokens(index))


NO_MATCH = MatchResult(False)


def match_pattern(pattern: PatternExpr, input: TokenSeq) -> MatchResult:
    """Anchored match of ``pattern`` against the whole token sequence."""
    tokens = input.tokens
    bindings: list[Span] = []

    def descend(elements: Sequence, idx: int, pos: int) -> bool:
        if idx == len(elements):
            return pos == len(tokens)
        el = elements[idx]
        if isinstance(el, Literal):
            return (pos < len(tokens) and tokens[pos] == el.token
                    and descend(elements, idx + 1, pos + 1))
        if isinstance(el, Wildcard):
            for length in range(len(tokens) - pos + 1):
                bindings.append(Span(pos, pos + length))
                if descend(elements, idx + 1, pos + length):
                    return True
                bindings.pop()
            return False
        # Alternation: splice the branch in front of the remaining elements so
        # its wildcards number naturally in flattened order.
        rest = tuple(elements[idx + 1:])
        for branch in el.branches:
            mark = len(bindings)
            if descend(branch.elements + rest, 0, pos):
                return True
            del bindings[mark:]
        return False

    if not descend(pattern.elements, 0, 0):
        return MatchResult(False, input=input)
    captures = {i + 1: span for i, span in enumerate(bindings)}
    return MatchResult(True, captures, Span(0, len(tokens)), input=input)


def resolve_items(items: Sequence, result: MatchResult) -> str:
    """Expand text and capture items against a match; empty expansions vanish."""
    pieces = []
    for item in items:
        if isinstance(item, Text):
            pieces.append(item.text)
        elif isinstance(item, Capture):
            pieces.append(result.capture_text(item.index))
    return " ".join(p for p in pieces if p)


def substitute(body: ResponseBody, result: MatchResult) -> tuple[str, list[Goto]]:
    """Render a response body against a match.

    Returns the substituted text plus the embedded actions in order; actions
    are never executed here.
    """
    actions = [item for item in body.items if isinstance(item, Goto)]
    text = resolve_items([i for i in body.items if not isinstance(i, Goto)], result)
    return text, actions
