"""AST for the context-script language.

A script set is an ordered collection of named contexts.  Each context has an
optional trigger pattern and an ordered, non-empty list of rules of the form
``pattern ==> response``.  Pattern expressions are sequences of literals,
wildcards (``*``) and alternations (``{a | b}``); response expressions hold
one or more bodies (cycled round-robin) made of plain text, capture
substitutions (``^n``) and ``#goto`` actions.

All nodes are frozen dataclasses: an AST is immutable after construction and
safe to share between threads.  ``render_script_set`` emits the canonical
text form (single space between tokens, one rule per line, ``;;`` on its own
line); parsing the rendered text yields a structurally equal AST.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union


def nfc(text: str) -> str:
    """Normalize to Unicode composed form (all script/utterance text)."""
    return unicodedata.normalize("NFC", text)


# ---------------------------------------------------------------------------
# Pattern side
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Wildcard:
    """``*`` — matches zero or more input tokens (lazy)."""

    def render(self) -> str:
        return "*"


@dataclass(frozen=True)
class Literal:
    """A single token that must match one equal input token."""

    token: str

    def render(self) -> str:
        return self.token


@dataclass(frozen=True)
class Alternation:
    """``{branch | branch ...}`` — matches if any branch matches the span."""

    branches: tuple["PatternExpr", ...]

    def render(self) -> str:
        return "{ " + " | ".join(b.render() for b in self.branches) + " }"


PatternElement = Union[Wildcard, Literal, Alternation]


@dataclass(frozen=True)
class PatternExpr:
    elements: tuple[PatternElement, ...]

    def render(self) -> str:
        return " ".join(el.render() for el in self.elements)

    def wildcard_count(self) -> int:
        """Number of wildcards guaranteed to bind on any match.

        For alternations this is the minimum over branches, so it is the
        largest capture index that is valid no matter which branch matched.
        """
        count = 0
        for el in self.elements:
            if isinstance(el, Wildcard):
                count += 1
            elif isinstance(el, Alternation):
                count += min(b.wildcard_count() for b in el.branches)
        return count

    def literal_tokens(self) -> tuple[str, ...]:
        """All literal tokens in document order, descending into branches."""
        out: list[str] = []
        for el in self.elements:
            if isinstance(el, Literal):
                out.append(el.token)
            elif isinstance(el, Alternation):
                for b in el.branches:
                    out.extend(b.literal_tokens())
        return tuple(out)


# ---------------------------------------------------------------------------
# Response side
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Text:
    """Plain response text, stored whitespace-normalized."""

    text: str

    def render(self) -> str:
        return self.text


@dataclass(frozen=True)
class Capture:
    """``^n`` — substitutes the span bound by the n-th wildcard (0 = whole input)."""

    index: int

    def render(self) -> str:
        return f"^{self.index}"


SyntheticItem = Union[Text, Capture]


@dataclass(frozen=True)
class Goto:
    """``#goto(ctx)`` / ``#goto(ctx, ^n)`` / ``#goto(ctx, <<...>>)``.

    ``synthetic_input`` is the optional utterance re-processed in the target
    context; it holds text and captures only, never nested actions.
    """

    target: str
    synthetic_input: Optional[tuple[SyntheticItem, ...]] = None

    def render(self) -> str:
        if self.synthetic_input is None:
            return f"#goto({self.target})"
        items = self.synthetic_input
        if len(items) == 1 and isinstance(items[0], Capture):
            return f"#goto({self.target}, {items[0].render()})"
        inner = " ".join(it.render() for it in items)
        return f"#goto({self.target}, << {inner} >>)"


ResponseItem = Union[Text, Capture, Goto]


@dataclass(frozen=True)
class ResponseBody:
    items: tuple[ResponseItem, ...]

    def render(self) -> str:
        return " ".join(it.render() for it in self.items)


@dataclass(frozen=True)
class ResponseExpr:
    """Bracketed alternative bodies, selected round-robin across activations."""

    alternatives: tuple[ResponseBody, ...]

    def render(self) -> str:
        return "[ " + " | ".join(b.render() for b in self.alternatives) + " ]"


# ---------------------------------------------------------------------------
# Contexts and the full set
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    pattern: PatternExpr
    response: ResponseExpr
    ordinal: int
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        return f"{self.pattern.render()} ==> {self.response.render()}"

    def gotos(self) -> Iterator[Goto]:
        for body in self.response.alternatives:
            for item in body.items:
                if isinstance(item, Goto):
                    yield item

    def captures(self) -> Iterator[Capture]:
        for body in self.response.alternatives:
            for item in body.items:
                if isinstance(item, Capture):
                    yield item
                elif isinstance(item, Goto) and item.synthetic_input:
                    for sub in item.synthetic_input:
                        if isinstance(sub, Capture):
                            yield sub


@dataclass(frozen=True)
class ContextScript:
    name: str
    trigger: Optional[PatternExpr]
    rules: tuple[Rule, ...]
    line: int = field(default=0, compare=False)
    offset: int = field(default=-1, compare=False)

    @property
    def activatable_by_any(self) -> bool:
        """A context without a trigger accepts any input once current."""
        return self.trigger is None


@dataclass(frozen=True)
class ScriptSet:
    contexts: tuple[ContextScript, ...]
    default_context: str = field(default="", compare=False)
    source_name: str = field(default="<script>", compare=False)

    def __post_init__(self) -> None:
        if not self.default_context and self.contexts:
            object.__setattr__(self, "default_context", self.contexts[0].name)

    def context_names(self) -> tuple[str, ...]:
        return tuple(ctx.name for ctx in self.contexts)

    def get(self, name: str) -> Optional[ContextScript]:
        for ctx in self.contexts:
            if ctx.name == name:
                return ctx
        return None

    def __getitem__(self, name: str) -> ContextScript:
        ctx = self.get(name)
        if ctx is None:
            raise KeyError(name)
        return ctx


# ---------------------------------------------------------------------------
# Diagnostics
# ---------------------------------------------------------------------------

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str
    message: str
    line: int
    column: int
    end_line: int = 0
    end_column: int = 0
    source: str = "<script>"

    def __post_init__(self) -> None:
        if not self.end_line:
            object.__setattr__(self, "end_line", self.line)
        if not self.end_column:
            object.__setattr__(self, "end_column", self.column)

    @property
    def is_error(self) -> bool:
        return self.severity == ERROR

    def format(self) -> str:
        return (f"{self.severity}[{self.code}] {self.source}:"
                f"{self.line}:{self.column}: {self.message}")


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)


# ---------------------------------------------------------------------------
# Canonical renderer
# ---------------------------------------------------------------------------

def render_script_set(script_set: ScriptSet) -> str:
    """Emit canonical source text; ``parse(render(s))`` equals ``s`` structurally."""
    chunks = []
    for ctx in script_set.contexts:
        lines = [f"{ctx.name} ::"]
        if ctx.trigger is not None:
            lines.append("trigger{ " + ctx.trigger.render() + " }")
        for rule in ctx.rules:
            lines.append(rule.render())
        lines.append(";;")
        chunks.append("\n".join(lines) + "\n")
    return "\n".join(chunks)
