"""Recursive-descent parser for ``.fscript`` context scripts.

Concrete grammar (whitespace and ``//`` line comments are insignificant
outside response text):

    script_set : context*
    context    : IDENT '::' trigger? rule+ ';;'
    trigger    : 'trigger{' pattern '}'          -- no space before the brace
    rule       : pattern '==>' response
    pattern    : ( '*' | LITERAL | '{' pattern ('|' pattern)+ '}' )*
    response   : '[' body ('|' body)* ']'
    body       : ( TEXT | '^' INT | goto )*
    goto       : '#goto(' IDENT (',' ( '^' INT | '<<' synthetic '>>' ))? ')'
    synthetic  : ( TEXT | '^' INT )*             -- bare '*' tokens are dropped

Identifiers are ASCII letters, digits and underscore, not starting with a
digit.  Alternations may nest one level.  Source text is normalized to NFC
before parsing.  On syntax errors the parser records a diagnostic and
recovers at the next ``;;`` boundary, so one call reports every error.
"""

from __future__ import annotations

import re
from typing import Optional

from .ast import (
    Alternation,
    Capture,
    ContextScript,
    Diagnostic,
    ERROR,
    Goto,
    Literal,
    PatternExpr,
    ResponseBody,
    ResponseExpr,
    Rule,
    ScriptSet,
    Text,
    Wildcard,
    has_errors,
    nfc,
)

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

# Characters that terminate a literal token on the pattern side.
_PATTERN_BREAK = set(" \t\r\n{}|[]")

MAX_ALTERNATION_DEPTH = 2


class ScriptSyntaxError(Exception):
    """Raised by ``parse_script_set`` when the source has syntax errors."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        lines = "; ".join(d.format() for d in diagnostics)
        super().__init__(lines or "syntax error")


class _ParseFailure(Exception):
    """Internal: aborts the current context, carrying one diagnostic."""

    def __init__(self, diag: Diagnostic):
        self.diag = diag
        super().__init__(diag.message)


class _Cursor:
    def __init__(self, text: str, source: str):
        self.text = text
        self.source = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at(self, token: str) -> bool:
        return self.text.startswith(token, self.pos)

    def advance(self, n: int = 1) -> str:
        taken = self.text[self.pos:self.pos + n]
        for ch in taken:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return taken

    def skip_trivia(self) -> None:
        """Skip whitespace and // comments."""
        while not self.eof():
            ch = self.peek()
            if ch in " \t\r\n":
                self.advance()
            elif self.at("//"):
                while not self.eof() and self.peek() != "\n":
                    self.advance()
            else:
                return

    def error(self, code: str, message: str) -> Diagnostic:
        return Diagnostic(ERROR, code, message, self.line, self.col,
                          source=self.source)

    def fail(self, code: str, message: str) -> _ParseFailure:
        return _ParseFailure(self.error(code, message))

    def read_identifier(self) -> Optional[str]:
        m = _IDENT_RE.match(self.text, self.pos)
        if not m:
            return None
        self.advance(m.end() - m.start())
        return m.group(0)

    def read_int(self) -> Optional[int]:
        start = self.pos
        while not self.eof() and self.peek().isdigit():
            self.advance()
        if self.pos == start:
            return None
        return int(self.text[start:self.pos])


# ---------------------------------------------------------------------------
# Pattern side
# ---------------------------------------------------------------------------

def _parse_pattern(cur: _Cursor, terminators: tuple[str, ...],
                   depth: int = 0) -> PatternExpr:
    """Parse pattern elements until (not consuming) one of ``terminators``."""
    elements = []
    while True:
        cur.skip_trivia()
        if cur.eof():
            raise cur.fail("UnterminatedContext",
                           "end of input inside a pattern (missing ';;'?)")
        if any(cur.at(t) for t in terminators):
            return PatternExpr(tuple(elements))
        if cur.at(";;") or cur.at("["):
            raise cur.fail("MissingArrow",
                           "rule pattern not followed by '==>'")
        ch = cur.peek()
        if ch == "{":
            if depth >= MAX_ALTERNATION_DEPTH:
                raise cur.fail("NestedAlternation",
                               "alternations may nest at most one level")
            cur.advance()
            branches = [_parse_pattern(cur, ("|", "}"), depth + 1)]
            while cur.at("|"):
                cur.advance()
                branches.append(_parse_pattern(cur, ("|", "}"), depth + 1))
            if not cur.at("}"):
                raise cur.fail("EmptyAlternation", "unterminated alternation")
            cur.advance()
            if len(branches) < 2 or any(not b.elements for b in branches):
                raise cur.fail("EmptyAlternation",
                               "alternation needs at least two non-empty branches")
            elements.append(Alternation(tuple(branches)))
        elif ch in "}|]":
            raise cur.fail("UnexpectedToken",
                           f"unexpected '{ch}' in pattern")
        else:
            token = _read_pattern_token(cur)
            if not token:
                raise cur.fail("UnexpectedToken",
                               f"unexpected '{cur.peek()}' in pattern")
            elements.append(Wildcard() if token == "*" else Literal(token))


def _read_pattern_token(cur: _Cursor) -> str:
    start = cur.pos
    while not cur.eof():
        ch = cur.peek()
        if ch in _PATTERN_BREAK or cur.at("==>") or cur.at(";;") or cur.at("//"):
            break
        cur.advance()
    return cur.text[start:cur.pos]


# ---------------------------------------------------------------------------
# Response side
# ---------------------------------------------------------------------------

def _flush_text(buf: list[str], items: list) -> None:
    text = " ".join("".join(buf).split())
    buf.clear()
    if text:
        items.append(Text(text))


def _parse_response(cur: _Cursor) -> ResponseExpr:
    if not cur.at("["):
        raise cur.fail("BadResponse", "response must start with '['")
    cur.advance()
    bodies: list[ResponseBody] = []
    items: list = []
    buf: list[str] = []
    while True:
        if cur.eof() or cur.at(";;"):
            raise cur.fail("UnterminatedResponse",
                           "response body not closed with ']'")
        if cur.at("]"):
            cur.advance()
            _flush_text(buf, items)
            bodies.append(ResponseBody(tuple(items)))
            return ResponseExpr(tuple(bodies))
        if cur.at("|"):
            cur.advance()
            _flush_text(buf, items)
            bodies.append(ResponseBody(tuple(items)))
            items = []
            continue
        if cur.at("//"):
            _flush_text(buf, items)
            while not cur.eof() and cur.peek() != "\n":
                cur.advance()
            continue
        if cur.at("^"):
            _flush_text(buf, items)
            items.append(_parse_capture(cur))
            continue
        if cur.at("#"):
            _flush_text(buf, items)
            items.append(_parse_action(cur))
            continue
        buf.append(cur.advance())


def _parse_capture(cur: _Cursor) -> Capture:
    cur.advance()  # '^'
    index = cur.read_int()
    if index is None:
        raise cur.fail("BadCapture", "'^' must be followed by a capture index")
    return Capture(index)


def _parse_action(cur: _Cursor) -> Goto:
    cur.advance()  # '#'
    name = cur.read_identifier()
    if name != "goto":
        raise cur.fail("UnknownAction",
                       f"unknown action '#{name or ''}': only #goto is supported")
    cur.skip_trivia()
    if not cur.at("("):
        raise cur.fail("BadGotoArity", "#goto requires '(target)'")
    cur.advance()
    cur.skip_trivia()
    target = cur.read_identifier()
    if target is None:
        raise cur.fail("BadGotoArity", "#goto requires a context name")
    cur.skip_trivia()
    synthetic: Optional[tuple] = None
    if cur.at(","):
        cur.advance()
        cur.skip_trivia()
        if cur.at("^"):
            synthetic = (_parse_capture(cur),)
        elif cur.at("<<"):
            cur.advance(2)
            synthetic = _parse_synthetic(cur)
        else:
            raise cur.fail("BadGotoArity",
                           "#goto second argument must be ^n or <<...>>")
        cur.skip_trivia()
    if not cur.at(")"):
        raise cur.fail("BadGotoArity", "#goto takes at most two arguments")
    cur.advance()
    return Goto(target, synthetic)


def _parse_synthetic(cur: _Cursor) -> tuple:
    """Parse items inside ``<< ... >>``; standalone '*' tokens are dropped
    (wildcards match zero tokens, so they add nothing to a synthetic input)."""
    items: list = []
    buf: list[str] = []

    def flush() -> None:
        words = [w for w in "".join(buf).split() if w != "*"]
        buf.clear()
        if words:
            items.append(Text(" ".join(words)))

    while True:
        if cur.eof() or cur.at(";;"):
            raise cur.fail("UnterminatedResponse",
                           "synthetic input not closed with '>>'")
        if cur.at(">>"):
            cur.advance(2)
            flush()
            return tuple(items)
        if cur.at("^"):
            flush()
            items.append(_parse_capture(cur))
            continue
        if cur.at("#"):
            raise cur.fail("NestedAction",
                           "actions are not allowed inside a synthetic input")
        buf.append(cur.advance())


# ---------------------------------------------------------------------------
# Contexts
# ---------------------------------------------------------------------------

def _parse_context(cur: _Cursor) -> ContextScript:
    cur.skip_trivia()
    line, offset = cur.line, cur.pos
    name = cur.read_identifier()
    if name is None:
        raise cur.fail("ExpectedContextName",
                       f"expected a context name, found {cur.peek()!r}")
    cur.skip_trivia()
    if not cur.at("::"):
        raise cur.fail("MissingDoubleColon",
                       f"context '{name}' must be declared as '{name} ::'")
    cur.advance(2)
    cur.skip_trivia()

    trigger = None
    if cur.at("trigger{"):
        cur.advance(len("trigger{"))
        trigger = _parse_pattern(cur, ("}",))
        cur.advance()  # '}'

    rules: list[Rule] = []
    while True:
        cur.skip_trivia()
        if cur.at(";;"):
            cur.advance(2)
            break
        if cur.eof():
            raise cur.fail("UnterminatedContext",
                           f"context '{name}' is missing its ';;' terminator")
        rule_line = cur.line
        pattern = _parse_pattern(cur, ("==>",))
        cur.advance(3)  # '==>'
        cur.skip_trivia()
        response = _parse_response(cur)
        rules.append(Rule(pattern, response, len(rules), line=rule_line))

    if not rules:
        raise _ParseFailure(Diagnostic(
            ERROR, "EmptyContext",
            f"context '{name}' has no rules", line, 1, source=cur.source))
    return ContextScript(name, trigger, tuple(rules), line=line, offset=offset)


def _recover(cur: _Cursor) -> None:
    """Skip past the next ';;' so parsing can resume at the next context."""
    idx = cur.text.find(";;", cur.pos)
    if idx < 0:
        cur.advance(len(cur.text) - cur.pos)
    else:
        cur.advance(idx + 2 - cur.pos)


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------

def parse_with_diagnostics(
    source_text: str, source_name: str = "<script>",
) -> tuple[Optional[ScriptSet], list[Diagnostic]]:
    """Parse, collecting every diagnostic.

    Returns ``(script_set, diagnostics)``; the set is ``None`` whenever any
    error diagnostic was recorded.
    """
    cur = _Cursor(nfc(source_text), source_name)
    diagnostics: list[Diagnostic] = []
    contexts: list[ContextScript] = []

    cur.skip_trivia()
    if cur.eof():
        diagnostics.append(Diagnostic(
            ERROR, "EmptyScript", "script source contains no contexts",
            1, 1, source=source_name))
        return None, diagnostics

    while True:
        cur.skip_trivia()
        if cur.eof():
            break
        try:
            contexts.append(_parse_context(cur))
        except _ParseFailure as failure:
            diagnostics.append(failure.diag)
            _recover(cur)

    if has_errors(diagnostics):
        return None, diagnostics
    return ScriptSet(tuple(contexts), source_name=source_name), diagnostics


def parse_script_set(source_text: str, source_name: str = "<script>") -> ScriptSet:
    """Parse or raise :class:`ScriptSyntaxError` with all collected diagnostics."""
    script_set, diagnostics = parse_with_diagnostics(source_text, source_name)
    if script_set is None:
        raise ScriptSyntaxError(diagnostics)
    return script_set
