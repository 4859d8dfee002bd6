"""Semantic validation of parsed script sets.

Errors: duplicate context names, gotos to unknown contexts, capture indices
beyond the pattern's guaranteed wildcard count, and a default context that
does not exist.  Warnings: super-context ordering violations — a rule that
generalizes a later rule in the same context shadows it, because rule
matching is first-match-wins.  The generalization test is syntactic: rule A
shadows rule B when A's literal tokens form a proper in-order subsequence of
B's literal tokens.
"""

from __future__ import annotations

from .ast import (
    ContextScript,
    Diagnostic,
    ERROR,
    Rule,
    ScriptSet,
    WARNING,
)


def _is_subsequence(needle: tuple[str, ...], haystack: tuple[str, ...]) -> bool:
    it = iter(haystack)
    return all(tok in it for tok in needle)


def _generalizes(a: Rule, b: Rule) -> bool:
    lits_a = a.pattern.literal_tokens()
    lits_b = b.pattern.literal_tokens()
    return bool(lits_a) and len(lits_a) < len(lits_b) and _is_subsequence(lits_a, lits_b)


def _check_ordering(ctx: ContextScript, source: str, out: list[Diagnostic]) -> None:
    for i, general in enumerate(ctx.rules):
        for specific in ctx.rules[i + 1:]:
            if _generalizes(general, specific):
                out.append(Diagnostic(
                    WARNING, "SuperContextOrdering",
                    f"in context '{ctx.name}': rule {general.ordinal} generalizes "
                    f"rule {specific.ordinal} and shadows it; move the general "
                    f"rule after its sub-context rules",
                    general.line or ctx.line or 1, 1, source=source))
                break  # one warning per offending general rule


def validate(script_set: ScriptSet) -> list[Diagnostic]:
    """Return every error and warning; never raises."""
    diagnostics: list[Diagnostic] = []
    source = script_set.source_name
    names = set()

    for ctx in script_set.contexts:
        if ctx.name in names:
            diagnostics.append(Diagnostic(
                ERROR, "DuplicateContext",
                f"context '{ctx.name}' is defined more than once",
                ctx.line or 1, 1, source=source))
        names.add(ctx.name)

    if script_set.default_context not in names:
        diagnostics.append(Diagnostic(
            ERROR, "UnknownDefaultContext",
            f"default context '{script_set.default_context}' does not exist",
            1, 1, source=source))

    for ctx in script_set.contexts:
        for rule in ctx.rules:
            for goto in rule.gotos():
                if goto.target not in names:
                    diagnostics.append(Diagnostic(
                        ERROR, "UnknownGotoTarget",
                        f"in context '{ctx.name}', rule {rule.ordinal}: "
                        f"#goto targets unknown context '{goto.target}'",
                        rule.line or 1, 1, source=source))
            max_index = rule.pattern.wildcard_count()
            for capture in rule.captures():
                if capture.index > max_index:
                    diagnostics.append(Diagnostic(
                        ERROR, "CaptureOutOfRange",
                        f"in context '{ctx.name}', rule {rule.ordinal}: "
                        f"^{capture.index} exceeds the pattern's "
                        f"{max_index} wildcard(s)",
                        rule.line or 1, 1, source=source))
        _check_ordering(ctx, source, diagnostics)

    return diagnostics
