"""Hypothesis strategies for random ASTs, patterns and token inputs.

The vocabulary deliberately overlaps between patterns and inputs so random
(pattern, input) pairs match often enough to exercise capture bindings.
"""

from __future__ import annotations

import hypothesis.strategies as st

from convagent.ast import (
    Alternation,
    Capture,
    ContextScript,
    Goto,
    Literal,
    PatternExpr,
    ResponseBody,
    ResponseExpr,
    Rule,
    ScriptSet,
    Text,
    Wildcard,
)
from convagent.tokenizer import TokenSeq

VOCAB = [
    "môn", "học", "tiên", "quyết", "điều", "kiện", "tín", "chỉ", "giờ",
    "Có", "có", "Không", "không", "là", "gì", "a", "b", "xanh", "đỏ", "?",
]

identifiers = st.from_regex(r"[a-z_][a-z0-9_]{0,7}", fullmatch=True)
words = st.sampled_from(VOCAB)


def pattern_exprs(depth: int = 0, max_elements: int = 4) -> st.SearchStrategy[PatternExpr]:
    element = st.one_of(
        st.just(Wildcard()),
        st.builds(Literal, words),
    )
    if depth < 2:
        branch = pattern_exprs(depth + 1, max_elements=3)
        element = st.one_of(element, st.builds(
            lambda branches: Alternation(tuple(branches)),
            st.lists(branch, min_size=2, max_size=3),
        ))
    min_size = 1 if depth else 0
    return st.builds(
        lambda els: PatternExpr(tuple(els)),
        st.lists(element, min_size=min_size, max_size=max_elements),
    )


token_inputs = st.builds(
    lambda toks: TokenSeq(tuple(toks), " ".join(toks)),
    st.lists(words, min_size=0, max_size=12),
)


def _merge_adjacent_text(items: list) -> tuple:
    merged: list = []
    for item in items:
        if isinstance(item, Text) and merged and isinstance(merged[-1], Text):
            merged[-1] = Text(merged[-1].text + " " + item.text)
        else:
            merged.append(item)
    return tuple(merged)


@st.composite
def response_exprs(draw, targets: list[str]) -> ResponseExpr:
    texts = st.builds(
        lambda ws: Text(" ".join(ws)),
        st.lists(words, min_size=1, max_size=4),
    )
    captures = st.builds(Capture, st.integers(0, 4))
    synthetic = st.one_of(
        st.none(),
        st.just((Capture(0),)),
        st.builds(
            lambda items: _merge_adjacent_text(items),
            st.lists(st.one_of(texts, captures), min_size=1, max_size=3),
        ),
    )
    gotos = st.builds(Goto, st.sampled_from(targets), synthetic)
    body = st.builds(
        lambda items: ResponseBody(_merge_adjacent_text(items)),
        st.lists(st.one_of(texts, captures, gotos), min_size=0, max_size=4),
    )
    bodies = draw(st.lists(body, min_size=1, max_size=3))
    return ResponseExpr(tuple(bodies))


@st.composite
def script_sets(draw) -> ScriptSet:
    names = draw(st.lists(identifiers, min_size=1, max_size=3, unique=True))
    contexts = []
    for name in names:
        trigger = draw(st.one_of(st.none(), pattern_exprs()))
        rule_count = draw(st.integers(1, 3))
        rules = tuple(
            Rule(draw(pattern_exprs()), draw(response_exprs(names)), ordinal)
            for ordinal in range(rule_count)
        )
        contexts.append(ContextScript(name, trigger, rules))
    return ScriptSet(tuple(contexts))
