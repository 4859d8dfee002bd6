import hypothesis.strategies as st
from hypothesis import given, settings

from convagent.ast import Capture, Goto, Literal, PatternExpr, ResponseBody, Text, Wildcard
from convagent.matcher import Span, match_pattern, resolve_items, substitute
from convagent.oracle import oracle_match
from convagent.parser import parse_script_set
from convagent.tokenizer import TokenSeq, tokenize

from .strategies import pattern_exprs, token_inputs


def _pattern(source: str) -> PatternExpr:
    s = parse_script_set(f"t ::\n{source} ==> [ x ]\n;;\n")
    return s.contexts[0].rules[0].pattern


def _toks(*tokens: str) -> TokenSeq:
    return TokenSeq(tokens, " ".join(tokens))


def test_surrounding_wildcards_lazy_bindings():
    result = match_pattern(_pattern("* môn học tiên quyết *"),
                           tokenize("môn học tiên quyết là gì?"))
    assert result.matched
    assert result.captures == {1: Span(0, 0), 2: Span(4, 7)}
    assert result.capture_tokens(1) == ()
    assert result.capture_tokens(2) == ("là", "gì", "?")
    assert result.capture_text(0) == "môn học tiên quyết là gì ?"


def test_wildcard_matches_empty_input():
    result = match_pattern(_pattern("*"), _toks())
    assert result.matched
    assert result.captures == {1: Span(0, 0)}


def test_alternation_unmatched():
    pattern = _pattern("{ * Có * | * có * }")
    assert not match_pattern(pattern, _toks("Tôi", "không", "muốn")).matched


def test_alternation_picks_first_matching_branch():
    pattern = _pattern("{ * Có * | * có * }")
    result = match_pattern(pattern, tokenize("Có. Tôi muốn biết."))
    assert result.matched
    # branch 1: wildcards around "Có"
    assert result.capture_tokens(1) == ()
    assert result.capture_tokens(2) == (".", "Tôi", "muốn", "biết", ".")


def test_literals_are_case_sensitive():
    assert not match_pattern(_pattern("có"), _toks("Có")).matched
    assert match_pattern(_pattern("Có"), _toks("Có")).matched


def test_whole_input_must_be_consumed():
    assert not match_pattern(_pattern("môn học"), _toks("môn", "học", "gì")).matched


def test_laziness_capture_before_first_occurrence():
    result = match_pattern(_pattern("* a *"), _toks("x", "a", "y", "a"))
    assert result.matched
    assert result.captures[1] == Span(0, 1)  # up to the FIRST 'a'


def test_consumption_completeness():
    pattern = _pattern("* môn * học *")
    toks = _toks("x", "môn", "y", "z", "học", "w")
    result = match_pattern(pattern, toks)
    assert result.matched
    literal_count = 2
    assert literal_count + sum(s.length for s in result.captures.values()) == len(toks)


def test_substitute_goto_with_whole_capture():
    s = parse_script_set("t ::\n* môn học tiên quyết * ==> "
                         "[ #goto(mon_hoc_tien_quyet, ^0) ]\nx ==> [ y ]\n;;\n")
    rule = s.contexts[0].rules[0]
    result = match_pattern(rule.pattern, tokenize("môn học tiên quyết là gì?"))
    text, actions = substitute(rule.response.alternatives[0], result)
    assert text == ""
    assert len(actions) == 1
    assert isinstance(actions[0], Goto)
    assert resolve_items(actions[0].synthetic_input, result) == \
        "môn học tiên quyết là gì ?"


def test_substitute_plain_text():
    body = ResponseBody((Text("x"),))
    result = match_pattern(_pattern("*"), _toks("anything"))
    assert substitute(body, result) == ("x", [])


def test_substitute_empty_capture_vanishes():
    body = ResponseBody((Text("a"), Capture(1), Text("b")))
    result = match_pattern(_pattern("* x"), _toks("x"))
    assert result.captures[1] == Span(0, 0)
    text, _ = substitute(body, result)
    assert text == "a b"


def test_match_is_pure():
    pattern = _pattern("* a { b | * } *")
    toks = _toks("a", "b", "c")
    first = match_pattern(pattern, toks)
    second = match_pattern(pattern, toks)
    assert first == second


@settings(max_examples=400, deadline=None)
@given(pattern_exprs(), token_inputs)
def test_matcher_agrees_with_oracle(pattern, toks):
    fast = match_pattern(pattern, toks)
    slow = oracle_match(pattern, toks)
    assert fast.matched == slow.matched
    if fast.matched:
        assert fast.captures == slow.captures
        assert fast.whole == slow.whole


@settings(max_examples=200, deadline=None)
@given(pattern_exprs(), token_inputs)
def test_matched_spans_are_ordered_and_disjoint(pattern, toks):
    result = match_pattern(pattern, toks)
    if not result.matched:
        return
    spans = [result.captures[i] for i in sorted(result.captures)]
    position = 0
    for span in spans:
        assert 0 <= span.start <= span.end <= len(toks)
        assert span.start >= position
        position = span.end
    assert result.whole == Span(0, len(toks))
