import copy

import pytest

from convagent.engine import (
    EngineConfig,
    InvalidScriptSet,
    new_session,
    process_turn,
    replay,
)
from convagent.parser import parse_script_set

TABLE2_TURNS = [
    "môn học tiên quyết là gì?",
    "Có. Tôi muốn biết.",
    "Tôi không muốn biết về nó.",
]

TABLE4_TURNS = [
    "Các loại môn học trong giảng dạy tín chỉ?",
    "môn học điều kiện là gì?",
    "Tôi không muốn biết về nó.",
]


def test_new_session_starts_at_default(pack):
    state = new_session(pack.script_set)
    assert state.current_context == "quy_che_dao_tao"
    assert state.turn_count == 0
    assert state.transition_log == []


def test_new_session_single_context():
    s = parse_script_set("only ::\n* ==> [ x ]\n;;\n")
    assert new_session(s).current_context == "only"


def test_new_session_rejects_invalid_set():
    s = parse_script_set("a ::\nx ==> [ #goto(nowhere) ]\n;;\n")
    with pytest.raises(InvalidScriptSet):
        new_session(s)


def test_config_bounds():
    with pytest.raises(ValueError):
        EngineConfig(max_goto_chain=0)
    with pytest.raises(ValueError):
        EngineConfig(cycle_threshold=1)


def test_first_turn_reaches_prerequisite_subject(pack):
    state = new_session(pack.script_set)
    result = process_turn(state, TABLE2_TURNS[0])
    assert result.matched
    assert result.response_text.startswith("Môn học tiên quyết của một môn học")
    assert "môn học điều kiện" in result.response_text
    assert state.current_context == "mon_hoc_tien_quyet"


def test_yes_turn_transitions_via_synthetic_goto(pack):
    state = new_session(pack.script_set)
    process_turn(state, TABLE2_TURNS[0])
    result = process_turn(state, TABLE2_TURNS[1])
    assert result.response_text.startswith("Môn học điều kiện là các môn học")
    assert result.transitions == ["mon_hoc_dieu_kien"]
    assert state.current_context == "mon_hoc_dieu_kien"


def test_no_turn_hits_the_khong_rule(pack):
    state = new_session(pack.script_set)
    for utterance in TABLE2_TURNS[:2]:
        process_turn(state, utterance)
    result = process_turn(state, TABLE2_TURNS[2])
    assert result.response_text == "Bạn muốn biết thông tin gì?"
    assert result.transitions == []


def test_unmatched_input_falls_back(pack):
    state = new_session(pack.script_set)
    result = process_turn(state, "xyzzy")
    assert not result.matched
    assert result.fallback_used
    assert result.origin == "fallback"
    assert result.transitions == []
    assert result.response_text == state.config.fallback_response


def test_trigger_activation_from_bare_default(table1_source):
    # A pack-like set where the default context cannot answer: the trigger
    # scan must activate the prerequisite-subject context.
    source = table1_source + (
        "\nkhoa_luan ::\ntrigger{ * khóa luận * }\n"
        "* khóa luận * ==> [ kl ]\n;;\n"
        "\nquy_che_dao_tao ::\nquy_che_khong_co_gi ==> [ trống ]\n;;\n"
    )
    s = parse_script_set(source)
    from convagent.ast import ScriptSet

    s = ScriptSet(s.contexts, default_context="quy_che_dao_tao")
    state = new_session(s)
    result = process_turn(state, "môn học tiên quyết là gì?")
    assert result.via_trigger
    assert result.matched_context == "mon_hoc_tien_quyet"
    assert result.response_text.startswith("Môn học tiên quyết")
    assert state.current_context == "mon_hoc_tien_quyet"


def test_current_rules_beat_triggers(pack):
    # While in mon_hoc_tien_quyet, "Có ..." must hit the context's yes-rule,
    # not re-trigger some other context.
    state = new_session(pack.script_set)
    process_turn(state, TABLE2_TURNS[0])
    result = process_turn(state, "Có")
    assert not result.via_trigger
    assert result.matched_context == "mon_hoc_dieu_kien"  # via the goto


def test_first_match_wins():
    s = parse_script_set(
        "a ::\n* x * ==> [ specific ]\n* ==> [ general ]\n;;\n")
    state = new_session(s)
    result = process_turn(state, "the x token")
    assert result.matched_rule_ordinal == 0
    assert result.response_text == "specific"
    assert process_turn(state, "nothing special").matched_rule_ordinal == 1


def test_ordering_sensitivity(pack, misordered_pack):
    utterance = "môn học tiên quyết là gì ?"
    ordered = new_session(pack.script_set)
    result = process_turn(ordered, utterance)
    assert ordered.current_context == "mon_hoc_tien_quyet"
    assert result.matched_context == "mon_hoc_tien_quyet"

    misordered = new_session(misordered_pack.script_set)
    result = process_turn(misordered, utterance)
    assert misordered.current_context == "mon_hoc"
    assert result.matched_context == "mon_hoc"
    assert result.transitions == ["mon_hoc"]


def test_trigger_less_context_processes_any_input():
    s = parse_script_set("catch_all ::\n* ==> [ luôn trả lời ]\n;;\n")
    state = new_session(s)
    result = process_turn(state, "bất kỳ điều gì")
    assert result.matched
    assert result.response_text == "luôn trả lời"
    assert s.contexts[0].activatable_by_any


def test_round_robin_response_alternatives():
    s = parse_script_set("a ::\n* ==> [ một | hai | ba ]\n;;\n")
    state = new_session(s)
    texts = [process_turn(state, "x").response_text for _ in range(5)]
    assert texts == ["một", "hai", "ba", "một", "hai"]


def test_goto_chain_cap():
    s = parse_script_set("a ::\n* ==> [ x #goto(a, ^0) ]\n;;\n")
    state = new_session(s, EngineConfig(max_goto_chain=3))
    result = process_turn(state, "đi")
    assert result.goto_chain_exceeded
    # initial match plus one text per executed goto
    assert result.response_text.split() == ["x"] * 4


def test_synthetic_goto_reruns_trigger_scan():
    source = (
        "a ::\n* bắt đầu * ==> [ #goto(b, << kích hoạt c >>) ]\n;;\n"
        "b ::\ntrigger{ * b * }\n* b * ==> [ nb ]\n;;\n"
        "c ::\ntrigger{ * kích hoạt c * }\n* kích hoạt c * ==> [ đáp c ]\n;;\n"
    )
    s = parse_script_set(source)
    state = new_session(s)
    result = process_turn(state, "bắt đầu")
    assert result.response_text == "đáp c"
    assert result.transitions == ["b", "c"]
    assert result.via_trigger
    assert state.current_context == "c"


def test_goto_without_synthetic_only_moves_context(pack):
    state = new_session(pack.script_set)
    process_turn(state, "môn học điều kiện là gì?")
    assert state.current_context == "mon_hoc_dieu_kien"
    result = process_turn(state, "Có")  # [ #goto(khoa_luan) ] — bare goto
    assert result.matched
    assert result.transitions == ["khoa_luan"]
    assert result.response_text == ""
    assert state.current_context == "khoa_luan"


def test_cycle_suggestion_fires_on_third_alternation(pack):
    state = new_session(pack.script_set)
    turns = ["giờ tín chỉ là gì ?", "tín chỉ là gì ?",
             "giờ tín chỉ là gì ?", "tín chỉ là gì ?"]
    results = [process_turn(state, t) for t in turns]
    assert [r.cycle_suggested for r in results] == [False, False, False, True]
    assert results[3].response_text.endswith(state.config.cycle_suggestion)
    pair = ("gio_tin_chi", "tin_chi")
    assert state.cycle_counters[pair] == 3


def test_cycle_counter_resets_on_other_pair(pack):
    state = new_session(pack.script_set)
    process_turn(state, "giờ tín chỉ là gì ?")
    process_turn(state, "tín chỉ là gì ?")
    process_turn(state, "môn học là gì ?")  # breaks the run
    process_turn(state, "tín chỉ là gì ?")
    assert state.cycle_counters[("gio_tin_chi", "tin_chi")] == 0


def test_transition_log_turn_numbers_non_decreasing(pack):
    state = new_session(pack.script_set)
    for utterance in TABLE4_TURNS + ["giờ tín chỉ là gì ?"]:
        process_turn(state, utterance)
    turns = [t for (_, _, t) in state.transition_log]
    assert turns == sorted(turns)


def test_replay_matches_table2_and_table4(pack):
    results2 = replay(pack.script_set, TABLE2_TURNS)
    assert [r.transitions for r in results2] == [
        ["mon_hoc_tien_quyet"], ["mon_hoc_dieu_kien"], []]
    results4 = replay(pack.script_set, TABLE4_TURNS)
    assert results4[0].response_text.startswith("Các loại môn học gồm có")
    assert [r.transitions for r in results4] == [
        ["mon_hoc"], ["mon_hoc_dieu_kien"], []]


def test_replay_empty():
    s = parse_script_set("a ::\n* ==> [ x ]\n;;\n")
    assert replay(s, []) == []


def test_replay_deterministic(pack):
    turns = TABLE2_TURNS + ["giờ tín chỉ là gì ?", "xyzzy"]
    assert replay(pack.script_set, turns) == replay(pack.script_set, turns)
