import json
from itertools import product

import pytest

from soficonv import automata as au
from soficonv.errors import DomainError


def contains_forbidden_factor(word: str) -> bool:
    """Direct scan for a factor 1 0^(2i) 1, i >= 0."""
    last_one = None
    for idx, ch in enumerate(word):
        if ch == "1":
            if last_one is not None and (idx - last_one - 1) % 2 == 0:
                return True
            last_one = idx
    return False


def test_accepts_examples():
    g = au.example1_automaton()
    assert not au.accepts_factor(g, "11")
    assert au.accepts_factor(g, "101")
    assert au.accepts_factor(g, "")


def test_unknown_letter():
    g = au.example1_automaton()
    with pytest.raises(DomainError):
        au.accepts_factor(g, "102")


def test_factor_language_matches_scanner_up_to_14():
    g = au.example1_automaton()
    for length in range(15):
        for bits in product("01", repeat=length):
            word = "".join(bits)
            assert au.accepts_factor(g, word) == (not contains_forbidden_factor(word)), word


def test_morphism_image_examples():
    g = au.example2_graph()
    psi = au.example2_letter_map()
    words = au.morphism_image_language(g, psi, 2)
    assert {"".join(w) for w in words} == {"00", "01", "10"}
    assert au.morphism_image_language(g, psi, 0) == {()}
    loop = au.LabeledGraph(["s"], [("s", "x", "s")])
    assert au.morphism_image_language(loop, {"x": "0"}, 3) == {("0", "0", "0")}


def test_morphism_requires_total_map():
    g = au.example2_graph()
    with pytest.raises(DomainError):
        au.morphism_image_language(g, {"a": "0", "b": "0"}, 2)


def test_example_presentations_agree_up_to_12():
    left = au.factor_source(au.example1_automaton())
    right = au.image_source(au.example2_graph(), au.example2_letter_map())
    report = au.languages_equal_up_to(left, right, 12)
    assert report.equal


def test_full_shift_disagrees_with_counterexample():
    left = au.factor_source(au.example1_automaton())
    right = au.full_shift_source("01")
    report = au.languages_equal_up_to(left, right, 2)
    assert not report.equal
    assert report.counterexample == "11"
    assert report.length == 2
    assert report.only_in == "right"


def test_source_equals_itself():
    src = au.factor_source(au.example2_graph())
    assert au.languages_equal_up_to(src, src, 8).equal


def test_json_roundtrip(tmp_path):
    g = au.example2_graph()
    path = tmp_path / "graph.json"
    path.write_text(json.dumps(g.to_json()))
    again = au.load_graph(path)
    assert again.states == g.states
    assert set(again.edges) == set(g.edges)
    assert again.initial == g.initial


def test_dot_export_mentions_every_edge():
    g = au.example1_automaton()
    dot = g.to_dot()
    assert dot.startswith("digraph")
    for src, label, dst in g.edges:
        assert f'"{src}" -> "{dst}" [label="{label}"];' in dot


def test_graph_validation():
    with pytest.raises(DomainError):
        au.LabeledGraph(["x"], [("x", "0", "y")])
    with pytest.raises(DomainError):
        au.LabeledGraph(["x", "x"], [])
    with pytest.raises(DomainError):
        au.LabeledGraph(["x"], [], initial=["z"])
