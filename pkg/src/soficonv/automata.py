"""Finite labeled graphs for sofic subshifts and their factor languages.

A subshift is represented by a labeled graph read with "start anywhere
among the initial states" semantics; taking initial = all states gives the
factor language of the subshift.  Languages are only ever compared up to a
finite length: a sofic language is determined by its factor sets, and desk
scale fixes the horizon.

Two fixture graphs ship with the module: a three-state automaton whose
factor language is exactly the binary words with no factor 1 0^(2i) 1
(i >= 0), and the three-vertex Markov cover of the same subshift whose
vertex letters a, b, c map onto {0, 1} by a, b -> 0 and c -> 1.  The
fixtures are reconstructed from the defining forbidden-factor description
and validated against a direct scanner in the test suite.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Optional

from .errors import DomainError

Word = tuple

__all__ = [
    "LabeledGraph", "accepts_factor", "morphism_image_language",
    "languages_equal_up_to", "factor_source", "image_source",
    "full_shift_source", "EqualityReport",
    "example1_automaton", "example2_graph", "example2_letter_map",
]


class LabeledGraph:
    """States, labeled edges, and a set of admissible start states."""

    def __init__(self, states: Iterable, edges: Iterable, initial: Optional[Iterable] = None):
        self.states = tuple(states)
        state_set = set(self.states)
        if len(state_set) != len(self.states):
            raise DomainError("duplicate state ids", code="BAD_GRAPH")
        self.edges = tuple((src, str(label), dst) for src, label, dst in edges)
        for src, _label, dst in self.edges:
            if src not in state_set or dst not in state_set:
                raise DomainError(f"edge endpoint not declared: {src!r} -> {dst!r}",
                                  code="BAD_GRAPH")
        self.initial = frozenset(self.states if initial is None else initial)
        if not self.initial <= state_set:
            raise DomainError("initial states must be declared states", code="BAD_GRAPH")
        self._out = defaultdict(list)
        for src, label, dst in self.edges:
            self._out[src].append((label, dst))

    @property
    def alphabet(self) -> frozenset:
        return frozenset(label for _, label, _ in self.edges)

    def step(self, current: set, letter: str) -> set:
        nxt = set()
        for s in current:
            for label, dst in self._out[s]:
                if label == letter:
                    nxt.add(dst)
        return nxt

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"states": list(self.states),
                "edges": [[s, l, t] for s, l, t in self.edges],
                "initial": sorted(self.initial, key=str)}

    @classmethod
    def from_json(cls, obj: dict) -> "LabeledGraph":
        return cls(obj["states"], obj["edges"], obj.get("initial"))

    def to_dot(self, name: str = "subshift") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for s in self.states:
            shape = "doublecircle" if s in self.initial else "circle"
            lines.append(f'  "{s}" [shape={shape}];')
        for src, label, dst in self.edges:
            lines.append(f'  "{src}" -> "{dst}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (f"LabeledGraph({len(self.states)} states, "
                f"{len(self.edges)} edges, alphabet={sorted(self.alphabet)})")


def _as_word(word) -> Word:
    if isinstance(word, str):
        return tuple(word)
    return tuple(str(x) for x in word)


def accepts_factor(g: LabeledGraph, word) -> bool:
    """True iff some path starting in an initial state carries the word."""
    w = _as_word(word)
    alphabet = g.alphabet
    for letter in w:
        if letter not in alphabet:
            raise DomainError(f"letter {letter!r} not in the graph alphabet",
                              code="LETTER_RANGE")
    current = set(g.initial)
    for letter in w:
        current = g.step(current, letter)
        if not current:
            return False
    return True


def _label_words(g: LabeledGraph, length: int, rename: Callable[[str], str]) -> set:
    """All words rename(l1)...rename(lL) over length-L paths from initial."""
    frontier = {(): frozenset(g.initial)}
    for _ in range(length):
        nxt = defaultdict(set)
        for word, states in frontier.items():
            for s in states:
                for label, dst in g._out[s]:
                    nxt[word + (rename(label),)].add(dst)
        frontier = {w: frozenset(ss) for w, ss in nxt.items()}
    return set(frontier)


def morphism_image_language(g: LabeledGraph, psi: dict, length: int) -> set:
    """Image of the length-L path-label words under a letter-to-letter map."""
    missing = g.alphabet - set(psi)
    if missing:
        raise DomainError(f"letter map is not total; missing {sorted(missing)}",
                          code="PARTIAL_MAP")
    table = {k: str(v) for k, v in psi.items()}
    return _label_words(g, length, table.__getitem__)


def factor_source(g: LabeledGraph) -> Callable[[int], set]:
    return lambda length: _label_words(g, length, lambda x: x)


def image_source(g: LabeledGraph, psi: dict) -> Callable[[int], set]:
    return lambda length: morphism_image_language(g, psi, length)


def full_shift_source(letters: Iterable) -> Callable[[int], set]:
    letters = tuple(str(x) for x in letters)
    return lambda length: set(product(letters, repeat=length))


@dataclass(frozen=True)
class EqualityReport:
    equal: bool
    length: Optional[int] = None
    counterexample: Optional[str] = None
    only_in: Optional[str] = None   # "left" or "right"

    def __bool__(self):
        return self.equal


def languages_equal_up_to(left, right, length: int) -> EqualityReport:
    """Compare two word-set sources at every length <= the bound.

    A source is a callable length -> set of words; graphs can be wrapped
    with factor_source / image_source.  On mismatch the report carries the
    smallest-length, lexicographically smallest separating word.
    """
    for ell in range(length + 1):
        a, b = left(ell), right(ell)
        if a != b:
            only_left = sorted(a - b)
            only_right = sorted(b - a)
            if only_left and (not only_right or only_left[0] <= only_right[0]):
                return EqualityReport(False, ell, "".join(only_left[0]), "left")
            return EqualityReport(False, ell, "".join(only_right[0]), "right")
    return EqualityReport(True)


# ---------------------------------------------------------------------------
# fixtures


def example1_automaton() -> LabeledGraph:
    """Automaton for binary sequences avoiding the factors 1 0^(2i) 1.

    States track the parity of the zero run since the last 1: "free" has
    seen no 1, "even" means a 1 now would close a forbidden factor, "odd"
    permits it.  All states are initial (factor semantics).
    """
    edges = [
        ("free", "0", "free"),
        ("free", "1", "even"),
        ("even", "0", "odd"),
        ("odd", "0", "even"),
        ("odd", "1", "even"),
    ]
    return LabeledGraph(["free", "even", "odd"], edges)


def example2_graph() -> LabeledGraph:
    """Markov cover of the same subshift on vertex letters a, b, c.

    Edges are labeled by their source vertex, so length-L path labels are
    exactly the length-L vertex words of the cover.  Composing with the
    letter map a, b -> 0 and c -> 1 yields the subshift of
    example1_automaton.
    """
    edges = [
        ("a", "a", "b"),
        ("b", "b", "a"),
        ("b", "b", "c"),
        ("c", "c", "b"),
    ]
    return LabeledGraph(["a", "b", "c"], edges)


def example2_letter_map() -> dict:
    return {"a": "0", "b": "0", "c": "1"}


def load_graph(path) -> LabeledGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return LabeledGraph.from_json(json.load(fh))
