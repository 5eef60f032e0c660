"""Markov measures, matrix-product measures, and conversions between them.

A measure on b-letter sequences is "linearly representable" when cylinder
values factor as R[w1] * M[w2] * ... * M[wn] * C with nonnegative data
satisfying the two side conditions (sum_i R_i) C = 1 and (sum_i M_i) C = C.
Markov measures are the special case of column-split transition matrices;
conversely every linear representation arises from a Markov measure on
r*b letters pushed through the block map i -> i // r.  Both constructive
directions live here, and all arithmetic is exact rational: the defining
identities are exact and are tested exactly, so no tolerance parameter
exists anywhere in this module.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from . import exactla as la
from .algebra import as_fraction
from .errors import DomainError

__all__ = ["MarkovMeasure", "LinearRepresentation", "markov_cylinder",
           "linrep_cylinder", "markov_to_linear", "push_forward",
           "linear_to_markov", "is_stationary_representation"]


def _frac_vector(v):
    return [as_fraction(x) for x in v]


def _frac_matrix(m):
    return [[as_fraction(x) for x in row] for row in m]


def _check_word(word: Sequence[int], b: int):
    if len(word) == 0:
        raise DomainError("cylinder words must be nonempty", code="EMPTY_WORD")
    for letter in word:
        if not (isinstance(letter, int) and 0 <= letter < b):
            raise DomainError(f"letter {letter!r} outside 0..{b - 1}",
                              code="LETTER_RANGE")


class MarkovMeasure:
    """Initial probability vector p and stochastic transition matrix P.

    Entries are exact rationals; p must be nonnegative with sum 1 and every
    row of P must be a probability vector.  Strict positivity of p (the
    textbook normalization) is deliberately not enforced, because the
    linear-to-Markov construction can produce zero initial entries; use
    is_positive() where strictness matters.
    """

    def __init__(self, p, P):
        self.p = tuple(_frac_vector(p))
        self.P = tuple(tuple(row) for row in _frac_matrix(P))
        b = len(self.p)
        if b == 0 or len(self.P) != b or any(len(row) != b for row in self.P):
            raise DomainError("p and P sizes are inconsistent", code="BAD_MEASURE")
        if any(x < 0 for x in self.p) or sum(self.p) != 1:
            raise DomainError("p must be nonnegative with exact sum 1",
                              code="BAD_MEASURE")
        for row in self.P:
            if any(x < 0 for x in row) or sum(row) != 1:
                raise DomainError("each row of P must be a probability vector",
                                  code="BAD_MEASURE")

    @property
    def b(self) -> int:
        return len(self.p)

    def is_positive(self) -> bool:
        return all(x > 0 for x in self.p)

    def is_stationary(self) -> bool:
        return la.vec_mat(list(self.p), [list(r) for r in self.P]) == list(self.p)

    def to_json(self) -> dict:
        return {"p": [str(x) for x in self.p],
                "P": [[str(x) for x in row] for row in self.P]}

    @classmethod
    def from_json(cls, obj) -> "MarkovMeasure":
        return cls(obj["p"], obj["P"])

    def __repr__(self):
        return f"MarkovMeasure(b={self.b})"


def markov_cylinder(m: MarkovMeasure, word: Sequence[int]) -> Fraction:
    """Exact measure of the cylinder set of the given nonempty word."""
    _check_word(word, m.b)
    value = m.p[word[0]]
    for prev, cur in zip(word, word[1:]):
        if not value:
            return Fraction(0)
        value *= m.P[prev][cur]
    return value


class LinearRepresentation:
    """Row vectors R_0..R_{b-1}, matrices M_0..M_{b-1}, positive column C.

    Validates the two side conditions exactly on construction.  Zero rows
    and columns are allowed (reducible supports); only the side conditions
    and strict positivity of C are enforced.
    """

    def __init__(self, R, M, C):
        self.R = tuple(tuple(_frac_vector(row)) for row in R)
        self.M = tuple(tuple(tuple(r) for r in _frac_matrix(mat)) for mat in M)
        self.C = tuple(_frac_vector(C))
        r = len(self.C)
        if len(self.R) == 0 or len(self.R) != len(self.M):
            raise DomainError("need one R row and one M matrix per letter",
                              code="BAD_REPRESENTATION")
        for row in self.R:
            if len(row) != r or any(x < 0 for x in row):
                raise DomainError("R rows must be nonnegative of dimension r",
                                  code="BAD_REPRESENTATION")
        for mat in self.M:
            if len(mat) != r or any(len(rw) != r for rw in mat):
                raise DomainError("M matrices must be r x r",
                                  code="BAD_REPRESENTATION")
            if any(x < 0 for rw in mat for x in rw):
                raise DomainError("M matrices must be nonnegative",
                                  code="BAD_REPRESENTATION")
        if any(c <= 0 for c in self.C):
            raise DomainError("C must be strictly positive", code="C_NOT_POSITIVE")
        ones = [sum(col) for col in zip(*self.R)]
        if la.dot(ones, list(self.C)) != 1:
            raise DomainError("(sum R_i) C = 1 fails", code="EQ2_VIOLATED")
        msum = [list(r) for r in self.M[0]]
        for mat in self.M[1:]:
            msum = la.mat_add(msum, [list(r) for r in mat])
        if la.mat_vec(msum, list(self.C)) != list(self.C):
            raise DomainError("(sum M_i) C = C fails", code="EQ2_VIOLATED")

    @property
    def b(self) -> int:
        return len(self.R)

    @property
    def r(self) -> int:
        return len(self.C)

    def m_sum(self):
        acc = [list(r) for r in self.M[0]]
        for mat in self.M[1:]:
            acc = la.mat_add(acc, [list(r) for r in mat])
        return acc

    def to_json(self) -> dict:
        return {"R": [[str(x) for x in row] for row in self.R],
                "M": [[[str(x) for x in rw] for rw in mat] for mat in self.M],
                "C": [str(x) for x in self.C]}

    @classmethod
    def from_json(cls, obj) -> "LinearRepresentation":
        return cls(obj["R"], obj["M"], obj["C"])

    def __repr__(self):
        return f"LinearRepresentation(b={self.b}, r={self.r})"


def linrep_cylinder(lr: LinearRepresentation, word: Sequence[int]) -> Fraction:
    """R[w1] M[w2] ... M[wn] C; the first letter selects the row vector."""
    _check_word(word, lr.b)
    vec = list(lr.R[word[0]])
    for letter in word[1:]:
        vec = la.vec_mat(vec, [list(r) for r in lr.M[letter]])
    return la.dot(vec, list(lr.C))


def markov_to_linear(m: MarkovMeasure) -> LinearRepresentation:
    """Column-splitting of a Markov measure into a linear representation.

    Letter i keeps only column i of P (and entry i of p); C is all ones.
    Reproduces every Markov cylinder value exactly.
    """
    b = m.b
    R = []
    M = []
    for i in range(b):
        R.append([m.p[i] if j == i else Fraction(0) for j in range(b)])
        M.append([[m.P[x][i] if j == i else Fraction(0) for j in range(b)]
                  for x in range(b)])
    C = [Fraction(1)] * b
    return LinearRepresentation(R, M, C)


def push_forward(lr: LinearRepresentation, psi: Sequence[int]) -> LinearRepresentation:
    """Image representation under a letter-to-letter map.

    psi[i] is the image of letter i; the output alphabet is 0..max(psi).
    New data are preimage sums, which preserves both side conditions.
    """
    if len(psi) != lr.b:
        raise DomainError("letter map must be total on the alphabet",
                          code="PARTIAL_MAP")
    targets = [int(x) for x in psi]
    if any(t < 0 for t in targets):
        raise DomainError("letter map values must be nonnegative",
                          code="PARTIAL_MAP")
    b_out = max(targets) + 1
    r = lr.r
    R = [[Fraction(0)] * r for _ in range(b_out)]
    M = [la.zeros(r, r) for _ in range(b_out)]
    for i, t in enumerate(targets):
        R[t] = [x + y for x, y in zip(R[t], lr.R[i])]
        M[t] = la.mat_add(M[t], [list(rw) for rw in lr.M[i]])
    return LinearRepresentation(R, M, list(lr.C))


def linear_to_markov(lr: LinearRepresentation):
    """Markov measure on r*b letters plus the block letter map i -> i // r.

    Conjugating by diag(C) makes the all-ones vector fixed; the block
    construction then yields an honest stochastic matrix whose pushforward
    through the block map reproduces every cylinder value of lr exactly.
    Returns (measure, psi) with psi given as a tuple of letter images.
    """
    r, b = lr.r, lr.b
    C = list(lr.C)
    # conjugated data: R'_i = R_i diag(C), M'_i = diag(C)^-1 M_i diag(C)
    Rp = [[lr.R[i][y] * C[y] for y in range(r)] for i in range(b)]
    Mp = [[[lr.M[i][x][y] * C[y] / C[x] for y in range(r)] for x in range(r)]
          for i in range(b)]
    p = []
    for i in range(b):
        p.extend(Rp[i])
    rows = []
    for _block in range(b):
        for x in range(r):
            row = []
            for i in range(b):
                row.extend(Mp[i][x])
            rows.append(row)
    measure = MarkovMeasure(p, rows)
    psi = tuple(i // r for i in range(r * b))
    return measure, psi


def is_stationary_representation(lr: LinearRepresentation) -> bool:
    """Sufficient shift-invariance test: sum M_i irreducible and R_i = R M_i
    for the left fixed row R of sum M_i normalized by R C = 1.

    This mirrors the known sufficient condition; it is not claimed
    necessary.
    """
    msum = lr.m_sum()
    if not la.is_irreducible(msum):
        return False
    try:
        left = la.fixed_vector(la.transpose(msum))
    except DomainError:
        return False
    scale = la.dot(left, list(lr.C))
    if scale == 0:
        return False
    R = [x / scale for x in left]
    for i in range(lr.b):
        if la.vec_mat(R, [list(rw) for rw in lr.M[i]]) != list(lr.R[i]):
            return False
    return True


def load_markov(path) -> MarkovMeasure:
    with open(path, "r", encoding="utf-8") as fh:
        return MarkovMeasure.from_json(json.load(fh))


def load_linrep(path) -> LinearRepresentation:
    with open(path, "r", encoding="utf-8") as fh:
        return LinearRepresentation.from_json(json.load(fh))
