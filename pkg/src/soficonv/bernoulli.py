"""Bernoulli convolutions in an integer base b with d >= b digits.

The distribution of sum_k w_k b^-k with i.i.d. digits w_k in {0..d-1} of
law p concentrates on [0, (d-1)/(b-1)].  Its restriction to translated
b-adic intervals is governed by a finite family of (a+1) x (a+1) matrices,
a + 1 = ceil((d-1)/(b-1)): entry (q, q') of M_j is p[j + b*q - q'] with
out-of-range indices read as zero.  The same matrices count base-b
representations of integers with digits in {0..d-1} when p is uniform, and
transpose into the little-endian carry transducer that normalizes digit
strings, so measure values, representation counts and normalization all
live here together.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from . import exactla as la
from .algebra import as_fraction
from .errors import DomainError
from .sofic import MarkovMeasure

__all__ = ["BernoulliSpec", "build_matrices", "stationary_vector",
           "interval_measure", "count_representations", "count_k",
           "matrix_count_table", "normalize_digits", "symbolic_markov_export"]


class BernoulliSpec:
    """Base b >= 2, digit count d >= b, and a positive probability vector."""

    def __init__(self, b: int, d: int, p: Optional[Sequence] = None):
        if not (isinstance(b, int) and isinstance(d, int) and 2 <= b <= d):
            raise DomainError("need integers d >= b >= 2", code="BAD_SPEC")
        if p is None:
            p = [Fraction(1, d)] * d
        probs = [as_fraction(x) for x in p]
        if len(probs) != d or any(x <= 0 for x in probs) or sum(probs) != 1:
            raise DomainError("p must be d positive rationals with exact sum 1",
                              code="BAD_SPEC")
        self.b = b
        self.d = d
        self.p = tuple(probs)
        # largest size keeping the matrix sum irreducible, smallest making
        # its transpose stochastic
        self.a = -((d - 1) // -(b - 1)) - 1
        self._count_cache = {0: 1}
        self._count_k_cache = {}
        self._stationary = None

    @classmethod
    def uniform(cls, b: int, d: int) -> "BernoulliSpec":
        return cls(b, d)

    @property
    def is_uniform(self) -> bool:
        return all(x == self.p[0] for x in self.p)

    def digit_prob(self, i: int) -> Fraction:
        return self.p[i] if 0 <= i < self.d else Fraction(0)

    def __repr__(self):
        return f"BernoulliSpec(b={self.b}, d={self.d}, a={self.a})"


def build_matrices(spec: BernoulliSpec):
    """The b square matrices of size a+1 with entries p[j + b*q - q']."""
    n = spec.a + 1
    return [[[spec.digit_prob(j + spec.b * q - qp) for qp in range(n)]
             for q in range(n)]
            for j in range(spec.b)]


def _matrix_sum(mats):
    acc = [list(r) for r in mats[0]]
    for m in mats[1:]:
        acc = la.mat_add(acc, m)
    return acc


def stationary_vector(spec: BernoulliSpec):
    """Unique positive column C with (sum_j M_j) C = C and entries summing to 1.

    Solved as an exact rational kernel problem, never by power iteration,
    so downstream identities can be tested with equality.  Entry q equals
    the measure of [q, q+1).
    """
    if spec._stationary is not None:
        return list(spec._stationary)
    msum = _matrix_sum(build_matrices(spec))
    if not la.is_irreducible(msum):
        raise DomainError("matrix sum is reducible; the size rule was violated",
                          code="REDUCIBLE_MATRIX")
    v = la.fixed_vector(msum)
    total = sum(v)
    if total == 0:
        raise DomainError("degenerate fixed vector", code="KERNEL_DIMENSION")
    c = [x / total for x in v]
    if any(x <= 0 for x in c):
        raise DomainError("fixed vector is not strictly positive",
                          code="C_NOT_POSITIVE")
    spec._stationary = tuple(c)
    return c


def interval_measure(spec: BernoulliSpec, q: int, digits: Sequence[int]) -> Fraction:
    """Measure of q + I(digits), the translated b-adic interval.

    digits are base-b digits read left to right; the empty word gives the
    measure of [q, q+1).
    """
    if not (isinstance(q, int) and 0 <= q <= spec.a):
        raise DomainError(f"translation q must lie in 0..{spec.a}",
                          code="LETTER_RANGE")
    for e in digits:
        if not (isinstance(e, int) and 0 <= e < spec.b):
            raise DomainError(f"digit {e!r} outside 0..{spec.b - 1}",
                              code="LETTER_RANGE")
    mats = build_matrices(spec)
    vec = stationary_vector(spec)
    for e in reversed(list(digits)):
        vec = la.mat_vec(mats[e], vec)
    return vec[q]


def count_representations(n: int, spec: BernoulliSpec) -> int:
    """Number of base-b digit strings over {0..d-1} evaluating to n.

    Dynamic programming over the carry recursion: every representation of n
    ends in a digit congruent to n mod b.  Equals the length-k count as
    soon as b^k > n.
    """
    if not (isinstance(n, int) and n >= 0):
        raise DomainError("n must be a nonnegative integer", code="LETTER_RANGE")
    cache = spec._count_cache
    b, d = spec.b, spec.d

    def rec(m: int) -> int:
        got = cache.get(m)
        if got is not None:
            return got
        total = 0
        w = m % b
        while w < d:
            if w <= m:
                total += rec((m - w) // b)
            w += b
        cache[m] = total
        return total

    return rec(n)


def count_k(n: int, k: int, spec: BernoulliSpec) -> int:
    """Number of length-k digit strings over {0..d-1} evaluating to n."""
    if not (isinstance(k, int) and k >= 0):
        raise DomainError("k must be a nonnegative integer", code="LETTER_RANGE")
    cache = spec._count_k_cache
    b, d = spec.b, spec.d

    def rec(m: int, j: int) -> int:
        if m < 0:
            return 0
        if j == 0:
            return 1 if m == 0 else 0
        got = cache.get((m, j))
        if got is not None:
            return got
        total = 0
        w = m % b
        while w < d:
            if w <= m:
                total += rec((m - w) // b, j - 1)
            w += b
        cache[(m, j)] = total
        return total

    return rec(n, k)


def matrix_count_table(spec: BernoulliSpec, word: Sequence[int]):
    """d^k * M[e1] ... M[ek] as an integer matrix (uniform p only).

    Entry (q, q') equals the number of length-k representations of
    n + q*b^k - q' where n is the value of the word read as base-b digits.
    """
    if not spec.is_uniform:
        raise DomainError("the counting table requires uniform digit probabilities",
                          code="NON_UNIFORM")
    n = spec.a + 1
    acc = [[int(i == j) for j in range(n)] for i in range(n)]
    for e in word:
        if not (isinstance(e, int) and 0 <= e < spec.b):
            raise DomainError(f"digit {e!r} outside 0..{spec.b - 1}",
                              code="LETTER_RANGE")
        step = [[1 if 0 <= e + spec.b * q - qp < spec.d else 0
                 for qp in range(n)] for q in range(n)]
        acc = [[sum(acc[i][t] * step[t][j] for t in range(n)) for j in range(n)]
               for i in range(n)]
    return acc


def normalize_digits(digits, spec: BernoulliSpec):
    """Canonical base-b form of a digit string over {0..d-1}.

    Input digits are most-significant-first.  The little-endian carry run
    q, w -> (q + w) div b emitting (q + w) mod b never leaves {0..a}; the
    leftover carry is flushed at the end.  Value is preserved exactly and
    the leading output digit is nonzero (a single zero for zero input).
    """
    ds = list(digits)
    for w in ds:
        if not (isinstance(w, int) and 0 <= w < spec.d):
            raise DomainError(f"digit {w!r} outside 0..{spec.d - 1}",
                              code="LETTER_RANGE")
    carry = 0
    out = []
    for w in reversed(ds):
        carry, rem = divmod(carry + w, spec.b)
        out.append(rem)
    while carry:
        carry, rem = divmod(carry, spec.b)
        out.append(rem)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return list(reversed(out))


def symbolic_markov_export(spec: BernoulliSpec):
    """Markov chain on (a+1)*b letters whose block image is the digit measure.

    The transition matrix repeats the row of transposed blocks
    [tM_0 ... tM_{b-1}]; the initial vector is the concatenation of the
    columns M_j C (transposed), which sums to 1 without any extra
    normalization.  Pushing the chain through i -> i // (a+1) gives the
    reversed-word interval-sum measure: the chain cylinder of e1...ek
    equals sum_q measure(q + I(ek...e1)).

    Returns (measure, psi).
    """
    mats = build_matrices(spec)
    c = stationary_vector(spec)
    n = spec.a + 1
    p = []
    for j in range(spec.b):
        p.extend(la.mat_vec(mats[j], c))
    rows = []
    for _block in range(spec.b):
        for x in range(n):
            row = []
            for j in range(spec.b):
                row.extend(mats[j][y][x] for y in range(n))
            rows.append(row)
    measure = MarkovMeasure(p, rows)
    psi = tuple(i // n for i in range(n * spec.b))
    return measure, psi
