"""Carry-state machinery for numeration in a real base beta > 1.

Normalizing a digit string over {0..d-1} into a canonical expansion over
{0..ceil(beta)-1} produces algebraic carries q' = beta*q - w + e.  Three
different carry windows occur and they genuinely differ at endpoints, so
the window is an explicit argument everywhere:

* HALF_OPEN_RIGHT_CLOSED, the interval (-1, alpha] with
  alpha = (d-1)/(beta-1): carries of one-sided normalization;
* OPEN, the interval (-1, alpha): states indexing the interval-translate
  measures of the Bernoulli convolution;
* SYMMETRIC, the interval (-alpha, alpha): carries of equality between two
  fractional digit strings, used to count redundant representations.

All state sets are breadth-first closures of {0} with exact window tests
in Q(beta); a configurable cap guards against the (finite but unbounded a
priori) closure growing past desk scale.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Optional, Sequence

from . import exactla as la
from .algebra import FieldDescriptor, FieldElement, as_fraction
from .errors import DomainError, ResourceCapError

__all__ = ["Window", "PisotBase", "Transducer", "QuasiExpansion",
           "carry_states", "build_transducer", "quasi_expansion", "word_set",
           "is_admissible", "count_matrices", "count_redundant",
           "normalize", "NormalizedWord", "measure_matrices", "MeasureSystem",
           "interval_measure", "symbolic_interval_measure", "parse_w_word",
           "block_markov_matrix"]

DEFAULT_STATE_CAP = 10_000
QUASI_ITERATION_CAP = 1_000


class Window(enum.Enum):
    """Which carry interval a closure is taken in."""

    OPEN = "open"                      # (-1, alpha)
    HALF_OPEN_RIGHT_CLOSED = "half_open"   # (-1, alpha]
    SYMMETRIC = "symmetric"            # (-alpha, alpha)

    @classmethod
    def parse(cls, name: str) -> "Window":
        table = {
            "open": cls.OPEN,
            "half_open": cls.HALF_OPEN_RIGHT_CLOSED,
            "half_open_right_closed": cls.HALF_OPEN_RIGHT_CLOSED,
            "symmetric": cls.SYMMETRIC,
        }
        try:
            return table[name.lower()]
        except KeyError:
            raise DomainError(f"unknown window {name!r}", code="BAD_WINDOW") from None


class PisotBase:
    """A base beta > 1 given by a field descriptor, with d digits.

    d must be at least ceil(beta) so that every real in [0, alpha] has an
    expansion.  Whether beta is actually Pisot is a caller assertion; the
    constructions only need exact arithmetic in Q(beta).
    """

    def __init__(self, field: FieldDescriptor, d: int):
        self.field = field
        self.beta = field.beta()
        self.ceil_beta = _ceil(self.beta)
        if not (isinstance(d, int) and d >= self.ceil_beta):
            raise DomainError(f"need d >= ceil(beta) = {self.ceil_beta}",
                              code="BAD_SPEC")
        self.d = d
        self.alpha = (field.from_rational(d - 1)) / (self.beta - 1)
        self._quasi = None

    @classmethod
    def from_minpoly(cls, minpoly, interval, d: int) -> "PisotBase":
        return cls(FieldDescriptor(minpoly, interval), d)

    @classmethod
    def integer(cls, b: int, d: int) -> "PisotBase":
        """Integer base through the common code path (degree-1 field)."""
        return cls(FieldDescriptor([-b, 1], (Fraction(b) - Fraction(1, 2),
                                             Fraction(b) + Fraction(1, 2))), d)

    @classmethod
    def minimal(cls, field: FieldDescriptor) -> "PisotBase":
        """Base with the fewest digits, d = ceil(beta).

        Quasi-expansions and generating words do not depend on d, so this
        is enough for both.
        """
        return cls(field, _ceil(field.beta()))

    def zero(self) -> FieldElement:
        return self.field.zero()

    def in_window(self, x: FieldElement, window: Window) -> bool:
        if window is Window.OPEN:
            return x.compare(-1) > 0 and x.compare(self.alpha) < 0
        if window is Window.HALF_OPEN_RIGHT_CLOSED:
            return x.compare(-1) > 0 and x.compare(self.alpha) <= 0
        return x.compare(-self.alpha) > 0 and x.compare(self.alpha) < 0

    def __repr__(self):
        return (f"PisotBase(minpoly={list(self.field.minpoly)}, d={self.d}, "
                f"ceil_beta={self.ceil_beta})")


def _ceil(x: FieldElement) -> int:
    n = x.as_integer()
    if n is not None:
        return n
    m = 0
    while x.compare(m) > 0:
        m += 1
    return m


def _floor_in_digit_range(x: FieldElement, limit: int) -> int:
    """floor(x) for 0 <= x < limit, by exact comparisons."""
    for m in range(limit, -1, -1):
        if x.compare(m) >= 0:
            return m
    raise DomainError("value is negative; no digit floor", code="LETTER_RANGE")


def carry_states(base: PisotBase, window: Window,
                 cap: int = DEFAULT_STATE_CAP):
    """Closure of {0} under q -> beta*q - w + e restricted to the window.

    w ranges over the input digits 0..d-1 and e over the output digits
    0..ceil(beta)-1.  States are returned in discovery order, 0 first; the
    order is deterministic (breadth-first, w-major then e).
    """
    zero = base.zero()
    states = [zero]
    seen = {zero}
    queue = [zero]
    while queue:
        q = queue.pop(0)
        bq = base.beta * q
        for w in range(base.d):
            for e in range(base.ceil_beta):
                nxt = bq - w + e
                if nxt in seen:
                    continue
                if base.in_window(nxt, window):
                    if len(states) >= cap:
                        raise ResourceCapError(
                            f"carry-state closure exceeded the cap of {cap}")
                    seen.add(nxt)
                    states.append(nxt)
                    queue.append(nxt)
    return states


class Transducer:
    """Carry states plus every admissible move q --w/e--> beta*q - w + e."""

    def __init__(self, base: PisotBase, window: Window, states, edges):
        self.base = base
        self.window = window
        self.states = tuple(states)
        self.edges = tuple(edges)   # (from_index, w, e, to_index)

    def to_json(self) -> dict:
        return {
            "window": self.window.value,
            "states": [{"coeffs": [str(c) for c in s.coeffs],
                        "approx": s.to_float()} for s in self.states],
            "edges": [list(e) for e in self.edges],
        }

    def to_dot(self, name: str = "transducer", precision: int = 6) -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for i, s in enumerate(self.states):
            lines.append(f'  {i} [label="{s.to_float():.{precision}g}"];')
        for src, w, e, dst in self.edges:
            lines.append(f'  {src} -> {dst} [label="{w}/{e}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (f"Transducer({len(self.states)} states, {len(self.edges)} edges, "
                f"window={self.window.value})")


def build_transducer(base: PisotBase, window: Window,
                     cap: int = DEFAULT_STATE_CAP) -> Transducer:
    states = carry_states(base, window, cap)
    index = {s: i for i, s in enumerate(states)}
    edges = []
    for i, q in enumerate(states):
        bq = base.beta * q
        for w in range(base.d):
            for e in range(base.ceil_beta):
                nxt = bq - w + e
                j = index.get(nxt)
                if j is not None:
                    edges.append((i, w, e, j))
    return Transducer(base, window, states, edges)


# ---------------------------------------------------------------------------
# quasi-expansion of 1 and admissibility


class QuasiExpansion:
    """Purely periodic digit word whose periodic extension sums to 1."""

    def __init__(self, digits: Sequence[int]):
        self.digits = tuple(int(x) for x in digits)
        if not self.digits or self.digits[-1] < 0:
            raise DomainError("empty quasi-expansion", code="BAD_SPEC")

    @property
    def period(self) -> int:
        return len(self.digits)

    def digit(self, i: int) -> int:
        """Digit at 1-based position i of the periodic extension."""
        return self.digits[(i - 1) % self.period]

    def __repr__(self):
        return f"QuasiExpansion({''.join(map(str, self.digits))!r})"


def quasi_expansion(base: PisotBase) -> QuasiExpansion:
    """Greedy expansion of 1 folded into its purely periodic form.

    When the greedy expansion of 1 terminates as t_1 ... t_m (remainder
    exactly zero), the quasi-expansion is (t_1 ... t_{m-1} (t_m - 1))
    repeated, with period m; an integer base yields the single digit b-1.
    A remainder orbit that revisits a nonzero value proves the expansion
    never terminates and raises NOT_FINITE_RENYI.
    """
    if base._quasi is not None:
        return base._quasi
    digits = []
    r = base.field.one()
    seen = {r}
    for _ in range(QUASI_ITERATION_CAP):
        x = base.beta * r
        t = _floor_in_digit_range(x, base.ceil_beta)
        digits.append(t)
        r = x - t
        if r.is_zero():
            digits[-1] -= 1
            result = QuasiExpansion(digits)
            _check_quasi(base, result)
            base._quasi = result
            return result
        if r in seen:
            raise DomainError(
                "the expansion of 1 does not terminate (remainder cycle)",
                code="NOT_FINITE_RENYI")
        seen.add(r)
    raise DomainError("the expansion of 1 did not terminate within the "
                      f"iteration cap {QUASI_ITERATION_CAP}",
                      code="NOT_FINITE_RENYI")


def _check_quasi(base: PisotBase, qe: QuasiExpansion):
    """Exact self-consistency: geometric sum is 1 and shifts stay below."""
    t = qe.period
    acc = base.zero()
    power = base.field.one()
    for dig in reversed(qe.digits):
        acc = acc + power * dig
        power = power * base.beta
    # sum over one period times beta^-T geometric series: acc = beta^T - 1
    if acc != power - 1:
        raise DomainError("quasi-expansion failed the geometric identity",
                          code="BAD_SPEC")
    word = qe.digits
    for shift in range(1, t):
        rotated = word[shift:] + word[:shift]
        if rotated > word:
            raise DomainError("quasi-expansion is not shift-maximal",
                              code="BAD_SPEC")


def word_set(base: PisotBase):
    """Prefix-free generating words: the full period plus every proper
    prefix completed by a strictly smaller digit."""
    qe = quasi_expansion(base)
    words = [qe.digits]
    for i in range(qe.period):
        for smaller in range(qe.digits[i]):
            words.append(qe.digits[:i] + (smaller,))
    for w in words:
        for other in words:
            if w is not other and len(w) < len(other) and other[:len(w)] == w:
                raise DomainError("generating word set is not prefix-free",
                                  code="BAD_SPEC")
    return sorted(words)


def is_admissible(word: Sequence[int], base: PisotBase) -> bool:
    """Every suffix of the zero-padded word sits strictly below the
    periodic quasi-expansion in lexicographic order."""
    qe = quasi_expansion(base)
    w = [int(x) for x in word]
    horizon = len(w) + 2 * qe.period + 2
    for start in range(len(w)):
        verdict = None
        for offset in range(horizon):
            mine = w[start + offset] if start + offset < len(w) else 0
            theirs = qe.digit(offset + 1)
            if mine != theirs:
                verdict = mine < theirs
                break
        if verdict is None:
            # zero-padded tail cannot match a nonzero periodic word forever
            raise DomainError("admissibility comparison did not resolve",
                              code="BAD_SPEC")
        if not verdict:
            return False
    return True


# ---------------------------------------------------------------------------
# counting redundant representations


def count_matrices(base: PisotBase, cap: int = DEFAULT_STATE_CAP):
    """0/1 adjacency matrices N_l over the symmetric-window states.

    N_l[i][j] = 1 exactly when beta*s_i - s_j + l is an integer digit in
    {0..d-1}; l ranges over all of 0..d-1.  Returns (states, matrices).
    """
    states = carry_states(base, Window.SYMMETRIC, cap)
    n = len(states)
    mats = []
    for ell in range(base.d):
        mat = [[0] * n for _ in range(n)]
        for i, si in enumerate(states):
            bsi = base.beta * si
            for j, sj in enumerate(states):
                w = (bsi - sj + ell).as_integer()
                if w is not None and 0 <= w < base.d:
                    mat[i][j] = 1
        mats.append(mat)
    return states, mats


def count_redundant(word: Sequence[int], base: PisotBase,
                    cap: int = DEFAULT_STATE_CAP) -> int:
    """Number of digit strings over {0..d-1} of the same length whose value
    equals the given word's value; the (0,0) entry of the matrix product."""
    _states, mats = count_matrices(base, cap)
    n = len(mats[0]) if mats else 0
    vec = [0] * n
    vec[0] = 1
    for ell in word:
        if not (isinstance(ell, int) and 0 <= ell < base.d):
            raise DomainError(f"digit {ell!r} outside 0..{base.d - 1}",
                              code="LETTER_RANGE")
        mat = mats[ell]
        vec = [sum(vec[i] * mat[i][j] for i in range(n) if vec[i])
               for j in range(n)]
    return vec[0]


# ---------------------------------------------------------------------------
# normalization of finite words


class NormalizedWord:
    """Admissible expansion of a value: digits plus integer-part length.

    digits[0] sits at weight beta^(int_len - 1); positions from int_len on
    are fractional.  int_len = 0 means a purely fractional expansion.
    """

    def __init__(self, digits: Sequence[int], int_len: int):
        self.digits = tuple(int(x) for x in digits)
        self.int_len = int(int_len)

    def __eq__(self, other):
        return (isinstance(other, NormalizedWord)
                and self.digits == other.digits and self.int_len == other.int_len)

    def __repr__(self):
        ds = "".join(map(str, self.digits))
        return f"NormalizedWord({ds[:self.int_len]}.{ds[self.int_len:]})"


def _word_value(base: PisotBase, word, int_len: int = 0) -> FieldElement:
    """Exact value sum_i digits[i] * beta^(int_len - 1 - i)."""
    acc = base.zero()
    for dig in word:
        acc = acc * base.beta + dig
    if int_len < len(word):
        acc = acc * (base.beta.inverse() ** (len(word) - int_len))
    return acc


def normalize(word: Sequence[int], base: PisotBase) -> NormalizedWord:
    """Value-preserving admissible expansion of a fractional digit string.

    The input digits w_1 ... w_h over {0..d-1} are read at weights
    beta^-1 ... beta^-h.  There is no literal left-to-right transducer for
    this job in a non-integer base, so the expansion is computed by the
    exact greedy algorithm and then verified: the output must pass the
    admissibility test, its value must equal the input value, and the
    induced carry path must stay inside the right-closed window and return
    to zero.  Inputs whose greedy expansion never terminates (possible when
    the base lacks the finiteness property) raise EXPANSION_NOT_FINITE.
    """
    ds = [int(x) for x in word]
    for w in ds:
        if not 0 <= w < base.d:
            raise DomainError(f"digit {w!r} outside 0..{base.d - 1}",
                              code="LETTER_RANGE")
    h = len(ds)
    value = _word_value(base, ds)
    if value.is_zero():
        return NormalizedWord([0] * max(h, 1), 0)
    quasi_expansion(base)   # admissibility must be available; may raise

    # shift into [0, 1): find the number of integer-part positions
    int_len = 0
    power = base.field.one()
    while value.compare(power) >= 0:
        power = power * base.beta
        int_len += 1
    r = value / power if int_len else value

    digits = []
    seen = {}
    min_len = int_len + h
    while True:
        if r.is_zero():
            if len(digits) < min_len:
                digits.extend([0] * (min_len - len(digits)))
            break
        if len(digits) >= min_len and r in seen:
            raise DomainError("greedy expansion of the value does not terminate",
                              code="EXPANSION_NOT_FINITE")
        if len(digits) > QUASI_ITERATION_CAP + min_len:
            raise DomainError("greedy expansion exceeded the iteration cap",
                              code="EXPANSION_NOT_FINITE")
        seen[r] = True
        x = base.beta * r
        t = _floor_in_digit_range(x, base.ceil_beta)
        digits.append(t)
        r = x - t

    result = NormalizedWord(digits, int_len)
    _verify_normalization(base, ds, result)
    return result


def _verify_normalization(base: PisotBase, input_digits, result: NormalizedWord):
    out_value = _word_value(base, result.digits, result.int_len)
    in_value = _word_value(base, input_digits)
    if out_value != in_value:
        raise DomainError("normalization changed the value", code="BAD_SPEC")
    if not is_admissible(result.digits, base):
        raise DomainError("normalization produced an inadmissible word",
                          code="BAD_SPEC")
    # reconstruct the carry path: inputs at positions 1..h, outputs at
    # positions 1-int_len ...; carries must stay in (-1, alpha] and end at 0
    start = 1 - result.int_len
    end = max(len(input_digits), len(result.digits) - result.int_len)
    q = base.zero()
    for pos in range(start, end + 1):
        w_in = input_digits[pos - 1] if 1 <= pos <= len(input_digits) else 0
        idx = pos - start
        e_out = result.digits[idx] if 0 <= idx < len(result.digits) else 0
        q = base.beta * q - w_in + e_out
        if not (q.compare(-1) > 0 and q.compare(base.alpha) <= 0):
            raise DomainError("carry left the normalization window",
                              code="BAD_SPEC")
    if not q.is_zero():
        raise DomainError("carry path did not return to zero", code="BAD_SPEC")


# ---------------------------------------------------------------------------
# the measure matrices


class MeasureSystem:
    """Matrices and fixed vector for interval translates of the convolution.

    states are the open-window carries; mats[l] has entry (i, j) equal to
    p[beta*s_i - s_j + l] when that index is an integer digit, else 0.
    C solves (sum over generating words w of M_w) C = C.  When every
    integer 0..ceil(alpha)-1 appears among the states, C is scaled so the
    entries at those integer states sum to 1 (the interval partition of the
    support); otherwise C is only determined up to scale and ``normalized``
    is False (C is then scaled so its first entry is 1).
    """

    def __init__(self, base, states, mats, C, normalized, words):
        self.base = base
        self.states = tuple(states)
        self.mats = mats
        self.C = tuple(C)
        self.normalized = normalized
        self.words = tuple(words)

    def word_matrix(self, word):
        n = len(self.states)
        acc = la.identity(n)
        for ell in word:
            acc = la.mat_mul(acc, self.mats[ell])
        return acc

    def to_json(self) -> dict:
        return {
            "states": [{"coeffs": [str(c) for c in s.coeffs],
                        "approx": s.to_float()} for s in self.states],
            "matrices": [[[str(x) for x in row] for row in m] for m in self.mats],
            "C": [str(x) for x in self.C],
            "normalized": self.normalized,
            "words": ["".join(map(str, w)) for w in self.words],
        }


def measure_matrices(base: PisotBase, p: Sequence,
                     cap: int = DEFAULT_STATE_CAP) -> MeasureSystem:
    probs = [as_fraction(x) for x in p]
    if len(probs) != base.d or any(x <= 0 for x in probs) or sum(probs) != 1:
        raise DomainError("p must be d positive rationals with exact sum 1",
                          code="BAD_SPEC")
    words = word_set(base)
    states = carry_states(base, Window.OPEN, cap)
    n = len(states)
    mats = []
    for ell in range(base.ceil_beta):
        mat = la.zeros(n, n)
        for i, si in enumerate(states):
            bsi = base.beta * si
            for j, sj in enumerate(states):
                w = (bsi - sj + ell).as_integer()
                if w is not None and 0 <= w < base.d:
                    mat[i][j] = probs[w]
        mats.append(mat)

    system = MeasureSystem(base, states, mats, [Fraction(1)] * n, False, words)
    wsum = la.zeros(n, n)
    for w in words:
        wsum = la.mat_add(wsum, system.word_matrix(w))
    if not la.is_irreducible(wsum):
        raise DomainError("generating-word matrix sum is reducible",
                          code="REDUCIBLE_MATRIX")
    c = la.fixed_vector(wsum)
    if all(x <= 0 for x in c):
        c = [-x for x in c]
    if any(x <= 0 for x in c):
        raise DomainError("fixed vector is not strictly positive",
                          code="C_NOT_POSITIVE")

    ceil_alpha = _ceil(base.alpha)
    integer_index = {}
    for i, s in enumerate(states):
        v = s.as_integer()
        if v is not None and 0 <= v < ceil_alpha:
            integer_index[v] = i
    if len(integer_index) == ceil_alpha:
        total = sum(c[i] for i in integer_index.values())
        c = [x / total for x in c]
        normalized = True
    else:
        c = [x / c[0] for x in c]
        normalized = False
    return MeasureSystem(base, states, mats, c, normalized, words)


def parse_w_word(word: Sequence[int], words) -> list:
    """Unique factorization of a digit word into generating words.

    The generating set is prefix-free, so a greedy scan either succeeds or
    proves the word is not a concatenation.
    """
    w = tuple(int(x) for x in word)
    table = sorted(words, key=len, reverse=True)
    out = []
    pos = 0
    while pos < len(w):
        for cand in table:
            if w[pos:pos + len(cand)] == cand:
                out.append(cand)
                pos += len(cand)
                break
        else:
            raise DomainError("word is not a concatenation of generating words",
                              code="WORD_NOT_IN_W")
    return out


def interval_measure(system: MeasureSystem, i: int, word: Sequence[int]) -> Fraction:
    """Measure of state_i + I(word) for a generating-word concatenation.

    Requires a normalized system (absolute scale known).
    """
    if not system.normalized:
        raise DomainError("measure is only known up to scale for this base",
                          code="UP_TO_SCALE")
    return _measure_raw(system, i, word)


def _measure_raw(system: MeasureSystem, i: int, word) -> Fraction:
    n = len(system.states)
    if not (isinstance(i, int) and 0 <= i < n):
        raise DomainError(f"state index {i} out of range", code="LETTER_RANGE")
    parse_w_word(word, system.words)
    vec = list(system.C)
    for ell in reversed([int(x) for x in word]):
        vec = la.mat_vec(system.mats[ell], vec)
    return vec[i]


def symbolic_interval_measure(system: MeasureSystem, i: int,
                              word: Sequence[int]) -> Fraction:
    """Scale-free cylinder value: measure(state_i + I(word)) / C_i.

    Well-defined even when the absolute scale is unknown.
    """
    return _measure_raw(system, i, word) / system.C[i]


def block_markov_matrix(system: MeasureSystem):
    """Block transition matrix over generating words, rows repeated.

    Row-block w, column-block w' holds the product matrix M_{w'}; every
    row-block is identical.  Returned as (matrix, block_words).
    """
    word_mats = [system.word_matrix(w) for w in system.words]
    n = len(system.states)
    rows = []
    for _w in system.words:
        for x in range(n):
            row = []
            for wm in word_mats:
                row.extend(wm[x])
            rows.append(row)
    return rows, list(system.words)
