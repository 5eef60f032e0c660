import math
import random
from fractions import Fraction as F
from itertools import product

import pytest

from soficonv import bernoulli as bn
from soficonv import sofic
from soficonv.errors import DomainError

U23 = bn.BernoulliSpec.uniform(2, 3)


def brute_force_count_k(n, k, spec):
    """Literal enumeration of digit strings; the test-side oracle."""
    total = 0
    for w in product(range(spec.d), repeat=k):
        if sum(d * spec.b ** i for i, d in enumerate(w)) == n:
            total += 1
    return total


def test_spec_validation():
    with pytest.raises(DomainError):
        bn.BernoulliSpec(2, 1)
    with pytest.raises(DomainError):
        bn.BernoulliSpec(2, 3, [F(1, 2), F(1, 2), F(1, 2)])
    assert bn.BernoulliSpec.uniform(2, 5).a == 3
    assert bn.BernoulliSpec.uniform(3, 4).a == 1
    assert bn.BernoulliSpec.uniform(3, 3).a == 0


def test_matrices_2_3_uniform():
    m0, m1 = bn.build_matrices(U23)
    third = F(1, 3)
    assert m0 == [[third, 0], [third, third]]
    assert m1 == [[third, third], [0, third]]


def test_matrices_d_equals_b_are_scalars():
    spec = bn.BernoulliSpec(3, 3, [F(1, 6), F(1, 3), F(1, 2)])
    mats = bn.build_matrices(spec)
    assert mats == [[[F(1, 6)]], [[F(1, 3)]], [[F(1, 2)]]]
    assert bn.stationary_vector(spec) == [F(1)]


def test_transpose_stochastic_2_5():
    spec = bn.BernoulliSpec.uniform(2, 5)
    mats = bn.build_matrices(spec)
    size = spec.a + 1
    for col in range(size):
        assert sum(m[row][col] for m in mats for row in range(size)) == 1


def test_stationary_vector_2_3():
    assert bn.stationary_vector(U23) == [F(1, 2), F(1, 2)]


def test_stationary_vector_is_fixed_point():
    rng = random.Random(5)
    for b, d in [(2, 3), (2, 5), (3, 4), (3, 5)]:
        weights = [F(rng.randint(1, 9)) for _ in range(d)]
        total = sum(weights)
        spec = bn.BernoulliSpec(b, d, [w / total for w in weights])
        mats = bn.build_matrices(spec)
        c = bn.stationary_vector(spec)
        size = spec.a + 1
        image = [sum(mats[j][x][y] * c[y] for j in range(b) for y in range(size))
                 for x in range(size)]
        assert image == c
        assert sum(c) == 1


def test_interval_measure_examples():
    assert bn.interval_measure(U23, 0, [1]) == F(1, 3)
    with pytest.raises(DomainError):
        bn.interval_measure(U23, 2, [0])


def test_interval_measures_partition_unit_mass():
    for k in range(0, 7):
        total = sum(bn.interval_measure(U23, q, list(w))
                    for q in range(U23.a + 1)
                    for w in product(range(2), repeat=k))
        assert total == 1


def test_interval_measure_symmetry():
    # the digit distribution is symmetric about the middle of [0, 2]
    width = F(1, 16)
    values = {}
    for q in range(2):
        for w in product(range(2), repeat=4):
            start = q + sum(F(dig, 2 ** (i + 1)) for i, dig in enumerate(w))
            values[start] = bn.interval_measure(U23, q, list(w))
    for start, value in values.items():
        mirror = 2 - start - width
        assert values[mirror] == value


def test_count_examples():
    assert bn.count_representations(6, U23) == 3
    assert bn.count_representations(0, U23) == 1
    for k in range(1, 13):
        assert bn.count_representations(2 ** k - 1, U23) == 1


def test_count_matches_brute_force():
    spec = bn.BernoulliSpec.uniform(2, 3)
    for k in range(0, 8):
        for n in range(0, 2 ** k + 2 * 2 ** k):
            assert bn.count_k(n, k, spec) == brute_force_count_k(n, k, spec)


def test_count_stabilizes_once_bk_exceeds_n():
    for n in range(0, 70):
        k = n.bit_length() + 1
        assert bn.count_representations(n, U23) == bn.count_k(n, k, U23)
        assert bn.count_k(n, k, U23) == bn.count_k(n, k + 3, U23)


def test_matrix_count_table_word_10():
    # entries are length-2 counts of n + 4q - q' with n = 2
    table = bn.matrix_count_table(U23, [1, 0])
    expected = [[bn.count_k(2 + 4 * q - qp, 2, U23) for qp in range(2)]
                for q in range(2)]
    assert table == expected == [[2, 1], [1, 1]]


def test_matrix_count_table_word_0():
    assert bn.matrix_count_table(U23, [0]) == [[1, 0], [1, 1]]


def test_matrix_count_table_requires_uniform():
    spec = bn.BernoulliSpec(2, 3, [F(1, 2), F(1, 4), F(1, 4)])
    with pytest.raises(DomainError):
        bn.matrix_count_table(spec, [0])


def test_count_row_gives_interval_measure():
    # measure of I(word) = d^-k (N(n), ..., N(n-a)) C
    c = bn.stationary_vector(U23)
    for k in range(1, 9):
        for w in product(range(2), repeat=k):
            n = 0
            for dig in w:
                n = 2 * n + dig
            row = [bn.count_representations(n - i, U23) if n - i >= 0 else 0
                   for i in range(U23.a + 1)]
            expected = sum(F(x) * y for x, y in zip(row, c)) / 3 ** k
            assert bn.interval_measure(U23, 0, list(w)) == expected


def test_matrix_count_identity_three_specs():
    # d^k M_w == the length-k count table, exact, words up to length 10
    for b, d in [(2, 3), (2, 5), (3, 4)]:
        spec = bn.BernoulliSpec.uniform(b, d)
        size = spec.a + 1
        start = [[int(i == j) for j in range(size)] for i in range(size)]

        def steps(e):
            return [[1 if 0 <= e + b * q - qp < d else 0 for qp in range(size)]
                    for q in range(size)]

        mats = [steps(e) for e in range(b)]

        def walk(acc, n, length):
            if length > 0:
                for q in range(size):
                    for qp in range(size):
                        assert acc[q][qp] == bn.count_k(n + q * b ** length - qp,
                                                        length, spec)
            if length == 10:
                return
            for e in range(b):
                nxt = [[sum(acc[i][t] * mats[e][t][j] for t in range(size))
                        for j in range(size)] for i in range(size)]
                walk(nxt, n * b + e, length + 1)

        walk(start, 0, 0)


def test_ratio_bound():
    # successive counts stay within a log factor (measured constant 4)
    upper = {}
    for n in range(2, 2 ** 14):
        ratio = F(bn.count_representations(n, U23),
                  bn.count_representations(n - 1, U23))
        bound = 4 * math.log(n)
        assert 1 / bound <= ratio <= bound


def test_normalize_examples():
    assert bn.normalize_digits([2], U23) == [1, 0]
    assert bn.normalize_digits([1, 2, 2], U23) == [1, 0, 1, 0]
    assert bn.normalize_digits([1, 0, 1, 0], U23) == [1, 0, 1, 0]
    assert bn.normalize_digits([0, 0], U23) == [0]


def test_normalize_preserves_value():
    rng = random.Random(99)
    for _ in range(10_000):
        spec = rng.choice([U23, bn.BernoulliSpec.uniform(2, 5),
                           bn.BernoulliSpec.uniform(3, 7)])
        digits = [rng.randrange(spec.d) for _ in range(rng.randint(1, 12))]
        out = bn.normalize_digits(digits, spec)
        value_in = 0
        for dig in digits:
            value_in = value_in * spec.b + dig
        value_out = 0
        for dig in out:
            value_out = value_out * spec.b + dig
        assert value_in == value_out
        assert all(0 <= dig < spec.b for dig in out)
        assert out[0] != 0 or out == [0]


def test_symbolic_markov_export():
    measure, psi = bn.symbolic_markov_export(U23)
    assert measure.b == 4
    assert psi == (0, 0, 1, 1)
    assert sum(measure.p) == 1
    mats = bn.build_matrices(U23)
    # rows repeat the transposed blocks
    for block in range(2):
        for x in range(2):
            row = measure.P[2 * block + x]
            for j in range(2):
                for y in range(2):
                    assert row[2 * j + y] == mats[j][y][x]
    # pushforward equals the reversed-word interval sum, words up to length 4
    lr = sofic.push_forward(sofic.markov_to_linear(measure), list(psi))
    for k in range(1, 5):
        for w in product(range(2), repeat=k):
            total = sum(bn.interval_measure(U23, q, list(reversed(w)))
                        for q in range(U23.a + 1))
            assert sofic.linrep_cylinder(lr, list(w)) == total
