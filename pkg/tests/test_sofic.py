import random
from fractions import Fraction as F
from itertools import product

import pytest

from soficonv import pisot, sofic
from soficonv.errors import DomainError

TWO_STATE = sofic.MarkovMeasure([F(1, 2), F(1, 2)],
                                [[F(1, 2), F(1, 2)], [F(1), F(0)]])


def all_words(b, length):
    return product(range(b), repeat=length)


def test_markov_cylinder_examples():
    assert sofic.markov_cylinder(TWO_STATE, [0, 1]) == F(1, 4)
    assert sofic.markov_cylinder(TWO_STATE, [0, 1, 1]) == 0
    assert sofic.markov_cylinder(TWO_STATE, [0]) == F(1, 2)


def test_markov_cylinder_errors():
    with pytest.raises(DomainError):
        sofic.markov_cylinder(TWO_STATE, [])
    with pytest.raises(DomainError):
        sofic.markov_cylinder(TWO_STATE, [0, 2])


def test_markov_to_linear_structure():
    lr = sofic.markov_to_linear(TWO_STATE)
    assert lr.R[0] == (F(1, 2), F(0))
    assert lr.R[1] == (F(0), F(1, 2))
    assert lr.M[0] == ((F(1, 2), F(0)), (F(1), F(0)))
    assert lr.M[1] == ((F(0), F(1, 2)), (F(0), F(0)))
    assert lr.C == (F(1), F(1))


def test_markov_to_linear_reproduces_cylinders():
    lr = sofic.markov_to_linear(TWO_STATE)
    for length in range(1, 7):
        for w in all_words(2, length):
            assert sofic.linrep_cylinder(lr, list(w)) == \
                sofic.markov_cylinder(TWO_STATE, list(w))


def test_one_letter_alphabet():
    m = sofic.MarkovMeasure([F(1)], [[F(1)]])
    lr = sofic.markov_to_linear(m)
    assert lr.R == ((F(1),),)
    assert lr.M == (((F(1),),),)
    assert lr.C == (F(1),)


def test_total_mass_telescopes():
    lr = sofic.markov_to_linear(TWO_STATE)
    for length in range(1, 4):
        assert sum(sofic.linrep_cylinder(lr, list(w))
                   for w in all_words(2, length)) == 1


def test_bernoulli_r1_cylinder():
    lr = sofic.LinearRepresentation([[F(1, 3)], [F(2, 3)]],
                                    [[[F(1, 3)]], [[F(2, 3)]]],
                                    [F(1)])
    assert sofic.linrep_cylinder(lr, [1, 0]) == F(2, 9)


def test_push_forward_identity_and_collapse():
    lr = sofic.markov_to_linear(TWO_STATE)
    same = sofic.push_forward(lr, [0, 1])
    for length in range(1, 5):
        for w in all_words(2, length):
            assert sofic.linrep_cylinder(same, list(w)) == \
                sofic.linrep_cylinder(lr, list(w))
    collapsed = sofic.push_forward(lr, [0, 0])
    assert collapsed.b == 1
    for n in range(1, 6):
        assert sofic.linrep_cylinder(collapsed, [0] * n) == 1


def test_push_forward_commutes_with_cylinders():
    lr = sofic.markov_to_linear(TWO_STATE)
    bigger = sofic.push_forward(lr, [0, 1])
    psi = [1, 0]
    pushed = sofic.push_forward(bigger, psi)
    for length in range(1, 7):
        for w in all_words(2, length):
            total = sum(sofic.linrep_cylinder(lr, list(u))
                        for u in all_words(2, length)
                        if tuple(psi[x] for x in u) == w)
            assert sofic.linrep_cylinder(pushed, list(w)) == total


def cover_measure():
    """Markov cover of the no-factor-1 0^(2i) 1 subshift on four symbols.

    Letters 0..3 stand for (a,0), (b,0), (b,1), (c,0); the second
    coordinate is the image letter.
    """
    p = [F(1, 4)] * 4
    P = [
        [F(0), F(1, 2), F(1, 2), F(0)],
        [F(1), F(0), F(0), F(0)],
        [F(0), F(0), F(0), F(1)],
        [F(0), F(1, 2), F(1, 2), F(0)],
    ]
    return sofic.MarkovMeasure(p, P), [0, 0, 1, 0]


def test_cover_pushforward_kills_forbidden_words():
    measure, psi = cover_measure()
    image = sofic.push_forward(sofic.markov_to_linear(measure), psi)
    for zeros in range(0, 9, 2):
        word = [1] + [0] * zeros + [1]
        if len(word) <= 10:
            assert sofic.linrep_cylinder(image, word) == 0
    assert sofic.linrep_cylinder(image, [1, 0, 1]) > 0
    assert sofic.linrep_cylinder(image, [0] * 10) > 0


def test_linear_to_markov_bernoulli_case():
    lr = sofic.LinearRepresentation([[F(1, 3)], [F(2, 3)]],
                                    [[[F(1, 3)]], [[F(2, 3)]]],
                                    [F(1)])
    measure, psi = sofic.linear_to_markov(lr)
    assert psi == (0, 1)
    assert measure.p == (F(1, 3), F(2, 3))
    for row in measure.P:
        assert row == (F(1, 3), F(2, 3))


def golden_block_representation():
    """Representation of the golden-base digit measure over its two
    generating words, built from the measure matrices."""
    base = pisot.PisotBase.from_minpoly([-1, -1, 1], ("3/2", "17/10"), 2)
    system = pisot.measure_matrices(base, [F(1, 2), F(1, 2)])
    mats = [system.word_matrix(w) for w in system.words]
    c0 = system.C[0]
    R = [[x / c0 for x in mat[0]] for mat in mats]
    return sofic.LinearRepresentation(R, mats, list(system.C)), system


def test_golden_block_representation_matches_pisot():
    lr, system = golden_block_representation()
    for length in range(1, 5):
        for w in all_words(2, length):
            digits = []
            for letter in w:
                digits.extend(system.words[letter])
            expected = pisot.symbolic_interval_measure(system, 0, digits)
            assert sofic.linrep_cylinder(lr, list(w)) == expected


def test_golden_roundtrip_through_markov():
    lr, _system = golden_block_representation()
    measure, psi = sofic.linear_to_markov(lr)
    assert measure.b == 6
    back = sofic.push_forward(sofic.markov_to_linear(measure), psi)
    for length in range(1, 7):
        for w in all_words(2, length):
            assert sofic.linrep_cylinder(back, list(w)) == \
                sofic.linrep_cylinder(lr, list(w))


def random_representation(rng, r, b):
    """Random positive data rescaled to satisfy both side conditions."""
    C = [F(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(r)]
    M = [[[F(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(r)]
          for _ in range(r)] for _ in range(b)]
    for x in range(r):
        row_mass = sum(M[i][x][y] * C[y] for i in range(b) for y in range(r))
        scale = C[x] / row_mass
        for i in range(b):
            M[i][x] = [v * scale for v in M[i][x]]
    R = [[F(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(r)]
         for _ in range(b)]
    mass = sum(R[i][y] * C[y] for i in range(b) for y in range(r))
    R = [[v / mass for v in row] for row in R]
    return sofic.LinearRepresentation(R, M, C)


def test_randomized_roundtrips():
    rng = random.Random(2024)
    for _ in range(5):
        r = rng.randint(1, 4)
        b = rng.randint(2, 3)
        lr = random_representation(rng, r, b)
        measure, psi = sofic.linear_to_markov(lr)
        back = sofic.push_forward(sofic.markov_to_linear(measure), psi)
        for length in range(1, 5):
            for w in all_words(b, length):
                assert sofic.linrep_cylinder(back, list(w)) == \
                    sofic.linrep_cylinder(lr, list(w))
        assert sum(sofic.linrep_cylinder(lr, list(w))
                   for w in all_words(b, 4)) == 1


def test_stationarity_predicate():
    # stationary: start the chain from the left fixed vector of P
    P = [[F(1, 2), F(1, 2)], [F(1), F(0)]]
    stationary = sofic.MarkovMeasure([F(2, 3), F(1, 3)], P)
    assert stationary.is_stationary()
    assert sofic.is_stationary_representation(sofic.markov_to_linear(stationary))
    assert not TWO_STATE.is_stationary()
    assert not sofic.is_stationary_representation(sofic.markov_to_linear(TWO_STATE))


def test_eq2_validation():
    with pytest.raises(DomainError):
        sofic.LinearRepresentation([[F(1)]], [[[F(1, 2)]]], [F(1)])
    with pytest.raises(DomainError):
        sofic.LinearRepresentation([[F(1, 2)]], [[[F(1)]]], [F(1)])
    with pytest.raises(DomainError):
        sofic.LinearRepresentation([[F(1)]], [[[F(1)]]], [F(0)])


def test_json_roundtrip():
    lr = sofic.markov_to_linear(TWO_STATE)
    again = sofic.LinearRepresentation.from_json(lr.to_json())
    assert again.R == lr.R and again.M == lr.M and again.C == lr.C
    m2 = sofic.MarkovMeasure.from_json(TWO_STATE.to_json())
    assert m2.p == TWO_STATE.p and m2.P == TWO_STATE.P
