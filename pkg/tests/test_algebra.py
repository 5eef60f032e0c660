import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soficonv.algebra import FieldDescriptor, FieldElement, as_fraction
from soficonv.errors import DomainError

GOLDEN = FieldDescriptor([-1, -1, 1], ("3/2", "17/10"))       # x^2 - x - 1
EX = FieldDescriptor([1, -3, 1], ("5/2", "27/10"))            # x^2 - 3x + 1
BASE2 = FieldDescriptor([-2, 1], ("3/2", "5/2"))              # x - 2


def test_golden_defining_identities():
    b = GOLDEN.beta()
    assert (b - 1) * b == GOLDEN.one()
    assert b * b == b + 1
    assert (b * b - b - 1).is_zero()


def test_ex_field_product():
    b = EX.beta()
    assert b * b == 3 * b - 1
    assert (b * b - 3 * b + 1).is_zero()


def test_additive_identity():
    a = GOLDEN.element([Fraction(2, 3), Fraction(-1, 5)])
    assert a + GOLDEN.zero() == a


def test_compare_examples():
    b = GOLDEN.beta()
    assert (b - 1).compare(1) < 0
    assert b.compare(b) == 0
    bb = EX.beta()
    assert (3 - bb).compare(0) > 0
    # 3 - beta is 1/beta in this field
    assert 3 - bb == EX.one() / bb


def test_as_integer():
    b = GOLDEN.beta()
    j2, j1 = b - 1, GOLDEN.one()
    assert (b * j2 - j1 + 0).as_integer() == 0
    assert GOLDEN.from_rational(Fraction(1, 2)).as_integer() is None
    assert b.as_integer() is None
    assert GOLDEN.from_rational(-7).as_integer() == -7
    assert GOLDEN.zero().as_integer() == 0


def test_degree_one_field_is_rational():
    b = BASE2.beta()
    assert b.as_integer() == 2
    assert b * b == BASE2.from_rational(4)
    assert (b - 1).compare(1) == 0
    assert BASE2.from_rational(Fraction(3, 2)).compare(2) < 0


def test_inverse():
    b = GOLDEN.beta()
    assert (b - 1).inverse() == b
    bb = EX.beta()
    assert (bb - 1).inverse() == bb - 2
    with pytest.raises(DomainError):
        GOLDEN.zero().inverse()


def test_power():
    b = GOLDEN.beta()
    assert b ** 0 == GOLDEN.one()
    assert b ** 5 == b * b * b * b * b


def test_descriptor_mismatch_raises():
    with pytest.raises(DomainError):
        GOLDEN.beta() + EX.beta()


def test_descriptor_validation():
    with pytest.raises(DomainError):
        FieldDescriptor([-1, -1, 2], ("3/2", "17/10"))   # not monic
    with pytest.raises(DomainError):
        FieldDescriptor([-1, -1, 1], ("1/2", "17/10"))   # lo <= 1
    with pytest.raises(DomainError):
        FieldDescriptor([-1, -1, 1], ("17/10", "19/10"))  # no sign change
    with pytest.raises(DomainError):
        FieldDescriptor([5], ("3/2", "2"))               # degree 0


def test_minpoly_vanishes_at_beta():
    for field in (GOLDEN, EX, BASE2):
        b = field.beta()
        acc = field.zero()
        for i, c in enumerate(field.minpoly):
            acc = acc + (b ** i) * c
        assert acc.is_zero()


def test_json_roundtrip():
    blob = GOLDEN.to_json()
    again = FieldDescriptor.from_json(blob)
    assert again == GOLDEN
    assert again.beta() * again.beta() == again.beta() + 1


small = st.fractions(min_value=-3, max_value=3, max_denominator=6)
elements = st.tuples(small, small).map(lambda t: GOLDEN.element(list(t)))


@given(a=elements, b=elements, c=elements)
@settings(max_examples=120, deadline=None)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


def test_order_agrees_with_real_embedding():
    rng = random.Random(7)
    elems = [GOLDEN.element([Fraction(rng.randint(-20, 20), rng.randint(1, 9)),
                             Fraction(rng.randint(-20, 20), rng.randint(1, 9))])
             for _ in range(1000)]
    root = GOLDEN.root_float(25)
    for a, b in zip(elems, elems[1:]):
        sign = a.compare(b)
        fa = float(a.coeffs[0]) + float(a.coeffs[1]) * root
        fb = float(b.coeffs[0]) + float(b.coeffs[1]) * root
        if abs(fa - fb) > 1e-9:
            assert sign == (1 if fa > fb else -1)
        else:
            assert (sign == 0) == (a == b)


def test_total_order_transitive_sample():
    rng = random.Random(11)
    elems = [GOLDEN.element([Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
                             Fraction(rng.randint(-6, 6), rng.randint(1, 4))])
             for _ in range(30)]
    ordered = sorted(elems)
    for x, y in zip(ordered, ordered[1:]):
        assert x.compare(y) <= 0


def test_as_fraction_rejects_floats():
    with pytest.raises(TypeError):
        as_fraction(1.5)
