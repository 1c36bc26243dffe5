from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from betadigits.errors import NotMonic, NotSquarefree, ReducibleDetected
from betadigits.field import NumberField

FIELDS = [NumberField(p) for p in ([-1, -1, 1], [2, 2, 1], [-1, -1, 0, 1], [2, 1])]
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elements(F):
    return st.lists(rationals, min_size=F.d, max_size=F.d).map(F.element)


@st.composite
def triples(draw):
    F = draw(st.sampled_from(FIELDS))
    return F, draw(elements(F)), draw(elements(F)), draw(elements(F))


@given(triples())
def test_ring_axioms(t):
    F, a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero
    assert a * F.one == a


@given(triples())
def test_inverse(t):
    F, a, _, _ = t
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
        return
    assert a * a.inverse() == F.one
    assert (a ** -2) * a * a == F.one


def test_golden_identities(golden):
    F, _ = golden
    b = F.beta
    assert b * b == 1 + b
    assert F.beta_inv == b - 1
    assert (b - 1) ** 2 == 2 - b
    assert b.pow_beta(5) == b ** 6


def test_companion_matches_multiplication():
    F = NumberField([-1, -1, 0, 1])
    C = F.companion
    x = F.element([Fraction(1, 3), -2, 5])
    y = x.mul_beta()
    expect = [sum(C[i][j] * x.coords[j] for j in range(3)) for i in range(3)]
    assert list(y.coords) == expect


def test_construction_errors():
    with pytest.raises(NotMonic):
        NumberField([1, 2])
    with pytest.raises(NotSquarefree):
        NumberField([1, 2, 1])


def test_reducible_detected():
    F = NumberField([-2, 1, -2, 1])  # (X^2 + 1)(X - 2)
    with pytest.raises(ReducibleDetected):
        (F.beta - 2).inverse()


def test_views(golden):
    F, _ = golden
    x = F.parse_element(["1/2", "-3/4"])
    assert x.denominator_lcm() == 4
    assert not x.is_integral()
    assert x.to_strings() == ["1/2", "-3/4"]
    assert F.from_int(3).rational_value() == 3
    assert F.beta.rational_value() is None
    assert hash(F.element([1, 0])) == hash(F.one)
