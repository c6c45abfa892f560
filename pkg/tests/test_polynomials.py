from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qchroma.errors import ExactDivisionError, VariableMismatchError
from qchroma.polynomials import BivariatePoly, UniPoly, poly_exact_div, poly_mul, q_integer

Q = UniPoly.monomial("q", 1)
Z = UniPoly.monomial("z", 1)


def test_mul_difference_of_squares():
    assert (Q - 1) * (Q + 1) == UniPoly("q", {2: 1, 0: -1})


def test_mul_z_square():
    assert (Z - 1) ** 2 == UniPoly("z", {2: 1, 1: -2, 0: 1})


def test_outer_product_bivariate():
    b = BivariatePoly.outer(Q + 1, Z - 1)
    assert b.coeffs == {(1, 1): 1, (1, 0): -1, (0, 1): 1, (0, 0): -1}


def test_variable_mismatch():
    with pytest.raises(VariableMismatchError):
        poly_mul(Q, Z)


def test_exact_div_examples():
    num = (Q * Q - 1) * (Q - 1)
    den = (Q - 1) * (Q - 1)
    assert poly_exact_div(num, den) == Q + 1
    assert poly_exact_div(num, num) == UniPoly.constant("q", 1)
    assert poly_exact_div(UniPoly("q", {3: 1, 0: -1}), Q - 1) == UniPoly("q", {2: 1, 1: 1, 0: 1})


def test_exact_div_remainder_rejected():
    with pytest.raises(ExactDivisionError):
        poly_exact_div(Q * Q + 1, Q - 1)


def test_q_integer():
    assert q_integer(3, 2).evaluate(2) == 21
    assert q_integer(1, 5) == UniPoly.constant("q", 1)
    assert q_integer(2, 1) == Q + 1
    assert q_integer(0, 1).is_zero()


def test_evaluate_fractions():
    p = UniPoly("q", {2: 1, 0: Fraction(1, 2)})
    assert p.evaluate(Fraction(1, 2)) == Fraction(3, 4)


def test_substitute_second_power():
    s = BivariatePoly.outer(Q + 1, (Z - 1) ** 2)
    collapsed = s.substitute_second_power(2)
    # (q+1)(q^2-1)^2 expanded
    expected = (Q + 1) * (Q * Q - 1) * (Q * Q - 1)
    assert collapsed == expected


def test_json_roundtrip():
    p = UniPoly("q", {0: -1, 5: 3, 7: Fraction(2, 3)})
    assert UniPoly.from_json(p.to_json()) == p
    b = BivariatePoly({(0, 0): 2, (3, 1): -5})
    assert BivariatePoly.from_json(b.to_json()) == b


def test_degree_and_zero():
    assert UniPoly.zero("q").degree == -1
    assert not UniPoly("q", {3: 0})
    assert (Q - Q).is_zero()


small_polys = st.dictionaries(
    st.integers(0, 6), st.integers(-9, 9), max_size=5
).map(lambda d: UniPoly("q", d))


@given(small_polys, small_polys)
@settings(max_examples=150, deadline=None)
def test_mul_then_exact_div_roundtrip(a, b):
    if b.is_zero():
        return
    assert poly_exact_div(poly_mul(a, b), b) == a


@given(small_polys, small_polys, small_polys)
@settings(max_examples=80, deadline=None)
def test_ring_axioms_spotcheck(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
