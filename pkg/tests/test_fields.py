from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunklcm.fields import (
    Field,
    cyclotomic_polynomial,
    parse_scalar,
    render_scalar,
)

Q = Field.rational()
F5 = Field.quadratic(5)
F2 = Field.quadratic(2)
C12 = Field.cyclotomic(12)


rationals = st.fractions(
    min_value=-20, max_value=20, max_denominator=12
)


def field_elements(field):
    return st.lists(
        rationals, min_size=field.degree, max_size=field.degree
    ).map(lambda cs: field.from_coeffs(cs))


def test_field_singletons():
    assert Field.rational() is Q
    assert Field.quadratic(5) is F5
    assert Field.cyclotomic(12) is C12


def test_quadratic_rejects_bad_param():
    with pytest.raises(ValueError):
        Field.quadratic(4)
    with pytest.raises(ValueError):
        Field.quadratic(12)
    with pytest.raises(ValueError):
        Field.quadratic(1)


def test_cyclotomic_degree_is_totient():
    assert Field.cyclotomic(3).degree == 2
    assert Field.cyclotomic(4).degree == 2
    assert Field.cyclotomic(5).degree == 4
    assert Field.cyclotomic(12).degree == 4
    with pytest.raises(ValueError):
        Field.cyclotomic(2)


def test_cyclotomic_polynomial_values():
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_golden_ratio_relation():
    phi = (1 + F5.generator()) / 2
    assert phi * phi == phi + 1
    assert phi.inverse() == phi - 1


def test_sqrt2_inverse():
    s = F2.generator()
    assert (1 + s).inverse() == s - 1
    assert (s / 2) * s == F2.element(1)


def test_root_of_unity_relations():
    z = C12.generator()
    assert z ** 12 == C12.one()
    assert z ** 6 == -C12.one()
    # zeta_12^2 is a primitive 6th root: satisfies x^2 - x + 1 = 0
    w = z * z
    assert w * w - w + 1 == C12.zero()
    assert z * z.conjugate() == C12.one()


@given(field_elements(F5), field_elements(F5), field_elements(F5))
def test_quadratic_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@given(field_elements(C12), field_elements(C12))
def test_cyclotomic_product_commutes(a, b):
    assert a * b == b * a


@given(field_elements(C12))
def test_cyclotomic_inverse_round_trip(a):
    if a.is_zero():
        return
    assert a * a.inverse() == C12.one()


@given(field_elements(F5))
def test_quadratic_inverse_round_trip(a):
    if a.is_zero():
        return
    assert a * a.inverse() == F5.one()


@given(field_elements(C12), field_elements(C12))
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@given(rationals)
def test_rational_embedding(q):
    x = Q.element(q)
    assert x.is_rational()
    assert x.as_fraction() == q


def test_cross_field_arithmetic_rejected():
    with pytest.raises((TypeError, ValueError)):
        F5.generator() + F2.generator()


@given(field_elements(F5), field_elements(F5))
def test_sort_key_total_order(a, b):
    if a == b:
        assert a.sort_key() == b.sort_key()
    else:
        assert a.sort_key() != b.sort_key()


@pytest.mark.parametrize(
    "field,text",
    [
        (Q, "3/2"),
        (Q, "-7"),
        (F5, "1+2*sqrt(5)"),
        (F5, "1/2-1/2*sqrt(5)"),
        (F2, "sqrt(2)"),
        (C12, "z^2-1/3*z"),
        (C12, "1"),
    ],
)
def test_parse_render_round_trip(field, text):
    x = parse_scalar(field, text)
    assert parse_scalar(field, render_scalar(x)) == x


def test_parse_unicode_sqrt():
    assert parse_scalar(F5, "1+2√5") == 1 + 2 * F5.generator()


def test_parse_rejects_wrong_radical():
    with pytest.raises(ValueError):
        parse_scalar(F5, "sqrt(2)")
    with pytest.raises(ValueError):
        parse_scalar(Q, "z")


@given(field_elements(C12))
@settings(max_examples=50)
def test_render_round_trip_cyclotomic(a):
    assert parse_scalar(C12, render_scalar(a)) == a
