import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extkoszul.algebra import (
    ExtElement, LinearChange, LinearForm, UsageError, ambient_hilbert, mono_mul, monomial, substitute,
)
from extkoszul.field import GF
from extkoszul.parse import parse_element

from strategies import changes, elements, linear_forms


def E(text, n=4):
    return parse_element(text, n)


def brute_sign(u, v):
    # sign of concatenating two sorted index lists, by explicit bubble sort
    seq = [i for i in range(64) if u >> i & 1] + [i for i in range(64) if v >> i & 1]
    if len(set(seq)) < len(seq):
        return 0
    swaps = 0
    for i, j in itertools.combinations(range(len(seq)), 2):
        swaps += seq[i] > seq[j]
    return -1 if swaps % 2 else 1


@pytest.mark.parametrize(
    "u, v, sign, prod",
    [
        (monomial(1), monomial(2), 1, monomial(1, 2)),
        (monomial(2), monomial(1), -1, monomial(1, 2)),
        (monomial(1, 3), monomial(2), -1, monomial(1, 2, 3)),
    ],
)
def test_mono_mul_signs(u, v, sign, prod):
    assert mono_mul(u, v) == (sign, prod)


def test_square_of_variable_vanishes():
    assert mono_mul(monomial(1), monomial(1)) is None


def test_mono_mul_matches_bubble_sort():
    for u in range(1 << 5):
        for v in range(1 << 5):
            got = mono_mul(u, v)
            s = brute_sign(u, v)
            assert (got is None) == (s == 0)
            if got:
                assert got == (s, u | v)


def test_products():
    assert E("(e1 - e4)*(e2 + e3)") == E("e1*e2 + e1*e3 + e2*e4 + e3*e4")
    assert E("(e1 + e4)*(e2 + e3)") == E("e1*e2 + e1*e3 - e2*e4 - e3*e4")
    f = E("e1*e2 + 3*e3")
    assert f * ExtElement.one(4) == f


def test_ambient_mismatch_is_usage_error():
    with pytest.raises(UsageError):
        E("e1", 3) * E("e1", 4)


@pytest.mark.parametrize("n, want", [(0, [1]), (4, [1, 4, 6, 4, 1]), (6, [1, 6, 15, 20, 15, 6, 1])])
def test_ambient_hilbert(n, want):
    assert list(ambient_hilbert(n).coefficients) == want


def test_linear_form_round_trip():
    l = LinearForm([1, 0, -2])
    assert LinearForm.from_element(l.to_element()) == l


def test_singular_change_rejected():
    with pytest.raises(UsageError):
        LinearChange([[1, 1], [2, 2]])


def test_identity_change():
    f = E("e1*e2 - 2*e3*e4 + e1")
    assert substitute(f, LinearChange.identity(4)) == f


def test_change_composition_is_matrix_product():
    a = LinearChange([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    b = LinearChange([[1, 0, 0], [2, 1, 0], [0, 3, 1]])
    f = E("e1*e2 + e2*e3", 3)
    assert substitute(f, a.then(b)) == substitute(substitute(f, a), b)
    assert substitute(substitute(f, a), a.inverse()) == f


@settings(max_examples=500, deadline=None)
@given(st.data())
def test_associativity(data):
    n = data.draw(st.integers(1, 8))
    f, g, h = (data.draw(elements(n)) for _ in range(3))
    assert (f * g) * h == f * (g * h)


@settings(max_examples=500, deadline=None)
@given(st.data())
def test_graded_skew_commutativity(data):
    n = data.draw(st.integers(1, 7))
    a, b = data.draw(st.integers(0, n)), data.draw(st.integers(0, n))
    f, g = data.draw(elements(n, a)), data.draw(elements(n, b))
    assert f * g == (g * f).scale((-1) ** (a * b))


@settings(max_examples=500, deadline=None)
@given(st.data())
def test_linear_forms_square_to_zero(data):
    n = data.draw(st.integers(1, 8))
    l = data.draw(linear_forms(n)).to_element()
    assert (l * l).is_zero()


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_substitute_is_algebra_map(data):
    n = data.draw(st.integers(1, 5))
    C = data.draw(changes(n))
    f, g = data.draw(elements(n)), data.draw(elements(n))
    assert substitute(f * g, C) == substitute(f, C) * substitute(g, C)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_rational_and_modular_backends_agree(data):
    n = data.draw(st.integers(1, 6))
    F = GF(101)
    f, g = data.draw(elements(n)), data.draw(elements(n))
    assert (f * g).with_field(F) == f.with_field(F) * g.with_field(F)
    assert (f + g).with_field(F) == f.with_field(F) + g.with_field(F)
