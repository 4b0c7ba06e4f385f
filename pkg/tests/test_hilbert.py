from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extkoszul.algebra import UsageError
from extkoszul.catalog import named_ideal
from extkoszul.field import GF, QQ
from extkoszul.graphs import edge_ideal, path, preset
from extkoszul.groebner import Ideal, hilbert_series, initial_ideal
from extkoszul.hilbert import betti_over_E, euler_identity_check, froberg_inverse, koszul_betti_bounded
from extkoszul.orders import degrevlex
from extkoszul.parse import parse_ideal
from extkoszul.series import HilbertSeries

from strategies import elements


def test_froberg_principal_quadric():
    ps = froberg_inverse(HilbertSeries([1, 4, 5]), 6)
    assert list(ps.coefficients) == [1, 4, 11, 24, 41, 44, -29]
    assert ps.first_negative_index == 6


@pytest.mark.parametrize("n", [1, 3, 5])
def test_froberg_exterior(n):
    ps = froberg_inverse(HilbertSeries.binomial_power(n), 10)
    assert list(ps.coefficients) == [comb(n + k - 1, k) for k in range(11)]
    assert ps.first_negative_index is None


def test_froberg_two_triangles():
    ps = froberg_inverse(HilbertSeries([1, 6, 9]), 8)
    assert list(ps.coefficients) == [(k + 1) * 3**k for k in range(9)]


def test_froberg_index_beyond_bound():
    with pytest.raises(IndexError):
        froberg_inverse(HilbertSeries([1, 2]), 3)[4]


def test_betti_over_exterior_examples():
    assert betti_over_E(named_ideal("thieu"), 1, 2)[1, 2] == 2
    assert betti_over_E(parse_ideal("e1*e2", 2), 2, 3)[2, 3] == 2


def test_betti_needs_bounds():
    with pytest.raises((TypeError, UsageError)):
        betti_over_E(named_ideal("thieu"), 3)


def test_betti_independent_of_generator_order():
    I = named_ideal("two-triangles")
    J = Ideal(8, list(reversed(I.generators)))
    assert betti_over_E(I, 3, 6).entries == betti_over_E(J, 3, 6).entries


def test_betti_rational_matches_modular():
    I = named_ideal("thieu")
    assert betti_over_E(I, 3, 6, QQ).entries == betti_over_E(I, 3, 6, GF()).entries


@pytest.mark.parametrize("name", ["thieu", "two-triangles"])
def test_betti_monotone_under_initial_ideal(name):
    I = named_ideal(name)
    a = betti_over_E(I, 3, 7)
    b = betti_over_E(initial_ideal(I, degrevlex(I.n)).to_ideal(), 3, 7)
    assert a.dominated_by(b)


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 5).flatmap(lambda n: st.lists(elements(n, 2, max_terms=3), min_size=1, max_size=2).map(lambda g: Ideal(n, g))))
def test_betti_monotone_random(I):
    a = betti_over_E(I, 3, 6)
    b = betti_over_E(initial_ideal(I, degrevlex(I.n)).to_ideal(), 3, 6)
    assert a.dominated_by(b)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_residue_field_over_exterior(n):
    t = koszul_betti_bounded(Ideal(n, []), 4)
    assert t.diagonal() == [comb(n + i - 1, i) for i in range(5)]
    assert t.off_diagonal == []
    assert euler_identity_check(t, HilbertSeries.binomial_power(n), 4)


@pytest.mark.parametrize("g", ["path:5", "triangle+triangle", "star:4"])
def test_edge_ideals_have_linear_tables(g):
    I = edge_ideal(preset(g))
    t = koszul_betti_bounded(I, 4)
    assert t.off_diagonal == []
    assert t.diagonal() == list(froberg_inverse(hilbert_series(I), 4).coefficients)


def test_principal_quadric_off_diagonal():
    I = parse_ideal("e1*e2 + e3*e4", 4)
    t = koszul_betti_bounded(I, 6, j_max=6)
    assert euler_identity_check(t, HilbertSeries([1, 4, 5]), 6)
    assert any(i < 6 and j == 6 for i, j in t.off_diagonal)
    # degree-6 Euler characteristic is the t^6 coefficient of 1/HS(t)
    assert sum((-1) ** i * t[i, 6] for i in range(7)) == -29


def test_euler_two_triangles():
    I = named_ideal("two-triangles")
    t = koszul_betti_bounded(I, 4, j_max=4)
    assert euler_identity_check(t, hilbert_series(I), 4)


def test_euler_detects_corruption():
    I = edge_ideal(preset("triangle+triangle"))
    t = koszul_betti_bounded(I, 4)
    t.entries[(2, 2)] += 1
    assert not euler_identity_check(t, hilbert_series(I), 4)


def test_euler_refuses_incomplete_table():
    t = koszul_betti_bounded(Ideal(3, []), 2)
    with pytest.raises(UsageError):
        euler_identity_check(t, HilbertSeries.binomial_power(3), 5)


def test_depth_divides_series():
    # a certified regular element contributes a factor 1+t
    h = hilbert_series(edge_ideal(path(7)))
    assert h.divide_one_plus_t() == HilbertSeries([1, 6, 9, 1])
