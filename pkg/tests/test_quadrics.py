import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from extkoszul.algebra import UsageError, monomial, substitute
from extkoszul.catalog import named_ideal
from extkoszul.depth import _eliminate
from extkoszul.groebner import Ideal, hilbert_series
from extkoszul.orders import degrevlex
from extkoszul.parse import parse_element
from extkoszul.quadrics import (
    AlternatingMatrix, decompose, generic_quadrics, linear_factors, min_rank_sample, pfaffian, quadric_rank,
    rank2_in_pencil, rank_bound, to_alternating,
)
from extkoszul.series import HilbertSeries

from strategies import changes, elements, linear_forms


def Q(text, n=4):
    return parse_element(text, n)


@pytest.mark.parametrize("text, r", [("e1*e2", 2), ("e1*e2 + e3*e4", 4), ("e1*e2 + e1*e3 + e2*e4 + e3*e4", 2)])
def test_rank_examples(text, r):
    assert quadric_rank(Q(text)) == r


def test_rank_rejects_non_quadric():
    with pytest.raises(UsageError):
        quadric_rank(Q("e1*e2*e3"))


def test_pfaffian_examples():
    assert pfaffian(to_alternating(Q("e1*e2 + e3*e4"))) == 1
    assert pfaffian(to_alternating(Q("e1*e2 + e1*e3 + e2*e4 + e3*e4"))) == 0
    with pytest.raises(UsageError):
        pfaffian(to_alternating(Q("e1*e2", 3)))


def test_pfaffian_generic_formula():
    xs = sympy.symbols("a12 a13 a14 a23 a24 a34")
    vals = [random.Random(1).randint(-9, 9) for _ in xs]
    rows = [[0] * 4 for _ in range(4)]
    for (i, j), v in zip([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], vals):
        rows[i][j], rows[j][i] = v, -v
    a12, a13, a14, a23, a24, a34 = vals
    assert pfaffian(AlternatingMatrix.from_rows(rows)) == a12 * a34 - a13 * a24 + a14 * a23


def test_decompose_examples():
    d = decompose(Q("e1*e2"))
    assert len(d.factors) == 1
    f = d.factors[0]
    assert (f.alpha, str(f.left), str(f.right)) == (1, "e1", "e2")
    d = decompose(Q("e1*e2 + e3*e4"))
    assert [(str(f.left), str(f.right)) for f in d.factors] == [("e1", "e2"), ("e3", "e4")]
    d = decompose(Q("e1*e2 + e1*e3 + e2*e4"), degrevlex(4))
    assert d.rank == 4 and d.recompose() == Q("e1*e2 + e1*e3 + e2*e4")
    assert str(d) == "(e1 - e4)*(e2 + e3) - (e3)*(e4)"


def test_pencil_examples():
    res = rank2_in_pencil(Q("e1*e2 + e3*e4"), Q("e1*e3 + e2*e4"))
    assert res.pfaffian == (1, 0, -1)
    assert sorted(res.rational_roots) == [-1, 1]
    one = next(r for r in res.roots if r.value == 1)
    assert one.witness == Q("e1*e2 + e1*e3 + e2*e4 + e3*e4") and quadric_rank(one.witness) == 2

    res = rank2_in_pencil(Q("e1*e2"), Q("e3*e4"))
    assert res.pfaffian == (0, 1, 0)
    assert 0 in res.rational_roots
    assert any(r.kind == "infinity" for r in res.roots)

    res = rank2_in_pencil(Q("e1*e2 + e3*e4"), Q("e1*e3 - e2*e4"))
    assert res.pfaffian == (1, 0, 1)
    assert not res.rational_roots
    assert any(r.kind == "complex" and r.discriminant == -4 for r in res.roots)


def test_pencil_rejects_dependent_pair():
    with pytest.raises(UsageError):
        rank2_in_pencil(Q("e1*e2"), Q("2*e1*e2"))


def test_min_rank_examples():
    s = min_rank_sample([Q("e1*e2"), Q("e1*e3 + e2*e4")], samples=50)
    assert s.min_rank == 2
    gens = named_ideal("two-triangles").generators[:3]
    s = min_rank_sample(list(gens), samples=200)
    assert s.min_rank == 2 and quadric_rank(s.witness) == 2


def test_rank_bound():
    assert rank_bound(6, 2, 6) is True
    assert rank_bound(6, 2, 7) is False


def test_generic_quadrics_seeded():
    assert generic_quadrics(6, 6, seed=4).generators == generic_quadrics(6, 6, seed=4).generators
    assert hilbert_series(generic_quadrics(6, 6, seed=4)) == HilbertSeries([1, 6, 9])


@settings(max_examples=500, deadline=None)
@given(st.data())
def test_rank_even_and_matches_sympy(data):
    n = data.draw(st.integers(2, 8))
    q = data.draw(elements(n, 2, max_terms=8, nonzero=True))
    A = to_alternating(q)
    r = quadric_rank(q)
    assert r % 2 == 0
    assert r == sympy.Matrix(A.rows).rank()


@settings(max_examples=500, deadline=None)
@given(st.data())
def test_pfaffian_squared_is_sympy_determinant(data):
    n = data.draw(st.sampled_from([2, 4, 6, 8]))
    q = data.draw(elements(n, 2, max_terms=10, nonzero=True))
    A = to_alternating(q)
    assert pfaffian(A) ** 2 == sympy.Matrix(A.rows).det()


@settings(max_examples=500, deadline=None)
@given(st.data())
def test_decomposition_round_trip(data):
    n = data.draw(st.integers(2, 8))
    q = data.draw(elements(n, 2, max_terms=8, nonzero=True))
    d = decompose(q)
    assert d.recompose() == q
    assert len(d.factors) * 2 == quadric_rank(q)
    leads = [monomial(*f.pivot) for f in d.factors]
    assert all(d.order.compare(a, b) > 0 for a, b in zip(leads, leads[1:]))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_rank_invariant_under_change(data):
    n = data.draw(st.integers(2, 6))
    q = data.draw(elements(n, 2, max_terms=6, nonzero=True))
    C = data.draw(changes(n))
    assert quadric_rank(substitute(q, C)) == quadric_rank(q)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_rank_drops_under_elimination(data):
    n = data.draw(st.integers(3, 6))
    q = data.draw(elements(n, 2, max_terms=6, nonzero=True))
    form = data.draw(linear_forms(n))
    image = _eliminate(Ideal(n, [q]), form).generators
    assert all(quadric_rank(g) <= quadric_rank(q) for g in image if g)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_rank_two_quadrics_factor(data):
    n = data.draw(st.integers(2, 6))
    a, b = data.draw(linear_forms(n)), data.draw(linear_forms(n))
    q = a.to_element() * b.to_element()
    if q.is_zero():
        return
    l1, l2 = linear_factors(q)
    assert l1.to_element() * l2.to_element() == q
