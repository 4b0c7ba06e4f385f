import itertools
import random

import pytest

from extkoszul.graphs import (
    Graph, canonical_form, edge_ideal, enumerate_graphs, independence_polynomial, labelled_count,
    parse_graph_text, path, preset, search_by_series,
)
from extkoszul.groebner import hilbert_series
from extkoszul.parse import parse_ideal
from extkoszul.series import HilbertSeries


def brute_independent_sets(g: Graph):
    counts = [0] * (g.v + 1)
    edges = g.sorted_edges()
    for k in range(g.v + 1):
        for s in itertools.combinations(range(1, g.v + 1), k):
            ss = set(s)
            if not any(a in ss and b in ss for a, b in edges):
                counts[k] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def brute_canonical(g: Graph):
    best = None
    for perm in itertools.permutations(range(1, g.v + 1)):
        edges = tuple(sorted(tuple(sorted((perm[a - 1], perm[b - 1]))) for a, b in g.sorted_edges()))
        if best is None or edges < best:
            best = edges
    return best


def test_edge_ideal_examples():
    assert sorted(map(str, edge_ideal(path(7)).generators)) == sorted(
        map(str, parse_ideal("e1*e2, e2*e3, e3*e4, e4*e5, e5*e6, e6*e7", 7).generators)
    )
    assert not edge_ideal(Graph(3, [])).generators
    assert len(edge_ideal(preset("triangle")).generators) == 3


def test_independence_examples():
    assert independence_polynomial(preset("triangle+triangle")) == HilbertSeries([1, 6, 9])
    assert independence_polynomial(path(7)) == HilbertSeries([1, 7, 15, 10, 1])


def test_multiplicative_over_disjoint_union():
    rng = random.Random(3)
    for _ in range(30):
        a = Graph(rng.randint(1, 5), [])
        b = Graph(rng.randint(1, 5), [])
        a = Graph(a.v, [e for e in itertools.combinations(range(1, a.v + 1), 2) if rng.random() < 0.5])
        b = Graph(b.v, [e for e in itertools.combinations(range(1, b.v + 1), 2) if rng.random() < 0.5])
        assert independence_polynomial(a.disjoint_union(b)) == independence_polynomial(a) * independence_polynomial(b)


@pytest.mark.parametrize("v", [3, 4, 5])
def test_counting_agrees_with_brute_force_and_standard_monomials(v):
    for e in range(0, v * (v - 1) // 2 + 1):
        for g in enumerate_graphs(v, e):
            poly = independence_polynomial(g)
            assert poly.to_json() == brute_independent_sets(g)
            assert hilbert_series(edge_ideal(g)) == poly


def test_standard_monomials_agree_on_sampled_larger_graphs():
    rng = random.Random(11)
    for _ in range(40):
        v = rng.randint(6, 8)
        g = Graph(v, [e for e in itertools.combinations(range(1, v + 1), 2) if rng.random() < 0.3])
        assert hilbert_series(edge_ideal(g)) == independence_polynomial(g)


def test_enumeration_counts():
    assert labelled_count(6, 6) == 5005
    assert sum(1 for _ in enumerate_graphs(6, 6)) == 5005
    assert len(list(enumerate_graphs(3, 3, dedup=True))) == 1
    assert len(list(enumerate_graphs(4, 3, dedup=True))) == 3


@pytest.mark.parametrize("v, max_e", [(4, 6), (5, 7), (6, 4)])
def test_isomorphism_classes_match_brute_force(v, max_e):
    for e in range(0, max_e + 1):
        ours, brute = {}, {}
        for g in enumerate_graphs(v, e):
            ours.setdefault(canonical_form(g), set()).add(brute_canonical(g))
            brute.setdefault(brute_canonical(g), set()).add(canonical_form(g))
        assert all(len(s) == 1 for s in ours.values())
        assert all(len(s) == 1 for s in brute.values())


def test_search_examples():
    assert search_by_series(6, 6, HilbertSeries([1, 6, 9, 1])) == []
    found = search_by_series(6, 6, HilbertSeries([1, 6, 9]))
    assert len(found) == 1 and found[0].graph.is_isomorphic(preset("triangle+triangle"))


def test_search_three_classes_with_padding():
    base = HilbertSeries([1, 6, 9])
    found = search_by_series(range(6, 9), 6, lambda v: base.times_one_plus_t(v - 6), ignore_isolated=True)
    assert len(found) == 3
    assert all(c.graph.max_degree() <= 2 for c in found)


def test_search_shards_cover_whole_range():
    target = HilbertSeries([1, 5, 6, 1])
    whole = search_by_series(5, 4, target)
    parts = search_by_series(5, 4, target, start=0, stop=100) + search_by_series(5, 4, target, start=100)
    assert sum(c.labelled_hits for c in whole) == sum(c.labelled_hits for c in parts)


def test_presets_and_file_format():
    assert preset("path:2").sorted_edges() == [(1, 2)]
    assert preset("path:7").is_isomorphic(path(7))
    g = preset("triangle+path:4")
    assert parse_graph_text(g.to_text()) == g
