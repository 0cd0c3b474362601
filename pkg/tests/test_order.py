import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from emptymono.bounds import int_root_ceil
from emptymono.generate import generate, simplex_hulled
from emptymono.geometry import integer_table
from emptymono.hull import build_hull
from emptymono.order import (dilworth_chain, facet_order, generalized_order_lemma, longest_chain,
                             order_lemma_simplex)
from emptymono.triangulation import validate_complex

from conftest import strictly_inside


def _setup(eta, d, seed):
    inst = simplex_hulled(eta, d, seed, box=10_000)
    pts = list(inst.points)
    return pts, integer_table(pts), list(range(d + 1)), list(range(d + 1, d + 1 + eta))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 5000), st.sampled_from([2, 3]), st.integers(1, 12))
def test_facet_order_is_a_strict_partial_order(seed, d, eta):
    pts, tab, cont, inner = _setup(eta, d, seed)
    F = cont[1:]
    order = facet_order(tab, cont, F, inner)
    for p, q in itertools.permutations(inner, 2):
        # independent containment oracle
        assert order.less(p, q) == strictly_inside(tab[p], [tab[v] for v in F] + [tab[q]])
        assert not (order.less(p, q) and order.less(q, p))
    for p, q, r in itertools.permutations(inner, 3):
        if order.less(p, q) and order.less(q, r):
            assert order.less(p, r)


@pytest.mark.parametrize("seed", range(8))
def test_longest_chain_matches_dag_oracle(seed):
    pts, tab, cont, inner = _setup(14, 3, seed)
    order = facet_order(tab, cont, cont[:3], inner)
    G = nx.DiGraph()
    G.add_nodes_from(inner)
    G.add_edges_from((p, q) for p in inner for q in order.above[p])
    ch = longest_chain(order, inner)
    assert len(ch) == len(nx.dag_longest_path(G))
    assert order.is_chain(ch)
    assert all(order.less(a, b) for a, b in zip(ch, ch[1:]))


@pytest.mark.parametrize("d,eta,seed", [(2, 9, 0), (2, 25, 1), (3, 16, 2), (3, 25, 3), (4, 16, 4)])
def test_dilworth_chain_length(d, eta, seed):
    pts, tab, cont, inner = _setup(eta, d, seed)
    res = dilworth_chain(tab, cont, inner)
    assert len(res.chain) >= int_root_ceil(eta, d - 1)
    order = facet_order(tab, cont, res.facet, inner)
    assert order.is_chain(res.chain)


@pytest.mark.parametrize("d,eta,seed", [(2, 12, 0), (3, 10, 1), (3, 20, 5)])
def test_order_lemma_simplex(d, eta, seed):
    pts = list(simplex_hulled(eta, d, seed).points)
    res = order_lemma_simplex(pts)
    assert validate_complex(res.complex, pts) is None
    hull_ids = set(range(d + 1))
    assert res.touching == sum(1 for s in res.complex.top_simplices if s & hull_ids)
    assert res.certificate.holds and res.certificate.details["headline"]


@pytest.mark.parametrize("d,n,seed", [(2, 20, 0), (3, 18, 1), (3, 30, 2)])
def test_generalized_order_lemma(d, n, seed):
    pts = list(generate("random-ball", n, d, seed=seed).points)
    h = build_hull(pts)
    res = generalized_order_lemma(pts, h)
    assert validate_complex(res.complex, pts) is None
    assert res.touching == sum(1 for s in res.complex.top_simplices if s & h.vertices)
    assert res.certificate.holds
