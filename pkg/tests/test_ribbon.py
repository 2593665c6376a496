import random

import pytest
from hypothesis import given

from conftest import ribbon_graphs
from ribbonpoly.duality import partial_dual
from ribbonpoly.ribbon import (ParseError, RibbonGraph, boundary_trace, canonical_form, counts,
                               disjoint_union, equivalent, is_orientable, parse, relabel, serialize,
                               spanning_sub, underlying_graph)
from ribbonpoly.search import appendix_graph, load_fixture


def test_parse_loops():
    G = parse("circle: e1> e1<")
    assert (G.v, G.e) == (1, 1) and G.is_untwisted("e1")
    H = parse("circle: e1> e1>")
    assert (H.v, H.e) == (1, 1) and not H.is_untwisted("e1")


def test_parse_signs_and_comments():
    G = parse("# comment\nsign e2 -\ncircle: e1> e2>   # trailing\ncircle: e2< e1<\n")
    assert G.signs == {"e1": 1, "e2": -1}
    assert G.edges == ("e1", "e2")


@pytest.mark.parametrize("text", [
    "circle: e1>",
    "circle: e1> e1> e1>",
    "circle: e1 e1>",
    "sign e1 *\ncircle: e1> e1<",
    "sign e9 -\ncircle: e1> e1<",
    "vertex: e1> e1<",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_round_trip_fixture():
    text = load_fixture("appendix_a1.rg")
    G = parse(text)
    strip = lambda s: [ln.split() for ln in s.splitlines() if ln.strip() and not ln.startswith("#")]
    assert strip(serialize(G)) == strip(text)
    assert parse(serialize(G)) == G


def test_natural_edge_order():
    G = parse("circle: e10> e2> e10< e2<")
    assert G.edges == ("e2", "e10")


def test_counts_of_small_surfaces(named):
    assert counts(named["vertex"]) == counts(named["vertex"]).__class__(1, 0, 1, 0, 0, 1, 0)
    c = counts(named["untwisted_loop"])
    assert (c.f, c.t) == (2, 0)
    c = counts(named["twisted_loop"])
    assert (c.f, c.t) == (1, 1)
    c = counts(named["torus"])
    assert (c.f, c.t, c.euler_genus) == (1, 0, 2)
    c = counts(named["projective_pair"])
    assert c.t == 1


def test_boundary_trace_examples(named):
    assert len(boundary_trace(named["untwisted_loop"], {"e1"})) == 2
    assert len(boundary_trace(named["twisted_loop"], {"e1"})) == 1
    G = named["crossed_three"]
    circles = boundary_trace(G, set())
    assert len(circles) == 1 and len(circles[0]) == 6


def test_spanning_subgraphs():
    G = appendix_graph()
    assert spanning_sub(G, G.edges) == G
    assert spanning_sub(G, []).e == 0 and spanning_sub(G, []).v == G.v
    assert counts(G, {"e3"}).f == 1


def test_orientability(named):
    assert is_orientable(named["untwisted_loop"]) is True
    assert is_orientable(named["twisted_loop"]) is False
    assert is_orientable(named["bridge"]) is True
    assert is_orientable(appendix_graph()) is False


def test_underlying_graph(named):
    H = underlying_graph(named["twisted_loop"])
    assert H.n_vertices == 1 and len(H.edges) == 1 and H.edges[0][:2] == (0, 0)
    two = RibbonGraph.make([["e1>", "e2>"], ["e2<", "e1<"]])
    H = underlying_graph(two)
    assert H.n_vertices == 2 and sorted(e[:2] for e in H.edges) == [(0, 1), (0, 1)]
    H = underlying_graph(appendix_graph())
    assert H.n_vertices == 2 and len(H.edges) == 4


def test_canonical_form_ignores_presentation():
    G = parse("circle: e1> e2> e1< e2<\ncircle: e3> e3<")
    H = parse("circle: e3< e3>\ncircle: e2> e1< e2< e1>")
    K = parse("circle: e2> e1> e2< e1<\ncircle: e3> e3<")
    assert equivalent(G, H)
    # reversing a circle swaps arrow senses but keeps the graph
    assert equivalent(G, K)
    assert not equivalent(G, parse("circle: e1> e2> e1> e2<\ncircle: e3> e3<"))
    assert not equivalent(G, G.with_signs({"e1": -1}))


def test_relabel_and_union(named):
    G = relabel(named["torus"], {"e1": "a", "e2": "b"})
    assert G.edges == ("a", "b")
    U = disjoint_union(named["twisted_loop"], relabel(named["untwisted_loop"], {"e1": "e2"}))
    assert (U.v, U.e, counts(U).k) == (2, 2, 2)


@given(ribbon_graphs(max_edges=5, connected=False))
def test_faces_of_subgraph_are_vertices_of_partial_dual(G):
    rng = random.Random(G.e)
    sub = [e for e in G.edges if rng.random() < 0.5]
    assert counts(G, sub).f == partial_dual(G, sub).v


@given(ribbon_graphs(max_edges=5, connected=False))
def test_euler_genus_is_even_when_orientable(G):
    c = counts(G)
    assert c.euler_genus >= 0
    if c.t == 0:
        assert c.euler_genus % 2 == 0
    assert c.r == c.v - c.k and c.n == c.e - c.r


@given(ribbon_graphs(max_edges=4, connected=False))
def test_canonical_form_invariant_under_rotation(G):
    circles = [c[1:] + c[:1] if c else c for c in G.circles][::-1]
    assert canonical_form(RibbonGraph.make(circles, G.signs)) == canonical_form(G)
