import random

from ribbonpoly.generate import named_graphs
from ribbonpoly.search import appendix_graph, whitehead_diagram
from ribbonpoly.verify import (check_bracket, check_duality, check_other_expansions, check_signed,
                               check_structural, graph_population, orders_for, run_suites, worker_count)


def test_orders_are_distinct():
    G = appendix_graph()
    orders = orders_for(G, random.Random(0))
    assert len(set(orders)) == 3 and all(sorted(o) == list(G.edges) for o in orders)
    assert orders_for(named_graphs()["bridge"], random.Random(0)) == [("e1",)]


def test_population_sizes():
    assert len(graph_population(2, 0)) == 66
    pop = graph_population(5, 10, seed=1)
    assert len(pop) == 66 + 1728 + 10
    assert all(4 <= G.e <= 5 for G in pop[-10:])


def test_checks_pass_on_fixtures():
    G = appendix_graph()
    orders = orders_for(G, random.Random(1))
    assert check_signed(G, orders) == []
    assert check_other_expansions(G, orders) == []
    assert check_duality(G, orders[1]) == []
    assert check_structural(G, orders[2]) == []
    assert check_bracket(whitehead_diagram()) == []


def test_checks_detect_a_wrong_graph():
    # a signed check against the wrong sign pattern must fail
    G = appendix_graph()
    H = G.with_signs({"e1": -1})
    from ribbonpoly import verify
    from ribbonpoly.oracle import signed_br

    orig = verify.signed_br
    verify.signed_br = lambda _: signed_br(H)
    try:
        assert check_signed(G, [G.edges])
    finally:
        verify.signed_br = orig


def test_worker_count(monkeypatch):
    monkeypatch.setenv("RIBBON_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("RIBBON_THREADS", "0")
    assert worker_count() >= 1


def test_run_suites_parallel_matches_serial():
    serial = run_suites(2, 0, seed=5, workers=1, n_diagrams=4)
    parallel = run_suites(2, 0, seed=5, workers=2, n_diagrams=4)
    assert [(r.name, r.checked, r.failures) for r in serial] == \
        [(r.name, r.checked, r.failures) for r in parallel]
    assert all(r.passed for r in serial)
