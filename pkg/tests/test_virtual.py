import random

import pytest
from hypothesis import given

from conftest import diagrams
from ribbonpoly.duality import partial_dual
from ribbonpoly.quasitree import activities
from ribbonpoly.ribbon import ParseError, equivalent
from ribbonpoly.search import whitehead_connected_sum, whitehead_diagram, whitehead_statesum
from ribbonpoly.virtual import (StateSummary, all_states, build_ribbon, connected_state_expansion,
                                connected_states, connected_states_direct, is_split, kauffman_statesum,
                                live_crossings_by_marks, parse_gauss, resolve_state, ribbon_bracket,
                                serialize_gauss)
from ribbonpoly.poly import var

A, B, d = var("A"), var("B"), var("d")


def test_parse_simple_codes():
    D = parse_gauss("O1+ U1+")
    assert D.crossings == ("1",) and len(D.components) == 1
    U = parse_gauss("()")
    assert U.crossings == () and U.components == ((),)
    assert parse_gauss(serialize_gauss(whitehead_diagram())) == whitehead_diagram()


@pytest.mark.parametrize("text", ["O1+", "O1+ O1+", "O1+ U1-", "X1+ U1+", "O1 U1"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_gauss(text)


def test_crossingless_diagrams():
    U = parse_gauss("()")
    assert resolve_state(U, {})[0] == StateSummary(0, 0, 1)
    assert kauffman_statesum(U) == 1
    assert connected_states(U) == [{}] == connected_states_direct(U)
    assert connected_state_expansion(U) == 1
    assert kauffman_statesum(parse_gauss("()\n()")) == d
    with pytest.raises(ValueError):
        connected_state_expansion(parse_gauss("()\n()"))


def test_whitehead_state_table():
    D = whitehead_diagram()
    assert len(D.crossings) == 3 and len(D.components) == 2 and not is_split(D)
    table = [resolve_state(D, s)[0] for s in all_states(D)]
    assert table[0] == StateSummary(3, 0, 2)
    assert [t.c for t in table] == [2, 1, 1, 1, 1, 2, 1, 1]
    assert kauffman_statesum(D) == whitehead_statesum()
    assert len(connected_states(D)) == 6
    assert connected_state_expansion(D, ("1", "2", "3")) == whitehead_connected_sum() == whitehead_statesum()


def test_ribbon_graph_of_each_state():
    D = whitehead_diagram()
    for s in all_states(D):
        G = build_ribbon(D, s)
        assert G.v == resolve_state(D, s)[0].c
        assert all(G.signs[k] == (1 if s[k] == "A" else -1) for k in D.crossings)
        assert ribbon_bracket(D, s) == kauffman_statesum(D)


@given(diagrams(max_crossings=4))
def test_states_are_partial_duals(D):
    rng = random.Random(serialize_gauss(D))
    states = all_states(D)
    s, t = rng.choice(states), rng.choice(states)
    flipped = [k for k in D.crossings if s[k] != t[k]]
    assert equivalent(build_ribbon(D, t), partial_dual(build_ribbon(D, s), flipped))


@given(diagrams(max_crossings=4))
def test_bracket_correspondence_every_state(D):
    ref = kauffman_statesum(D)
    for s in all_states(D):
        assert ribbon_bracket(D, s) == ref


@given(diagrams(max_crossings=5, connected=True))
def test_connected_state_expansion(D):
    ref = kauffman_statesum(D)
    rng = random.Random(serialize_gauss(D))
    direct = connected_states_direct(D)
    for _ in range(3):
        order = list(D.crossings)
        rng.shuffle(order)
        base = rng.choice(all_states(D))
        assert connected_states(D, base) == direct
        assert connected_state_expansion(D, order, base) == ref


@given(diagrams(max_crossings=5, connected=True))
def test_marks_rule_matches_linking(D):
    rng = random.Random(serialize_gauss(D))
    order = list(D.crossings)
    rng.shuffle(order)
    for s in connected_states_direct(D):
        G = build_ribbon(D, s)
        act = activities(G, (), order)
        assert live_crossings_by_marks(D, s, order) == act.external_live_orientable | act.external_live_nonorientable
