import pytest
from hypothesis import given, strategies as st

from ribbonpoly.poly import (AbstractGraph, LaurentPoly, multivariate_tutte, pow_half, rank_poly,
                             reduce_w, substitute, tutte, var)

x, y, z, w, q = (var(n) for n in "xyzwq")


def test_difference_of_squares():
    assert (x + y) * (x - y) == x**2 - y**2


def test_half_powers():
    assert pow_half(x, 1) * pow_half(x, 1) == x
    assert pow_half(x, -2) * x == 1
    with pytest.raises(ValueError):
        pow_half(x + 1, 1)
    with pytest.raises(ValueError):
        pow_half(2 * x, 1)


def test_reduce_w():
    assert reduce_w(w**3) == w
    assert reduce_w(w + w**2) == 2 * w
    assert reduce_w(1 + w) == 1 + w


def test_substitute():
    assert substitute(x * y, {"x": q}) == q * y
    assert substitute(pow_half(x, 3) * y, {"x": q**2}) == q**3 * y
    # simultaneous, not sequential
    assert substitute(x + y, {"x": y, "y": x}) == x + y


def test_canonical_text_is_stable():
    p = 3 * x * y**-1 + 1 - pow_half(z, 1)
    assert p.to_string() == LaurentPoly(dict(p.items())).to_string()
    assert LaurentPoly().to_string() == "0"


small_polys = st.lists(
    st.tuples(st.integers(-3, 3), st.integers(-2, 2), st.integers(-2, 2)), max_size=4
).map(lambda ts: sum((c * x**a * y**b for c, a, b in ts), LaurentPoly()))


@given(small_polys, small_polys, small_polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a - a == LaurentPoly()


# graphs

edge = AbstractGraph(2, ((0, 1, 1, "a"),))
loop = AbstractGraph(1, ((0, 0, 1, "a"),))
triangle = AbstractGraph(3, ((0, 1, 1, "a"), (1, 2, 1, "b"), (2, 0, 1, "c")))


def test_tutte_small():
    assert tutte(edge) == x
    assert tutte(loop) == y
    assert tutte(triangle) == x**2 + x + y


def test_rank_poly_single_edge():
    a, b, g = var("alpha"), var("beta"), var("gamma")
    assert rank_poly(edge) == a * g + b


def test_rank_poly_homogeneous():
    H = AbstractGraph(3, ((0, 1, 1, "a"), (1, 2, -1, "b"), (1, 1, 1, "c"), (2, 0, -1, "d")))
    a, b = var("alpha"), var("beta")
    lhs = rank_poly(H)
    rhs = a ** len(H.edges) * rank_poly(H, 1, b * a**-1)
    assert lhs == rhs


def test_rank_poly_specialises_to_tutte():
    for H in (edge, loop, triangle):
        assert rank_poly(H, 1, 1, x - 1, y - 1) == tutte(H)


def test_multivariate_tutte_at_unit_weights():
    # Z_T(H; q, 1) counts q^{k(F)} over subsets; for one edge: q^2 + q
    assert multivariate_tutte(edge, q, {"a": 1}) == q**2 + q
    assert multivariate_tutte(loop) == q + q * var("beta:a")


def test_abstract_graph_validation():
    with pytest.raises(ValueError):
        AbstractGraph(1, ((0, 1, 1, "a"),))
    with pytest.raises(ValueError):
        AbstractGraph(2, ((0, 1, 0, "a"),))
