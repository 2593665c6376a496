from hypothesis import given

from conftest import ribbon_graphs
from ribbonpoly.oracle import br_poly, multivariate_br, signed_br, signed_multivariate_br
from ribbonpoly.poly import edge_var, pow_half, substitute, var
from ribbonpoly.ribbon import counts, disjoint_union, relabel
from ribbonpoly.search import appendix_graph, appendix_signed_br

x, y, z, w, q, c = (var(n) for n in "xyzwqc")


def test_br_small(named):
    assert br_poly(named["vertex"]) == 1
    assert br_poly(named["untwisted_loop"]) == 1 + y
    assert br_poly(named["twisted_loop"]) == 1 + y * z * w
    assert br_poly(named["bridge"]) == x


def test_signed_br_of_negative_loop(named):
    G = named["untwisted_loop"].with_signs({"e1": -1})
    assert signed_br(G) == pow_half(x, -1) * pow_half(y, 1) + pow_half(x, 1) * pow_half(y, 1)


def test_signed_br_of_appendix_graph():
    assert signed_br(appendix_graph()) == appendix_signed_br()


def test_multivariate_small(named):
    assert multivariate_br(named["vertex"]) == q * c
    assert multivariate_br(named["untwisted_loop"]) == q * c + q * edge_var("beta", "e1") * c**2


@given(ribbon_graphs(max_edges=4, connected=False, signed=False))
def test_positive_signed_br_is_shifted_br_at_w1(G):
    assert signed_br(G) == substitute(br_poly(G), {"x": x + 1, "w": 1})
    alphas = {f"alpha:{e}": edge_var("beta", e) for e in G.edges}
    assert substitute(signed_multivariate_br(G), alphas) == multivariate_br(G)


@given(ribbon_graphs(max_edges=3, connected=False), ribbon_graphs(max_edges=2, connected=False))
def test_multivariate_is_multiplicative(G, H):
    H = relabel(H, {e: "f" + e for e in H.edges})
    assert multivariate_br(disjoint_union(G, H)) == multivariate_br(G) * multivariate_br(H)


@given(ribbon_graphs(max_edges=4, connected=False))
def test_signed_multivariate_from_unsigned(G):
    # beta_e = alpha_e on positive edges and q / alpha_e on negative ones
    neg = [e for e in G.edges if G.signs[e] < 0]
    bind = {f"beta:{e}": (edge_var("alpha", e) if G.signs[e] > 0 else q * edge_var("alpha", e) ** -1)
            for e in G.edges}
    factor = pow_half(q, -len(neg))
    for e in neg:
        factor = factor * edge_var("alpha", e)
    assert signed_multivariate_br(G) == factor * substitute(multivariate_br(G), bind)


@given(ribbon_graphs(max_edges=4, connected=False))
def test_signed_br_from_signed_multivariate(G):
    bind = {"q": x * y * z**2, "c": z**-1}
    bind.update({f"alpha:{e}": y * z for e in G.edges})
    c0 = counts(G)
    got = x ** -c0.k * (y * z) ** -G.v * substitute(signed_multivariate_br(G), bind)
    assert got == signed_br(G)
