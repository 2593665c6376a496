"""Brute-force spanning-subgraph expansions.

Every polynomial here is a literal sum over all ``2^e`` spanning
subgraphs.  They are slow on purpose and serve as the reference the
quasi-tree expansions are checked against.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .poly import LaurentPoly, edge_var, poly_sum, pow_half, reduce_w, var
from .ribbon import RibbonGraph

__all__ = [
    "SubgraphStats",
    "subgraph_stats",
    "br_poly",
    "signed_br",
    "multivariate_br",
    "signed_multivariate_br",
    "subgraph_monomial",
]


@dataclass(frozen=True)
class SubgraphStats:
    mask: int
    k: int
    f: int
    t: int
    n: int
    e_pos: int
    e_neg: int
    # twice s(F) = e-(F) - e-(complement)
    s2: int


def subgraph_stats(G: RibbonGraph) -> list:
    """Counts for every spanning subgraph, indexed by edge bitmask."""
    fr = G._frame
    neg_mask = sum(1 << i for i, e in enumerate(G.edges) if G.signs[e] < 0)
    total_neg = bin(neg_mask).count("1")
    out = []
    for mask in range(1 << G.e):
        k = fr.components(mask)
        f = fr.faces(mask)
        t = 0 if fr.orientable(mask) else 1
        e = bin(mask).count("1")
        e_neg = bin(mask & neg_mask).count("1")
        out.append(SubgraphStats(mask, k, f, t, e - G.v + k, e - e_neg, e_neg,
                                 e_neg - (total_neg - e_neg)))
    return out


def _k_graph(stats: list) -> int:
    return stats[-1].k


def br_poly(G: RibbonGraph) -> LaurentPoly:
    """``R(G;x,y,z,w) = sum_F (x-1)^{r(G)-r(F)} y^{n(F)} z^{k(F)-f(F)+n(F)} w^{t(F)}`` mod ``w^2-w``."""
    stats = subgraph_stats(G)
    kG = _k_graph(stats)
    agg: dict = defaultdict(int)
    for s in stats:
        agg[(s.k - kG, s.n, s.k - s.f + s.n, s.t)] += 1
    x1 = var("x") - 1
    total = poly_sum(mult * x1**a * LaurentPoly.monomial({"y": b, "z": c, "w": t})
                     for (a, b, c, t), mult in agg.items())
    return reduce_w(total)


def signed_br(G: RibbonGraph) -> LaurentPoly:
    """Signed polynomial with its first argument shifted: ``R_s(G; x+1, y, z)``.

    ``sum_F x^{k(F)-k(G)+s(F)} y^{n(F)-s(F)} z^{k(F)-f(F)+n(F)}`` with
    ``s(F) = (e-(F) - e-(complement))/2``.
    """
    stats = subgraph_stats(G)
    kG = _k_graph(stats)
    agg: dict = defaultdict(int)
    for s in stats:
        agg[(2 * (s.k - kG) + s.s2, 2 * s.n - s.s2, 2 * (s.k - s.f + s.n))] += 1
    return poly_sum(LaurentPoly.monomial({"x": a, "y": b, "z": c}, mult, halves=True)
                    for (a, b, c), mult in agg.items())


def multivariate_br(G: RibbonGraph) -> LaurentPoly:
    """``Z(G;q,beta,c) = sum_F q^{k(F)} prod_{e in F} beta_e c^{f(F)}``."""
    terms = []
    for s in subgraph_stats(G):
        exps = {"q": s.k, "c": s.f}
        exps.update({f"beta:{e}": 1 for i, e in enumerate(G.edges) if s.mask >> i & 1})
        terms.append(LaurentPoly.monomial(exps))
    return poly_sum(terms)


def subgraph_monomial(G: RibbonGraph, stats: SubgraphStats, q=None, alpha=None, c=None) -> LaurentPoly:
    """Term of the signed multivariate sum contributed by one spanning subgraph.

    ``q``, ``c`` and the per-edge ``alpha`` mapping may be given to
    specialise; by default they stay symbolic.
    """
    qv = var("q") if q is None else LaurentPoly.coerce(q)
    cv = var("c") if c is None else LaurentPoly.coerce(c)
    alpha = alpha or {}
    term = pow_half(qv, 2 * stats.k + stats.s2) * cv**stats.f
    for i, e in enumerate(G.edges):
        inside = bool(stats.mask >> i & 1)
        if inside == (G.signs[e] > 0):
            term = term * (LaurentPoly.coerce(alpha[e]) if e in alpha else edge_var("alpha", e))
    return term


def signed_multivariate_br(G: RibbonGraph) -> LaurentPoly:
    """``Z_s(G;q,alpha,c) = sum_F q^{k(F)+s(F)} prod alpha_e c^{f(F)}``.

    The product runs over positive edges of F and negative edges outside F.
    """
    terms = []
    for s in subgraph_stats(G):
        exps = {"q": 2 * s.k + s.s2, "c": 2 * s.f}
        for i, e in enumerate(G.edges):
            inside = bool(s.mask >> i & 1)
            if inside == (G.signs[e] > 0):
                exps[f"alpha:{e}"] = 2
        terms.append(LaurentPoly.monomial(exps, halves=True))
    return poly_sum(terms)
