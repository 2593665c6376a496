"""Quasi-trees, activities and quasi-tree expansions.

A quasi-tree is a spanning subgraph with a single boundary component.
Given a total order on the edges, every spanning subgraph is assigned to
exactly one quasi-tree by the binary tree of partial resolutions, and the
polynomials of :mod:`ribbonpoly.oracle` regroup as sums over quasi-trees.

    >>> from ribbonpoly.ribbon import parse
    >>> G = parse("circle: e1> e1>")
    >>> sorted(sorted(q) for q in quasi_trees(G))
    [[], ['e1']]
    >>> str(qt_expansion_signed(G))
    '1 + y*z'
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .duality import partial_dual
from .generate import is_connected
from .poly import (AbstractGraph, LaurentPoly, edge_var, multivariate_tutte, pow_half,
                   rank_poly, tutte, var)
from .ribbon import RibbonGraph, counts

__all__ = [
    "PartialResolution",
    "ActivityPartition",
    "QuasiTreeRecord",
    "Leaf",
    "is_quasi_tree",
    "quasi_trees",
    "resolution_tree",
    "nugatory_test",
    "activities",
    "subgraph_decomposition",
    "build_GQ",
    "quasi_tree_records",
    "signed_terms",
    "qt_expansion_signed",
    "qt_expansion_w1",
    "qt_expansion_multivariate",
    "N_term",
    "q1_N_term",
    "q1_expansion",
    "phi",
]


def _order(G: RibbonGraph, order: Sequence[str] | None) -> tuple:
    if order is None:
        return G.edges
    order = tuple(order)
    if sorted(order) != sorted(G.edges) or len(set(order)) != len(order):
        raise ValueError(f"order must list every edge exactly once: {order}")
    return order


def _require_connected(G: RibbonGraph):
    if not is_connected(G):
        raise ValueError("quasi-tree operations need a connected ribbon graph")


def is_quasi_tree(G: RibbonGraph, subset: Iterable[str]) -> bool:
    return G._frame.faces(G.edge_mask(subset)) == 1


def _qt_masks(G: RibbonGraph) -> list:
    fr = G._frame
    return [m for m in range(1 << G.e) if fr.faces(m) == 1]


def quasi_trees(G: RibbonGraph) -> set:
    """All quasi-trees of a connected graph, as frozensets of edge labels."""
    _require_connected(G)
    return {G.mask_edges(m) for m in _qt_masks(G)}


# ---------------------------------------------------------------------------
# partial resolutions


@dataclass(frozen=True)
class PartialResolution:
    """Assignment edge -> 0, 1 or unresolved, stored as two bitmasks.

    ``fixed`` marks resolved edges and ``value`` the resolved edges set to 1.
    Its class is the set of full resolutions (edge subsets) agreeing on ``fixed``.
    """

    graph: RibbonGraph
    fixed: int = 0
    value: int = 0

    def state(self, edge: str):
        i = self.graph._frame.index[edge]
        if not self.fixed >> i & 1:
            return None
        return self.value >> i & 1

    def resolve(self, edge: str, bit: int) -> "PartialResolution":
        i = self.graph._frame.index[edge]
        if self.fixed >> i & 1:
            raise ValueError(f"edge {edge!r} is already resolved")
        return PartialResolution(self.graph, self.fixed | 1 << i, self.value | (bit & 1) << i)

    @property
    def unresolved(self) -> frozenset:
        free = ((1 << self.graph.e) - 1) & ~self.fixed
        return self.graph.mask_edges(free)

    def contains(self, subset) -> bool:
        mask = subset if isinstance(subset, int) else self.graph.edge_mask(subset)
        return mask & self.fixed == self.value

    def label(self, order: Sequence[str] | None = None) -> str:
        """String such as ``*10`` listing the states in edge order."""
        s = [self.state(e) for e in _order(self.graph, order)]
        return "".join("*" if b is None else str(b) for b in s)


def _class_has_quasi_tree(G: RibbonGraph, fixed: int, value: int) -> bool:
    fr = G._frame
    memo = fr.__dict__.setdefault("qt_class_memo", {})
    key = (fixed, value)
    if key in memo:
        return memo[key]
    free = ((1 << G.e) - 1) & ~fixed
    sub = free
    found = False
    while True:
        if fr.faces(value | sub) == 1:
            found = True
            break
        if sub == 0:
            break
        sub = (sub - 1) & free
    memo[key] = found
    return found


def nugatory_test(rho: PartialResolution, edge: str) -> bool:
    """True iff one of the two resolutions of ``edge`` leaves no quasi-tree in the class."""
    if rho.state(edge) is not None:
        raise ValueError(f"edge {edge!r} is already resolved")
    G = rho.graph
    r0, r1 = rho.resolve(edge, 0), rho.resolve(edge, 1)
    return not (_class_has_quasi_tree(G, r0.fixed, r0.value)
                and _class_has_quasi_tree(G, r1.fixed, r1.value))


@dataclass(frozen=True)
class Leaf:
    resolution: PartialResolution
    quasi_tree: frozenset


@lru_cache(maxsize=512)
def _leaves(G: RibbonGraph, order: tuple) -> tuple:
    fr = G._frame
    leaves = []

    def grow(rho: PartialResolution, pos: int):
        # edges are resolved from the highest in the order downwards
        while pos >= 0 and nugatory_test(rho, order[pos]):
            pos -= 1
        if pos < 0:
            free = ((1 << G.e) - 1) & ~rho.fixed
            found = [rho.value | sub for sub in _submasks(free) if fr.faces(rho.value | sub) == 1]
            if len(found) != 1:
                raise AssertionError(f"leaf {rho.label(order)} holds {len(found)} quasi-trees")
            leaves.append(Leaf(rho, G.mask_edges(found[0])))
            return
        e = order[pos]
        grow(rho.resolve(e, 0), pos - 1)
        grow(rho.resolve(e, 1), pos - 1)

    grow(PartialResolution(G), len(order) - 1)
    return tuple(leaves)


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def resolution_tree(G: RibbonGraph, order: Sequence[str] | None = None) -> list:
    """Leaves of the binary tree of partial resolutions, each with its quasi-tree."""
    _require_connected(G)
    return list(_leaves(G, _order(G, order)))


# ---------------------------------------------------------------------------
# activities


@dataclass(frozen=True)
class ActivityPartition:
    internal_live_orientable: frozenset
    internal_live_nonorientable: frozenset
    internal_dead: frozenset
    external_live_orientable: frozenset
    external_live_nonorientable: frozenset
    external_dead: frozenset

    @property
    def contracted(self) -> frozenset:
        """Internally dead plus internally live non-orientable edges."""
        return self.internal_dead | self.internal_live_nonorientable

    @property
    def live_orientable(self) -> frozenset:
        return self.internal_live_orientable | self.external_live_orientable

    def as_tuple(self) -> tuple:
        return (self.internal_live_orientable, self.internal_live_nonorientable, self.internal_dead,
                self.external_live_orientable, self.external_live_nonorientable, self.external_dead)


def activities(G: RibbonGraph, quasi_tree: Iterable[str], order: Sequence[str] | None = None) -> ActivityPartition:
    """Classify every edge relative to a quasi-tree and a total order."""
    Q = frozenset(quasi_tree)
    order = _order(G, order)
    D = partial_dual(G, Q)
    if D.v != 1:
        raise ValueError("the given edge set does not span a quasi-tree")
    rank = {e: i for i, e in enumerate(order)}
    pos: dict = {}
    for p, a in enumerate(D.circles[0]):
        pos.setdefault(a.edge, []).append((p, a.forward))

    def crosses(e, f):
        (a1, _), (a2, _) = pos[e]
        inside = [a1 < p < a2 for p, _ in pos[f]]
        return inside[0] != inside[1]

    buckets = [set() for _ in range(6)]
    for e in order:
        live = not any(crosses(e, f) for f in order[:rank[e]])
        (_, d1), (_, d2) = pos[e]
        orientable = d1 != d2
        if e in Q:
            idx = (0 if orientable else 1) if live else 2
        else:
            idx = (3 if orientable else 4) if live else 5
        buckets[idx].add(e)
    return ActivityPartition(*(frozenset(b) for b in buckets))


def subgraph_decomposition(G: RibbonGraph, order: Sequence[str] | None, subset: Iterable[str]) -> tuple:
    """Return ``(Q, S1, S2)`` with ``subset = contracted(Q) + S1 + S2``."""
    F = frozenset(subset)
    order = _order(G, order)
    for leaf in resolution_tree(G, order):
        if leaf.resolution.contains(F):
            act = activities(G, leaf.quasi_tree, order)
            return (leaf.quasi_tree, F & act.internal_live_orientable, F & act.external_live_orientable)
    raise AssertionError("subgraph not covered by any leaf")


def build_GQ(G: RibbonGraph, quasi_tree: Iterable[str], order: Sequence[str] | None = None,
             act: ActivityPartition | None = None) -> AbstractGraph:
    """Underlying graph with the contracted class shrunk to points; edges are the internal live orientable ones."""
    act = act or activities(G, quasi_tree, order)
    fr = G._frame
    ds = DisjointSet(range(G.v))
    for e in act.contracted:
        c1, c2, _ = fr.ends[fr.index[e]]
        ds.merge(c1, c2)
    roots = sorted({ds[c] for c in range(G.v)})
    new = {r: i for i, r in enumerate(roots)}
    edges = []
    for e in G.edges:
        if e in act.internal_live_orientable:
            c1, c2, _ = fr.ends[fr.index[e]]
            edges.append((new[ds[c1]], new[ds[c2]], G.signs[e], e))
    return AbstractGraph(len(roots), tuple(edges))


# ---------------------------------------------------------------------------
# expansions


@dataclass(frozen=True)
class QuasiTreeRecord:
    edges: frozenset
    activity: ActivityPartition
    GQ: AbstractGraph
    k_contracted: int
    f_contracted: int
    n_contracted: int
    genus_contracted: int  # (k - f + n) of the contracted spanning subgraph


def quasi_tree_records(G: RibbonGraph, order: Sequence[str] | None = None) -> list:
    """One record per quasi-tree, in leaf order of the resolution tree."""
    order = _order(G, order)
    out = []
    for leaf in resolution_tree(G, order):
        act = activities(G, leaf.quasi_tree, order)
        c = counts(G, act.contracted)
        out.append(QuasiTreeRecord(leaf.quasi_tree, act, build_GQ(G, leaf.quasi_tree, order, act),
                                   c.k, c.f, c.n, c.k - c.f + c.n))
    return out


def _neg(G, edges) -> int:
    return sum(1 for e in edges if G.signs[e] < 0)


def _pos(G, edges) -> int:
    return sum(1 for e in edges if G.signs[e] > 0)


def signed_terms(G: RibbonGraph, rec: QuasiTreeRecord) -> tuple:
    """The two factors ``(N, S)`` of one quasi-tree's contribution to the signed expansion."""
    x, y, z = var("x"), var("y"), var("z")
    act = rec.activity
    m = _neg(G, act.contracted)
    eo = act.external_live_orientable
    N = (pow_half(x, -_neg(G, G.edges)) * pow_half(y, _neg(G, G.edges))
         * x**m * y**(rec.n_contracted - m) * z**rec.genus_contracted
         * (1 + x)**_neg(G, eo) * (1 + y)**_pos(G, eo))
    GQ = rec.GQ
    sq = pow_half(x, 1) * pow_half(y, 1)
    shift = GQ.rank() + _neg(G, act.internal_live_orientable)
    S = (pow_half(x, shift) * pow_half(y, -shift)
         * rank_poly(GQ, 1, pow_half(x, -1) * pow_half(y, 1), sq, sq * z**2))
    return N, S


def _check_halves(p: LaurentPoly, n_negative: int) -> LaurentPoly:
    # x and y carry half-integral powers exactly when the number of negative edges is odd
    for mono, _ in p.items():
        for name, e2 in mono:
            if name in ("x", "y") and e2 % 2 != n_negative % 2:
                raise AssertionError(f"unexpected exponent parity in {p}")
            if name not in ("x", "y") and e2 % 2:
                raise AssertionError(f"fractional power of {name} in {p}")
    return p


def qt_expansion_signed(G: RibbonGraph, order: Sequence[str] | None = None) -> LaurentPoly:
    """Quasi-tree expansion of the shifted signed polynomial ``R_s(G; x+1, y, z)``."""
    _require_connected(G)
    total = LaurentPoly()
    for rec in quasi_tree_records(G, order):
        N, S = signed_terms(G, rec)
        total = total + N * S
    return _check_halves(total, _neg(G, G.edges))


def qt_expansion_w1(G: RibbonGraph, order: Sequence[str] | None = None) -> LaurentPoly:
    """Quasi-tree expansion of ``R(G; x, y, z, 1)`` for an all-positive graph."""
    _require_connected(G)
    if any(s < 0 for s in G.signs.values()):
        raise ValueError("qt_expansion_w1 needs an all-positive ribbon graph")
    x, y, z = var("x"), var("y"), var("z")
    total = LaurentPoly()
    for rec in quasi_tree_records(G, order):
        total = total + (y**rec.n_contracted * z**rec.genus_contracted
                         * (1 + y)**len(rec.activity.external_live_orientable)
                         * tutte(rec.GQ, x, y * z**2 + 1))
    return total


def qt_expansion_multivariate(G: RibbonGraph, order: Sequence[str] | None = None) -> LaurentPoly:
    """Quasi-tree expansion of ``Z(G; q, beta, c)``."""
    _require_connected(G)
    q, c = var("q"), var("c")
    total = LaurentPoly()
    for rec in quasi_tree_records(G, order):
        term = c**rec.f_contracted
        for e in rec.activity.contracted:
            term = term * edge_var("beta", e)
        for e in rec.activity.external_live_orientable:
            term = term * (1 + c * edge_var("beta", e))
        weights = {e: edge_var("beta", e) * c**-1 for e in rec.GQ.labels}
        total = total + term * multivariate_tutte(rec.GQ, q, weights)
    return total


def _alpha(alpha, e):
    if alpha is None:
        return edge_var("alpha", e)
    if isinstance(alpha, dict):
        return LaurentPoly.coerce(alpha[e]) if e in alpha else edge_var("alpha", e)
    return LaurentPoly.coerce(alpha)


def _record_for(G, quasi_tree, order) -> QuasiTreeRecord:
    Q = frozenset(quasi_tree)
    act = activities(G, Q, order)
    c = counts(G, act.contracted)
    return QuasiTreeRecord(Q, act, build_GQ(G, Q, order, act), c.k, c.f, c.n, c.k - c.f + c.n)


def N_term(G: RibbonGraph, quasi_tree: Iterable[str], order: Sequence[str] | None = None,
           q=None, alpha=None, c=None) -> LaurentPoly:
    """Contribution of one quasi-tree to ``Z_s(G; q, alpha, c)``.

    ``alpha`` may be a single value for every edge or a mapping edge -> value.
    """
    qv = var("q") if q is None else LaurentPoly.coerce(q)
    cv = var("c") if c is None else LaurentPoly.coerce(c)
    rec = _record_for(G, quasi_tree, _order(G, order))
    act = rec.activity
    term = cv**rec.f_contracted
    for e in G.edges:
        a = _alpha(alpha, e)
        neg = G.signs[e] < 0
        if neg:
            term = term * a * pow_half(qv, -1)
        if e in act.contracted:
            term = term * (qv * a**-1 if neg else a)
        if e in act.external_live_orientable:
            term = term * (1 + qv * cv * a**-1 if neg else 1 + a * cv)
    weights = {e: (qv * (_alpha(alpha, e) * cv)**-1 if G.signs[e] < 0 else _alpha(alpha, e) * cv**-1)
               for e in rec.GQ.labels}
    return term * multivariate_tutte(rec.GQ, qv, weights)


def q1_N_term(G: RibbonGraph, quasi_tree: Iterable[str], order: Sequence[str] | None = None,
              alpha=None, c=None) -> LaurentPoly:
    """Closed form of a quasi-tree's contribution at ``q = 1``."""
    cv = var("c") if c is None else LaurentPoly.coerce(c)
    rec = _record_for(G, quasi_tree, _order(G, order))
    act = rec.activity
    io, eo = act.internal_live_orientable, act.external_live_orientable
    term = cv**(rec.f_contracted - len(io))
    for e in G.edges:
        a = _alpha(alpha, e)
        neg = G.signs[e] < 0
        power = (1 if neg else 0)
        if e in act.contracted:
            power += -1 if neg else 1
        if neg and e in (io | eo):
            power -= 1
        term = term * a**power
        if (e in eo and not neg) or (e in io and neg):
            term = term * (1 + a * cv)
        if (e in eo and neg) or (e in io and not neg):
            term = term * (a + cv)
    return term


def live_orientable_of_dual(G: RibbonGraph, quasi_tree: Iterable[str], order: Sequence[str] | None = None) -> tuple:
    """``(dual, L)``: the partial dual along a quasi-tree and its orientable live edges w.r.t. the empty quasi-tree."""
    D = partial_dual(G, quasi_tree)
    act = activities(D, (), _order(G, order))
    return D, act.external_live_orientable


def q1_expansion(G: RibbonGraph, order: Sequence[str] | None = None) -> LaurentPoly:
    """``Z_s(G; 1, alpha, c)`` with one common ``alpha``, summed over quasi-trees of G."""
    _require_connected(G)
    order = _order(G, order)
    a, c = var("alpha"), var("c")
    total = LaurentPoly()
    for Q in sorted(quasi_trees(G), key=lambda s: sorted(G.edges.index(e) for e in s)):
        D, L = live_orientable_of_dual(G, Q, order)
        total = total + (a**_neg(D, D.edges) * (1 + a * c)**_pos(D, L)
                         * (1 + c * a**-1)**_neg(D, L))
    return c * total


def phi(subset: Iterable[str], F: Iterable[str]) -> frozenset:
    """Symmetric difference: the subgraph of the partial dual matching F."""
    return frozenset(subset) ^ frozenset(F)
