"""Partial duality, deletion and contraction."""

from __future__ import annotations

from typing import Iterable

from .ribbon import RibbonGraph, boundary_trace

__all__ = ["partial_dual", "natural_dual", "delete", "contract", "crossing", "links"]


def _check_edges(G: RibbonGraph, edges: Iterable[str]) -> frozenset:
    edges = frozenset(edges)
    unknown = edges - set(G.edges)
    if unknown:
        raise KeyError(f"unknown edge(s) {sorted(unknown)}")
    return edges


def partial_dual(G: RibbonGraph, subset: Iterable[str]) -> RibbonGraph:
    """Partial dual with respect to ``subset``; signs on ``subset`` are flipped."""
    subset = _check_edges(G, subset)
    circles = boundary_trace(G, subset)
    signs = {e: (-s if e in subset else s) for e, s in G.sign_items}
    return RibbonGraph.make(circles, signs)


def natural_dual(G: RibbonGraph) -> RibbonGraph:
    return partial_dual(G, G.edges)


def delete(G: RibbonGraph, edge: str) -> RibbonGraph:
    _check_edges(G, [edge])
    circles = [tuple(a for a in c if a.edge != edge) for c in G.circles]
    return RibbonGraph.make(circles, {e: s for e, s in G.sign_items if e != edge})


def contract(G: RibbonGraph, edge: str) -> RibbonGraph:
    _check_edges(G, [edge])
    return delete(partial_dual(G, [edge]), edge)


def crossing(G: RibbonGraph, e: str, f: str) -> bool:
    """Whether the arrows of ``e`` and ``f`` alternate around the single circle of G."""
    if G.v != 1:
        raise ValueError(f"crossing needs a one-vertex ribbon graph, got v={G.v}")
    if e == f:
        raise ValueError("crossing needs two distinct edges")
    _check_edges(G, [e, f])
    word = [a.edge for a in G.circles[0] if a.edge in (e, f)]
    # alternating means no two equal labels are cyclically adjacent
    return all(word[i] != word[(i + 1) % 4] for i in range(4))


def links(G: RibbonGraph, quasi_tree: Iterable[str], e: str, f: str) -> bool:
    """Whether ``e`` and ``f`` cross in the partial dual along a quasi-tree."""
    dual = partial_dual(G, quasi_tree)
    if dual.v != 1:
        raise ValueError("the given edge set does not span a quasi-tree")
    return crossing(dual, e, f)
