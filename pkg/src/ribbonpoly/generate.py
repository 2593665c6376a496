"""Small ribbon-graph populations for property checks."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from scipy.cluster.hierarchy import DisjointSet

from .ribbon import Arrow, RibbonGraph, canonical_form

__all__ = ["random_ribbon_graph", "random_population", "all_connected", "is_connected", "named_graphs"]


def is_connected(G: RibbonGraph) -> bool:
    if G.v == 0:
        return True
    ds = DisjointSet(range(G.v))
    for c1, c2, _ in G._frame.ends:
        ds.merge(c1, c2)
    return ds.n_subsets == 1


def random_ribbon_graph(rng: random.Random, n_edges: int, n_vertices: int | None = None,
                        signed: bool = True, connected: bool = True,
                        orientable: bool | None = None) -> RibbonGraph:
    """Draw a random ribbon graph with ``n_edges`` edges labelled e1..en."""
    while True:
        v = n_vertices if n_vertices is not None else rng.randint(1, n_edges + 1)
        labels = [f"e{i}" for i in range(1, n_edges + 1)]
        circles: list = [[] for _ in range(v)]
        for lab in labels:
            for _ in range(2):
                c = circles[rng.randrange(v)]
                c.insert(rng.randint(0, len(c)), Arrow(lab, rng.random() < 0.5))
        signs = {lab: (rng.choice((1, -1)) if signed else 1) for lab in labels}
        G = RibbonGraph.make(circles, signs)
        if connected and not is_connected(G):
            continue
        if orientable is not None and G._frame.orientable((1 << G.e) - 1) != orientable:
            continue
        return G


def random_population(seed: int, count: int, min_edges: int = 4, max_edges: int = 5,
                      signed: bool = True) -> list:
    rng = random.Random(seed)
    return [random_ribbon_graph(rng, rng.randint(min_edges, max_edges), signed=signed)
            for _ in range(count)]


def _words(labels: list) -> Iterator[tuple]:
    """Distinct arrangements of the multiset with every label twice, first label first."""
    pool = sorted(labels * 2)
    seen = set()
    for perm in itertools.permutations(pool):
        if perm[0] != pool[0] or perm in seen:
            continue
        seen.add(perm)
        yield perm


def all_connected(max_edges: int, signed: bool = True) -> list:
    """Every connected ribbon graph with 1..max_edges edges, up to presentation.

    Edges are labelled e1..en in order; two graphs differing only by a
    relabelling are both kept.
    """
    out = {}
    for n in range(1, max_edges + 1):
        labels = [f"e{i}" for i in range(1, n + 1)]
        for word in _words(labels):
            L = len(word)
            # split the word into v consecutive circles
            for v in range(1, n + 2):
                for cuts in itertools.combinations(range(1, L), v - 1):
                    bounds = (0,) + cuts + (L,)
                    parts = [word[bounds[i]:bounds[i + 1]] for i in range(v)]
                    # the first arrow of every edge may be taken forward
                    firsts = set()
                    idx = []
                    for pos, lab in enumerate(word):
                        if lab not in firsts:
                            firsts.add(lab)
                        else:
                            idx.append(pos)
                    for dirs in itertools.product((True, False), repeat=len(idx)):
                        d = dict(zip(idx, dirs))
                        arrows = [Arrow(lab, d.get(pos, True)) for pos, lab in enumerate(word)]
                        circles = [arrows[bounds[i]:bounds[i + 1]] for i in range(v)]
                        base = RibbonGraph.make(circles)
                        if not is_connected(base):
                            continue
                        sign_choices = itertools.product((1, -1), repeat=n) if signed else [(1,) * n]
                        for signs in sign_choices:
                            G = base.with_signs(dict(zip(labels, signs))) if signed else base
                            out.setdefault(canonical_form(G), G)
    return list(out.values())


def named_graphs() -> dict:
    """A few small graphs with hand-checkable counts."""
    mk = RibbonGraph.make
    return {
        "vertex": mk([[]]),
        "untwisted_loop": mk([["e1>", "e1<"]]),
        "twisted_loop": mk([["e1>", "e1>"]]),
        "bridge": mk([["e1>"], ["e1<"]]),
        "theta": mk([["e1>", "e2>", "e3>"], ["e3<", "e2<", "e1<"]]),
        "torus": mk([["e1>", "e2>", "e1<", "e2<"]]),
        "projective_pair": mk([["e1>", "e2>", "e1>", "e2>"]]),
        "crossed_three": mk([["e2>", "e1>", "e2<", "e3>", "e1>", "e3<"]]),
    }
