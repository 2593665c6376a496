"""Ribbon graphs in arrow presentation.

A ribbon graph is stored as a list of circles (the vertex discs, each with
a fixed reference orientation) carrying directed, labelled arrows; each
edge label occurs on exactly two arrows.  With the circles oriented, an
edge whose two arrows point in opposite senses is untwisted and an edge
whose arrows point the same way is twisted.

Boundary components are traced on the endpoints of the arrows.  Every
arrow has a tail and a head; around each circle the head-side endpoint of
one arrow is joined to the next arrow by a stretch of circle.  An edge that
is present in a spanning subgraph contributes two band sides joining
tail to tail and head to head; an absent edge leaves its line segment on
the boundary.  Every endpoint then has exactly two neighbours and the
boundary components are the cycles of that graph.

    >>> G = parse("circle: e> e<")
    >>> counts(G).f, counts(G).t
    (2, 0)
    >>> counts(parse("circle: e> e>")).f
    1
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .poly import AbstractGraph

__all__ = [
    "Arrow",
    "RibbonGraph",
    "GraphCounts",
    "ParseError",
    "edge_key",
    "parse",
    "serialize",
    "counts",
    "boundary_trace",
    "spanning_sub",
    "is_orientable",
    "underlying_graph",
    "disjoint_union",
    "canonical_form",
    "equivalent",
    "relabel",
]


class ParseError(ValueError):
    """Raised for malformed ribbon-graph or Gauss-code text."""


def edge_key(label: str):
    """Natural sort key: ``e2`` sorts before ``e10``."""
    return tuple((0, int(tok), "") if tok.isdigit() else (1, 0, tok)
                 for tok in re.findall(r"\d+|\D+", label))


@dataclass(frozen=True, order=True)
class Arrow:
    edge: str
    forward: bool = True  # with the circle's reference orientation

    def token(self) -> str:
        return f"{self.edge}{'>' if self.forward else '<'}"

    def reversed(self) -> "Arrow":
        return Arrow(self.edge, not self.forward)


@dataclass(frozen=True)
class GraphCounts:
    v: int
    e: int
    k: int
    r: int
    n: int
    f: int
    t: int

    @property
    def euler_genus(self) -> int:
        return self.k - self.f + self.n


def _as_arrow(item) -> Arrow:
    if isinstance(item, Arrow):
        return item
    if isinstance(item, str):
        if len(item) < 2 or item[-1] not in "<>":
            raise ParseError(f"malformed arrow token {item!r}")
        return Arrow(item[:-1], item[-1] == ">")
    label, fwd = item
    if isinstance(fwd, int) and not isinstance(fwd, bool):
        fwd = fwd > 0
    return Arrow(label, bool(fwd))


@dataclass(frozen=True)
class RibbonGraph:
    """Arrow presentation of a (possibly signed, possibly non-orientable) ribbon graph.

    ``circles`` is a tuple of tuples of :class:`Arrow`; ``sign_items`` a
    sorted tuple of ``(edge, +1/-1)`` pairs.  Build instances with
    :meth:`make` or :func:`parse`.
    """

    circles: tuple
    sign_items: tuple = ()

    def __post_init__(self):
        seen: dict = {}
        for circle in self.circles:
            for a in circle:
                seen[a.edge] = seen.get(a.edge, 0) + 1
        bad = sorted(e for e, n in seen.items() if n != 2)
        if bad:
            raise ValueError(f"edge labels must occur exactly twice: {bad}")
        signs = dict(self.sign_items)
        if set(signs) != set(seen):
            raise ValueError("sign map must cover exactly the edge set")
        if any(s not in (1, -1) for s in signs.values()):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def make(cls, circles: Iterable[Iterable], signs: Mapping[str, int] | None = None) -> "RibbonGraph":
        """Build from circles of arrows, ``"e1>"`` tokens or ``(label, forward)`` pairs.

        Edges missing from ``signs`` are positive.
        """
        circ = tuple(tuple(_as_arrow(a) for a in c) for c in circles)
        labels = {a.edge for c in circ for a in c}
        signs = dict(signs or {})
        unknown = set(signs) - labels
        if unknown:
            raise ValueError(f"signs given for unknown edges: {sorted(unknown)}")
        items = tuple(sorted(((e, int(signs.get(e, 1))) for e in labels), key=lambda t: edge_key(t[0])))
        return cls(circ, items)

    # -- basic accessors ---------------------------------------------------
    @cached_property
    def signs(self) -> dict:
        return dict(self.sign_items)

    @cached_property
    def edges(self) -> tuple:
        """Edge labels in natural order."""
        return tuple(e for e, _ in self.sign_items)

    @property
    def v(self) -> int:
        return len(self.circles)

    @property
    def e(self) -> int:
        return len(self.sign_items)

    def sign(self, edge: str) -> int:
        return self.signs[edge]

    def positions(self, edge: str) -> list:
        """``(circle, position, forward)`` for both arrows of ``edge``."""
        return [(ci, pi, a.forward) for ci, c in enumerate(self.circles)
                for pi, a in enumerate(c) if a.edge == edge]

    def is_untwisted(self, edge: str) -> bool:
        """Only meaningful for loops: opposite senses on one circle."""
        (c1, _, f1), (c2, _, f2) = self.positions(edge)
        return c1 == c2 and f1 != f2

    def is_loop(self, edge: str) -> bool:
        (c1, _, _), (c2, _, _) = self.positions(edge)
        return c1 == c2

    def with_signs(self, signs: Mapping[str, int]) -> "RibbonGraph":
        merged = dict(self.signs)
        merged.update(signs)
        return RibbonGraph.make(self.circles, merged)

    def edge_mask(self, subset: Iterable[str]) -> int:
        index = self._frame.index
        mask = 0
        for e in subset:
            if e not in index:
                raise KeyError(f"unknown edge {e!r}")
            mask |= 1 << index[e]
        return mask

    def mask_edges(self, mask: int) -> frozenset:
        return frozenset(e for i, e in enumerate(self.edges) if mask >> i & 1)

    @cached_property
    def _frame(self) -> "_Frame":
        return _Frame(self)

    def __str__(self):
        return serialize(self)


class _Frame:
    """Precomputed endpoint structure used for every per-subset count."""

    def __init__(self, G: RibbonGraph):
        self.G = G
        self.index = {e: i for i, e in enumerate(G.edges)}
        arrows = []  # (circle, pos, edge, forward)
        for ci, c in enumerate(G.circles):
            for pi, a in enumerate(c):
                arrows.append((ci, pi, a.edge, a.forward))
        self.arrows = arrows
        self.empty_circles = sum(1 for c in G.circles if not c)
        # endpoint 2i precedes endpoint 2i+1 along the circle orientation
        n = 2 * len(arrows)
        gap = [0] * n
        start = 0
        for c in G.circles:
            L = len(c)
            for p in range(L):
                i, j = start + p, start + (p + 1) % L
                gap[2 * i + 1] = 2 * j
                gap[2 * j] = 2 * i + 1
            start += L
        self.gap = gap
        first: dict = {}
        pair = [0] * len(arrows)  # arrow index -> index of the other arrow
        self.first_arrow = [True] * len(arrows)
        for i, (_, _, e, _) in enumerate(arrows):
            if e in first:
                j = first[e]
                pair[i], pair[j] = j, i
                self.first_arrow[i] = False
            else:
                first[e] = i
        self.pair = pair
        self.edge_of = [self.index[a[2]] for a in arrows]
        self.tail = [2 * i if a[3] else 2 * i + 1 for i, a in enumerate(arrows)]
        self.head = [2 * i + 1 if a[3] else 2 * i for i, a in enumerate(arrows)]
        self.circle_of = [a[0] for a in arrows]
        # (circle, circle, product of senses) per edge index
        self.ends = [None] * len(G.edges)
        for i, a in enumerate(arrows):
            if self.first_arrow[i]:
                j = pair[i]
                b = arrows[j]
                self.ends[self.edge_of[i]] = (a[0], b[0], (1 if a[3] else -1) * (1 if b[3] else -1))
        self.cache_f: dict = {}

    def partner(self, mask: int) -> list:
        n = 2 * len(self.arrows)
        part = [0] * n
        for i in range(len(self.arrows)):
            if mask >> self.edge_of[i] & 1:
                j = self.pair[i]
                part[self.tail[i]] = self.tail[j]
                part[self.head[i]] = self.head[j]
            else:
                part[2 * i] = 2 * i + 1
                part[2 * i + 1] = 2 * i
        return part

    def faces(self, mask: int) -> int:
        if mask in self.cache_f:
            return self.cache_f[mask]
        part = self.partner(mask)
        gap = self.gap
        seen = bytearray(len(part))
        count = self.empty_circles
        for s in range(len(part)):
            if seen[s]:
                continue
            count += 1
            node = s
            while True:
                seen[node] = 1
                other = part[node]
                seen[other] = 1
                node = gap[other]
                if node == s:
                    break
        self.cache_f[mask] = count
        return count

    def trace(self, mask: int) -> list:
        part = self.partner(mask)
        gap = self.gap
        seen = bytearray(len(part))
        circles = []
        for s in range(len(part)):
            if seen[s]:
                continue
            word = []
            node = s
            while True:
                seen[node] = 1
                other = part[node]
                seen[other] = 1
                i, j = node // 2, other // 2
                label = self.arrows[i][2]
                if i == j:
                    # line segment of an absent edge, passed from node to other
                    word.append(Arrow(label, node == self.tail[i]))
                else:
                    # band side of an attached edge: forward from first arrow to second
                    word.append(Arrow(label, self.first_arrow[i]))
                node = gap[other]
                if node == s:
                    break
            circles.append(tuple(word))
        circles.extend(() for _ in range(self.empty_circles))
        return circles

    def components(self, mask: int) -> int:
        ds = DisjointSet(range(len(self.G.circles)))
        for idx, (c1, c2, _) in enumerate(self.ends):
            if mask >> idx & 1:
                ds.merge(c1, c2)
        return ds.n_subsets

    def orientable(self, mask: int) -> bool:
        # double cover: (circle, orientation choice); an edge is untwisted iff
        # the product of senses after reorienting is -1
        v = len(self.G.circles)
        ds = DisjointSet(range(2 * v))
        for idx, (c1, c2, prod) in enumerate(self.ends):
            if not mask >> idx & 1:
                continue
            if prod < 0:  # keep relative orientation
                ds.merge(2 * c1, 2 * c2)
                ds.merge(2 * c1 + 1, 2 * c2 + 1)
            else:
                ds.merge(2 * c1, 2 * c2 + 1)
                ds.merge(2 * c1 + 1, 2 * c2)
        return not any(ds.connected(2 * c, 2 * c + 1) for c in range(v))


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"^(\S+)([<>])$")


def parse(text: str) -> RibbonGraph:
    """Parse the ``sign`` / ``circle:`` text format."""
    circles = []
    signs: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("circle:"):
            toks = line[len("circle:"):].split()
            circle = []
            for tok in toks:
                m = _TOKEN.match(tok)
                if not m:
                    raise ParseError(f"line {lineno}: malformed arrow token {tok!r}")
                circle.append(Arrow(m.group(1), m.group(2) == ">"))
            circles.append(tuple(circle))
        elif line.split()[0] == "sign":
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: sign line needs '<edge> <+|->'")
            if parts[2] not in ("+", "-"):
                raise ParseError(f"line {lineno}: sign must be + or -, got {parts[2]!r}")
            signs[parts[1]] = 1 if parts[2] == "+" else -1
        else:
            raise ParseError(f"line {lineno}: unrecognised line {raw!r}")
    seen: dict = {}
    for c in circles:
        for a in c:
            seen[a.edge] = seen.get(a.edge, 0) + 1
    bad = sorted(e for e, n in seen.items() if n != 2)
    if bad:
        raise ParseError(f"edge labels must appear exactly twice: {bad}")
    unknown = sorted(set(signs) - set(seen))
    if unknown:
        raise ParseError(f"sign given for unknown edge(s): {unknown}")
    return RibbonGraph.make(circles, signs)


def serialize(G: RibbonGraph) -> str:
    lines = [f"sign {e} {'+' if s > 0 else '-'}" for e, s in G.sign_items]
    for c in G.circles:
        lines.append(("circle: " + " ".join(a.token() for a in c)).rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# counts and subgraphs

def _mask(G: RibbonGraph, subset) -> int:
    if subset is None:
        return (1 << G.e) - 1
    if isinstance(subset, int):
        return subset
    return G.edge_mask(subset)


def counts(G: RibbonGraph, subset=None) -> GraphCounts:
    """Counts of the spanning subgraph on ``subset`` (default: all of G)."""
    fr = G._frame
    mask = _mask(G, subset)
    v = G.v
    e = bin(mask).count("1")
    k = fr.components(mask)
    f = fr.faces(mask)
    t = 0 if fr.orientable(mask) else 1
    return GraphCounts(v=v, e=e, k=k, r=v - k, n=e - v + k, f=f, t=t)


def boundary_trace(G: RibbonGraph, attached=None) -> list:
    """Boundary components of the spanning subgraph on ``attached``.

    Each component is returned as a tuple of arrows in walking order:
    absent edges appear where the walk runs over their line segment, and
    attached edges appear once per band side, pointing from the edge's
    first arrow towards its second.
    """
    return G._frame.trace(_mask(G, attached))


def spanning_sub(G: RibbonGraph, subset: Iterable[str]) -> RibbonGraph:
    keep = set(subset)
    missing = keep - set(G.edges)
    if missing:
        raise KeyError(f"unknown edges {sorted(missing)}")
    circles = [tuple(a for a in c if a.edge in keep) for c in G.circles]
    return RibbonGraph.make(circles, {e: G.signs[e] for e in keep})


def is_orientable(G: RibbonGraph, subset=None) -> bool:
    """True iff the circles can be reoriented so that no edge is twisted."""
    return G._frame.orientable(_mask(G, subset))


def underlying_graph(G: RibbonGraph) -> AbstractGraph:
    fr = G._frame
    edges = tuple((c1, c2, G.signs[e], e) for e, (c1, c2, _) in zip(G.edges, fr.ends))
    return AbstractGraph(G.v, edges)


def relabel(G: RibbonGraph, mapping: Mapping[str, str]) -> RibbonGraph:
    circles = [tuple(Arrow(mapping.get(a.edge, a.edge), a.forward) for a in c) for c in G.circles]
    return RibbonGraph.make(circles, {mapping.get(e, e): s for e, s in G.sign_items})


def disjoint_union(G: RibbonGraph, H: RibbonGraph) -> RibbonGraph:
    clash = set(G.edges) & set(H.edges)
    if clash:
        raise ValueError(f"edge labels clash: {sorted(clash)}")
    signs = dict(G.signs)
    signs.update(H.signs)
    return RibbonGraph.make(list(G.circles) + list(H.circles), signs)


# ---------------------------------------------------------------------------
# canonical form

def _min_rotation(word: Sequence) -> tuple:
    if not word:
        return ()
    return min(tuple(word[i:]) + tuple(word[:i]) for i in range(len(word)))


def canonical_form(G: RibbonGraph) -> tuple:
    """Label-preserving canonical form.

    Identifies presentations that differ by rotating or reflecting a
    circle, reordering circles, or reversing both arrows of an edge.  Tokens
    are ``(label, twist)`` where ``twist`` is the product of the two arrow
    senses under the chosen circle orientations.
    """
    fr = G._frame
    v = G.v
    best = None
    for flips in range(1 << v):
        rel = {}
        for e, (c1, c2, prod) in zip(G.edges, fr.ends):
            s1 = -1 if flips >> c1 & 1 else 1
            s2 = -1 if flips >> c2 & 1 else 1
            rel[e] = prod * (s1 * s2 if c1 != c2 else 1)
        words = []
        for ci, c in enumerate(G.circles):
            labels = [a.edge for a in c]
            if flips >> ci & 1:
                labels.reverse()
            words.append(_min_rotation([(lab, rel[lab]) for lab in labels]))
        key = (tuple(sorted(words)), G.sign_items)
        if best is None or key < best:
            best = key
    return best


def equivalent(G: RibbonGraph, H: RibbonGraph) -> bool:
    """Same labelled ribbon graph, up to presentation choices."""
    return G.sign_items == H.sign_items and G.v == H.v and canonical_form(G) == canonical_form(H)
