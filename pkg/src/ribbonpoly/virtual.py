"""Virtual link diagrams as signed Gauss codes, and their Kauffman bracket.

A diagram is a list of components, each a cyclic sequence of passages
through classical crossings.  Virtual crossings are not recorded.  Each
classical crossing is drawn locally with both strands pointing up: for a
positive crossing the over strand runs SW to NE, for a negative one
SE to NW.  The A-smoothing of a positive crossing joins the strands
vertically (NW with SW, NE with SE) and the B-smoothing horizontally;
a negative crossing swaps the two.

The ribbon graph of a state has one circle per state circle and one edge
per crossing.  Both arrows of an edge point the same way in the local
picture (up for a vertical smoothing, right for a horizontal one); their
sense on each circle is read against the direction in which the state
circle is traversed.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .duality import partial_dual
from .generate import is_connected
from .oracle import signed_br
from .poly import LaurentPoly, poly_sum, substitute, var
from .quasitree import activities, quasi_trees
from .ribbon import Arrow, ParseError, RibbonGraph, counts, edge_key

__all__ = [
    "Passage",
    "VirtualDiagram",
    "StateSummary",
    "parse_gauss",
    "serialize_gauss",
    "all_states",
    "resolve_state",
    "kauffman_statesum",
    "build_ribbon",
    "ribbon_bracket",
    "connected_states",
    "connected_states_direct",
    "connected_state_expansion",
    "live_crossings_by_marks",
    "random_diagram",
    "is_split",
]


@dataclass(frozen=True)
class Passage:
    crossing: str
    over: bool
    sign: int

    def token(self) -> str:
        return f"{'O' if self.over else 'U'}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class VirtualDiagram:
    components: tuple

    def __post_init__(self):
        seen: dict = {}
        for comp in self.components:
            for p in comp:
                seen.setdefault(p.crossing, []).append(p)
        for k, ps in seen.items():
            if len(ps) != 2:
                raise ValueError(f"crossing {k} must be passed exactly twice, got {len(ps)}")
            if ps[0].over == ps[1].over:
                raise ValueError(f"crossing {k} needs one over and one under passage")
            if ps[0].sign != ps[1].sign:
                raise ValueError(f"crossing {k} has inconsistent signs")

    @property
    def crossings(self) -> tuple:
        return tuple(sorted({p.crossing for c in self.components for p in c}, key=edge_key))

    def sign(self, crossing: str) -> int:
        for comp in self.components:
            for p in comp:
                if p.crossing == crossing:
                    return p.sign
        raise KeyError(crossing)


@dataclass(frozen=True)
class StateSummary:
    a: int
    b: int
    c: int


_PASSAGE = re.compile(r"^([OU])(\w+?)([+-])$")


def parse_gauss(text: str) -> VirtualDiagram:
    comps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.replace(" ", "") == "()":
            comps.append(())
            continue
        comp = []
        for tok in line.split():
            m = _PASSAGE.match(tok)
            if not m:
                raise ParseError(f"line {lineno}: malformed passage {tok!r}")
            comp.append(Passage(m.group(2), m.group(1) == "O", 1 if m.group(3) == "+" else -1))
        comps.append(tuple(comp))
    try:
        return VirtualDiagram(tuple(comps))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_gauss(D: VirtualDiagram) -> str:
    lines = [" ".join(p.token() for p in comp) if comp else "()" for comp in D.components]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# local crossing model

_CORNER = {  # (sign, end) -> corner; ends are over/under, in/out
    (1, "oo"): "NE", (1, "uo"): "NW", (1, "oi"): "SW", (1, "ui"): "SE",
    (-1, "oo"): "NW", (-1, "uo"): "NE", (-1, "ui"): "SW", (-1, "oi"): "SE",
}
_END = {(s, c): e for (s, e), c in _CORNER.items()}
_VERTICAL = {"NE": "SE", "SE": "NE", "NW": "SW", "SW": "NW"}
_HORIZONTAL = {"NE": "NW", "NW": "NE", "SW": "SE", "SE": "SW"}
# the common direction of the two arrows placed at a smoothed crossing
_ARROW = {("SW", "NW"), ("SE", "NE"), ("NW", "NE"), ("SW", "SE")}


def _smoothing(sign: int, split: str) -> dict:
    vertical = (split == "A") == (sign > 0)
    return _VERTICAL if vertical else _HORIZONTAL


def all_states(D: VirtualDiagram) -> list:
    """Every state, ordered with the first crossing as most significant and A before B."""
    xs = D.crossings
    return [dict(zip(xs, bits)) for bits in itertools.product("AB", repeat=len(xs))]


def _check_state(D: VirtualDiagram, state: Mapping[str, str]):
    if set(state) != set(D.crossings) or any(v not in ("A", "B") for v in state.values()):
        raise ValueError("a state must assign A or B to every crossing")


def _trace(D: VirtualDiagram, state: Mapping[str, str]) -> list:
    """State circles as lists of ``(crossing, from_corner, to_corner)`` smoothing traversals."""
    _check_state(D, state)
    arc = {}
    for comp in D.components:
        m = len(comp)
        for i, p in enumerate(comp):
            q = comp[(i + 1) % m]
            out_end = (p.crossing, _CORNER[(p.sign, "oo" if p.over else "uo")])
            in_end = (q.crossing, _CORNER[(q.sign, "oi" if q.over else "ui")])
            arc[out_end] = in_end
            arc[in_end] = out_end
    circles = [[] for comp in D.components if not comp]
    seen = set()
    for node in sorted(arc, key=lambda n: (edge_key(n[0]), n[1])):
        if node in seen:
            continue
        circle = []
        cur = node
        while True:
            k, corner = cur
            nxt = _smoothing(D.sign(k), state[k])[corner]
            seen.add(cur)
            seen.add((k, nxt))
            circle.append((k, corner, nxt))
            cur = arc[(k, nxt)]
            if cur == node:
                break
        circles.append(circle)
    return circles


def resolve_state(D: VirtualDiagram, state: Mapping[str, str]) -> tuple:
    """``(StateSummary, circles)``; each circle lists the crossings passed, in order."""
    circles = _trace(D, state)
    a = sum(1 for v in state.values() if v == "A")
    return StateSummary(a, len(state) - a, len(circles)), [[k for k, _, _ in c] for c in circles]


def kauffman_statesum(D: VirtualDiagram) -> LaurentPoly:
    """``sum over states of A^a B^b d^(c-1)``."""
    terms = []
    for s in all_states(D):
        summ, _ = resolve_state(D, s)
        terms.append(LaurentPoly.monomial({"A": summ.a, "B": summ.b, "d": summ.c - 1}))
    return poly_sum(terms)


def build_ribbon(D: VirtualDiagram, state: Mapping[str, str]) -> RibbonGraph:
    """Signed ribbon graph of a state: edges labelled by crossing, + for A, - for B."""
    circles = []
    for c in _trace(D, state):
        circles.append([Arrow(k, (a, b) in _ARROW) for k, a, b in c])
    return RibbonGraph.make(circles, {k: (1 if v == "A" else -1) for k, v in state.items()})


def ribbon_bracket(D: VirtualDiagram, state: Mapping[str, str] | None = None) -> LaurentPoly:
    """Bracket recovered from the signed polynomial of the ribbon graph of ``state``.

    ``A^n B^r d^(k-1) R_s(G; Ad/B + 1, Bd/A, 1/d)``; the all-A state is used by default.
    """
    state = state or {k: "A" for k in D.crossings}
    G = build_ribbon(D, state)
    c = counts(G)
    A, B, d = var("A"), var("B"), var("d")
    shifted = substitute(signed_br(G), {"x": A * d * B**-1, "y": B * d * A**-1, "z": d**-1})
    return A**c.n * B**c.r * d**(c.k - 1) * shifted


def is_split(D: VirtualDiagram) -> bool:
    """True when the components fall into classes sharing no crossing."""
    comps = D.components
    if len(comps) <= 1:
        return False
    ds = DisjointSet(range(len(comps)))
    where: dict = {}
    for i, comp in enumerate(comps):
        for p in comp:
            where.setdefault(p.crossing, []).append(i)
    for a, b in where.values():
        ds.merge(a, b)
    return ds.n_subsets > 1


def _flip(state: Mapping[str, str], crossings: Iterable[str]) -> dict:
    out = dict(state)
    for k in crossings:
        out[k] = "B" if out[k] == "A" else "A"
    return out


def _state_key(D: VirtualDiagram, s: Mapping[str, str]) -> str:
    return "".join(s[k] for k in D.crossings)


def connected_states_direct(D: VirtualDiagram) -> list:
    return [s for s in all_states(D) if len(_trace(D, s)) == 1]


def connected_states(D: VirtualDiagram, base: Mapping[str, str] | None = None) -> list:
    """States with a single circle, read off the quasi-trees of the base state's ribbon graph."""
    base = dict(base or {k: "A" for k in D.crossings})
    G = build_ribbon(D, base)
    if not is_connected(G):
        return []
    states = [_flip(base, Q) for Q in quasi_trees(G)]
    return sorted(states, key=lambda s: _state_key(D, s))


def _order(D: VirtualDiagram, order: Sequence[str] | None) -> tuple:
    if order is None:
        return D.crossings
    order = tuple(str(k) for k in order)
    if sorted(order) != sorted(D.crossings):
        raise ValueError("order must list every crossing exactly once")
    return order


def connected_state_expansion(D: VirtualDiagram, order: Sequence[str] | None = None,
                              base: Mapping[str, str] | None = None) -> LaurentPoly:
    """Bracket as a sum over connected states weighted by their live orientable crossings."""
    if is_split(D):
        raise ValueError("connected-state expansion needs a non-split diagram")
    order = _order(D, order)
    base = dict(base or {k: "A" for k in D.crossings})
    G = build_ribbon(D, base)
    A, B, d = var("A"), var("B"), var("d")
    total = LaurentPoly()
    for s in connected_states(D, base):
        flipped = [k for k in D.crossings if s[k] != base[k]]
        dual = partial_dual(G, flipped)
        live = activities(dual, (), order).external_live_orientable
        la = sum(1 for k in live if dual.signs[k] > 0)
        lb = len(live) - la
        a = sum(1 for v in s.values() if v == "A")
        total = total + (A**a * B**(len(s) - a) * (1 + B * d * A**-1)**la * (1 + A * d * B**-1)**lb)
    return total


def live_crossings_by_marks(D: VirtualDiagram, state: Mapping[str, str],
                            order: Sequence[str] | None = None) -> frozenset:
    """Live crossings of a connected state from the marks on its circle.

    A crossing is live when every lower-ordered label met between its two
    marks is met twice.
    """
    order = _order(D, order)
    _, circles = resolve_state(D, state)
    if len(circles) != 1:
        raise ValueError("state is not connected")
    word = circles[0]
    rank = {k: i for i, k in enumerate(order)}
    live = set()
    for k in order:
        i, j = [p for p, lab in enumerate(word) if lab == k]
        between = word[i + 1:j]
        single = {lab for lab in between if between.count(lab) == 1}
        if not any(rank[lab] < rank[k] for lab in single):
            live.add(k)
    return frozenset(live)


def random_diagram(rng: random.Random, n_crossings: int, n_components: int | None = None,
                   connected: bool = True) -> VirtualDiagram:
    """Random signed Gauss code on crossings ``1..n``."""
    while True:
        labels = [str(i) for i in range(1, n_crossings + 1)]
        passages = []
        for k in labels:
            sign = rng.choice((1, -1))
            over_first = rng.random() < 0.5
            passages += [Passage(k, over_first, sign), Passage(k, not over_first, sign)]
        rng.shuffle(passages)
        m = n_components or rng.randint(1, min(2, max(1, len(passages))))
        cuts = sorted(rng.sample(range(1, len(passages)), m - 1)) if len(passages) > 1 else []
        bounds = [0] + cuts + [len(passages)]
        comps = tuple(tuple(passages[bounds[i]:bounds[i + 1]]) for i in range(m))
        D = VirtualDiagram(comps)
        if connected and is_split(D):
            continue
        return D
