"""Property suites comparing the quasi-tree machinery with brute force.

Each ``check_*`` function takes one graph (or diagram) and returns a list
of failure descriptions, empty when everything holds.  ``run_suites``
drives them over a population and is what ``ribbonpoly verify`` calls.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .duality import contract, crossing, delete, partial_dual
from .generate import all_connected, random_population
from .oracle import br_poly, multivariate_br, signed_br, signed_multivariate_br
from .poly import LaurentPoly, substitute, var
from .quasitree import (N_term, activities, is_quasi_tree, phi, q1_expansion,
                        qt_expansion_multivariate, qt_expansion_signed, qt_expansion_w1,
                        quasi_tree_records, quasi_trees, resolution_tree, subgraph_decomposition)
from .ribbon import RibbonGraph, counts, equivalent, serialize
from .virtual import (all_states, connected_state_expansion, connected_states, connected_states_direct,
                      is_split, kauffman_statesum, random_diagram, ribbon_bracket, serialize_gauss)

__all__ = [
    "SuiteResult",
    "orders_for",
    "EXHAUSTIVE_EDGES",
    "graph_population",
    "check_signed",
    "check_other_expansions",
    "check_duality",
    "check_structural",
    "check_bracket",
    "run_suites",
    "worker_count",
]


def orders_for(G: RibbonGraph, rng: random.Random, count: int = 3) -> list:
    """``count`` distinct total orders (fewer when the graph has fewer)."""
    edges = list(G.edges)
    total = 1
    for i in range(2, len(edges) + 1):
        total *= i
    want = min(count, total)
    orders = [tuple(edges)]
    while len(orders) < want:
        o = edges[:]
        rng.shuffle(o)
        if tuple(o) not in orders:
            orders.append(tuple(o))
    return orders


EXHAUSTIVE_EDGES = 3


def graph_population(max_edges: int = 5, n_random: int = 200, seed: int = 0) -> list:
    """Connected signed graphs with at most ``max_edges`` edges.

    Sizes up to ``EXHAUSTIVE_EDGES`` are enumerated completely; larger
    sizes (from 4 up to ``max_edges``) are sampled, ``n_random`` graphs in all.
    """
    pop = all_connected(min(max_edges, EXHAUSTIVE_EDGES))
    if n_random and max_edges > EXHAUSTIVE_EDGES:
        pop += random_population(seed, n_random, EXHAUSTIVE_EDGES + 1, max_edges)
    return pop


def _tag(G: RibbonGraph) -> str:
    return serialize(G).strip().replace("\n", " | ")


def _unsigned(G: RibbonGraph) -> RibbonGraph:
    return G.with_signs({e: 1 for e in G.edges})


def _at_q1(p: LaurentPoly, G: RibbonGraph, common_alpha: bool) -> LaurentPoly:
    bind = {"q": 1}
    if common_alpha:
        bind.update({f"alpha:{e}": var("alpha") for e in G.edges})
    return substitute(p, bind)


# ---------------------------------------------------------------------------


def check_signed(G: RibbonGraph, orders) -> list:
    ref = signed_br(G)
    return [f"signed expansion differs, order {o}: {_tag(G)}"
            for o in orders if qt_expansion_signed(G, o) != ref]


def check_other_expansions(G: RibbonGraph, orders) -> list:
    fails = []
    U = _unsigned(G)
    ref_w1 = substitute(br_poly(U), {"w": 1})
    ref_z = multivariate_br(G)
    ref_q1 = _at_q1(signed_multivariate_br(G), G, True)
    for o in orders:
        if qt_expansion_w1(U, o) != ref_w1:
            fails.append(f"w=1 expansion differs, order {o}: {_tag(U)}")
        if qt_expansion_multivariate(G, o) != ref_z:
            fails.append(f"multivariate expansion differs, order {o}: {_tag(G)}")
        if q1_expansion(G, o) != ref_q1:
            fails.append(f"q=1 expansion differs, order {o}: {_tag(G)}")
    return fails


def check_duality(G: RibbonGraph, order=None) -> list:
    fails = []
    zs1 = _at_q1(signed_multivariate_br(G), G, False)
    qts = quasi_trees(G)
    n1 = {Q: substitute(N_term(G, Q, order), {"q": 1}) for Q in qts}
    for r in range(G.e + 1):
        for sub in itertools.combinations(G.edges, r):
            Ep = frozenset(sub)
            D = partial_dual(G, Ep)
            if not equivalent(partial_dual(D, Ep), G):
                fails.append(f"partial dual is not an involution on {sorted(Ep)}: {_tag(G)}")
            if any(D.signs[e] != (-G.signs[e] if e in Ep else G.signs[e]) for e in G.edges):
                fails.append(f"sign rule broken on {sorted(Ep)}: {_tag(G)}")
            if _at_q1(signed_multivariate_br(D), D, False) != zs1:
                fails.append(f"Z_s at q=1 changes under duality on {sorted(Ep)}: {_tag(G)}")
            dual_qts = quasi_trees(D)
            for Q in qts:
                Qp = phi(Ep, Q)
                if Qp not in dual_qts:
                    fails.append(f"phi({sorted(Q)}) is not a quasi-tree of the dual: {_tag(G)}")
                    continue
                if substitute(N_term(D, Qp, order), {"q": 1}) != n1[Q]:
                    fails.append(f"N term at q=1 not preserved for Q={sorted(Q)}, E'={sorted(Ep)}: {_tag(G)}")
                act = activities(G, Q, order)
                act_p = activities(D, Qp, order)
                f_q = counts(G, act.contracted).f
                f_p = counts(D, act_p.contracted).f
                want = f_q - len(act.internal_live_orientable & Ep) + len(act.external_live_orientable & Ep)
                if f_p != want:
                    fails.append(f"face bookkeeping under phi fails for Q={sorted(Q)}: {_tag(G)}")
    return fails


def _contract_all(G: RibbonGraph, edges) -> RibbonGraph:
    for e in edges:
        G = contract(G, e)
    return G


def check_structural(G: RibbonGraph, order=None) -> list:
    fails = []
    order = tuple(order or G.edges)
    E = G.edges
    subsets = [frozenset(c) for r in range(len(E) + 1) for c in itertools.combinations(E, r)]
    # faces of F' from the partial dual along F
    for F in subsets:
        GF = partial_dual(G, F)
        for Fp in subsets:
            delta = F ^ Fp
            H = GF
            for e in sorted(set(E) - delta):
                H = delete(H, e)
            if _contract_all(H, sorted(delta)).v != counts(G, Fp).f:
                fails.append(f"face formula fails for F={sorted(F)}, F'={sorted(Fp)}: {_tag(G)}")
    # toggle lemmas
    for Q in quasi_trees(G):
        D = partial_dual(G, Q)
        for e in E:
            if not D.is_untwisted(e) and not is_quasi_tree(G, Q ^ {e}):
                fails.append(f"toggling non-orientable loop {e} leaves quasi-trees: {_tag(G)}")
        for e, f in itertools.combinations(E, 2):
            if crossing(D, e, f) and (D.is_untwisted(e) or D.is_untwisted(f)):
                if not is_quasi_tree(G, Q ^ {e, f}):
                    fails.append(f"toggling linked pair {e},{f} leaves quasi-trees: {_tag(G)}")
    # leaf classification and the subgraph bijection
    leaves = resolution_tree(G, order)
    if sum(2 ** len(l.resolution.unresolved) for l in leaves) != 2 ** G.e:
        fails.append(f"leaf classes do not partition the cube: {_tag(G)}")
    for leaf in leaves:
        act = activities(G, leaf.quasi_tree, order)
        if leaf.resolution.unresolved != act.live_orientable:
            fails.append(f"unresolved edges are not the live orientable ones: {_tag(G)}")
    images = set()
    records = {rec.edges: rec for rec in quasi_tree_records(G, order)}
    for F in subsets:
        Q, S1, S2 = subgraph_decomposition(G, order, F)
        images.add((Q, S1, S2))
        rec = records[Q]
        act = rec.activity
        if F != act.contracted | S1 | S2:
            fails.append(f"decomposition does not rebuild F={sorted(F)}: {_tag(G)}")
            continue
        c = counts(G, F)
        if c.f != rec.f_contracted - len(S1) + len(S2):
            fails.append(f"face count of decomposed F={sorted(F)} is off: {_tag(G)}")
        if c.k != counts(G, act.contracted | S1).k:
            fails.append(f"component count of decomposed F={sorted(F)} is off: {_tag(G)}")
        W = rec.GQ
        idx = [i for i, e in enumerate(W.labels) if e in S1]
        kW = W.components(idx)
        nW = len(idx) - (W.n_vertices - kW)
        if kW != c.k:
            fails.append(f"k(W) mismatch for F={sorted(F)}: {_tag(G)}")
        if c.n != rec.n_contracted + nW + len(S2):
            fails.append(f"nullity identity fails for F={sorted(F)}: {_tag(G)}")
        if c.k - c.f + c.n != rec.genus_contracted + 2 * nW:
            fails.append(f"Euler genus identity fails for F={sorted(F)}: {_tag(G)}")
    expected = sum(2 ** (len(r.activity.internal_live_orientable) + len(r.activity.external_live_orientable))
                   for r in records.values())
    if len(images) != 2 ** G.e or expected != 2 ** G.e:
        fails.append(f"subgraph decomposition is not a bijection: {_tag(G)}")
    return fails


def check_bracket(D, n_bases: int = 3, rng: random.Random | None = None) -> list:
    """Bracket correspondence at every state, plus base independence of the connected states."""
    rng = rng or random.Random(0)
    tag = serialize_gauss(D).strip().replace("\n", " | ")
    fails = []
    ref = kauffman_statesum(D)
    states = all_states(D)
    for s in states:
        if ribbon_bracket(D, s) != ref:
            fails.append(f"bracket correspondence fails at state {s}: {tag}")
            break
    direct = connected_states_direct(D)
    for base in rng.sample(states, min(n_bases, len(states))):
        if connected_states(D, base) != direct:
            fails.append(f"connected states depend on the base state {base}: {tag}")
        if not is_split(D) and connected_state_expansion(D, base=base) != ref:
            fails.append(f"connected-state expansion fails from base {base}: {tag}")
    return fails


# ---------------------------------------------------------------------------
# driver


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures


def worker_count() -> int:
    raw = os.environ.get("RIBBON_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return max(1, n)


def _graph_job(args):
    text, orders, which = args
    from .ribbon import parse

    G = parse(text)
    if which == "signed":
        return check_signed(G, orders)
    if which == "expansions":
        return check_other_expansions(G, orders)
    if which == "duality":
        return check_duality(G, orders[0])
    if which == "structural":
        return check_structural(G, orders[0])
    raise ValueError(which)


def _bracket_job(text):
    from .virtual import parse_gauss

    return check_bracket(parse_gauss(text))


def run_suites(max_edges: int = 5, n_random: int = 200, seed: int = 0, workers: int | None = None,
               n_diagrams: int = 50) -> list:
    """Run every suite; results come back in a fixed order whatever the parallelism."""
    rng = random.Random(seed)
    pop = graph_population(max_edges, n_random, seed)
    orders = [orders_for(G, rng) for G in pop]
    texts = [serialize(G) for G in pop]
    diag_rng = random.Random(seed + 1)
    diagrams = [serialize_gauss(random_diagram(diag_rng, diag_rng.randint(1, 4), connected=False))
                for _ in range(n_diagrams)]
    workers = workers or worker_count()
    results = []
    jobs = {
        "quasi-tree expansion of the signed polynomial": "signed",
        "w=1, multivariate and q=1 expansions": "expansions",
        "partial duality": "duality",
        "structural lemmas": "structural",
    }
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        mapper = pool.map if pool else map
        for name, which in jobs.items():
            sel = [(t, o, which) for t, o in zip(texts, orders)]
            res = SuiteResult(name)
            for fails in mapper(_graph_job, sel):
                res.checked += 1
                res.failures.extend(fails)
            results.append(res)
        res = SuiteResult("bracket correspondence")
        for fails in mapper(_bracket_job, diagrams):
            res.checked += 1
            res.failures.extend(fails)
        results.append(res)
    finally:
        if pool:
            pool.shutdown()
    return results
