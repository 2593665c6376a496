"""Partial duality on a small one-vertex graph.

Run with ``python3 demos/01_partial_duality.py``.
"""

from ribbonpoly.duality import contract, crossing, natural_dual, partial_dual
from ribbonpoly.generate import named_graphs
from ribbonpoly.ribbon import counts, equivalent, serialize


def show(title, G):
    c = counts(G)
    print(f"{title}: v={c.v} e={c.e} f={c.f} euler genus={c.euler_genus} orientable={not c.t}")
    print("  " + serialize(G).strip().replace("\n", "\n  "))


G = named_graphs()["crossed_three"]
show("one vertex, three loops", G)
print("e1 crosses e2:", crossing(G, "e1", "e2"), " e2 crosses e3:", crossing(G, "e2", "e3"))

D = partial_dual(G, ["e1"])
show("\ndual along e1 (its sign flips)", D)
print("dualising again along e1 gives G back:", equivalent(partial_dual(D, ["e1"]), G))

N = natural_dual(G)
show("\nnatural dual (vertices and faces swap)", N)

show("\ncontract e2", contract(G, "e2"))
