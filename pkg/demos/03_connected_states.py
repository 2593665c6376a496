"""Kauffman bracket of a two-component virtual link, three ways."""

from ribbonpoly.quasitree import activities
from ribbonpoly.search import whitehead_diagram
from ribbonpoly.virtual import (all_states, build_ribbon, connected_state_expansion, connected_states,
                                kauffman_statesum, resolve_state, ribbon_bracket, serialize_gauss)

D = whitehead_diagram()
print("Gauss code:")
print("  " + serialize_gauss(D).strip().replace("\n", "\n  "))

print("\nstates (a, b, circles):")
for s in all_states(D):
    summary, _ = resolve_state(D, s)
    print(f"  {''.join(s[k] for k in D.crossings)}  ({summary.a}, {summary.b}, {summary.c})")

order = ("1", "2", "3")
print("\nconnected states and their live orientable crossings:")
for s in connected_states(D):
    G = build_ribbon(D, s)
    live = activities(G, (), order).external_live_orientable
    print(f"  {''.join(s[k] for k in D.crossings)}  live: {sorted(live)}")

print("\nstate sum         :", kauffman_statesum(D).to_string())
print("connected states  :", connected_state_expansion(D, order).to_string())
print("ribbon graph (all-A state):", ribbon_bracket(D).to_string())
