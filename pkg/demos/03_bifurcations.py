"""Saddle-node bifurcations as marked edges, and what the flow becomes.

A mark on a separatrix or boundary arc says which edge shrinks to a point.
Contracting it gives the Morse flow on the other side of the bifurcation.
"""
from collections import Counter

from mobius_flows import (
    bifurcation_census, canonical_code, contract_bifurcation, enumerate_morse_flows, enumerate_sn_bifurcations,
)
from mobius_flows.errors import UnrealizableError

for d in enumerate_morse_flows(4):
    kinds = [k.value for k in d.vertex_kind]
    print("flow with", ", ".join(kinds))
    for b in enumerate_sn_bifurcations(4, [d]):
        try:
            r = contract_bifurcation(b.diagram, b.marked_edge)
        except UnrealizableError as exc:
            print(f"   mark {b.marked_edge} ({b.kind.value}) -> no flow: {exc}")
            continue
        print(f"   mark {b.marked_edge} ({b.kind.value}) -> {r.num_points} points:",
              ", ".join(k.value for k in r.vertex_kind))

print("\nfour-point census:", {t.value: v for t, v in bifurcation_census(4).items() if v})

# Some boundary marks cannot be followed through: a neighbouring boundary
# saddle would lose the node its separatrix ends at.
for n in (5, 6):
    outcome = Counter()
    lower = {m: {canonical_code(x) for x in enumerate_morse_flows(m)} for m in range(3, n)}
    for b in enumerate_sn_bifurcations(n):
        try:
            r = contract_bifurcation(b.diagram, b.marked_edge)
        except UnrealizableError:
            outcome[b.kind.value, "unrealizable"] += 1
            continue
        assert canonical_code(r) in lower[r.num_points]
        outcome[b.kind.value, f"{r.num_points} points"] += 1
    print(f"n={n}:", dict(sorted(outcome.items())))
