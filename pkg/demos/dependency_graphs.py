"""Rule dependency graphs and the strategies hiding in them."""

from rors.planner import (
    OPTIMAL_ORDERS,
    build_graph,
    class_graph,
    enumerate_strategies,
    export_dot,
)
from rors.rules import RuleClass, catalog

# The SPO class: R3, the symmetric/transitive rules and the two inverse halves.
spo = class_graph(RuleClass.SPO, grouped=True)
print("SPO edges:", sorted(tuple(sorted(p)) for p in spo.undirected_pairs()))
print(export_dot(spo, "spo"))

for cls in RuleClass:
    g = class_graph(cls, grouped=True)
    paths = enumerate_strategies(g).strategies
    longest = [p for p in paths if len(p) == len(paths[0])]
    print(f"{cls.value:7} {len(paths):3} maximal paths, {len(longest)} of length {len(paths[0])}")
    print("        executor order:", " -> ".join(OPTIMAL_ORDERS[cls]))

# Across all 25 enabled rules the path count explodes; peek at the first few.
everything = build_graph(catalog().enabled())
sample = enumerate_strategies(everything, limit=3)
print(f"\nfull graph: {len(everything.edges)} edges")
for p in sample.strategies:
    print(len(p), " ".join(p))
