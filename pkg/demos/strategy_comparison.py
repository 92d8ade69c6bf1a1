"""Class-ordered evaluation against a plain round-robin over all rules.

Both reach the same closure; the ordered one needs fewer passes.
"""

import sys

from rors import REVERSED, ROUND_ROBIN, RORS, TripleStore, compare_strategies, generate_university
from rors.executor import format_table

size = int(sys.argv[1]) if len(sys.argv) > 1 else 20_000

store = TripleStore()
for t in generate_university(size, seed=42):
    store.add_terms(*t)
print(f"{len(store):,} input triples")

rows = compare_strategies(store, [RORS, ROUND_ROBIN, REVERSED])
print(format_table(rows, ["name", "outer_iterations", "rule_applications",
                          "rule_invocations", "derived_count", "seconds"]))
