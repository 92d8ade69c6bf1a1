"""Synthetic university data and its triple-class mix."""

from rors import TripleStore, class_proportions, generate_university

for rate in (0.0, 0.05):
    store = TripleStore()
    for t in generate_university(30_000, seed=1, sameas_rate=rate):
        store.add_terms(*t)
    p = class_proportions(store)
    print(f"sameas_rate={rate}: {p.total:,} triples, {p.schema_count} schema, "
          f"Type {100 * p.type:.2f}%  SameAs {100 * p.same_as:.2f}%  SPO {100 * p.spo:.2f}%")
