"""Two subclass axioms, one inferred triple."""

from rors import IRI, Mode, TripleStore, materialize
from rors.ntriples import write_ntriples

SUB = IRI("http://www.w3.org/2000/01/rdf-schema#subClassOf")
A, B, C = (IRI(f"http://example.org/{x}") for x in "ABC")

store = TripleStore()
store.add_terms(A, SUB, B)
store.add_terms(B, SUB, C)

closure, report = materialize(store, Mode.PAPER)
print(write_ntriples(closure.log, closure.dictionary, sorted=True).decode())

# which rule produced what, phase by phase
for step in report.per_phase:
    if step.fresh:
        print(f"{step.phase:>7} {step.rule:<5} +{step.fresh}")
