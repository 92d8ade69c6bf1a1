"""Why the fixpoint mode exists.

The single-pass pipeline runs the sameAs rules last, so a sameAs fact can
carry new property facts that the type rules never get to see.
"""

from rors import Mode, materialize
from rors.model import IRI, TripleStore

EX = "http://example.org/"
DOMAIN = IRI("http://www.w3.org/2000/01/rdf-schema#domain")
SAME = IRI("http://www.w3.org/2002/07/owl#sameAs")
TYPE = IRI("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")

store = TripleStore()
store.add_terms(IRI(EX + "teaches"), DOMAIN, IRI(EX + "Teacher"))
store.add_terms(IRI(EX + "alice"), SAME, IRI(EX + "dr_smith"))
store.add_terms(IRI(EX + "dr_smith"), IRI(EX + "teaches"), IRI(EX + "logic101"))

alice_is_teacher = (IRI(EX + "alice"), TYPE, IRI(EX + "Teacher"))
for mode in (Mode.PAPER, Mode.FIXPOINT, Mode.ORACLE):
    out, rep = materialize(store, mode)
    print(f"{mode.value:8} {len(out):2} triples  outer passes {rep.outer_iterations}  "
          f"alice a Teacher: {alice_is_teacher in out.decoded()}")
