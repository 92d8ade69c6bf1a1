"""RDF, RDFS and OWL IRIs used by the rule set."""

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"

TYPE = RDF + "type"

SUB_CLASS_OF = RDFS + "subClassOf"
SUB_PROPERTY_OF = RDFS + "subPropertyOf"
DOMAIN = RDFS + "domain"
RANGE = RDFS + "range"

SAME_AS = OWL + "sameAs"
EQUIVALENT_CLASS = OWL + "equivalentClass"
EQUIVALENT_PROPERTY = OWL + "equivalentProperty"
INVERSE_OF = OWL + "inverseOf"
HAS_VALUE = OWL + "hasValue"
ON_PROPERTY = OWL + "onProperty"
SOME_VALUES_FROM = OWL + "someValuesFrom"
ALL_VALUES_FROM = OWL + "allValuesFrom"

FUNCTIONAL_PROPERTY = OWL + "FunctionalProperty"
INVERSE_FUNCTIONAL_PROPERTY = OWL + "InverseFunctionalProperty"
SYMMETRIC_PROPERTY = OWL + "SymmetricProperty"
TRANSITIVE_PROPERTY = OWL + "TransitiveProperty"
CLASS = OWL + "Class"
PROPERTY = OWL + "Property"
OBJECT_PROPERTY = OWL + "ObjectProperty"
DATATYPE_PROPERTY = OWL + "DatatypeProperty"
RESTRICTION = OWL + "Restriction"

# A triple is schema if its predicate is one of these ...
SCHEMA_PREDICATES = (
    SUB_CLASS_OF,
    SUB_PROPERTY_OF,
    DOMAIN,
    RANGE,
    EQUIVALENT_CLASS,
    EQUIVALENT_PROPERTY,
    INVERSE_OF,
    HAS_VALUE,
    ON_PROPERTY,
    SOME_VALUES_FROM,
    ALL_VALUES_FROM,
)

# ... or it is an rdf:type triple whose object is one of these.
SCHEMA_TYPE_OBJECTS = (
    FUNCTIONAL_PROPERTY,
    INVERSE_FUNCTIONAL_PROPERTY,
    SYMMETRIC_PROPERTY,
    TRANSITIVE_PROPERTY,
    CLASS,
    PROPERTY,
    OBJECT_PROPERTY,
    DATATYPE_PROPERTY,
    RESTRICTION,
)

PREFIXES = {"rdf": RDF, "rdfs": RDFS, "owl": OWL}


def shorten(iri):
    """Render a vocabulary IRI as ``prefix:local`` when possible."""
    for prefix, ns in PREFIXES.items():
        if iri.startswith(ns):
            return prefix + ":" + iri[len(ns):]
    return iri
