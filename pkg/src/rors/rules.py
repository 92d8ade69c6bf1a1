"""The 27 OWL-Horst entailment rules as declarative triple patterns."""

from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass, field, replace
from typing import Union

from . import vocab
from .model import IRI, Term


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return "?" + self.name


@dataclass(frozen=True)
class Const:
    term: Term

    def __str__(self):
        return vocab.shorten(self.term.lexical)


PatternTerm = Union[Var, Const]


@dataclass(frozen=True)
class TriplePattern:
    s: PatternTerm
    p: PatternTerm
    o: PatternTerm

    def __iter__(self):
        return iter((self.s, self.p, self.o))

    def variables(self) -> set:
        return {x.name for x in self if isinstance(x, Var)}

    def __str__(self):
        return f"{self.s} {self.p} {self.o}"


class RuleClass(enum.Enum):
    SCHEMA = "schema"
    SPO = "spo"
    TYPE = "type"
    SAMEAS = "sameas"


@dataclass(frozen=True)
class Rule:
    id: str
    conditions: tuple
    consequences: tuple
    rule_class: RuleClass
    enabled: bool = True
    # Pairs of variables that must bind to different terms.
    distinct: tuple = ()
    # owl:sameAs conditions also match (t owl:sameAs t) for every term t.
    reflexive_same_as: bool = False

    def variables(self) -> set:
        return set().union(*(c.variables() for c in self.conditions))

    def check_range_restricted(self):
        free = set().union(*(c.variables() for c in self.consequences)) - self.variables()
        if free:
            raise CatalogError(f"{self.id}: unbound consequence variables {sorted(free)}")

    def __str__(self):
        body = ", ".join(map(str, self.conditions))
        head = ", ".join(map(str, self.consequences))
        return f"{self.id}: {body} => {head}"


class CatalogError(ValueError):
    pass


RULE_IDS = (
    "R1", "R2", "R3", "R4", "R5", "R6",
    "O1", "O2", "O3", "O4", "O5", "O6", "O7a", "O7b", "O8", "O9", "O10",
    "O11a", "O11b", "O11c", "O12a", "O12b", "O12c",
    "O13", "O14", "O15", "O16",
)

RULE_ORDER = {rid: i for i, rid in enumerate(RULE_IDS)}

CLASS_MEMBERS = {
    RuleClass.SPO: ("R3", "O3", "O4", "O7a", "O7b"),
    RuleClass.TYPE: ("R4", "R5", "R6", "O13", "O14", "O15", "O16"),
    RuleClass.SAMEAS: ("O1", "O2", "O5", "O6", "O8", "O9", "O10"),
    RuleClass.SCHEMA: ("R1", "R2", "O11a", "O11b", "O11c", "O12a", "O12b", "O12c"),
}

_PREFIX = {"rdf": vocab.RDF, "rdfs": vocab.RDFS, "owl": vocab.OWL}


def _term(token: str):
    if ":" in token:
        prefix, local = token.split(":", 1)
        return Const(IRI(_PREFIX[prefix] + local))
    return Var(token)


def _pattern(text: str) -> TriplePattern:
    return TriplePattern(*map(_term, text.split()))


def _rule(rid, body, head, **kw) -> Rule:
    cls = next(c for c, ids in CLASS_MEMBERS.items() if rid in ids)
    return Rule(
        id=rid,
        conditions=tuple(_pattern(x) for x in body),
        consequences=tuple(_pattern(x) for x in head),
        rule_class=cls,
        **kw,
    )


def _build(table1_literal: bool) -> tuple:
    if table1_literal:
        o13 = _rule("O13", ["v owl:hasValue w", "v owl:onProperty p", "u p v"], ["u rdf:type v"])
        o14 = _rule("O14", ["v owl:hasValue w", "v owl:onProperty p", "u rdf:type v"], ["u p v"])
    else:
        o13 = _rule("O13", ["v owl:hasValue w", "v owl:onProperty p", "u p w"], ["u rdf:type v"])
        o14 = _rule("O14", ["v owl:hasValue w", "v owl:onProperty p", "u rdf:type v"], ["u p w"])
    rules = [
        _rule("R1", ["c rdfs:subClassOf c1", "c1 rdfs:subClassOf c2"], ["c rdfs:subClassOf c2"]),
        _rule("R2", ["p rdfs:subPropertyOf p1", "p1 rdfs:subPropertyOf p2"], ["p rdfs:subPropertyOf p2"]),
        _rule("R3", ["p rdfs:subPropertyOf p1", "s p o"], ["s p1 o"]),
        _rule("R4", ["s rdfs:domain x", "u s y"], ["u rdf:type x"]),
        _rule("R5", ["p rdfs:range o", "s p v"], ["v rdf:type o"]),
        _rule("R6", ["c rdfs:subClassOf c1", "v rdf:type c"], ["v rdf:type c1"]),
        _rule("O1", ["p rdf:type owl:FunctionalProperty", "u p v", "u p w"], ["v owl:sameAs w"],
              distinct=(("v", "w"),)),
        _rule("O2", ["p rdf:type owl:InverseFunctionalProperty", "v p u", "w p u"], ["v owl:sameAs w"],
              distinct=(("v", "w"),)),
        _rule("O3", ["p rdf:type owl:SymmetricProperty", "v p u"], ["u p v"]),
        _rule("O4", ["p rdf:type owl:TransitiveProperty", "u p w", "w p v"], ["u p v"]),
        _rule("O5", ["v owl:sameAs w"], ["w owl:sameAs v"]),
        _rule("O6", ["v owl:sameAs w", "w owl:sameAs u"], ["v owl:sameAs u"]),
        _rule("O7a", ["p owl:inverseOf q", "v p w"], ["w q v"]),
        _rule("O7b", ["p owl:inverseOf q", "v q w"], ["w p v"]),
        _rule("O8", ["v rdf:type owl:Class", "v owl:sameAs w"], ["v rdfs:subClassOf w"], enabled=False),
        _rule("O9", ["p rdf:type owl:Property", "p owl:sameAs q"], ["p rdfs:subPropertyOf q"], enabled=False),
        _rule("O10", ["u p v", "u owl:sameAs x", "v owl:sameAs y"], ["x p y"], reflexive_same_as=True),
        _rule("O11a", ["v owl:equivalentClass w"], ["v rdfs:subClassOf w"]),
        _rule("O11b", ["v owl:equivalentClass w"], ["w rdfs:subClassOf v"]),
        _rule("O11c", ["v rdfs:subClassOf w", "w rdfs:subClassOf v"], ["v owl:equivalentClass w"]),
        _rule("O12a", ["v owl:equivalentProperty w"], ["v rdfs:subPropertyOf w"]),
        _rule("O12b", ["v owl:equivalentProperty w"], ["w rdfs:subPropertyOf v"]),
        _rule("O12c", ["v rdfs:subPropertyOf w", "w rdfs:subPropertyOf v"], ["v owl:equivalentProperty w"]),
        o13,
        o14,
        _rule("O15", ["v owl:someValuesFrom w", "v owl:onProperty p", "u p x", "x rdf:type w"], ["u rdf:type v"]),
        _rule("O16", ["v owl:allValuesFrom w", "v owl:onProperty p", "u rdf:type v", "u p x"], ["x rdf:type w"]),
    ]
    rules.sort(key=lambda r: RULE_ORDER[r.id])
    for r in rules:
        r.check_range_restricted()
    return tuple(rules)


class Catalog(tuple):
    """Immutable rule table, indexable by position or rule id."""

    def __getitem__(self, key):
        if isinstance(key, str):
            for r in self:
                if r.id == key:
                    return r
            raise KeyError(key)
        return tuple.__getitem__(self, key)

    def ids(self) -> list:
        return [r.id for r in self]

    def enabled(self) -> list:
        return [r for r in self if r.enabled]

    def of_class(self, cls: RuleClass, enabled_only: bool = False) -> list:
        return [r for r in self if r.rule_class is cls and (r.enabled or not enabled_only)]

    def with_enabled(self, **flags) -> "Catalog":
        """Copy with ``enabled`` overridden per rule id, e.g. ``O8=True``."""
        return Catalog(replace(r, enabled=flags.get(r.id, r.enabled)) for r in self)


@functools.lru_cache(maxsize=None)
def catalog(table1_literal: bool = False) -> Catalog:
    """The rule table.

    By default O13 and O14 follow pD* (rdfp14b / rdfp14a); with
    ``table1_literal`` they use the variant bodies in which the restriction
    node itself is the property value.
    """
    return Catalog(_build(table1_literal))


def rule_class_counts(rules=None) -> dict:
    rules = catalog() if rules is None else rules
    counts = {c: 0 for c in RuleClass}
    for r in rules:
        counts[r.rule_class] += 1
    return counts


def _pattern_json(p: TriplePattern) -> list:
    return [("?" + x.name) if isinstance(x, Var) else x.term.lexical for x in p]


def dump_json(rules=None) -> str:
    rules = catalog() if rules is None else rules
    return json.dumps(
        [
            {
                "id": r.id,
                "class": r.rule_class.value,
                "enabled": r.enabled,
                "conditions": [_pattern_json(c) for c in r.conditions],
                "consequences": [_pattern_json(c) for c in r.consequences],
            }
            for r in rules
        ],
        indent=2,
    )


def dump_table(rules=None) -> str:
    rules = catalog() if rules is None else rules
    rows = [("id", "class", "on", "condition", "consequence")]
    for r in rules:
        rows.append((
            r.id,
            r.rule_class.value,
            "yes" if r.enabled else "no",
            ", ".join(map(str, r.conditions)),
            ", ".join(map(str, r.consequences)),
        ))
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows
    ) + "\n"
