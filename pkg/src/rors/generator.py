"""Synthetic datasets.

``generate_university`` builds a university-domain ontology and instance
data in the spirit of the LUBM generator, with an instance mix of roughly
one rdf:type triple per four other triples.  ``random_ontology`` builds
small random ontologies that exercise every rule family, for oracle
testing.
"""

from __future__ import annotations

import random
from typing import Iterator, Optional

from . import vocab as V
from .model import IRI, BNode, Literal, Term

UB = "http://swat.cse.lehigh.edu/onto/univ-bench.owl#"
DATA = "http://www.example.org/data/"

TYPE_FRACTION = 0.20055


def ub(name: str) -> Term:
    return IRI(UB + name)


def _t(x) -> Term:
    if isinstance(x, Term):
        return x
    if ":" in x and x.split(":", 1)[0] in V.PREFIXES:
        prefix, local = x.split(":", 1)
        return IRI(V.PREFIXES[prefix] + local)
    return ub(x)


def university_schema() -> list:
    """The ontology part: hierarchy, property axioms and restrictions."""
    triples = []

    def add(s, p, o):
        triples.append((_t(s), _t(p), _t(o)))

    sub = "rdfs:subClassOf"
    for c, sup in [
        ("University", "Organization"), ("Department", "Organization"),
        ("ResearchGroup", "Organization"), ("Employee", "Person"),
        ("Faculty", "Employee"), ("Professor", "Faculty"),
        ("FullProfessor", "Professor"), ("AssociateProfessor", "Professor"),
        ("AssistantProfessor", "Professor"), ("Lecturer", "Faculty"),
        ("Chair", "Professor"), ("Student", "Person"),
        ("UndergraduateStudent", "Student"), ("GraduateStudent", "Student"),
        ("TeachingAssistant", "Person"), ("ResearchAssistant", "Person"),
        ("GraduateCourse", "Course"), ("Article", "Publication"),
        ("JournalArticle", "Article"), ("ConferencePaper", "Article"),
        ("TechnicalReport", "Publication"),
    ]:
        add(c, sub, sup)
    for c in ["Organization", "Person", "Course", "Publication", "Employee", "Student"]:
        add(c, "rdf:type", "owl:Class")
    add("Human", "owl:equivalentClass", "Person")

    subp = "rdfs:subPropertyOf"
    for p, sup in [
        ("headOf", "worksFor"), ("worksFor", "memberOf"),
        ("doctoralDegreeFrom", "degreeFrom"), ("mastersDegreeFrom", "degreeFrom"),
        ("undergraduateDegreeFrom", "degreeFrom"),
    ]:
        add(p, subp, sup)
    add("affiliatedWith", "owl:equivalentProperty", "affiliateOf")
    add("member", "owl:inverseOf", "memberOf")
    add("hasAlumnus", "owl:inverseOf", "degreeFrom")
    add("authorOf", "owl:inverseOf", "publicationAuthor")
    add("subOrganizationOf", "rdf:type", "owl:TransitiveProperty")
    add("collaboratesWith", "rdf:type", "owl:SymmetricProperty")
    add("advisor", "rdf:type", "owl:FunctionalProperty")
    add("emailAddress", "rdf:type", "owl:InverseFunctionalProperty")

    for p, dom, rng in [
        ("takesCourse", "Student", "Course"), ("teacherOf", "Faculty", "Course"),
        ("advisor", "Student", "Professor"), ("publicationAuthor", "Publication", "Person"),
        ("memberOf", "Person", "Organization"), ("subOrganizationOf", "Organization", "Organization"),
        ("teachingAssistantOf", "TeachingAssistant", "Course"),
        ("degreeFrom", "Person", "University"),
    ]:
        add(p, "rdfs:domain", dom)
        add(p, "rdfs:range", rng)

    # Chair == some headOf Department
    r1 = BNode("chairRestriction")
    add(r1, "rdf:type", "owl:Restriction")
    add(r1, "owl:onProperty", "headOf")
    add(r1, "owl:someValuesFrom", "Department")
    add("Chair", "owl:equivalentClass", r1)
    # Faculty only author Articles
    r2 = BNode("facultyAuthorRestriction")
    add(r2, "rdf:type", "owl:Restriction")
    add(r2, "owl:onProperty", "authorOf")
    add(r2, "owl:allValuesFrom", "Article")
    add("Faculty", sub, r2)
    # Alumni of University0 == degreeFrom value University0
    r3 = BNode("alumnusRestriction")
    add(r3, "rdf:type", "owl:Restriction")
    add(r3, "owl:onProperty", "undergraduateDegreeFrom")
    add(r3, "owl:hasValue", IRI(DATA + "University0"))
    add("University0Alumnus", "owl:equivalentClass", r3)
    add("University0Alumnus", sub, "Person")
    return triples


class _Builder:
    def __init__(self, rng: random.Random, sameas_rate: float):
        self.rng = rng
        self.sameas_rate = sameas_rate
        self.triples = []
        self.n_type = 0
        self.n_spo = 0
        self.n_same = 0
        self.aliases = 0
        self.people = []

    def type(self, s, cls):
        self.triples.append((s, IRI(V.TYPE), ub(cls)))
        self.n_type += 1

    def spo(self, s, p, o):
        self.triples.append((s, ub(p), o))
        self.n_spo += 1

    def balance(self, entity: Term, label: str):
        """Pad with literal attributes to hold the Type share near target."""
        target = self.n_type * (1 - TYPE_FRACTION) / TYPE_FRACTION
        k = 0
        while self.n_spo + 1 <= target:
            attr = ("name", "telephone", "researchInterest")[k % 3]
            self.spo(entity, attr, Literal(f"{label} {attr} {k}"))
            k += 1
        instances = self.n_type + self.n_spo + self.n_same
        while self.people and self.n_same + 1 <= self.sameas_rate * (instances + 1):
            person = self.rng.choice(self.people)
            alias = IRI(f"{DATA}alias{self.aliases}")
            self.aliases += 1
            self.triples.append((alias, IRI(V.SAME_AS), person))
            self.n_same += 1
            instances += 1


def generate_university(size: int = 10_000, seed: int = 42, sameas_rate: float = 0.0) -> list:
    """A deterministic synthetic dataset of about ``size`` triples.

    Returns a list of ``(s, p, o)`` Terms, schema first.
    """
    if not 0.0 <= sameas_rate < 1.0:
        raise ValueError("sameas_rate must be in [0, 1)")
    rng = random.Random(seed)
    schema = university_schema()
    b = _Builder(rng, sameas_rate)
    budget = size - len(schema)

    def node(kind, *ids):
        return IRI(DATA + kind + "".join(f".{i}" if n else str(i) for n, i in enumerate(ids)))

    u = 0
    while len(b.triples) < budget:
        univ = node("University", u)
        b.type(univ, "University")
        b.spo(univ, "name", Literal(f"University {u}"))
        if u:
            b.spo(univ, "collaboratesWith", node("University", rng.randrange(u)))
        for d in range(rng.randint(3, 6)):
            if len(b.triples) >= budget:
                break
            dept = node("Department", u, d)
            b.type(dept, "Department")
            b.spo(dept, "subOrganizationOf", univ)
            group = node("ResearchGroup", u, d)
            b.type(group, "ResearchGroup")
            b.spo(group, "subOrganizationOf", dept)
            courses = [node("Course", u, d, c) for c in range(rng.randint(6, 10))]
            for i, c in enumerate(courses):
                b.type(c, "GraduateCourse" if i % 3 == 0 else "Course")
                b.spo(c, "name", Literal(f"Course {u}.{d}.{i}"))
            faculty = []
            ranks = ["FullProfessor", "AssociateProfessor", "AssistantProfessor", "Lecturer"]
            for f in range(rng.randint(6, 10)):
                person = node("Faculty", u, d, f)
                faculty.append(person)
                b.people.append(person)
                b.type(person, ranks[f % 4])
                if f == 0:
                    b.spo(person, "headOf", dept)
                else:
                    b.spo(person, "worksFor", dept)
                b.spo(person, "teacherOf", rng.choice(courses))
                b.spo(person, "doctoralDegreeFrom", node("University", rng.randrange(u + 1)))
                b.spo(person, "undergraduateDegreeFrom", node("University", rng.randrange(u + 1)))
                b.spo(person, "emailAddress", Literal(f"faculty{u}.{d}.{f}@example.org"))
                if rng.random() < 0.3 and len(faculty) > 1:
                    b.spo(person, "collaboratesWith", rng.choice(faculty[:-1]))
                for k in range(rng.randint(1, 3)):
                    pub = node("Publication", u, d, f, k)
                    b.type(pub, "Publication")
                    b.spo(pub, "publicationAuthor", person)
                    b.spo(pub, "name", Literal(f"Publication {u}.{d}.{f}.{k}"))
                b.balance(person, "faculty")
            for s in range(rng.randint(15, 30)):
                person = node("Student", u, d, s)
                b.people.append(person)
                grad = s % 4 == 0
                b.type(person, "GraduateStudent" if grad else "UndergraduateStudent")
                b.spo(person, "memberOf", dept)
                for c in rng.sample(courses, rng.randint(2, 4)):
                    b.spo(person, "takesCourse", c)
                if grad:
                    b.spo(person, "advisor", rng.choice(faculty[:4]))
                    b.spo(person, "undergraduateDegreeFrom", node("University", rng.randrange(u + 1)))
                    if rng.random() < 0.3:
                        b.type(person, "TeachingAssistant")
                        b.spo(person, "teachingAssistantOf", rng.choice(courses))
                b.spo(person, "emailAddress", Literal(f"student{u}.{d}.{s}@example.org"))
                if s % 10 == 1:
                    b.type(person, "University0Alumnus")
                b.balance(person, "student")
        u += 1
    return schema + b.triples[:budget]


def random_ontology(seed: int, size: int = 150, same_as: bool = True,
                    functional: bool = True, n_individuals: int = 24) -> list:
    """A small random ontology touching every rule family.

    Classes, properties and individuals come from disjoint pools, so no
    instance rule can derive a schema triple.  Property roles are drawn so
    that closures stay small: transitive, symmetric and (inverse-)
    functional properties carry few facts, and functional properties never
    receive facts through sub-property or inverse axioms.  With
    ``same_as=False`` no owl:sameAs facts are asserted; with
    ``functional=False`` no (inverse-)functional axioms are asserted.
    """
    rng = random.Random(seed)
    ns = "http://example.org/r/"
    T = IRI(V.TYPE)
    classes = [IRI(f"{ns}C{i}") for i in range(8)]
    props = [IRI(f"{ns}p{i}") for i in range(8)]
    rng.shuffle(props)
    trans, sym, func, ifunc = props[:4]
    plain = props[4:]
    people = [IRI(f"{ns}i{i}") for i in range(n_individuals)] + [BNode(f"b{i}") for i in range(2)]
    lits = [Literal("x"), Literal("1", datatype="http://www.w3.org/2001/XMLSchema#integer")]
    restrictions = []

    schema = [
        (trans, T, IRI(V.TRANSITIVE_PROPERTY)),
        (sym, T, IRI(V.SYMMETRIC_PROPERTY)),
    ]
    if functional:
        schema.append((func, T, IRI(V.FUNCTIONAL_PROPERTY)))
        schema.append((ifunc, T, IRI(V.INVERSE_FUNCTIONAL_PROPERTY)))
    n_restrictions = 0

    def lower_upper(pool):
        i, j = sorted(rng.sample(range(len(pool)), 2))
        return pool[i], pool[j]

    def axiom(kind):
        nonlocal n_restrictions
        if kind == "sub":
            c1, c2 = lower_upper(classes)
            schema.append((c1, IRI(V.SUB_CLASS_OF), c2))
        elif kind == "eqc":
            c1, c2 = lower_upper(classes)
            schema.append((c1, IRI(V.EQUIVALENT_CLASS), c2))
        elif kind == "subp":
            p1, p2 = lower_upper(plain + [sym])
            if rng.random() < 0.3:
                p1 = rng.choice([func, ifunc, trans])
            schema.append((p1, IRI(V.SUB_PROPERTY_OF), p2))
        elif kind == "eqp":
            p1, p2 = rng.sample(plain, 2)
            schema.append((p1, IRI(V.EQUIVALENT_PROPERTY), p2))
        elif kind == "dom":
            schema.append((rng.choice(props), IRI(V.DOMAIN), rng.choice(classes)))
        elif kind == "rng":
            schema.append((rng.choice(props), IRI(V.RANGE), rng.choice(classes)))
        elif kind == "inv":
            p1 = rng.choice(plain)
            p2 = rng.choice([trans, sym] + plain)
            if p1 != p2:
                schema.append((p1, IRI(V.INVERSE_OF), p2))
        else:
            r = BNode(f"r{n_restrictions}")
            n_restrictions += 1
            rel = rng.choice([V.HAS_VALUE, V.SOME_VALUES_FROM, V.ALL_VALUES_FROM])
            onp = rng.choice(plain + [trans, sym])
            c1, c2 = rng.sample(classes, 2)
            filler = rng.choice(people[:n_individuals]) if rel == V.HAS_VALUE else c1
            schema.append((r, IRI(V.ON_PROPERTY), onp))
            schema.append((r, IRI(rel), filler))
            side = rng.random()
            if side < 0.4:
                schema.append((c2, IRI(V.SUB_CLASS_OF), r))
            elif side < 0.8:
                schema.append((r, IRI(V.SUB_CLASS_OF), c2))
            else:
                schema.append((c2, IRI(V.EQUIVALENT_CLASS), r))
            restrictions.append(r)

    for kind in ("sub", "eqc", "subp", "eqp", "dom", "rng", "inv", "restr", "restr"):
        axiom(kind)
    while len(schema) < size // 5:
        axiom(rng.choice(["sub", "sub", "subp", "dom", "rng", "restr"]))

    data = []
    sparse = {trans: 0, sym: 0, func: 0, ifunc: 0}
    while len(schema) + len(data) < size:
        x = rng.random()
        s = rng.choice(people)
        if x < 0.3:
            data.append((s, T, rng.choice(classes + restrictions[:1])))
        elif same_as and x < 0.33:
            data.append((rng.choice(people[:n_individuals]), IRI(V.SAME_AS), rng.choice(people)))
        elif x < 0.37:
            data.append((s, rng.choice(plain), rng.choice(lits)))
        else:
            p = rng.choice(props)
            if p in sparse:
                if sparse[p] >= 4:
                    p = rng.choice(plain)
                else:
                    sparse[p] += 1
            data.append((s, p, rng.choice(people)))
    return schema + data
