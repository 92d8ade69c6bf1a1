"""Terms, dictionary encoding and the indexed in-memory triple store."""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from . import vocab

Triple = tuple  # (s, p, o) of integer term ids


class TermKind(enum.Enum):
    IRI = "iri"
    BLANK = "blank"
    LITERAL = "literal"


@dataclass(frozen=True)
class Term:
    """An RDF term.

    ``lexical`` holds the IRI text without angle brackets, the blank node
    label without ``_:``, or the complete literal token as written in
    N-Triples (quotes, escapes, datatype or language tag included).
    Equality is exact string equality; nothing is normalized.
    """

    kind: TermKind
    lexical: str

    def __post_init__(self):
        if self.kind is TermKind.IRI:
            if not self.lexical or any(c.isspace() for c in self.lexical):
                raise ValueError(f"invalid IRI {self.lexical!r}")
        elif self.kind is TermKind.BLANK:
            if not self.lexical or any(c.isspace() for c in self.lexical):
                raise ValueError(f"invalid blank node label {self.lexical!r}")
        elif not self.lexical.startswith('"'):
            raise ValueError(f"literal must be a quoted token: {self.lexical!r}")

    def n3(self) -> str:
        if self.kind is TermKind.IRI:
            return "<" + self.lexical + ">"
        if self.kind is TermKind.BLANK:
            return "_:" + self.lexical
        return self.lexical

    def __str__(self):
        return self.n3()


def IRI(text: str) -> Term:
    return Term(TermKind.IRI, text)


def BNode(label: str) -> Term:
    return Term(TermKind.BLANK, label)


def Literal(value: str, datatype: Optional[str] = None, lang: Optional[str] = None) -> Term:
    """Build a literal term from an unescaped string value."""
    escaped = (
        value.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )
    token = '"' + escaped + '"'
    if datatype is not None:
        token += "^^<" + datatype + ">"
    elif lang is not None:
        token += "@" + lang
    return Term(TermKind.LITERAL, token)


class Dictionary:
    """Bijective map between terms and dense integer ids."""

    def __init__(self):
        self._forward: dict[Term, int] = {}
        self._backward: list[Term] = []

    def __len__(self):
        return len(self._backward)

    def __contains__(self, term):
        return term in self._forward

    def intern(self, term: Term) -> int:
        tid = self._forward.get(term)
        if tid is None:
            tid = len(self._backward)
            self._forward[term] = tid
            self._backward.append(term)
        return tid

    def lookup(self, term: Term) -> Optional[int]:
        return self._forward.get(term)

    def decode(self, tid: int) -> Term:
        if not 0 <= tid < len(self._backward):
            raise KeyError(f"unknown term id {tid}")
        return self._backward[tid]

    def kind(self, tid: int) -> TermKind:
        return self._backward[tid].kind

    def encode_triple(self, s: Term, p: Term, o: Term) -> Triple:
        return (self.intern(s), self.intern(p), self.intern(o))

    def decode_triple(self, t: Triple) -> tuple:
        return (self.decode(t[0]), self.decode(t[1]), self.decode(t[2]))


def intern(term: Term, dictionary: Dictionary) -> int:
    return dictionary.intern(term)


class Vocabulary:
    """Ids of the RDF/RDFS/OWL terms the engine needs, interned up front."""

    def __init__(self, dictionary: Dictionary):
        self.dictionary = dictionary
        self.type = dictionary.intern(IRI(vocab.TYPE))
        self.same_as = dictionary.intern(IRI(vocab.SAME_AS))
        self.sub_class_of = dictionary.intern(IRI(vocab.SUB_CLASS_OF))
        self.sub_property_of = dictionary.intern(IRI(vocab.SUB_PROPERTY_OF))
        self.schema_predicates = frozenset(
            dictionary.intern(IRI(x)) for x in vocab.SCHEMA_PREDICATES
        )
        self.schema_type_objects = frozenset(
            dictionary.intern(IRI(x)) for x in vocab.SCHEMA_TYPE_OBJECTS
        )

    def id(self, iri: str) -> int:
        return self.dictionary.intern(IRI(iri))


class TripleClass(enum.Enum):
    SCHEMA = "schema"
    TYPE = "type"
    SAMEAS = "sameAs"
    SPO = "spo"


def classify(t: Triple, voc: Vocabulary) -> TripleClass:
    p = t[1]
    if p in voc.schema_predicates:
        return TripleClass.SCHEMA
    if p == voc.type:
        if t[2] in voc.schema_type_objects:
            return TripleClass.SCHEMA
        return TripleClass.TYPE
    if p == voc.same_as:
        return TripleClass.SAMEAS
    return TripleClass.SPO


def classify_triple(t: Triple, dictionary: Dictionary) -> TripleClass:
    return classify(t, Vocabulary(dictionary))


class TripleIndex:
    """A deduplicated set of triples with lookup indexes.

    Every index holds references to the same tuple objects, appended in
    insertion order; ``log`` keeps that order for delta bookkeeping.
    """

    def __init__(self, triples: Iterable[Triple] = ()):
        self._set: set = set()
        self.log: list = []
        self.by_p = defaultdict(list)
        self.by_s = defaultdict(list)
        self.by_o = defaultdict(list)
        self.by_ps = defaultdict(list)
        self.by_po = defaultdict(list)
        self.add_all(triples)

    def __len__(self):
        return len(self._set)

    def __contains__(self, t):
        return t in self._set

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.log)

    def add(self, t: Triple) -> bool:
        if t in self._set:
            return False
        if type(t) is not tuple:
            t = tuple(t)
        self._set.add(t)
        self.log.append(t)
        s, p, o = t
        self.by_p[p].append(t)
        self.by_s[s].append(t)
        self.by_o[o].append(t)
        self.by_ps[(p, s)].append(t)
        self.by_po[(p, o)].append(t)
        return True

    def add_all(self, triples: Iterable[Triple]) -> int:
        return sum(1 for t in triples if self.add(t))

    def match(self, s=None, p=None, o=None) -> list:
        """Triples matching the bound positions (``None`` is a wildcard)."""
        if p is not None:
            if s is not None:
                if o is not None:
                    return [(s, p, o)] if (s, p, o) in self._set else []
                return self.by_ps.get((p, s), ())
            if o is not None:
                return self.by_po.get((p, o), ())
            return self.by_p.get(p, ())
        if s is not None:
            cands = self.by_s.get(s, ())
            return [t for t in cands if t[2] == o] if o is not None else cands
        if o is not None:
            return self.by_o.get(o, ())
        return self.log

    def objects(self, s, p) -> list:
        return [t[2] for t in self.by_ps.get((p, s), ())]

    def subjects(self, p, o) -> list:
        return [t[0] for t in self.by_po.get((p, o), ())]


class DeltaSet:
    """A small triple set whose lookup indexes are built on first use."""

    _KEYS = {
        "p": lambda t: t[1],
        "s": lambda t: t[0],
        "o": lambda t: t[2],
        "ps": lambda t: (t[1], t[0]),
        "po": lambda t: (t[1], t[2]),
    }

    def __init__(self, triples: Iterable[Triple] = ()):
        self.log = list(dict.fromkeys(triples))
        self._set = set(self.log)
        self._indexes = {}

    def __len__(self):
        return len(self._set)

    def __contains__(self, t):
        return t in self._set

    def __iter__(self):
        return iter(self.log)

    def _index(self, kind):
        idx = self._indexes.get(kind)
        if idx is None:
            key = self._KEYS[kind]
            idx = defaultdict(list)
            for t in self.log:
                idx[key(t)].append(t)
            self._indexes[kind] = idx
        return idx

    def match(self, s=None, p=None, o=None):
        if p is not None:
            if s is not None:
                if o is not None:
                    return [(s, p, o)] if (s, p, o) in self._set else []
                return self._index("ps").get((p, s), ())
            if o is not None:
                return self._index("po").get((p, o), ())
            return self._index("p").get(p, ())
        if s is not None:
            cands = self._index("s").get(s, ())
            return [t for t in cands if t[2] == o] if o is not None else cands
        if o is not None:
            return self._index("o").get(o, ())
        return self.log


class UnionView:
    """Read-only union of two indexes, for matching against store + delta."""

    def __init__(self, a, b):
        self.a = a
        self.b = b

    def __contains__(self, t):
        return t in self.a or t in self.b

    def match(self, s=None, p=None, o=None):
        first = self.a.match(s, p, o)
        second = self.b.match(s, p, o)
        if not second:
            return first
        return list(first) + [t for t in second if t not in self.a]


class EmptyDatasetError(ValueError):
    """Raised when statistics are requested for a store without triples."""


class TripleStore(TripleIndex):
    """Dictionary-encoded triple store partitioned by triple class."""

    def __init__(self, dictionary: Optional[Dictionary] = None, triples: Iterable[Triple] = ()):
        self.dictionary = dictionary if dictionary is not None else Dictionary()
        self.vocab = Vocabulary(self.dictionary)
        self.partitions = {c: [] for c in TripleClass}
        super().__init__(triples)

    def add(self, t: Triple) -> bool:
        if not TripleIndex.add(self, t):
            return False
        t = self.log[-1]
        self.partitions[classify(t, self.vocab)].append(t)
        return True

    def insert(self, triples: Iterable[Triple]) -> int:
        """Add triples, returning how many were not already present."""
        return self.add_all(triples)

    def add_terms(self, s: Term, p: Term, o: Term) -> bool:
        return self.add(self.dictionary.encode_triple(s, p, o))

    @property
    def schema_size(self) -> int:
        return len(self.partitions[TripleClass.SCHEMA])

    def copy(self) -> "TripleStore":
        """A new store over the same dictionary with the same triples."""
        return TripleStore(self.dictionary, self.log)

    def is_well_formed(self, t: Triple) -> bool:
        d = self.dictionary
        return d.kind(t[0]) is not TermKind.LITERAL and d.kind(t[1]) is TermKind.IRI

    def triple_set(self) -> frozenset:
        return frozenset(self._set)

    def decoded(self) -> set:
        return {self.dictionary.decode_triple(t) for t in self.log}


def insert(store: TripleStore, triples: Iterable[Triple]) -> int:
    return store.insert(triples)


@dataclass
class ClassProportions:
    type: float
    same_as: float
    spo: float
    schema_count: int
    instance_count: int
    total: int

    def as_dict(self) -> dict:
        return {
            TripleClass.TYPE: self.type,
            TripleClass.SAMEAS: self.same_as,
            TripleClass.SPO: self.spo,
        }


def class_proportions(store: TripleStore) -> ClassProportions:
    """Fractions of Type, SameAs and SPO triples among instance triples.

    Schema triples are left out of the fractions and reported as a count.
    A store holding only schema triples yields NaN fractions.
    """
    if len(store) == 0:
        raise EmptyDatasetError("empty dataset")
    n = {c: len(ts) for c, ts in store.partitions.items()}
    instances = n[TripleClass.TYPE] + n[TripleClass.SAMEAS] + n[TripleClass.SPO]
    if instances == 0:
        nan = float("nan")
        return ClassProportions(nan, nan, nan, n[TripleClass.SCHEMA], 0, len(store))
    return ClassProportions(
        type=n[TripleClass.TYPE] / instances,
        same_as=n[TripleClass.SAMEAS] / instances,
        spo=n[TripleClass.SPO] / instances,
        schema_count=n[TripleClass.SCHEMA],
        instance_count=instances,
        total=len(store),
    )
