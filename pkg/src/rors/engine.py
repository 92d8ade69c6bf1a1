"""Rule evaluation kernels.

Two independent evaluation routes share one contract (``apply_rule``):

* ``broadcast``: schema-side conditions are resolved from small read-only
  maps built once per schema version (restriction conditions pre-joined by
  restriction node), and instance-side conditions are joined by index
  lookups over disjoint partitions of the instance triples.  Transitive
  rules (R1, R2, O4, O6) run the semi-naive closure kernel, O5 is a
  symmetric completion and O10 a sameAs replacement kernel.
* ``generic``: a plain left-to-right nested index join over the rule's
  patterns, one composition step per application.  Used as the oracle.
"""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import vocab
from .model import DeltaSet, TripleClass, TripleStore, UnionView
from .rules import Rule, Var, catalog

BROADCAST = "broadcast"
GENERIC = "generic"
KERNELS = (BROADCAST, GENERIC)

_RESTRICTION_RELATIONS = (vocab.HAS_VALUE, vocab.SOME_VALUES_FROM, vocab.ALL_VALUES_FROM)


def transitive_closure(pairs: Iterable[tuple]) -> set:
    """Transitive closure of a binary relation by delta doubling.

    Each round composes the newest pairs with themselves, drops what is
    already known, and extends the known relation by composing those new
    pairs with it.  Stops when a round finds nothing new.
    """
    closure = set(pairs)
    delta = set(closure)
    rounds = 0
    while True:
        rounds += 1
        by_obj = defaultdict(list)  # x -> [s | (s, x) in delta]
        for s, o in delta:
            by_obj[o].append(s)
        by_subj = defaultdict(list)
        for s, o in delta:
            by_subj[s].append(o)
        step = {(s, o) for x, ss in by_obj.items() for o in by_subj.get(x, ()) for s in ss}
        delta = step - closure
        if not delta:
            break
        by_obj = defaultdict(list)
        for s, o in delta:
            by_obj[o].append(s)
        known = defaultdict(list)
        for s, o in closure:
            known[s].append(o)
        tail = {(s, o) for x, ss in by_obj.items() for o in known.get(x, ()) for s in ss}
        closure |= delta
        closure |= tail
    transitive_closure.last_rounds = rounds
    return closure


transitive_closure.last_rounds = 0


@dataclass
class BroadcastMaps:
    """Schema relations replicated to every worker.

    ``relations[pred][s]`` is the set of objects of schema predicate
    ``pred``; ``types[cls]`` the subjects typed with an OWL schema class;
    ``restrictions[rel][v]`` the pre-joined ``(p, w)`` pairs for
    ``v owl:onProperty p`` and ``v rel w``.
    """

    schema_size: int
    relations: dict = field(default_factory=dict)
    types: dict = field(default_factory=dict)
    restrictions: dict = field(default_factory=dict)

    def objects(self, pred, s):
        return self.relations.get(pred, {}).get(s, ())

    def pairs(self, pred):
        return [(s, o) for s, os in self.relations.get(pred, {}).items() for o in os]


def build_broadcasts(store: TripleStore) -> BroadcastMaps:
    voc = store.vocab
    maps = BroadcastMaps(schema_size=store.schema_size)
    for pred in voc.schema_predicates:
        maps.relations[pred] = {}
    for cls in voc.schema_type_objects:
        maps.types[cls] = set()
    for s, p, o in store.partitions[TripleClass.SCHEMA]:
        if p == voc.type:
            maps.types[o].add(s)
        else:
            maps.relations[p].setdefault(s, set()).add(o)
    on_property = maps.relations[voc.id(vocab.ON_PROPERTY)]
    for rel in _RESTRICTION_RELATIONS:
        rid = voc.id(rel)
        joined = {}
        for v, ws in maps.relations[rid].items():
            ps = on_property.get(v)
            if ps:
                joined[v] = {(p, w) for p in ps for w in ws}
        maps.restrictions[rid] = joined
    return maps


class _Compiled:
    """A rule with its patterns resolved to term ids."""

    def __init__(self, rule: Rule, store: TripleStore):
        d = store.dictionary
        voc = store.vocab

        def enc(x):
            return Var(x.name) if isinstance(x, Var) else d.intern(x.term)

        self.rule = rule
        self.conditions = [tuple(enc(x) for x in c) for c in rule.conditions]
        self.consequences = [tuple(enc(x) for x in c) for c in rule.consequences]
        self.distinct = rule.distinct
        self.same_as = voc.same_as
        self.reflexive = set()
        if rule.reflexive_same_as:
            self.reflexive = {i for i, c in enumerate(self.conditions) if c[1] == voc.same_as}
        self.schema_atoms = []
        self.instance_atoms = []
        for i, c in enumerate(self.conditions):
            if _is_schema_atom(c, voc):
                self.schema_atoms.append(i)
            else:
                self.instance_atoms.append(i)
        self.restriction_shape = self._restriction_shape(voc)

    def _restriction_shape(self, voc):
        """(relation id, v, w, p) when the schema atoms are ``v rel w, v onProperty p``."""
        if len(self.schema_atoms) != 2:
            return None
        a, b = (self.conditions[i] for i in self.schema_atoms)
        onp = voc.id(vocab.ON_PROPERTY)
        rels = {voc.id(r) for r in _RESTRICTION_RELATIONS}
        if a[1] in rels and b[1] == onp and isinstance(a[0], Var) and a[0] == b[0] \
                and isinstance(a[2], Var) and isinstance(b[2], Var):
            return a[1], a[0].name, a[2].name, b[2].name
        return None

    def emit(self, binding, out: set):
        for a, b in self.distinct:
            if binding[a] == binding[b]:
                return
        for head in self.consequences:
            out.add(tuple(binding[x.name] if isinstance(x, Var) else x for x in head))


def _is_schema_atom(c, voc) -> bool:
    p = c[1]
    if isinstance(p, Var):
        return False
    if p in voc.schema_predicates:
        return True
    return p == voc.type and not isinstance(c[2], Var) and c[2] in voc.schema_type_objects


def _unify(atom, triple, binding):
    """Extend ``binding`` so ``atom`` matches ``triple``; ``None`` on clash."""
    new = None
    for x, val in zip(atom, triple):
        if isinstance(x, Var):
            cur = binding.get(x.name) if new is None else new.get(x.name)
            if cur is None:
                if new is None:
                    new = dict(binding)
                new[x.name] = val
            elif cur != val:
                return None
        elif x != val:
            return None
    return binding if new is None else new


def _lookup(atom, binding, source):
    s, p, o = (
        (binding.get(x.name) if isinstance(x, Var) else x) for x in atom
    )
    return source.match(s, p, o)


def _reflexive_candidates(atom, binding, view):
    """Real matches plus the virtual ``t owl:sameAs t`` triples."""
    s, p, o = ((binding.get(x.name) if isinstance(x, Var) else x) for x in atom)
    real = list(view.match(s, p, o))
    if s is not None:
        terms = [s] if o is None or o == s else []
    elif o is not None:
        terms = [o]
    else:
        terms = sorted({t[0] for t in view.match()} | {t[2] for t in view.match()})
    return real + [(t, p, t) for t in terms]


def _view(store, delta):
    """Match source for "store plus delta"; the store alone when it holds the delta."""
    if delta is None or getattr(delta, "in_store", False):
        return store
    if all(t in store for t in delta):
        delta.in_store = True
        return store
    return UnionView(store, delta)


# ---------------------------------------------------------------------------
# generic nested index join


def _nested(cr: _Compiled, order, depth, binding, view, delta, out):
    if depth == len(order):
        cr.emit(binding, out)
        return
    i = order[depth]
    atom = cr.conditions[i]
    if depth == 0 and delta is not None:
        cands = _lookup(atom, binding, delta)
    elif i in cr.reflexive:
        cands = _reflexive_candidates(atom, binding, view)
    else:
        cands = _lookup(atom, binding, view)
    for t in cands:
        b = _unify(atom, t, binding)
        if b is not None:
            _nested(cr, order, depth + 1, b, view, delta, out)


def nested_join(store: TripleStore, rule: Rule, delta: Optional[DeltaSet] = None) -> set:
    """All consequences of one application of ``rule`` by nested index join.

    With ``delta``, only bindings using at least one delta triple count;
    conditions match against store and delta together.
    """
    cr = _Compiled(rule, store)
    view = _view(store, delta)
    n = len(cr.conditions)
    out = set()
    if delta is None:
        _nested(cr, list(range(n)), 0, {}, view, None, out)
    else:
        for i in range(n):
            _nested(cr, [i] + [j for j in range(n) if j != i], 0, {}, view, delta, out)
    return out


# ---------------------------------------------------------------------------
# broadcast join


class Engine:
    """Evaluates rules against one store, caching broadcast maps per schema state."""

    def __init__(self, store: TripleStore, kernel: str = BROADCAST, workers: int = 1):
        if kernel not in KERNELS:
            raise ValueError(f"unknown kernel {kernel!r}")
        if workers < 1:
            raise ValueError("workers must be >= 1")
        self.store = store
        self.kernel = kernel
        self.workers = workers
        self._maps: Optional[BroadcastMaps] = None
        self._compiled = {}
        self._bindings = {}
        voc = store.vocab
        self._special = {
            "R1": self._closure_of(voc.sub_class_of),
            "R2": self._closure_of(voc.sub_property_of),
            "O4": self._transitive_properties,
            "O5": self._symmetric_same_as,
            "O6": self._closure_of(voc.same_as),
            "O10": self._same_as_replacement,
        }

    @property
    def broadcasts(self) -> BroadcastMaps:
        if self._maps is None or self._maps.schema_size != self.store.schema_size:
            self._maps = build_broadcasts(self.store)
            self._bindings.clear()
        return self._maps

    def compiled(self, rule: Rule) -> _Compiled:
        cr = self._compiled.get(rule)
        if cr is None:
            cr = self._compiled[rule] = _Compiled(rule, self.store)
        return cr

    def apply(self, rule: Rule, delta: Optional[Iterable] = None) -> set:
        """Fresh triples derived by ``rule`` (see :func:`apply_rule`)."""
        store = self.store
        if delta is not None:
            if not isinstance(delta, DeltaSet):
                delta = DeltaSet(delta)
            if len(delta) == 0:
                return set()
        if self.kernel == GENERIC:
            derived = nested_join(store, rule, delta)
        else:
            special = self._special.get(rule.id)
            cr = self.compiled(rule)
            if special is not None and self._is_standard(rule):
                derived = special(delta)
            else:
                derived = self._broadcast_join(cr, delta)
        return {t for t in derived if t not in store and store.is_well_formed(t)}

    def _is_standard(self, rule):
        try:
            return catalog()[rule.id] == rule
        except KeyError:
            return False

    # -- schema side ------------------------------------------------------

    def schema_bindings(self, cr: _Compiled) -> list:
        maps = self.broadcasts
        key = cr.rule
        cached = self._bindings.get(key)
        if cached is not None:
            return cached
        shape = cr.restriction_shape
        if shape is not None:
            rel, v, w, p = shape
            bindings = [
                {v: node, p: prop, w: val}
                for node, pairs in maps.restrictions[rel].items()
                for prop, val in pairs
            ]
        else:
            bindings = [{}]
            for i in cr.schema_atoms:
                bindings = [
                    b2 for b in bindings for t in self._schema_match(cr.conditions[i], b, maps)
                    for b2 in [_unify(cr.conditions[i], t, b)] if b2 is not None
                ]
        bindings.sort(key=lambda b: sorted(b.items()))
        self._bindings[key] = bindings
        return bindings

    def _schema_match(self, atom, binding, maps):
        s, p, o = ((binding.get(x.name) if isinstance(x, Var) else x) for x in atom)
        voc = self.store.vocab
        if p == voc.type:
            subjects = maps.types.get(o, ())
            return [(x, p, o) for x in subjects if s is None or x == s]
        rel = maps.relations.get(p, {})
        if s is not None:
            return [(s, p, x) for x in rel.get(s, ()) if o is None or x == o]
        return [(x, p, y) for x, ys in rel.items() for y in ys if o is None or y == o]

    def _schema_delta(self, cr: _Compiled, delta) -> bool:
        for i in cr.schema_atoms:
            atom = cr.conditions[i]
            s, p, o = (None if isinstance(x, Var) else x for x in atom)
            if delta.match(s, p, o):
                return True
        return False

    # -- instance side ----------------------------------------------------

    def _broadcast_join(self, cr: _Compiled, delta) -> set:
        bindings = self.schema_bindings(cr)
        if not bindings:
            return set()
        if delta is not None and cr.schema_atoms and self._schema_delta(cr, delta):
            delta = None
        if not cr.instance_atoms:
            if delta is not None:
                return set()
            out = set()
            for b in bindings:
                cr.emit(b, out)
            return out
        if delta is None:
            view = self.store
            drivers = [(cr.instance_atoms[0], self.store)]
        else:
            view = _view(self.store, delta)
            drivers = [(i, delta) for i in cr.instance_atoms]
        return self._partitioned(
            lambda part, nparts: self._join_partition(cr, bindings, drivers, view, part, nparts)
        )

    def _partitioned(self, task) -> set:
        n = self.workers
        if n == 1:
            return task(0, 1)
        with ThreadPoolExecutor(max_workers=n) as pool:
            parts = list(pool.map(lambda k: task(k, n), range(n)))
        out = set()
        for p in parts:
            out |= p
        return out

    def _join_partition(self, cr, bindings, drivers, view, part, nparts) -> set:
        out = set()
        for first, source in drivers:
            rest = [i for i in cr.instance_atoms if i != first]
            atom = cr.conditions[first]
            for b in bindings:
                for t in _lookup(atom, b, source):
                    if t[0] % nparts != part:
                        continue
                    b1 = _unify(atom, t, b)
                    if b1 is not None:
                        self._join_rest(cr, rest, b1, view, out)
        return out

    def _join_rest(self, cr, rest, binding, view, out):
        if not rest:
            cr.emit(binding, out)
            return
        # most-bound atom next
        best = max(rest, key=lambda i: sum(
            1 for x in cr.conditions[i] if not isinstance(x, Var) or x.name in binding))
        atom = cr.conditions[best]
        remaining = [i for i in rest if i != best]
        for t in _lookup(atom, binding, view):
            b = _unify(atom, t, binding)
            if b is not None:
                self._join_rest(cr, remaining, b, view, out)

    # -- special kernels --------------------------------------------------

    def _view(self, delta):
        return _view(self.store, delta)

    def _closure_of(self, pred):
        def kernel(delta):
            if delta is not None and not delta.match(None, pred, None):
                return set()
            view = self._view(delta)
            pairs = {(s, o) for s, _, o in view.match(None, pred, None)}
            return {(s, pred, o) for s, o in transitive_closure(pairs) - pairs}
        return kernel

    def _transitive_properties(self, delta):
        voc = self.store.vocab
        trans_cls = voc.id(vocab.TRANSITIVE_PROPERTY)
        view = self._view(delta)
        declared = {t[0] for t in view.match(None, voc.type, trans_cls)}
        if delta is None or delta.match(None, voc.type, trans_cls):
            props = declared
        else:
            props = {p for p in declared if delta.match(None, p, None)}
        out = set()
        for p in sorted(props):
            pairs = {(s, o) for s, _, o in view.match(None, p, None)}
            out |= {(s, p, o) for s, o in transitive_closure(pairs) - pairs}
        return out

    def _symmetric_same_as(self, delta):
        sa = self.store.vocab.same_as
        source = self.store if delta is None else delta
        return {(o, sa, s) for s, _, o in source.match(None, sa, None)}

    def _same_as_replacement(self, delta):
        sa = self.store.vocab.same_as
        view = self._view(delta)
        eq = defaultdict(set)
        for s, _, o in view.match(None, sa, None):
            eq[s].add(o)

        def task(part, nparts):
            out = set()

            def expand(u, p, v, xs=None, ys=None):
                xs = xs if xs is not None else eq.get(u, set()) | {u}
                ys = ys if ys is not None else eq.get(v, set()) | {v}
                for x in xs:
                    for y in ys:
                        out.add((x, p, y))

            if delta is None:
                for u in eq:
                    for t in view.match(u, None, None):
                        if t[0] % nparts == part:
                            expand(*t)
                for v in eq:
                    for t in view.match(None, None, v):
                        if t[0] % nparts == part:
                            expand(*t)
                return out
            for t in delta.match():
                if t[0] % nparts == part:
                    expand(*t)
            for a, _, b in delta.match(None, sa, None):
                for t in view.match(a, None, None):
                    if t[0] % nparts == part:
                        expand(t[0], t[1], t[2], xs={b})
                for t in view.match(None, None, a):
                    if t[0] % nparts == part:
                        expand(t[0], t[1], t[2], ys={b})
            return out

        return self._partitioned(task)


def apply_rule(store: TripleStore, rule: Rule, delta=None, kernel: str = BROADCAST, workers: int = 1) -> set:
    """Fresh triples (absent from ``store``) derived by ``rule``.

    ``delta`` restricts evaluation to bindings that use at least one delta
    triple, matching the other conditions against store and delta.  The
    generic kernel performs a single composition step; the broadcast
    kernel evaluates R1, R2, O4 and O6 to their transitive closure.
    """
    return Engine(store, kernel, workers).apply(rule, delta)


def evaluate_transitive_properties(store: TripleStore) -> set:
    """Fresh triples from closing every declared owl:TransitiveProperty."""
    return Engine(store)._transitive_properties(None)
