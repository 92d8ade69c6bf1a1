"""Shared builders and brute-force reference implementations for the tests."""

from __future__ import annotations

import itertools

from rors import vocab
from rors.model import IRI, BNode, Literal, Term, TermKind, TripleStore
from rors.rules import Const, Var

EX = "http://example.org/"
PREFIXES = {"rdf": vocab.RDF, "rdfs": vocab.RDFS, "owl": vocab.OWL, "ex": EX}


def term(token) -> Term:
    """``ex:a`` style names, ``_:b`` blank nodes, ``"x"`` literals."""
    if isinstance(token, Term):
        return token
    if token.startswith("_:"):
        return BNode(token[2:])
    if token.startswith('"'):
        return Literal(token.strip('"'))
    prefix, local = token.split(":", 1)
    return IRI(PREFIXES[prefix] + local)


def triples(*lines):
    """Parse ``"s p o"`` strings into Term triples."""
    return [tuple(term(x) for x in line.split()) for line in lines]


def make_store(*lines) -> TripleStore:
    store = TripleStore()
    for t in triples(*lines):
        store.add_terms(*t)
    return store


def decoded(store, ids):
    return {store.dictionary.decode_triple(t) for t in ids}


def brute_force(rule, facts):
    """Every consequence of one application of ``rule``, by trying all bindings.

    ``facts`` is a set of Term triples.  Variables range over every term in
    ``facts`` and every constant in the rule.  owl:sameAs conditions of
    reflexive rules with a constant owl:sameAs predicate also accept
    ``t sameAs t``.  Consequences already in
    ``facts`` or with a literal subject or non-IRI predicate are dropped.
    """
    universe = {x for t in facts for x in t}
    for pat in rule.conditions + rule.consequences:
        universe |= {x.term for x in pat if isinstance(x, Const)}
    universe = sorted(universe, key=lambda x: (x.kind.value, x.lexical))
    names = sorted(rule.variables())
    same_as = IRI(vocab.SAME_AS)

    def ground(pat, env):
        return tuple(env[x.name] if isinstance(x, Var) else x.term for x in pat)

    def reflexive(pat):
        return rule.reflexive_same_as and isinstance(pat.p, Const) and pat.p.term == same_as

    def holds(pat, env):
        t = ground(pat, env)
        return t in facts or (reflexive(pat) and t[0] == t[2])

    out = set()
    for values in itertools.product(universe, repeat=len(names)):
        env = dict(zip(names, values))
        if any(env[a] == env[b] for a, b in rule.distinct):
            continue
        if all(holds(c, env) for c in rule.conditions):
            for head in rule.consequences:
                t = ground(head, env)
                if t in facts or t[0].kind is TermKind.LITERAL or t[1].kind is not TermKind.IRI:
                    continue
                out.add(t)
    return out


def warshall(nodes, edges):
    """Reachability by Warshall's algorithm on integer bitsets."""
    index = {n: i for i, n in enumerate(nodes)}
    rows = [0] * len(nodes)
    for a, b in edges:
        rows[index[a]] |= 1 << index[b]
    for k in range(len(nodes)):
        bit = 1 << k
        rk = rows[k]
        for i in range(len(nodes)):
            if rows[i] & bit:
                rows[i] |= rk
        # rows[k] may have grown through i == k; later iterations read the fresh value
    return {(a, nodes[j]) for a in nodes for j in range(len(nodes)) if rows[index[a]] >> j & 1}


def all_maximal_paths(nodes, edges):
    """Maximal simple paths by exhaustive permutation search."""
    adj = {n: {b for a, b in edges if a == n} for n in nodes}
    paths = set()
    for r in range(1, len(nodes) + 1):
        for perm in itertools.permutations(nodes, r):
            if all(b in adj[a] for a, b in zip(perm, perm[1:])):
                if not (adj[perm[-1]] - set(perm)):
                    paths.add(perm)
    return paths
