"""Rule dependency graphs, executable-strategy enumeration and class orders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .rules import RULE_ORDER, Const, Rule, RuleClass, TriplePattern, catalog

DEFAULT_EXCLUSIONS = frozenset({frozenset({"O3", "O7a"}), frozenset({"O3", "O7b"})})

# Rules shown as a single node in the grouped per-class graphs.
NODE_GROUPS = {
    RuleClass.SPO: {"O7": ("O7a", "O7b")},
    RuleClass.TYPE: {"R4/R5": ("R4", "R5")},
    RuleClass.SAMEAS: {},
    RuleClass.SCHEMA: {"O11a/O11b": ("O11a", "O11b"), "O12a/O12b": ("O12a", "O12b")},
}

# The executor's canonical per-class orders.
OPTIMAL_ORDERS = {
    RuleClass.SCHEMA: ("O11a", "O11b", "R1", "O11c", "O12a", "O12b", "R2", "O12c"),
    RuleClass.SPO: ("O3", "R3", "O7a", "O7b", "O4"),
    RuleClass.TYPE: ("R4", "R5", "R6", "O14", "O13", "O15", "O16"),
    RuleClass.SAMEAS: ("O1", "O10", "O2", "O6", "O5"),
}

# Reference orders per class, written with group labels.
REFERENCE_ORDERS = {
    RuleClass.SPO: (
        ("O3", "R3", "O7", "O4"),
        ("O7", "R3", "O3", "O4"),
    ),
    RuleClass.TYPE: (
        ("R4/R5", "R6", "O14", "O13", "O15", "O16"),
        ("R4/R5", "R6", "O14", "O13", "O16", "O15"),
        ("R4/R5", "R6", "O14", "O13", "O15", "O16"),
        ("R4/R5", "R6", "O14", "O13", "O16", "O15"),
    ),
    RuleClass.SCHEMA: (
        ("O11a/O11b", "R1", "O11c"),
        ("O12a/O12b", "R2", "O12c"),
    ),
    RuleClass.SAMEAS: (
        ("O1", "O10", "O2", "O6", "O5"),
        ("O2", "O10", "O1", "O6", "O5"),
    ),
}


def _terms_unify(a, b) -> bool:
    if isinstance(a, Const) and isinstance(b, Const):
        return a.term == b.term
    return True


def patterns_unify(x: TriplePattern, y: TriplePattern) -> bool:
    """Position-wise unification: constants must agree, variables match anything."""
    return all(_terms_unify(a, b) for a, b in zip(x, y))


def depends(producer: Rule, consumer: Rule) -> bool:
    return any(
        patterns_unify(head, cond)
        for head in producer.consequences
        for cond in consumer.conditions
    )


@dataclass(frozen=True)
class DependencyGraph:
    nodes: tuple
    edges: tuple  # sorted (producer, consumer) pairs
    exclusions: frozenset = frozenset()
    groups: tuple = ()  # ((label, members), ...) when nodes are merged

    def successors(self, node) -> list:
        return [j for i, j in self.edges if i == node]

    def adjacency(self) -> dict:
        adj = {n: [] for n in self.nodes}
        for i, j in self.edges:
            adj[i].append(j)
        return adj

    def has_edge(self, i, j) -> bool:
        return (i, j) in set(self.edges)

    def undirected_pairs(self) -> set:
        return {frozenset(e) for e in self.edges}

    def merge(self, groups: dict) -> "DependencyGraph":
        """Collapse each group of rules into one labelled node.

        Edges inside a group disappear; an edge between groups exists if any
        member pair had one.
        """
        owner = {}
        for label, members in groups.items():
            for m in members:
                owner[m] = label
        nodes, seen = [], set()
        for n in self.nodes:
            label = owner.get(n, n)
            if label not in seen:
                seen.add(label)
                nodes.append(label)
        pos = {n: i for i, n in enumerate(nodes)}
        edges = {(owner.get(i, i), owner.get(j, j)) for i, j in self.edges}
        edges = sorted((e for e in edges if e[0] != e[1]), key=lambda e: (pos[e[0]], pos[e[1]]))
        return DependencyGraph(
            tuple(nodes), tuple(edges), self.exclusions,
            tuple((k, tuple(v)) for k, v in groups.items()),
        )


def build_graph(rules: Sequence[Rule], exclusions: Iterable = DEFAULT_EXCLUSIONS) -> DependencyGraph:
    """Dependency graph over ``rules``; self-dependencies are left out.

    An edge i -> j means some consequence of i unifies with a condition of
    j, so j should run after i.
    """
    if not rules:
        raise ValueError("no rules given")
    exclusions = frozenset(frozenset(x) for x in exclusions)
    rules = sorted(rules, key=lambda r: RULE_ORDER.get(r.id, len(RULE_ORDER)))
    edges = []
    for a in rules:
        for b in rules:
            if a.id == b.id or frozenset((a.id, b.id)) in exclusions:
                continue
            if depends(a, b):
                edges.append((a.id, b.id))
    return DependencyGraph(tuple(r.id for r in rules), tuple(edges), exclusions)


def class_graph(cls: RuleClass, exclusions=DEFAULT_EXCLUSIONS, grouped=False, rules=None) -> DependencyGraph:
    """Graph over the enabled rules of one class, optionally with grouped nodes."""
    rules = catalog() if rules is None else rules
    g = build_graph(rules.of_class(cls, enabled_only=True), exclusions)
    return g.merge(NODE_GROUPS[cls]) if grouped else g


class Enumeration(NamedTuple):
    strategies: list
    truncated: bool


def enumerate_strategies(g: DependencyGraph, limit: Optional[int] = None) -> Enumeration:
    """All maximal simple paths of ``g`` found by depth-first search.

    A path is maximal when its last rule has no unvisited successor.
    Results are sorted longest first, then by node position.  With
    ``limit``, the search stops after that many paths and the sort applies
    to the paths found.
    """
    if not g.nodes:
        raise ValueError("empty graph")
    adj = g.adjacency()
    pos = {n: i for i, n in enumerate(g.nodes)}
    found = []
    truncated = False

    def dfs(path, visited):
        nonlocal truncated
        extended = False
        for nxt in adj[path[-1]]:
            if nxt in visited:
                continue
            extended = True
            path.append(nxt)
            visited.add(nxt)
            dfs(path, visited)
            visited.discard(nxt)
            path.pop()
            if truncated:
                return
        if not extended:
            found.append(tuple(path))
            if limit is not None and len(found) >= limit:
                truncated = True

    for start in g.nodes:
        dfs([start], {start})
        if truncated:
            break
    found.sort(key=lambda p: (-len(p), [pos[n] for n in p]))
    return Enumeration(found, truncated)


def is_strategy(g: DependencyGraph, order: Sequence) -> bool:
    if len(set(order)) != len(order):
        return False
    edges = set(g.edges)
    return all((a, b) in edges for a, b in zip(order, order[1:]))


def optimal_order(cls: RuleClass) -> tuple:
    return OPTIMAL_ORDERS[cls]


def _dot_id(name) -> str:
    return '"' + str(name).replace('"', '\\"') + '"'


def export_dot(g: DependencyGraph, name: str = "") -> str:
    """Render as a DOT digraph; mutual edges become one ``dir=both`` edge."""
    header = "digraph " + (_dot_id(name) + " " if name else "") + "{"
    lines = [header]
    for n in g.nodes:
        lines.append(f"  {_dot_id(n)};")
    edges = set(g.edges)
    for i, j in g.edges:
        if (j, i) in edges:
            if g.nodes.index(i) < g.nodes.index(j):
                lines.append(f"  {_dot_id(i)} -> {_dot_id(j)} [dir=both];")
        else:
            lines.append(f"  {_dot_id(i)} -> {_dot_id(j)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
