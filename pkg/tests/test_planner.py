import random

import pydot
import pytest

from rors.planner import (
    DEFAULT_EXCLUSIONS,
    NODE_GROUPS,
    OPTIMAL_ORDERS,
    REFERENCE_ORDERS,
    DependencyGraph,
    build_graph,
    class_graph,
    depends,
    enumerate_strategies,
    export_dot,
    is_strategy,
    patterns_unify,
)
from rors.rules import RuleClass, catalog

from helpers import all_maximal_paths


def test_spo_graph_edges():
    g = class_graph(RuleClass.SPO, grouped=True)
    assert {tuple(sorted(p)) for p in g.undirected_pairs()} == {
        ("O3", "O4"), ("O3", "R3"), ("O4", "O7"), ("O4", "R3"), ("O7", "R3"),
    }


def test_exclusion_removes_o3_o7():
    plain = class_graph(RuleClass.SPO, exclusions=())
    assert plain.has_edge("O3", "O7a") and plain.has_edge("O7b", "O3")
    excluded = class_graph(RuleClass.SPO)
    assert not any({"O3", "O7a"} == set(e) or {"O3", "O7b"} == set(e) for e in excluded.edges)


def test_no_self_loops():
    g = build_graph(catalog().enabled())
    assert all(i != j for i, j in g.edges)


def test_cross_class_edge_in_full_graph():
    g = build_graph(catalog().enabled())
    assert g.has_edge("O14", "R3")


@pytest.mark.parametrize("cls", list(RuleClass))
def test_reference_orders_are_maximal_paths(cls):
    paths = set(enumerate_strategies(class_graph(cls, grouped=True)).strategies)
    for order in REFERENCE_ORDERS[cls]:
        assert order in paths


@pytest.mark.parametrize("cls", list(RuleClass))
def test_optimal_orders_cover_the_class(cls):
    enabled = {r.id for r in catalog().of_class(cls, enabled_only=True)}
    assert set(OPTIMAL_ORDERS[cls]) == enabled


def test_random_graphs_against_permutation_search():
    rng = random.Random(3)
    for _ in range(200):
        nodes = tuple("abcdef")
        edges = tuple((a, b) for a in nodes for b in nodes if a != b and rng.random() < 0.3)
        g = DependencyGraph(nodes, edges)
        found = enumerate_strategies(g).strategies
        assert len(found) == len(set(found))
        assert set(found) == all_maximal_paths(nodes, edges)
        assert all(is_strategy(g, p) for p in found)


def test_sorted_longest_first_and_deterministic():
    g = class_graph(RuleClass.TYPE, grouped=True)
    first = enumerate_strategies(g).strategies
    assert first == enumerate_strategies(g).strategies
    assert [len(p) for p in first] == sorted((len(p) for p in first), reverse=True)


def test_limit_truncates():
    g = build_graph(catalog().enabled())
    res = enumerate_strategies(g, limit=50)
    assert res.truncated and len(res.strategies) == 50
    full = enumerate_strategies(class_graph(RuleClass.SPO))
    assert not full.truncated


def test_empty_inputs():
    with pytest.raises(ValueError):
        build_graph([])
    with pytest.raises(ValueError):
        enumerate_strategies(DependencyGraph((), ()))


def test_unification():
    r = catalog()
    assert depends(r["R1"], r["R6"])           # subClassOf feeds subClassOf conditions
    assert not depends(r["R6"], r["R1"])       # rdf:type never matches rdfs:subClassOf
    o3, r4 = r["O3"], r["R4"]
    assert patterns_unify(o3.consequences[0], r4.conditions[1])


def test_unification_is_sound_on_ground_facts():
    # whenever a derived triple of one rule matches a condition of another, an edge exists
    from rors.engine import apply_rule
    from helpers import make_store
    from rule_fixtures import FIXTURES

    rules = catalog().with_enabled(O8=True, O9=True)
    g = build_graph(list(rules), exclusions=())
    for rid, (lines, _) in FIXTURES.items():
        store = make_store(*lines)
        derived = apply_rule(store, rules[rid], kernel="generic")
        for other in rules:
            if other.id == rid:
                continue
            for cond in other.conditions:
                consts = [(i, x.term) for i, x in enumerate(cond) if hasattr(x, "term")]
                ids = [(i, store.dictionary.lookup(t)) for i, t in consts]
                if any(v is None for _, v in ids):
                    continue
                if any(all(t[i] == v for i, v in ids) for t in derived):
                    assert g.has_edge(rid, other.id), (rid, other.id)


def test_node_groups_merge():
    g = class_graph(RuleClass.SCHEMA, grouped=True)
    assert "O11a/O11b" in g.nodes and "O11a" not in g.nodes
    assert dict(g.groups) == {k: tuple(v) for k, v in NODE_GROUPS[RuleClass.SCHEMA].items()}


@pytest.mark.parametrize("cls", list(RuleClass))
def test_dot_export_parses(cls):
    g = class_graph(cls, grouped=True)
    (parsed,) = pydot.graph_from_dot_data(export_dot(g, cls.value))
    names = {n.get_name().strip('"') for n in parsed.get_nodes()}
    assert names == set(g.nodes)
    pairs = {frozenset((e.get_source().strip('"'), e.get_destination().strip('"')))
             for e in parsed.get_edges()}
    assert pairs == g.undirected_pairs()


def test_default_exclusions():
    assert frozenset({"O3", "O7a"}) in DEFAULT_EXCLUSIONS
