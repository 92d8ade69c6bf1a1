"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s``.  Set
``RORS_LUBM50`` to an N-Triples file to include the optional real-data
statistics check.
"""

import os
import random
import time

import pytest

from rors.engine import BROADCAST, GENERIC, apply_rule, transitive_closure
from rors.executor import ROUND_ROBIN, RORS, Mode, compare_strategies, format_table, materialize
from rors.generator import TYPE_FRACTION, generate_university, random_ontology
from rors.model import Dictionary, TripleClass, TripleStore, class_proportions
from rors.ntriples import load_store, parse_ntriples, write_ntriples
from rors.planner import REFERENCE_ORDERS, class_graph, enumerate_strategies
from rors.rules import RuleClass, catalog

from conftest import record_verdict
from helpers import brute_force, decoded, make_store, triples, warshall
from randgen import random_triples
from rule_fixtures import FIXTURES

CORPUS_SIZE = 200


def verdict(number, ok, detail):
    record_verdict(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {detail}")
    assert ok, detail


def store_of(ts):
    store = TripleStore()
    for t in ts:
        store.add_terms(*t)
    return store


@pytest.fixture(scope="module")
def corpus():
    """Random ontologies of 100 to 300 triples with their closures in all modes."""
    cases = []
    checked = 0.0
    for seed in range(CORPUS_SIZE):
        store = store_of(random_ontology(
            seed, size=100 + seed % 3 * 100, same_as=seed % 2 == 0, functional=seed % 4 < 2))
        t0 = time.perf_counter()
        fix, _ = materialize(store, Mode.FIXPOINT)
        oracle, oracle_rep = materialize(store, Mode.ORACLE)
        checked += time.perf_counter() - t0
        paper, _ = materialize(store, Mode.PAPER)
        cases.append((store, fix, oracle, paper, oracle_rep))
    return cases, checked


def test_1_fixpoint_equals_oracle(corpus):
    cases, seconds = corpus
    assert len(cases) >= 200
    assert all(len(c[0]) <= 300 for c in cases)
    fired = set()
    families = set()
    for *_, rep in cases:
        rules = {s.rule for s in rep.per_phase if s.fresh}
        fired |= rules
        families |= {catalog()[r].rule_class for r in rules}
    enabled = {r.id for r in catalog().enabled()}
    mismatches = sum(fix.triple_set() != oracle.triple_set() for _, fix, oracle, _, _ in cases)
    ok = mismatches == 0 and seconds < 60 and fired == enabled and families == set(RuleClass)
    verdict(1, ok, f"{len(cases)} ontologies, {mismatches} mismatches, "
                   f"{len(fired)}/{len(enabled)} rules fired, {seconds:.1f}s (< 60s)")


def test_2_single_pass_soundness(corpus):
    cases, _ = corpus
    unsound = sum(not paper.triple_set() <= oracle.triple_set() for _, _, oracle, paper, _ in cases)
    # no sameAs in the oracle closure also means no functional axiom fired
    free = [c for c in cases if not c[2].partitions[TripleClass.SAMEAS]]
    differ = sum(paper.triple_set() != oracle.triple_set() for _, _, oracle, paper, _ in free)
    ok = unsound == 0 and differ == 0 and len(free) > 0
    verdict(2, ok, f"{unsound} unsound of {len(cases)}; sameAs-free: {differ} differ of {len(free)}")


def test_3_subclass_example():
    t0 = time.perf_counter()
    store = make_store("ex:A rdfs:subClassOf ex:B", "ex:B rdfs:subClassOf ex:C")
    out, _ = materialize(store)
    seconds = time.perf_counter() - t0
    got = out.decoded()
    ok = (len(got) == 3 and set(triples("ex:A rdfs:subClassOf ex:C")) <= got and seconds < 1)
    verdict(3, ok, f"{len(got)} triples incl. A subClassOf C, {seconds * 1000:.1f}ms")


def test_4_per_class_orders():
    t0 = time.perf_counter()
    missing = []
    for cls, orders in REFERENCE_ORDERS.items():
        paths = set(enumerate_strategies(class_graph(cls, grouped=True)).strategies)
        missing += [o for o in orders if o not in paths]
    spo = class_graph(RuleClass.SPO, grouped=True)
    pairs = {frozenset(p) for p in spo.undirected_pairs()}
    expected = {frozenset(p) for p in
                [("R3", "O7"), ("R3", "O3"), ("R3", "O4"), ("O3", "O4"), ("O7", "O4")]}
    seconds = time.perf_counter() - t0
    ok = not missing and pairs == expected and seconds < 5
    verdict(4, ok, f"{len(missing)} reference orders missing, SPO edges "
                   f"{'match' if pairs == expected else 'differ'}, {seconds:.2f}s")


def test_5_transitive_closure_vs_warshall():
    rng = random.Random(2024)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(1000):
        n = rng.randint(1, 100)
        density = rng.uniform(0.2, 2.5) / n
        edges = {(a, b) for a in range(n) for b in range(n) if rng.random() < density}
        # plant a cycle so every graph has one
        if n > 2:
            cyc = rng.sample(range(n), rng.randint(2, min(n, 6)))
            edges |= set(zip(cyc, cyc[1:] + cyc[:1]))
        bad += transitive_closure(edges) != warshall(list(range(n)), edges)
    seconds = time.perf_counter() - t0
    verdict(5, bad == 0 and seconds < 30, f"1000 graphs, {bad} mismatches, {seconds:.1f}s")


def test_6_rule_fixtures():
    wrong = []
    for rid, (lines, expected) in FIXTURES.items():
        rule = catalog()[rid]
        expected = set(triples(*expected))
        if brute_force(rule, set(triples(*lines))) != expected:
            wrong.append(rid + "(reference)")
        for kernel in (GENERIC, BROADCAST):
            store = make_store(*lines)
            if decoded(store, apply_rule(store, rule, kernel=kernel)) != expected:
                wrong.append(f"{rid}({kernel})")
    ok = len(FIXTURES) == 27 and not wrong
    verdict(6, ok, f"{len(FIXTURES)} fixtures, failures: {wrong or 'none'}")


def test_7_rule_order_beats_round_robin():
    results = []
    for seed in (42, 7, 2024):
        store = store_of(generate_university(100_000, seed=seed))
        rows = compare_strategies(store, [RORS, ROUND_ROBIN])
        ours, base = rows
        results.append((seed, ours, base))
        record_verdict(f"    seed {seed}:\n" + format_table(
            rows, ["name", "outer_iterations", "rule_applications", "rule_invocations",
                   "derived_count", "seconds"]).rstrip())
    ok = all(o.rule_applications <= b.rule_applications and o.outer_iterations <= b.outer_iterations
             and o.derived_count == b.derived_count for _, o, b in results)
    summary = ", ".join(f"seed {s}: {o.rule_applications}/{b.rule_applications} applications, "
                        f"{o.outer_iterations}/{b.outer_iterations} outer" for s, o, b in results)
    verdict(7, ok, summary)


def test_8_worker_determinism():
    store = store_of(generate_university(10_000, seed=42, sameas_rate=0.01))
    outputs = {}
    for workers in (1, 2, 8):
        for mode in (Mode.PAPER, Mode.FIXPOINT):
            out, _ = materialize(store, mode, workers=workers)
            outputs[(workers, mode)] = write_ntriples(out.log, out.dictionary, sorted=True)
    ok = all(outputs[(w, m)] == outputs[(1, m)] for w, m in outputs)
    verdict(8, ok, f"sorted outputs for 1/2/8 workers {'identical' if ok else 'differ'}")


def test_9_type_fraction():
    shares = {}
    for size in (10_000, 100_000):
        shares[size] = class_proportions(store_of(generate_university(size, seed=42))).type
    ok = all(abs(x - TYPE_FRACTION) <= 0.03 for x in shares.values())
    verdict(9, ok, ", ".join(f"{n:,}: Type {100 * x:.3f}%" for n, x in shares.items())
            + " (target 20.055% +/- 3)")


@pytest.mark.skipif(not os.environ.get("RORS_LUBM50"), reason="RORS_LUBM50 not set")
def test_9_lubm50_statistics():
    store, _ = load_store([os.environ["RORS_LUBM50"]])
    p = class_proportions(store)
    ok = (abs(100 * p.type - 20.055) <= 0.01 and abs(100 * p.same_as) <= 0.01
          and abs(100 * p.spo - 79.945) <= 0.01)
    verdict(9, ok, f"LUBM-50: Type {100 * p.type:.3f}%, SameAs {100 * p.same_as:.3f}%, "
                   f"SPO {100 * p.spo:.3f}%")


def test_10_round_trip():
    rng = random.Random(10)
    broken = 0
    for _ in range(100):
        d = Dictionary()
        encoded = [d.encode_triple(*t) for t in random_triples(rng, rng.randint(0, 80))]
        first = write_ntriples(encoded, d, sorted=True)
        d2 = Dictionary()
        parsed, _ = parse_ntriples(first, d2)
        second = write_ntriples(parsed, d2, sorted=True)
        broken += first != second or {d.decode_triple(t) for t in encoded} != {
            d2.decode_triple(t) for t in parsed}
    verdict(10, broken == 0, f"100 stores, {broken} not fixed points")
