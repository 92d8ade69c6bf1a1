"""Materialization driver: per-class phases, the SPO/type loop, and oracles."""

from __future__ import annotations

import enum
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from .engine import BROADCAST, GENERIC, Engine
from .model import DeltaSet, TripleStore
from .planner import OPTIMAL_ORDERS
from .rules import Catalog, RuleClass, catalog


class Mode(enum.Enum):
    PAPER = "paper"
    FIXPOINT = "fixpoint"
    ORACLE = "oracle"


class ConfigurationError(ValueError):
    pass


class IterationLimitExceeded(RuntimeError):
    pass


class StrategyMismatchError(RuntimeError):
    """Complete strategies disagreed on the closure; indicates a bug."""


PHASES = (RuleClass.SCHEMA, RuleClass.SPO, RuleClass.TYPE, RuleClass.SAMEAS)


@dataclass
class PhaseStep:
    phase: str
    rule: str
    fresh: int
    seconds: float
    evaluated: bool


@dataclass
class ClosureReport:
    mode: str
    kernel: str
    workers: int
    strategy: dict
    input_count: int = 0
    output_count: int = 0
    derived_count: int = 0
    outer_iterations: int = 0
    inner_iterations: int = 0
    rule_applications: int = 0
    rule_invocations: int = 0
    seconds: float = 0.0
    per_phase: list = field(default_factory=list)

    def phase_totals(self) -> dict:
        totals = {}
        for step in self.per_phase:
            totals[step.phase] = totals.get(step.phase, 0) + step.fresh
        return totals

    def to_dict(self, timings: bool = True) -> dict:
        d = asdict(self)
        if not timings:
            d.pop("seconds")
            for step in d["per_phase"]:
                step.pop("seconds")
        return d

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2)


def _resolve_orders(rules: Catalog, overrides: Optional[dict]) -> dict:
    orders = {cls: list(OPTIMAL_ORDERS[cls]) for cls in PHASES}
    for cls, order in (overrides or {}).items():
        cls = RuleClass(cls) if not isinstance(cls, RuleClass) else cls
        orders[cls] = list(order)
    for cls, order in orders.items():
        check_order(rules, cls, order)
    return orders


def check_order(rules: Catalog, cls: RuleClass, order: Sequence[str]):
    """An order must list every enabled rule of its class exactly once."""
    for rid in order:
        try:
            r = rules[rid]
        except KeyError:
            raise ConfigurationError(f"unknown rule {rid!r}") from None
        if r.rule_class is not cls:
            raise ConfigurationError(f"{rid} is a {r.rule_class.value} rule, not {cls.value}")
    expected = sorted(r.id for r in rules.of_class(cls, enabled_only=True))
    if sorted(order) != expected:
        raise ConfigurationError(
            f"{cls.value} order {list(order)} must cover exactly {expected}"
        )


class _Run:
    """Semi-naive bookkeeping for one materialization.

    Each rule remembers how far into the store's insertion log it has
    looked; the next application only considers bindings that touch the
    triples added since.  A rule with nothing new to look at is skipped.
    """

    def __init__(self, store: TripleStore, rules: Catalog, report: ClosureReport,
                 kernel: str, workers: int, max_iterations: int):
        self.store = store
        self.rules = rules
        self.report = report
        self.engine = Engine(store, kernel, workers)
        self.max_iterations = max_iterations
        self.seen = {}

    def apply(self, phase: str, rule_id: str) -> int:
        store, report = self.store, self.report
        rule = self.rules[rule_id]
        report.rule_invocations += 1
        start = self.seen.get(rule_id)
        end = len(store.log)
        if start == end:
            report.per_phase.append(PhaseStep(phase, rule_id, 0, 0.0, False))
            return 0
        delta = None if start is None else DeltaSet(store.log[start:end])
        t0 = time.perf_counter()
        fresh = self.engine.apply(rule, delta)
        added = store.insert(sorted(fresh))
        self.seen[rule_id] = end
        report.rule_applications += 1
        report.per_phase.append(PhaseStep(phase, rule_id, added, time.perf_counter() - t0, True))
        return added

    def phase(self, cls: RuleClass, order: Sequence[str]) -> int:
        return sum(self.apply(cls.value, rid) for rid in order)

    def guard(self, count: int, what: str):
        if count > self.max_iterations:
            raise IterationLimitExceeded(f"{what} exceeded {self.max_iterations} iterations")

    def paper_pass(self, orders: dict) -> int:
        derived = self.phase(RuleClass.SCHEMA, orders[RuleClass.SCHEMA])
        inner = 0
        while True:
            inner += 1
            self.guard(inner, "SPO/type loop")
            spo = self.phase(RuleClass.SPO, orders[RuleClass.SPO])
            typ = self.phase(RuleClass.TYPE, orders[RuleClass.TYPE])
            derived += spo + typ
            if spo == 0 and typ == 0:
                break
        self.report.inner_iterations += inner
        derived += self.phase(RuleClass.SAMEAS, orders[RuleClass.SAMEAS])
        return derived

    def round_robin_pass(self) -> int:
        return sum(self.apply("round-robin", r.id) for r in self.rules.enabled())


def materialize(
    store: TripleStore,
    mode: Mode = Mode.PAPER,
    orders: Optional[dict] = None,
    workers: int = 1,
    kernel: Optional[str] = None,
    max_iterations: int = 10_000,
    rules: Optional[Catalog] = None,
    in_place: bool = False,
) -> tuple[TripleStore, ClosureReport]:
    """Compute the closure of ``store``.

    ``PAPER`` runs the schema phase once, alternates the SPO and type
    phases until neither derives anything, then runs the sameAs phase
    once.  ``FIXPOINT`` repeats that whole pipeline until a pass derives
    nothing.  ``ORACLE`` applies every enabled rule round-robin in table
    order until a pass derives nothing; it defaults to the generic join
    kernel so it shares no evaluation code with the other modes.
    """
    mode = Mode(mode)
    rules = catalog() if rules is None else rules
    if kernel is None:
        kernel = GENERIC if mode is Mode.ORACLE else BROADCAST
    if mode is Mode.ORACLE:
        strategy = {"round-robin": [r.id for r in rules.enabled()]}
        resolved = None
    else:
        resolved = _resolve_orders(rules, orders)
        strategy = {cls.value: order for cls, order in resolved.items()}
    out = store if in_place else store.copy()
    report = ClosureReport(mode=mode.value, kernel=kernel, workers=workers, strategy=strategy)
    report.input_count = len(out)
    run = _Run(out, rules, report, kernel, workers, max_iterations)

    t0 = time.perf_counter()
    if mode is Mode.PAPER:
        report.outer_iterations = 1
        run.paper_pass(resolved)
    else:
        while True:
            report.outer_iterations += 1
            run.guard(report.outer_iterations, "outer loop")
            if mode is Mode.FIXPOINT:
                derived = run.paper_pass(resolved)
            else:
                derived = run.round_robin_pass()
            if derived == 0:
                break
    report.seconds = time.perf_counter() - t0
    report.output_count = len(out)
    report.derived_count = report.output_count - report.input_count
    return out, report


def run_phase(store: TripleStore, rule_class: RuleClass, order: Optional[Sequence[str]] = None,
              kernel: str = BROADCAST, workers: int = 1, rules: Optional[Catalog] = None):
    """Apply one class's rules once, in order, inserting as it goes.

    Returns the set of triples the phase added and the report holding its
    per-rule steps.
    """
    rules = catalog() if rules is None else rules
    order = list(OPTIMAL_ORDERS[rule_class] if order is None else order)
    check_order(rules, rule_class, order)
    report = ClosureReport(mode="phase", kernel=kernel, workers=workers,
                           strategy={rule_class.value: order})
    before = len(store.log)
    report.input_count = before
    run = _Run(store, rules, report, kernel, workers, 1)
    run.phase(rule_class, order)
    report.output_count = len(store)
    report.derived_count = report.output_count - before
    return set(store.log[before:]), report


@dataclass(frozen=True)
class StrategySpec:
    name: str
    mode: Mode = Mode.FIXPOINT
    orders: Optional[dict] = None
    kernel: Optional[str] = None


RORS = StrategySpec("RORS", Mode.FIXPOINT)
ROUND_ROBIN = StrategySpec("round-robin", Mode.ORACLE, kernel=BROADCAST)
REVERSED = StrategySpec(
    "reversed",
    Mode.FIXPOINT,
    orders={cls: tuple(reversed(o)) for cls, o in OPTIMAL_ORDERS.items()},
)


@dataclass
class ComparisonRow:
    name: str
    mode: str
    workers: int
    outer_iterations: int
    inner_iterations: int
    rule_applications: int
    rule_invocations: int
    derived_count: int
    seconds: float


def compare_strategies(store: TripleStore, strategies: Sequence[StrategySpec], workers: int = 1,
                       rules: Optional[Catalog] = None) -> list:
    """Run each strategy on its own copy of ``store``.

    Strategies in the complete modes (fixpoint, oracle) must agree on the
    closure, otherwise ``StrategyMismatchError`` is raised.
    """
    rows, closures = [], {}
    for spec in strategies:
        out, rep = materialize(store, spec.mode, spec.orders, workers=workers,
                               kernel=spec.kernel, rules=rules)
        rows.append(ComparisonRow(
            spec.name, rep.mode, workers, rep.outer_iterations, rep.inner_iterations,
            rep.rule_applications, rep.rule_invocations, rep.derived_count, rep.seconds,
        ))
        if spec.mode is not Mode.PAPER:
            closures[spec.name] = out.triple_set()
    if len(set(closures.values())) > 1:
        sizes = {k: len(v) for k, v in closures.items()}
        raise StrategyMismatchError(f"closures differ across strategies: {sizes}")
    return rows


def format_table(rows: Sequence, columns: Optional[Sequence[str]] = None) -> str:
    """Plain-text table of dataclass rows."""
    if not rows:
        return ""
    dicts = [asdict(r) if not isinstance(r, dict) else r for r in rows]
    columns = list(columns or dicts[0].keys())

    def cell(v):
        return f"{v:.3f}" if isinstance(v, float) else str(v)

    table = [columns] + [[cell(d[c]) for c in columns] for d in dicts]
    widths = [max(len(r[i]) for r in table) for i in range(len(columns))]
    return "\n".join("  ".join(x.rjust(w) for x, w in zip(r, widths)) for r in table) + "\n"
