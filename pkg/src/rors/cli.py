"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 verification
mismatch, 4 iteration limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from .engine import KERNELS
from .executor import (
    REVERSED,
    ROUND_ROBIN,
    RORS,
    IterationLimitExceeded,
    Mode,
    format_table,
    materialize,
)
from .generator import generate_university
from .model import Dictionary, EmptyDatasetError, TripleStore, class_proportions
from .ntriples import NTriplesParseError, Strictness, load_store, write_ntriples
from .planner import build_graph, class_graph, enumerate_strategies, export_dot
from .rules import RuleClass, catalog, dump_json, dump_table

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_MISMATCH, EXIT_LIMIT = 0, 1, 2, 3, 4

STRATEGIES = {"rors": RORS, "round-robin": ROUND_ROBIN, "reversed": REVERSED}

CLASS_NAMES = {
    "spo": RuleClass.SPO,
    "type": RuleClass.TYPE,
    "sameas": RuleClass.SAMEAS,
    "schema": RuleClass.SCHEMA,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _worker_list(text):
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("worker counts must be positive")
    return values


def _add_strictness(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--strict", dest="strictness", action="store_const",
                   const=Strictness.STRICT, help="abort on the first malformed line (default)")
    g.add_argument("--lenient", dest="strictness", action="store_const",
                   const=Strictness.LENIENT, help="skip malformed lines with a warning")
    p.set_defaults(strictness=Strictness.STRICT)


def _load(paths, strictness):
    store, diags = load_store(paths, strictness)
    for d in diags:
        print(d, file=sys.stderr)
    return store


def _write_bytes(path, data: bytes):
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _write_text(path, text: str):
    _write_bytes(path, text.encode("utf-8"))


def cmd_materialize(args) -> int:
    t0 = time.perf_counter()
    store = _load(args.inputs, args.strictness)
    rules = catalog(table1_literal=args.table1_literal)
    out, report = materialize(store, Mode(args.mode), workers=args.workers, kernel=args.kernel,
                              max_iterations=args.max_iterations, rules=rules, in_place=True)
    total = time.perf_counter() - t0
    status = EXIT_OK
    if args.verify:
        fresh = _load(args.inputs, args.strictness)
        oracle, _ = materialize(fresh, Mode.ORACLE, rules=rules, max_iterations=args.max_iterations,
                                in_place=True)
        ours = {out.dictionary.decode_triple(t) for t in out.log}
        if ours != oracle.decoded():
            print("verification failed: closure differs from the oracle", file=sys.stderr)
            status = EXIT_MISMATCH
    _write_bytes(args.output, write_ntriples(out.log, out.dictionary, sorted=args.sorted))
    if args.report:
        doc = report.to_dict(timings=not args.no_timings)
        if not args.no_timings:
            doc["total_seconds"] = total
        _write_text(args.report, json.dumps(doc, indent=2) + "\n")
    return status


def _percent(x):
    return f"{100 * x:.3f}%"


def cmd_stats(args) -> int:
    store = _load(args.inputs, args.strictness)
    try:
        props = class_proportions(store)
    except EmptyDatasetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        doc = {
            "total": props.total,
            "schema": props.schema_count,
            "instance": props.instance_count,
            "type": None if props.instance_count == 0 else props.type,
            "sameAs": None if props.instance_count == 0 else props.same_as,
            "spo": None if props.instance_count == 0 else props.spo,
        }
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    rows = [("Triples", f"{props.total:,}"), ("Schema", f"{props.schema_count:,}"),
            ("Instance", f"{props.instance_count:,}")]
    if props.instance_count == 0:
        rows.append(("Type/SameAs/SPO", "no instance triples"))
    else:
        rows += [("Type", _percent(props.type)), ("SameAs", _percent(props.same_as)),
                 ("SPO", _percent(props.spo))]
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k.ljust(width)}  {v}")
    return EXIT_OK


def cmd_strategies(args) -> int:
    rules = catalog(table1_literal=args.table1_literal)
    if args.cls == "all":
        g = build_graph(rules.enabled())
    else:
        g = class_graph(CLASS_NAMES[args.cls], grouped=args.grouped, rules=rules)
    enum_ = enumerate_strategies(g, args.limit)
    print(f"nodes: {len(g.nodes)}  edges: {len(g.edges)}")
    for i, j in g.edges:
        print(f"  {i} -> {j}")
    more = "+" if enum_.truncated else ""
    print(f"maximal paths: {len(enum_.strategies)}{more}")
    for path in enum_.strategies:
        print("  " + " -> ".join(path))
    if args.dot:
        _write_text(args.dot, export_dot(g, args.cls))
    return EXIT_OK


def cmd_rules(args) -> int:
    rules = catalog(table1_literal=args.table1_literal)
    print(dump_json(rules) if args.json else dump_table(rules), end="")
    if args.json:
        print()
    return EXIT_OK


def cmd_generate(args) -> int:
    triples = generate_university(args.size, args.seed, args.sameas_rate)
    d = Dictionary()
    encoded = [d.encode_triple(*t) for t in triples]
    _write_bytes(args.output, write_ntriples(encoded, d, sorted=args.sorted))
    return EXIT_OK


def _bench_store(args):
    if args.inputs:
        return _load(args.inputs, args.strictness)
    store = TripleStore()
    for t in generate_university(args.size, args.seed, args.sameas_rate):
        store.add_terms(*t)
    return store


def cmd_bench(args) -> int:
    store = _bench_store(args)
    specs = [STRATEGIES[name] for name in args.strategies]
    rows, closures = [], {}
    for workers in args.workers:
        for spec in specs:
            times, rep = [], None
            for _ in range(args.repeats):
                out, rep = materialize(store, spec.mode, spec.orders, workers=workers,
                                       kernel=spec.kernel, max_iterations=args.max_iterations)
                times.append(rep.seconds)
            if spec.mode is not Mode.PAPER:
                closures[(spec.name, workers)] = out.triple_set()
            mean = statistics.fmean(times)
            rows.append({
                "strategy": spec.name,
                "workers": workers,
                "mean_s": mean,
                "median_s": statistics.median(times),
                "applications": rep.rule_applications,
                "invocations": rep.rule_invocations,
                "outer": rep.outer_iterations,
                "derived": rep.derived_count,
                "derived_per_s": rep.derived_count / mean if mean > 0 else float("inf"),
            })
    print(f"input triples: {len(store):,}  runs per row: {args.repeats}")
    print(format_table(rows), end="")
    if len(set(closures.values())) > 1:
        print("verification failed: strategies disagree on the closure", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rors", description="Ordered forward-chaining OWL reasoning.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("materialize", help="compute the closure of N-Triples files")
    p.add_argument("inputs", nargs="+", metavar="FILE")
    p.add_argument("-o", "--output", help="closure N-Triples (default: stdout)")
    p.add_argument("--report", help="write the JSON run report here")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.PAPER.value)
    p.add_argument("--kernel", choices=KERNELS, default=None,
                   help="join kernel (default: broadcast, generic for the oracle)")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--sorted", action="store_true", help="sort output lines byte-wise")
    p.add_argument("--max-iterations", type=_positive, default=10_000)
    p.add_argument("--table1-literal", action="store_true",
                   help="use the literal table variants of O13 and O14")
    p.add_argument("--verify", action="store_true",
                   help="also run the oracle and exit 3 when the closures differ")
    p.add_argument("--no-timings", action="store_true",
                   help="leave wall-clock fields out of the report")
    _add_strictness(p)
    p.set_defaults(func=cmd_materialize)

    p = sub.add_parser("stats", help="triple-class proportions and counts")
    p.add_argument("inputs", nargs="+", metavar="FILE")
    p.add_argument("--json", action="store_true")
    _add_strictness(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("strategies", help="dependency graph and executable strategies")
    p.add_argument("--class", dest="cls", choices=[*CLASS_NAMES, "all"], default="spo")
    p.add_argument("--limit", type=_positive, default=None, help="stop after N paths")
    p.add_argument("--dot", metavar="FILE", help="write the graph in DOT format")
    p.add_argument("--grouped", action="store_true", help="merge grouped rules into single nodes")
    p.add_argument("--table1-literal", action="store_true")
    p.set_defaults(func=cmd_strategies)

    p = sub.add_parser("rules", help="rule catalog tools")
    rsub = p.add_subparsers(dest="action", parser_class=_Parser, required=True)
    d = rsub.add_parser("dump", help="print the rule catalog")
    d.add_argument("--json", action="store_true")
    d.add_argument("--table1-literal", action="store_true")
    d.set_defaults(func=cmd_rules)

    def data_flags(q):
        q.add_argument("--seed", type=int, default=42)
        q.add_argument("--size", type=_positive, default=10_000)
        q.add_argument("--sameas-rate", type=float, default=0.0)

    p = sub.add_parser("generate", help="write a synthetic university dataset")
    data_flags(p)
    p.add_argument("-o", "--output", help="destination (default: stdout)")
    p.add_argument("--sorted", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="compare strategies over repeated runs")
    p.add_argument("inputs", nargs="*", metavar="FILE",
                   help="dataset files (default: generate one)")
    data_flags(p)
    p.add_argument("--strategies", type=lambda s: s.split(","), default=list(STRATEGIES),
                   help="comma-separated subset of: " + ", ".join(STRATEGIES))
    p.add_argument("--workers", type=_worker_list, default=[1], help="e.g. 1,8")
    p.add_argument("--repeats", type=_positive, default=3)
    p.add_argument("--max-iterations", type=_positive, default=10_000)
    _add_strictness(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate" and not 0.0 <= args.sameas_rate < 1.0:
        parser.error("--sameas-rate must be in [0, 1)")
    if args.command == "bench":
        unknown = [s for s in args.strategies if s not in STRATEGIES]
        if unknown:
            parser.error(f"unknown strategies: {', '.join(unknown)}")
    try:
        return args.func(args)
    except NTriplesParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except IterationLimitExceeded as exc:
        print(f"iteration limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
