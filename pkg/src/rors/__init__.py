"""Rule-ordered forward-chaining materialization for OWL Horst (pD*) rules."""

from .engine import apply_rule, build_broadcasts, evaluate_transitive_properties, transitive_closure
from .executor import (
    REVERSED,
    ROUND_ROBIN,
    RORS,
    ClosureReport,
    ConfigurationError,
    IterationLimitExceeded,
    Mode,
    StrategyMismatchError,
    StrategySpec,
    compare_strategies,
    materialize,
    run_phase,
)
from .generator import generate_university, random_ontology
from .model import (
    IRI,
    BNode,
    Dictionary,
    EmptyDatasetError,
    Literal,
    Term,
    TermKind,
    TripleClass,
    TripleStore,
    class_proportions,
    classify,
    insert,
    intern,
)
from .ntriples import (
    NTriplesParseError,
    Strictness,
    load_store,
    parse_ntriples,
    write_ntriples,
)
from .planner import (
    DEFAULT_EXCLUSIONS,
    OPTIMAL_ORDERS,
    DependencyGraph,
    build_graph,
    class_graph,
    enumerate_strategies,
    export_dot,
    optimal_order,
)
from .rules import Rule, RuleClass, catalog, rule_class_counts

__version__ = "0.1.0"
