"""Bi-holes and balanced degenerate subgraphs of bipartite graphs.

Exact degree-sequence lower bounds, a deterministic constructive extractor
with replayable audit traces, brute-force oracles for ground truth, and a
CLI (``bihole``) tying them together.
"""

from .bigraph import (
    GENERATOR_MODELS,
    BipartiteGraph,
    Side,
    SplitMix64,
    VertexRef,
    build_graph,
    generate,
    parse_edge_list,
    serialize,
)
from .bounds import (
    BoundReport,
    average_degree_bound,
    bound_report,
    caro_wei_sum,
    decimal_string,
    floor_bound,
    log_reference_bound,
    potential,
    rational_to_json,
    strengthened_bound,
)
from .errors import (
    BiholesError,
    DegreeTooSmall,
    EmptyGraph,
    EmptySide,
    IndexOutOfRange,
    InstanceTooLarge,
    InvalidProbability,
    InvalidSize,
    MalformedEdgeLine,
    MalformedHeader,
    NegativeD,
    NoEdges,
    TraceMismatch,
    UnbalancedGraph,
)
from .extract import (
    LOW_DEGREE_EDGE_DELETION,
    PAIR_CASE1,
    PAIR_CASE2,
    BiholeWitness,
    DegenerateWitness,
    PeelStep,
    PeelTrace,
    check_trace,
    find_bihole,
    find_degenerate,
    select_pair,
)
from .oracle import (
    OracleLimits,
    StuckCore,
    check_elimination_order,
    degeneracy_certificate,
    is_bihole,
    max_bihole_exact,
    max_biclique_exact,
    max_degenerate_exact,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "Side",
    "VertexRef",
    "SplitMix64",
    "GENERATOR_MODELS",
    "build_graph",
    "parse_edge_list",
    "serialize",
    "generate",
    "potential",
    "caro_wei_sum",
    "floor_bound",
    "strengthened_bound",
    "average_degree_bound",
    "log_reference_bound",
    "BoundReport",
    "bound_report",
    "rational_to_json",
    "decimal_string",
    "PAIR_CASE1",
    "PAIR_CASE2",
    "LOW_DEGREE_EDGE_DELETION",
    "PeelStep",
    "PeelTrace",
    "BiholeWitness",
    "DegenerateWitness",
    "select_pair",
    "find_bihole",
    "find_degenerate",
    "check_trace",
    "OracleLimits",
    "StuckCore",
    "is_bihole",
    "degeneracy_certificate",
    "check_elimination_order",
    "max_bihole_exact",
    "max_biclique_exact",
    "max_degenerate_exact",
    "BiholesError",
    "IndexOutOfRange",
    "EmptySide",
    "UnbalancedGraph",
    "EmptyGraph",
    "MalformedHeader",
    "MalformedEdgeLine",
    "InvalidProbability",
    "InvalidSize",
    "DegreeTooSmall",
    "NoEdges",
    "NegativeD",
    "InstanceTooLarge",
    "TraceMismatch",
]
