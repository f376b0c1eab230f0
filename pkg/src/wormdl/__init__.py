"""Deadlock analysis for wormhole-switched networks."""

from .graph import (
    GraphError,
    RoutingGraph,
    defined_destinations,
    enumerate_simple_d_paths,
    is_d_path,
    neighbors,
    parse_graph,
    random_graph,
    serialize_graph,
    to_dot,
)
from .marking import (
    AnalysisReport,
    MarkStore,
    Verdict,
    check_invariant_3marks,
    check_invariant_4marks,
    compute_escs_deps,
    find_d_path_to_blocked,
    refine_three_set,
    run_algorithm,
)
from .witness import (
    WitnessSet,
    build_witness,
    check_witness,
    find_member_not_in,
    format_witness,
    parse_witness,
    union_of,
)
from .oracle import (
    OracleLimitError,
    OracleResult,
    exists_disjoint_deadlock,
    exists_escape_free_set,
    max_escape_free_set,
)

__version__ = "0.1.0"
