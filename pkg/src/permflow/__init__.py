"""Sorting as a continuous contraction flow on the rank polytope.

The package is organized around one picture: a sequence to sort is a
vertex of the polytope whose vertices are all rearrangements of
(1, ..., n), and sorting is the gradient flow x' = v_s - x sliding that
point toward the sorted vertex v_s = (1, ..., n).

- `core`: permutations, the polytope hyperplane, the disorder measure.
- `flow`: the closed-form flow, its crossing events, time/operation
  estimates.
- `projection`: order-preserving descent via tie-block pooling.
- `dtree`: optimal comparison trees and the ceil(log2 n!) bound.
- `slicing`: comparisons as half-space constraints, feasible counting,
  instrumented classical sorts.
- `cli`: the `permflow` command.
"""

from .core import (
    BRUTE_FORCE_LIMIT,
    DisorderReport,
    Permutation,
    SizeLimitError,
    StateVector,
    as_state,
    brute_force_sort,
    disorder_squared,
    hyperplane_sum,
    in_hyperplane,
    inversions,
    log2_factorial,
    reverse_disorder,
    sorted_vertex,
    vertex_of,
)
from .dtree import (
    BUILD_FAST_LIMIT,
    BUILD_LIMIT,
    Internal,
    Leaf,
    OptimalTree,
    TreeStats,
    build_optimal,
    info_lower_bound,
    tree_from_dict,
    tree_from_json,
    tree_stats,
    tree_to_dict,
    tree_to_json,
    verify_tree,
)
from .flow import (
    CrossingEvent,
    FlowSample,
    FlowTrace,
    SortingEstimate,
    crossing_events,
    crossing_time,
    discrete_estimate,
    disorder_at,
    estimate_sorting,
    flow_state,
    lemma_lower_bound,
    sample_trace,
    time_to_epsilon,
)
from .projection import (
    MAX_STEP,
    ProjectedSample,
    ProjectedTrace,
    TieBlocks,
    active_ties,
    integrate_projected,
    project_velocity,
)
from .slicing import (
    ALGORITHMS,
    BRUTE_LIMIT,
    Constraint,
    ConstraintSet,
    DP_LIMIT,
    INSTRUMENT_LIMIT,
    InstrumentedRun,
    ReductionReport,
    TraceStep,
    comparison_count,
    feasible_count,
    feasible_count_brute,
    instrument,
    is_contradictory,
    isolates_sorted,
    parse_constraints,
    reduction_report,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BRUTE_FORCE_LIMIT",
    "BRUTE_LIMIT",
    "BUILD_FAST_LIMIT",
    "BUILD_LIMIT",
    "Constraint",
    "ConstraintSet",
    "CrossingEvent",
    "DP_LIMIT",
    "DisorderReport",
    "FlowSample",
    "FlowTrace",
    "INSTRUMENT_LIMIT",
    "InstrumentedRun",
    "Internal",
    "Leaf",
    "MAX_STEP",
    "OptimalTree",
    "Permutation",
    "ProjectedSample",
    "ProjectedTrace",
    "ReductionReport",
    "SizeLimitError",
    "SortingEstimate",
    "StateVector",
    "TieBlocks",
    "TraceStep",
    "TreeStats",
    "as_state",
    "active_ties",
    "brute_force_sort",
    "build_optimal",
    "comparison_count",
    "crossing_events",
    "crossing_time",
    "discrete_estimate",
    "disorder_at",
    "disorder_squared",
    "estimate_sorting",
    "feasible_count",
    "feasible_count_brute",
    "flow_state",
    "hyperplane_sum",
    "in_hyperplane",
    "info_lower_bound",
    "instrument",
    "integrate_projected",
    "inversions",
    "is_contradictory",
    "isolates_sorted",
    "lemma_lower_bound",
    "log2_factorial",
    "parse_constraints",
    "project_velocity",
    "reduction_report",
    "reverse_disorder",
    "sample_trace",
    "sorted_vertex",
    "time_to_epsilon",
    "tree_from_dict",
    "tree_from_json",
    "tree_stats",
    "tree_to_dict",
    "tree_to_json",
    "verify_tree",
    "vertex_of",
    "__version__",
]
