"""Traces, shadows and shatter functions of hypergraphs."""
from .binomials import binom_real, invert_binomial, lambda_br, mu
from .construct import (
    ConstructionReport,
    ConstructionSpec,
    build_sparse_kk_extremal,
    build_trace_ub_family,
    chernoff_tail_check,
    estimate_trace_ub,
    verify_shadow_upper,
    verify_wp_upper,
)
from .decompose import (
    collect_link_shadow_lower,
    expected_trace_lower,
    heavy_tuples,
    heavy_vertices,
    regularize,
    sparse_kk_bound,
    sparse_kk_params,
    trace_tau_lower,
)
from .edgelist import format_edge_list, parse_edge_list, read_edge_list, write_edge_list
from .errors import (
    CapacityError,
    ConstructionFailure,
    ContractError,
    InvalidArgument,
    NumericError,
    ParseError,
    PartialResult,
    TraceLabError,
)
from .hypergraph import (
    Hypergraph,
    VertexSet,
    downward_closure,
    find_separating_subset,
    induced,
    link,
    popular_layer,
    shadow,
    shadow_size,
    trace_onto,
    trace_value,
    vc_dimension,
    wp,
)
from .oracle import OracleBudget, VerificationReport, run_property_suite, tau_exact

__version__ = "0.1.0"
