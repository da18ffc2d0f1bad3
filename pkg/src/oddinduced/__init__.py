"""Large induced subgraphs with all degrees odd, with checkable certificates."""

from .certificate import Branch, OddCertificate
from .cluster import ClusterState, compute_l, extract_cluster
from .errors import (
    GraphParseError,
    HypothesisViolation,
    InternalDefect,
    OracleLimitExceeded,
    PreconditionError,
)
from .extractors import (
    derandomize_parity,
    extract_from_independent,
    extract_from_matching,
    extract_max_degree,
)
from .gf2 import BitMatrix, Gf2Solution, gallai_even_even, gallai_odd_even, larger_even_side, solve_gf2
from .graph import (
    Graph,
    GraphStats,
    VertexSet,
    drop_isolated,
    format_edge_list,
    parse_edge_list,
    stats,
    verify_all_odd,
)
from .generators import generate
from .oracle import OracleResult, fo_exact, fo_min_over_graphs
from .params import DEFAULT_PARAMS, Params
from .pipeline import MatchingState, TraceEvent, extract_odd, peel_cover, pipeline_step

__version__ = "0.1.0"
