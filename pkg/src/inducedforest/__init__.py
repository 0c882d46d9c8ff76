"""Large induced forests: lower bounds, constructions and an exact oracle."""

from .bounds import BoundEntry, BoundReport, PotentialKind, closed_form_bounds, potential_sum
from .certificates import certify, counting_bound
from .constructive import BaseSolverConfig, construct_triangle_free_forest, replay_trace
from .errors import (
    BaseCaseShortfall,
    BoundViolation,
    GenerationFailed,
    HostMismatch,
    Incomplete,
    InducedForestError,
    InvalidEdge,
    InvalidSeed,
    InvalidSet,
    MalformedEdgeList,
    MalformedGraph6,
    NotAForest,
    NotApplicable,
    NotCertified,
    NothingToDo,
    TraceInvalid,
    Unsupported,
    VertexNotInSet,
)
from .exact import ExactResult, max_induced_forest, max_induced_linear_k_forest, verify_bound_against_exact
from .experiment import ExperimentConfig, run_experiment
from .generators import GeneratorSpec, generate
from .graph import (
    Graph,
    GraphStats,
    TreeStats,
    VertexSet,
    beta_counts,
    graph_from_edges,
    induces_forest,
    induces_linear_k_forest,
    outside_degree,
    stats,
    tree_decomposition,
)
from .graph_io import parse_edgelist, parse_graph6, serialize_edgelist, serialize_graph6
from .pipeline import clique_degree_pipeline
from .regularize import RegularizedGraph, extract_best_copy, regularize
from .search import LexVariant, Move, SearchState, search

__version__ = "0.1.0"
