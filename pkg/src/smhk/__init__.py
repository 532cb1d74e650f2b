"""Optimal consensus-averaging weights on star-mesh hybrid networks
with a k-partite core: closed forms, symmetry-based spectral
verification, an independent numerical oracle, and an iteration
simulator."""

from .topology import (
    NodeId,
    OrbitEdge,
    SmhkParams,
    adjacency_matrix,
    build_edges,
    edge_count,
    is_connected,
    node_count,
    node_id,
    node_index,
    validate_params,
)
from .spectral import (
    BlockSet,
    SpectralResult,
    assemble_full,
    block_spectrum,
    check_interlacing,
    eig_symmetric,
    slem_blocks,
    slem_full,
    stratify,
)
from .weights import (
    AnalyticalSolution,
    InconsistentRootError,
    NoRootError,
    OrbitWeights,
    SingularEvaluationError,
    analytical_weights,
    angle_factor,
    angle_residual,
    bridge_weight,
    core_weight,
    solve_theta,
)
from .oracle import (
    OracleConfig,
    OracleResult,
    default_search_box,
    objective,
    optimize_weights,
)
from .sim import (
    SimConfig,
    TrajectoryStats,
    decay_rate,
    distance_trajectory,
    fit_decay_rate,
    simulate,
)
from .verify import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "SmhkParams",
    "NodeId",
    "OrbitEdge",
    "validate_params",
    "node_count",
    "edge_count",
    "build_edges",
    "node_index",
    "node_id",
    "adjacency_matrix",
    "is_connected",
    "BlockSet",
    "SpectralResult",
    "assemble_full",
    "stratify",
    "eig_symmetric",
    "slem_full",
    "slem_blocks",
    "block_spectrum",
    "check_interlacing",
    "OrbitWeights",
    "AnalyticalSolution",
    "SingularEvaluationError",
    "NoRootError",
    "InconsistentRootError",
    "bridge_weight",
    "core_weight",
    "angle_factor",
    "angle_residual",
    "solve_theta",
    "analytical_weights",
    "OracleConfig",
    "OracleResult",
    "default_search_box",
    "objective",
    "optimize_weights",
    "SimConfig",
    "TrajectoryStats",
    "simulate",
    "distance_trajectory",
    "decay_rate",
    "fit_decay_rate",
    "CheckResult",
    "run_checks",
    "__version__",
]
