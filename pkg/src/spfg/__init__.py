"""Shortest Path with Forcing Graph: exact solvers, kernels and instance tools."""

from .cover_enum import (
    CoverFamily,
    PreconditionError,
    enum_minimal_vc_2k2free,
    enum_minimal_vc_bounded,
    enum_vc_with_modulator,
    is_2k2_free,
    oracle_enum_all_minimal_vc,
)
from .ext_spfg import ExtensionResult, extend, oracle_extend
from .graph_core import (
    EdgeSubgraphView,
    ForcingGraph,
    Graph,
    GraphError,
    Instance,
    connected_components,
    identify,
    planar_edge_bound_check,
    shortest_path_restricted,
)
from .instance_io import generate, parse, serialize
from .kernelize import KernelConfig, KernelResult, kernelize, partition_hlr, verify_kernel
from .solvers import Verdict, brute_force_solve, fpt_solve, modulator_solve, poly_2k2_solve, solve

__version__ = "0.1.0"

__all__ = [
    "CoverFamily", "PreconditionError", "enum_minimal_vc_2k2free", "enum_minimal_vc_bounded",
    "enum_vc_with_modulator", "is_2k2_free", "oracle_enum_all_minimal_vc",
    "ExtensionResult", "extend", "oracle_extend",
    "EdgeSubgraphView", "ForcingGraph", "Graph", "GraphError", "Instance", "connected_components",
    "identify", "planar_edge_bound_check", "shortest_path_restricted",
    "generate", "parse", "serialize",
    "KernelConfig", "KernelResult", "kernelize", "partition_hlr", "verify_kernel",
    "Verdict", "brute_force_solve", "fpt_solve", "modulator_solve", "poly_2k2_solve", "solve",
]
