"""Minimum extension of a prescribed edge set to an s-t connecting set.

Every connected component of ``G[S]`` is contracted to a single vertex, so
edges of ``S`` cost nothing, and a breadth-first shortest path between the
super-vertices of ``s`` and ``t`` gives the fewest extra edges.  Contracting
only the two terminal components would miss routes that hop through other
components of ``G[S]`` for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .graph_core import EdgeSubgraphView, Graph, GraphError, connected_components, connects, identify, shortest_path_restricted

ORACLE_EDGE_LIMIT = 20


@dataclass(frozen=True)
class ExtensionResult:
    edges: frozenset[int]
    feasible: bool

    @property
    def size(self) -> int:
        return len(self.edges) if self.feasible else -1


INFEASIBLE = ExtensionResult(frozenset(), False)


def _check(graph: Graph, s: int, t: int, edges: Iterable[int]) -> None:
    if s == t:
        raise GraphError("s and t must be distinct")
    for v in (s, t):
        if not 0 <= v < graph.n:
            raise GraphError(f"terminal {v} not in graph")
    for e in edges:
        if not 0 <= e < graph.m:
            raise GraphError(f"edge id {e} not in graph")


def extend(graph: Graph, prescribed: Iterable[int], s: int, t: int) -> ExtensionResult:
    """Smallest superset of ``prescribed`` whose edge-subgraph joins ``s`` and ``t``."""
    base = frozenset(prescribed)
    _check(graph, s, t, base)
    comps = connected_components(EdgeSubgraphView(graph, base))
    contraction = identify(graph, [c for c in comps if len(c) > 1])
    a, b = contraction.vertex_map[s], contraction.vertex_map[t]
    if a == b:
        return ExtensionResult(base, True)
    path = shortest_path_restricted(contraction.graph, a, b)
    if path is None:
        return INFEASIBLE
    return ExtensionResult(base | frozenset(contraction.lift(path)), True)


def oracle_extend(graph: Graph, prescribed: Iterable[int], s: int, t: int, cap: int | None = None) -> ExtensionResult:
    """Exhaustive search over supersets of ``prescribed`` with at most ``cap`` edges."""
    base = frozenset(prescribed)
    _check(graph, s, t, base)
    if graph.m > ORACLE_EDGE_LIMIT:
        raise GraphError(f"oracle_extend limited to {ORACLE_EDGE_LIMIT} edges, got {graph.m}")
    cap = graph.m if cap is None else cap
    others = [e for e in range(graph.m) if e not in base]
    for extra in range(0, cap - len(base) + 1):
        for combo in combinations(others, extra):
            chosen = base | frozenset(combo)
            if connects(graph, chosen, s, t):
                return ExtensionResult(chosen, True)
    return INFEASIBLE
