"""Kernelization pipelines for SPFG parameterized by the budget k.

Forcing vertices (edges of G) are split into H (forcing degree > k, forced
into every solution of size <= k), L (all forcing neighbors in H) and R.
Shortest paths of at most k edges between the endpoints of H and R are
marked; everything else is dropped.  The general, planar and special
(cluster / bounded-degree forcing) variants differ in which vertex pairs
are considered and in their size bounds, which every run audits exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from math import comb
from typing import Iterable

from .cover_enum import PreconditionError
from .graph_core import ForcingGraph, Graph, GraphError, Instance, bfs_tree, path_from_tree, planar_edge_bound_check
from .solvers import brute_force_solve

MODES = ("general", "planar", "cluster", "bounded-degree")
VERIFY_EDGE_LIMIT = 16


class KernelModeError(PreconditionError):
    """The instance does not belong to the class a kernel mode requires."""


@dataclass(frozen=True)
class Partition:
    H: frozenset[int]
    L: frozenset[int]
    R: frozenset[int]
    r_pairs: int
    reason: str | None = None

    @property
    def rejected(self) -> bool:
        return self.reason is not None


@dataclass(frozen=True)
class KernelConfig:
    mode: str = "general"
    eta: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown kernel mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.mode == "bounded-degree" and (self.eta is None or self.eta < 1):
            raise ValueError("bounded-degree mode needs eta >= 1")


@dataclass
class KernelAudit:
    # field order is the report key order
    mode: str
    k: int
    rejected: bool = False
    reject_reason: str = "-"
    h_size: int = 0
    l_size: int = 0
    r_size: int = 0
    r_pairs: int = 0
    nonisolated: int = 0
    terminal_vertices: int = 0
    pairs_considered: int = 0
    j_true_pairs: int = 0
    marked_paths: int = 0
    marked_edges: int = 0
    patch_added: int = 0
    kept_edges: int = 0
    reduced_vertices: int = 0
    bound_formula: int = 0
    within_bound: bool = True

    def items(self) -> list[tuple[str, object]]:
        return [(f.name, getattr(self, f.name)) for f in fields(self)]


@dataclass(frozen=True)
class KernelResult:
    reduced: Instance
    kept: frozenset[int]
    marked: frozenset[int]
    partition: Partition | None
    audit: KernelAudit
    edge_map: tuple[int, ...] = field(default=())
    vertex_map: tuple[int, ...] = field(default=())

    @property
    def rejected(self) -> bool:
        return self.audit.rejected

    def lift(self, edge_ids: Iterable[int]) -> frozenset[int]:
        """Map reduced-instance edge ids back to original ids."""
        return frozenset(self.edge_map[e] for e in edge_ids)


def canonical_no_instance(k: int) -> Instance:
    """Constant-size NO instance: two isolated terminals, no edges."""
    return Instance(Graph(2), ForcingGraph(0), 0, 1, k)


def _rejected(inst: Instance, audit: KernelAudit, reason: str, partition: Partition | None = None) -> KernelResult:
    audit.rejected = True
    audit.reject_reason = reason
    audit.reduced_vertices = 2
    return KernelResult(canonical_no_instance(inst.k), frozenset(), frozenset(), partition, audit)


def partition_hlr(inst: Instance) -> Partition:
    """Split forcing vertices into H, L, R; flag rejection when |H| > k or |E(G_f[R])| > k^2."""
    f, k = inst.forcing, inst.k
    high = frozenset(e for e in range(f.num_vertices) if f.degree(e) >= k + 1)
    low = frozenset(e for e in range(f.num_vertices) if e not in high and f.adjacency[e] <= high)
    rest = frozenset(range(f.num_vertices)) - high - low
    r_pairs = sum(1 for i, j in f.pairs if i in rest and j in rest)
    reason = None
    if len(high) > k:
        reason = f"|H| = {len(high)} > k = {k}"
    elif r_pairs > k * k:
        reason = f"|E(G_f[R])| = {r_pairs} > k^2 = {k * k}"
    return Partition(high, low, rest, r_pairs, reason)


def _mark_pairs(graph: Graph, terminals: set[int], k: int, only_linked: bool) -> tuple[set[int], int, int, int]:
    """Mark P (internals outside ``terminals``) and Q (unrestricted) paths of <= k edges.

    With ``only_linked`` the pair must have an x-y path through non-terminals
    at all (J true) before anything is marked for it.  Returns the marked
    edges, the pair count, the J-true pair count and the number of paths marked.
    """
    inner = set(range(graph.n)) - terminals
    order = sorted(terminals)
    marked: set[int] = set()
    j_true = paths = 0
    for idx, x in enumerate(order):
        dist_p, parent_p = bfs_tree(graph, x, inner)
        dist_q, parent_q = bfs_tree(graph, x)
        for y in order[idx + 1:]:
            linked = dist_p[y] != -1
            j_true += linked
            if only_linked and not linked:
                continue
            if linked and dist_p[y] <= k:
                marked.update(path_from_tree(graph, parent_p, x, y))
                paths += 1
            if dist_q[y] != -1 and dist_q[y] <= k:
                marked.update(path_from_tree(graph, parent_q, x, y))
                paths += 1
    return marked, comb(len(order), 2), j_true, paths


def mark_general(inst: Instance, partition: Partition) -> set[int]:
    """Marked edges for every pair of V(E_k) = endpoints of H and R plus s, t."""
    terminals = inst.graph.endpoints(partition.H | partition.R) | {inst.s, inst.t}
    marked, _, _, _ = _mark_pairs(inst.graph, terminals, inst.k, only_linked=False)
    return marked


def mark_planar(inst: Instance, partition: Partition) -> tuple[set[int], int]:
    """Marked edges restricted to J-true pairs of V_L, and the J-true count."""
    if not planar_edge_bound_check(inst.graph):
        raise KernelModeError(
            f"graph fails the planar edge bound (m = {inst.graph.m} > 3n - 6 = {3 * inst.graph.n - 6}); "
            "use the general kernel"
        )
    terminals = inst.graph.endpoints(partition.H | partition.R) | {inst.s, inst.t}
    marked, _, j_true, _ = _mark_pairs(inst.graph, terminals, inst.k, only_linked=True)
    return marked, j_true


def patch_h_degrees(inst: Instance, partition: Partition, kept: Iterable[int]) -> set[int]:
    """Keep at least min(deg, k+1) forcing neighbors of every H vertex.

    Without this, dropping L edges could lower an H vertex's forcing degree
    in the reduced instance to <= k, and a small reduced solution could skip it.
    """
    out = set(kept)
    f, k = inst.forcing, inst.k
    for h in sorted(partition.H):
        need = min(f.degree(h), k + 1)
        have = sum(1 for u in f.adjacency[h] if u in out)
        for u in sorted(f.adjacency[h]):
            if have >= need:
                break
            if u not in out:
                out.add(u)
                have += 1
    return out


def build_reduced(inst: Instance, kept: Iterable[int]) -> tuple[Instance, tuple[int, ...], tuple[int, ...]]:
    """Instance on V(kept) + {s, t} with edge set ``kept`` and the induced forcing graph."""
    edges = sorted(set(kept))
    g = inst.graph
    verts = sorted(g.endpoints(edges) | {inst.s, inst.t})
    vid = {v: i for i, v in enumerate(verts)}
    eid = {e: i for i, e in enumerate(edges)}
    graph = Graph(len(verts), [(vid[g.edges[e][0]], vid[g.edges[e][1]]) for e in edges])
    forcing = ForcingGraph(len(edges), [(eid[i], eid[j]) for i, j in inst.forcing.induced(edges)])
    reduced = Instance(graph, forcing, vid[inst.s], vid[inst.t], inst.k)
    return reduced, tuple(edges), tuple(verts)


def _finish(inst: Instance, kept: set[int], marked: set[int], partition: Partition | None,
            audit: KernelAudit) -> KernelResult:
    reduced, edge_map, vertex_map = build_reduced(inst, kept)
    audit.marked_edges = len(marked)
    audit.kept_edges = len(kept)
    audit.reduced_vertices = reduced.graph.n
    audit.within_bound = len(kept) <= audit.bound_formula
    return KernelResult(reduced, frozenset(kept), frozenset(marked), partition, audit, edge_map, vertex_map)


def general_bound(k: int) -> int:
    hr = k + 2 * k * k
    return hr + k * (k + 1) + 2 * k * comb(2 * hr + 2, 2)


def planar_bound(k: int, terminal_count: int) -> int:
    return (k + 2 * k * k) + k * (k + 1) + 2 * k * max(0, 3 * terminal_count - 6)


def special_bound(k: int, nonisolated: int) -> int:
    return nonisolated + 2 * k * comb(2 * nonisolated + 2, 2)


def _partitioned(inst: Instance, mode: str) -> tuple[Partition, KernelAudit]:
    part = partition_hlr(inst)
    audit = KernelAudit(mode, inst.k, h_size=len(part.H), l_size=len(part.L), r_size=len(part.R),
                        r_pairs=part.r_pairs)
    return part, audit


def kernelize_general(inst: Instance) -> KernelResult:
    part, audit = _partitioned(inst, "general")
    if part.rejected:
        return _rejected(inst, audit, part.reason or "", part)
    terminals = inst.graph.endpoints(part.H | part.R) | {inst.s, inst.t}
    marked, pairs, j_true, paths = _mark_pairs(inst.graph, terminals, inst.k, only_linked=False)
    kept = patch_h_degrees(inst, part, marked | part.H | part.R)
    audit.terminal_vertices = len(terminals)
    audit.pairs_considered = pairs
    audit.j_true_pairs = j_true
    audit.marked_paths = paths
    audit.patch_added = len(kept - (marked | part.H | part.R))
    audit.bound_formula = general_bound(inst.k)
    return _finish(inst, kept, marked, part, audit)


def kernelize_planar(inst: Instance) -> KernelResult:
    if not planar_edge_bound_check(inst.graph):
        raise KernelModeError(
            f"graph fails the planar edge bound (m = {inst.graph.m} > 3n - 6 = {3 * inst.graph.n - 6}); "
            "use the general kernel"
        )
    part, audit = _partitioned(inst, "planar")
    if part.rejected:
        return _rejected(inst, audit, part.reason or "", part)
    terminals = inst.graph.endpoints(part.H | part.R) | {inst.s, inst.t}
    marked, pairs, j_true, paths = _mark_pairs(inst.graph, terminals, inst.k, only_linked=True)
    kept = patch_h_degrees(inst, part, marked | part.H | part.R)
    audit.terminal_vertices = len(terminals)
    audit.pairs_considered = pairs
    audit.j_true_pairs = j_true
    audit.marked_paths = paths
    audit.patch_added = len(kept - (marked | part.H | part.R))
    audit.bound_formula = planar_bound(inst.k, len(terminals))
    return _finish(inst, kept, marked, part, audit)


@dataclass(frozen=True)
class SpecialClass:
    cluster: bool
    max_degree: int
    non_isolated: int
    edge_components: int


def classify_special(forcing: ForcingGraph) -> SpecialClass:
    """Cluster test (every component a clique), max degree, non-isolated count."""
    seen = [False] * forcing.num_vertices
    cluster = True
    edge_components = 0
    for root in range(forcing.num_vertices):
        if seen[root] or not forcing.adjacency[root]:
            continue
        comp = [root]
        seen[root] = True
        for u in comp:
            for w in forcing.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
        edge_components += 1
        if any(forcing.degree(u) != len(comp) - 1 for u in comp):
            cluster = False
    degrees = [forcing.degree(e) for e in range(forcing.num_vertices)]
    return SpecialClass(cluster, max(degrees, default=0), sum(1 for d in degrees if d), edge_components)


def nonisolated_limit(config: KernelConfig, k: int) -> int:
    """Most non-isolated forcing vertices a YES instance can have.

    Cluster: each component C with an edge needs |C| - 1 >= |C| / 2 cover
    vertices.  Bounded degree: non-isolated vertices are the cover (<= k)
    plus its neighbors (<= k * eta), so k * (eta + 1).
    """
    if config.mode == "cluster":
        return 2 * k
    assert config.eta is not None
    return k * (config.eta + 1)


def kernelize_special(inst: Instance, config: KernelConfig) -> KernelResult:
    if config.mode not in ("cluster", "bounded-degree"):
        raise KernelModeError(f"special kernel needs mode cluster or bounded-degree, got {config.mode}")
    info = classify_special(inst.forcing)
    if config.mode == "cluster" and not info.cluster:
        raise KernelModeError("forcing graph is not a cluster graph")
    if config.mode == "bounded-degree" and info.max_degree > (config.eta or 0):
        raise KernelModeError(f"forcing graph has max degree {info.max_degree} > eta = {config.eta}")
    k = inst.k
    vlf = set(inst.forcing.non_isolated())
    audit = KernelAudit(config.mode, k, nonisolated=len(vlf))
    limit = nonisolated_limit(config, k)
    if len(vlf) > limit:
        return _rejected(inst, audit, f"{len(vlf)} non-isolated forcing vertices > {limit}")
    if config.mode == "cluster" and info.edge_components > k:
        return _rejected(inst, audit, f"{info.edge_components} forcing components with an edge > k = {k}")
    terminals = inst.graph.endpoints(vlf) | {inst.s, inst.t}
    marked, pairs, j_true, paths = _mark_pairs(inst.graph, terminals, k, only_linked=False)
    kept = marked | vlf
    audit.terminal_vertices = len(terminals)
    audit.pairs_considered = pairs
    audit.j_true_pairs = j_true
    audit.marked_paths = paths
    audit.bound_formula = special_bound(k, len(vlf))
    return _finish(inst, kept, marked, None, audit)


def kernelize(inst: Instance, config: KernelConfig | None = None) -> KernelResult:
    config = config or KernelConfig()
    if config.mode == "general":
        return kernelize_general(inst)
    if config.mode == "planar":
        return kernelize_planar(inst)
    return kernelize_special(inst, config)


def verify_kernel(original: Instance, result: KernelResult | Instance) -> bool:
    """Brute-force both instances and compare verdicts."""
    if original.graph.m > VERIFY_EDGE_LIMIT:
        raise GraphError(f"verify_kernel limited to {VERIFY_EDGE_LIMIT} edges, got {original.graph.m}")
    reduced = result.reduced if isinstance(result, KernelResult) else result
    if reduced.graph.m > VERIFY_EDGE_LIMIT:
        raise GraphError(f"verify_kernel limited to {VERIFY_EDGE_LIMIT} edges, got {reduced.graph.m} in the kernel")
    return brute_force_solve(original).answer == brute_force_solve(reduced).answer
