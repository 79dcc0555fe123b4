"""Simple undirected graphs with positional edge ids.

Edge ids are the positions of the edges in ``Graph.edges`` and never change;
every view or reduction keeps them so the forcing graph stays aligned with the
base graph.  Shortest paths are breadth-first with neighbors expanded in
ascending vertex id and parents fixed at first discovery, which makes every
path (and therefore every kernel) reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised when a graph, forcing graph or instance violates its invariants."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adjacency", "_index")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()) -> None:
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        edge_list: list[tuple[int, int]] = []
        index: dict[tuple[int, int], int] = {}
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(edges):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {eid} = ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"edge {eid} = ({u}, {v}) is a self-loop")
            key = _norm(u, v)
            if key in index:
                raise GraphError(f"edge {eid} = ({u}, {v}) duplicates edge {index[key]}")
            index[key] = eid
            edge_list.append((u, v))
            adjacency[u].append((v, eid))
            adjacency[v].append((u, eid))
        for nbrs in adjacency:
            nbrs.sort()
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(edge_list)
        self.adjacency: tuple[tuple[tuple[int, int], ...], ...] = tuple(tuple(a) for a in adjacency)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int | None:
        return self._index.get(_norm(u, v))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def endpoints(self, edge_ids: Iterable[int]) -> set[int]:
        """Vertices touched by the given edges."""
        out: set[int] = set()
        for e in edge_ids:
            out.update(self.edges[e])
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class ForcingGraph:
    """Simple graph whose vertices are the edge ids of a companion ``Graph``.

    Pairs are stored normalized as ``(min, max)`` and sorted.
    """

    __slots__ = ("num_vertices", "pairs", "adjacency")

    def __init__(self, num_vertices: int, pairs: Iterable[Sequence[int]] = ()) -> None:
        if num_vertices < 0:
            raise GraphError(f"forcing vertex count must be non-negative, got {num_vertices}")
        seen: set[tuple[int, int]] = set()
        for i, j in pairs:
            i, j = int(i), int(j)
            if not (0 <= i < num_vertices and 0 <= j < num_vertices):
                raise GraphError(f"forcing pair ({i}, {j}) references an edge id outside 0..{num_vertices - 1}")
            if i == j:
                raise GraphError(f"forcing pair ({i}, {j}) is a self-pair")
            key = _norm(i, j)
            if key in seen:
                raise GraphError(f"forcing pair ({i}, {j}) is duplicated")
            seen.add(key)
        adjacency: list[set[int]] = [set() for _ in range(num_vertices)]
        for i, j in seen:
            adjacency[i].add(j)
            adjacency[j].add(i)
        self.num_vertices = num_vertices
        self.pairs: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self.adjacency: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adjacency)

    def degree(self, e: int) -> int:
        return len(self.adjacency[e])

    def neighbors(self, e: int) -> frozenset[int]:
        return self.adjacency[e]

    def non_isolated(self) -> list[int]:
        return [e for e in range(self.num_vertices) if self.adjacency[e]]

    def induced(self, keep: Iterable[int]) -> list[tuple[int, int]]:
        """Pairs with both endpoints in ``keep`` (original ids)."""
        keep = set(keep)
        return [p for p in self.pairs if p[0] in keep and p[1] in keep]

    def is_cover(self, cover: Iterable[int]) -> bool:
        cover = set(cover)
        return all(i in cover or j in cover for i, j in self.pairs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ForcingGraph):
            return NotImplemented
        return self.num_vertices == other.num_vertices and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash((self.num_vertices, self.pairs))

    def __repr__(self) -> str:
        return f"ForcingGraph(vertices={self.num_vertices}, pairs={len(self.pairs)})"


@dataclass(frozen=True)
class Instance:
    """An SPFG instance, optionally carrying a 2K2-free-deletion modulator."""

    graph: Graph
    forcing: ForcingGraph
    s: int
    t: int
    k: int
    modulator: frozenset[int] | None = None
    ell: int | None = None

    def __post_init__(self) -> None:
        n = self.graph.n
        if not (0 <= self.s < n and 0 <= self.t < n):
            raise GraphError(f"terminals ({self.s}, {self.t}) must lie in 0..{n - 1}")
        if self.s == self.t:
            raise GraphError("terminals s and t must be distinct")
        if self.k < 0:
            raise GraphError(f"budget k must be non-negative, got {self.k}")
        if self.forcing.num_vertices != self.graph.m:
            raise GraphError(
                f"forcing graph has {self.forcing.num_vertices} vertices but the graph has {self.graph.m} edges"
            )
        if self.modulator is not None:
            object.__setattr__(self, "modulator", frozenset(self.modulator))
            bad = [x for x in self.modulator if not 0 <= x < self.graph.m]
            if bad:
                raise GraphError(f"modulator ids {sorted(bad)} are not edge ids")
            if self.ell is None:
                raise GraphError("a modulator requires a budget ell")
        elif self.ell is not None:
            raise GraphError("budget ell is only meaningful with a modulator")
        if self.ell is not None and self.ell < 0:
            raise GraphError(f"budget ell must be non-negative, got {self.ell}")

    def is_solution(self, edge_ids: Iterable[int], budget: int | None = None) -> bool:
        """Check size, vertex-cover and s-t connectivity conditions from scratch."""
        chosen = set(edge_ids)
        limit = self.k if budget is None else budget
        if len(chosen) > limit or not all(0 <= e < self.graph.m for e in chosen):
            return False
        if not self.forcing.is_cover(chosen):
            return False
        return connects(self.graph, chosen, self.s, self.t)


@dataclass(frozen=True)
class EdgeSubgraphView:
    """``G[S]``: all vertices of ``base``, only the edges in ``kept_edges``."""

    base: Graph
    kept_edges: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kept_edges", frozenset(self.kept_edges))
        for e in self.kept_edges:
            if not 0 <= e < self.base.m:
                raise GraphError(f"edge id {e} not in base graph")


def connected_components(view: EdgeSubgraphView) -> list[list[int]]:
    """Components of the view, each sorted, ordered by smallest vertex."""
    g = view.base
    kept = view.kept_edges
    label = [-1] * g.n
    comps: list[list[int]] = []
    for root in range(g.n):
        if label[root] != -1:
            continue
        label[root] = len(comps)
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, e in g.adjacency[u]:
                if e in kept and label[w] == -1:
                    label[w] = label[root]
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def connects(graph: Graph, edge_ids: Iterable[int], s: int, t: int) -> bool:
    """True iff ``s`` and ``t`` are joined by a path using only ``edge_ids``."""
    kept = set(edge_ids)
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            return True
        for w, e in graph.adjacency[u]:
            if e in kept and w not in seen:
                seen.add(w)
                queue.append(w)
    return False


@dataclass(frozen=True)
class Contraction:
    graph: Graph
    vertex_map: tuple[int, ...]
    edge_origin: tuple[int, ...]

    def lift(self, path: Iterable[int]) -> list[int]:
        """Map contracted edge ids back to their canonical original edge ids."""
        return [self.edge_origin[e] for e in path]


def identify(graph: Graph, parts: Iterable[Iterable[int]]) -> Contraction:
    """Merge each vertex set in ``parts`` into a single super-vertex.

    New vertex ids are handed out in order of each class's smallest original
    vertex.  Loops are dropped and parallel edges collapse onto the
    smallest-id original edge, which is recorded in ``edge_origin``.
    """
    owner: dict[int, int] = {}
    for idx, part in enumerate(parts):
        for v in part:
            if not 0 <= v < graph.n:
                raise GraphError(f"vertex {v} not in graph")
            if v in owner:
                raise GraphError(f"vertex {v} appears in more than one part")
            owner[v] = idx
    new_id: dict[tuple[str, int], int] = {}
    vertex_map: list[int] = []
    for v in range(graph.n):
        key = ("p", owner[v]) if v in owner else ("v", v)
        if key not in new_id:
            new_id[key] = len(new_id)
        vertex_map.append(new_id[key])
    seen: set[tuple[int, int]] = set()
    new_edges: list[tuple[int, int]] = []
    origin: list[int] = []
    for eid, (u, v) in enumerate(graph.edges):
        a, b = vertex_map[u], vertex_map[v]
        if a == b:
            continue
        key = _norm(a, b)
        if key in seen:
            continue
        seen.add(key)
        new_edges.append((a, b))
        origin.append(eid)
    return Contraction(Graph(len(new_id), new_edges), tuple(vertex_map), tuple(origin))


def bfs_tree(
    graph: Graph, source: int, allowed_internal: Iterable[int] | None = None
) -> tuple[list[int], list[int]]:
    """Breadth-first distances and parent edges from ``source``.

    Only ``source`` and vertices in ``allowed_internal`` are expanded; other
    vertices can be reached but never passed through.  Unreached vertices
    have distance -1.  Parent edge of the source (and unreached) is -1.
    """
    allowed = None if allowed_internal is None else set(allowed_internal)
    dist = [-1] * graph.n
    parent = [-1] * graph.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u != source and allowed is not None and u not in allowed:
            continue
        for w, e in graph.adjacency[u]:
            if dist[w] == -1:
                dist[w] = dist[u] + 1
                parent[w] = e
                queue.append(w)
    return dist, parent


def path_from_tree(graph: Graph, parent: Sequence[int], source: int, target: int) -> list[int]:
    """Edge ids of the tree path ``source -> target`` (target must be reached)."""
    path: list[int] = []
    v = target
    while v != source:
        e = parent[v]
        path.append(e)
        a, b = graph.edges[e]
        v = a if b == v else b
    path.reverse()
    return path


def shortest_path_restricted(
    graph: Graph,
    x: int,
    y: int,
    allowed_internal: Iterable[int] | None = None,
    max_len: int | None = None,
) -> list[int] | None:
    """Shortest ``x``-``y`` path whose internal vertices lie in ``allowed_internal``.

    ``allowed_internal=None`` allows every vertex.  Returns edge ids in path
    order, or None when no path of at most ``max_len`` edges exists.
    """
    if x == y:
        raise GraphError("shortest_path_restricted needs distinct endpoints")
    dist, parent = bfs_tree(graph, x, allowed_internal)
    if dist[y] == -1 or (max_len is not None and dist[y] > max_len):
        return None
    return path_from_tree(graph, parent, x, y)


def planar_edge_bound_check(graph: Graph) -> bool:
    """Euler necessary condition for planarity: ``m <= 3n - 6`` (true for n < 3)."""
    if graph.n < 3:
        return True
    return graph.m <= 3 * graph.n - 6
