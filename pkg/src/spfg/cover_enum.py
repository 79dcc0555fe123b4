"""Vertex cover enumeration over forcing graphs.

Three regimes: minimal covers of size at most ``k`` (branching on uncovered
pairs), all minimal covers of a 2K2-free graph (complements of maximal
independent sets, enumerated output-sensitively), and covers guided by a
modulator ``X`` whose removal leaves a 2K2-free graph.  Isolated forcing
vertices never appear in a cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .graph_core import ForcingGraph

ORACLE_LIMIT = 24


class PreconditionError(ValueError):
    """Input is outside the domain an algorithm is defined on."""


@dataclass
class CoverFamily:
    covers: list[frozenset[int]] = field(default_factory=list)
    complete: bool = True

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.covers)

    def __len__(self) -> int:
        return len(self.covers)

    def as_set(self) -> set[frozenset[int]]:
        return set(self.covers)


def _collect(covers: Iterable[Iterable[int]]) -> CoverFamily:
    seen: set[tuple[int, ...]] = set()
    out: list[frozenset[int]] = []
    for c in covers:
        key = tuple(sorted(c))
        if key not in seen:
            seen.add(key)
            out.append(frozenset(key))
    out.sort(key=lambda c: (len(c), sorted(c)))
    return CoverFamily(out)


def is_minimal_cover(forcing: ForcingGraph, cover: frozenset[int] | set[int]) -> bool:
    """Every member must be the only cover vertex on some pair."""
    for v in cover:
        if all(u in cover for u in forcing.adjacency[v]):
            return False
    return True


def enum_minimal_vc_bounded(forcing: ForcingGraph, k: int) -> CoverFamily:
    """All minimal vertex covers of size at most ``k``.

    Branches on the lowest uncovered pair ``(i, j)``: take ``i``, or take
    ``j`` with ``i`` excluded.  Leaves are filtered for minimality.
    """
    if k < 0:
        raise PreconditionError(f"k must be non-negative, got {k}")
    pairs = forcing.pairs
    found: list[frozenset[int]] = []

    def branch(cover: set[int], excluded: set[int], budget: int) -> None:
        pick = next(((i, j) for i, j in pairs if i not in cover and j not in cover), None)
        if pick is None:
            fc = frozenset(cover)
            if is_minimal_cover(forcing, fc):
                found.append(fc)
            return
        if budget == 0:
            return
        i, j = pick
        if i not in excluded:
            cover.add(i)
            branch(cover, excluded, budget - 1)
            cover.discard(i)
        if j not in excluded:
            cover.add(j)
            added = i not in excluded
            excluded.add(i)
            branch(cover, excluded, budget - 1)
            if added:
                excluded.discard(i)
            cover.discard(j)

    branch(set(), set(), k)
    return _collect(found)


def is_2k2_free(forcing: ForcingGraph) -> bool:
    """True iff no two vertex-disjoint pairs are joined by no forcing pair (induced 2K2)."""
    return find_induced_2k2(forcing) is None


def find_induced_2k2(forcing: ForcingGraph) -> tuple[tuple[int, int], tuple[int, int]] | None:
    adj = forcing.adjacency
    for (a, b), (c, d) in combinations(forcing.pairs, 2):
        if len({a, b, c, d}) < 4:
            continue
        if c in adj[a] or d in adj[a] or c in adj[b] or d in adj[b]:
            continue
        return (a, b), (c, d)
    return None


def maximal_independent_sets(vertices: list[int], adjacency: dict[int, set[int]]) -> Iterator[frozenset[int]]:
    """Enumerate the maximal independent sets of the graph induced on ``vertices``.

    Vertices are added one at a time; every tree node at depth ``i`` is a
    maximal independent set of the first ``i`` vertices.  A node keeps its
    set (the new vertex is dominated) and, when the swap
    ``(S - N(v)) + v`` is still maximal, also spawns the swapped set, but
    only if ``S`` is the greedy completion of the swapped set's remainder.
    That canonical-parent test makes every set reachable along exactly one
    path, so the number of nodes per level never exceeds the final output
    count and total time is polynomial in the output size.
    """
    order = list(vertices)
    pos = {v: i for i, v in enumerate(order)}
    nbr = {v: {u for u in adjacency.get(v, ()) if u in pos} for v in order}

    def prefix_nbrs(v: int, i: int) -> set[int]:
        return {u for u in nbr[v] if pos[u] < i}

    def is_maximal(s: set[int], i: int) -> bool:
        for u in order[:i]:
            if u not in s and not (nbr[u] & s):
                return False
        return True

    def greedy_complete(base: set[int], i: int) -> set[int]:
        out = set(base)
        for u in order[:i]:
            if u not in out and not (nbr[u] & out):
                out.add(u)
        return out

    stack: list[tuple[int, frozenset[int]]] = [(0, frozenset())]
    while stack:
        i, s = stack.pop()
        if i == len(order):
            yield s
            continue
        v = order[i]
        if not (nbr[v] & s):
            stack.append((i + 1, s | {v}))
            continue
        stack.append((i + 1, s))
        swapped = (set(s) - prefix_nbrs(v, i)) | {v}
        if not is_maximal(swapped, i + 1):
            continue
        if greedy_complete(swapped - {v}, i) == s:
            stack.append((i + 1, frozenset(swapped)))


def _assert_2k2_free(forcing: ForcingGraph, what: str) -> None:
    witness = find_induced_2k2(forcing)
    if witness is not None:
        raise PreconditionError(f"{what} is not 2K2-free: induced 2K2 on pairs {witness[0]} and {witness[1]}")


def _minimal_covers_of(forcing: ForcingGraph, removed: set[int]) -> Iterator[frozenset[int]]:
    """Minimal covers of ``forcing - removed`` via maximal independent sets."""
    live = [e for e in range(forcing.num_vertices) if e not in removed and any(u not in removed for u in forcing.adjacency[e])]
    if not live:
        yield frozenset()
        return
    adjacency = {e: {u for u in forcing.adjacency[e] if u not in removed} for e in live}
    live_set = frozenset(live)
    for mis in maximal_independent_sets(live, adjacency):
        yield live_set - mis


def enum_minimal_vc_2k2free(forcing: ForcingGraph) -> CoverFamily:
    """All minimal vertex covers of a 2K2-free forcing graph."""
    _assert_2k2_free(forcing, "forcing graph")
    return _collect(_minimal_covers_of(forcing, set()))


def enum_vc_with_modulator(forcing: ForcingGraph, modulator: Iterable[int], ell: int) -> CoverFamily:
    """Covers of size at most ``ell`` containing every minimal one, given a 2K2-free-deletion set.

    For each ``X1`` in ``X`` with ``X - X1`` independent, every forcing
    neighbor of ``X - X1`` is forced in; the rest is a 2K2-free graph whose
    minimal covers are enumerated.  Emitted covers may be non-minimal.
    """
    xs = sorted(set(modulator))
    x_set = set(xs)
    for x in xs:
        if not 0 <= x < forcing.num_vertices:
            raise PreconditionError(f"modulator id {x} is not a forcing vertex")
    rest = [e for e in range(forcing.num_vertices) if e not in x_set]
    sub = _restrict(forcing, rest)
    _assert_2k2_free(sub, "forcing graph minus modulator")
    adj = forcing.adjacency
    found: list[frozenset[int]] = []
    for mask in range(1 << len(xs)):
        x1 = {xs[i] for i in range(len(xs)) if mask >> i & 1}
        out = x_set - x1
        if any(adj[a] & out for a in out):
            continue
        y1: set[int] = set()
        for a in out:
            y1 |= adj[a]
        y1 -= out
        fixed = x1 | y1
        if len(fixed) > ell:
            continue
        for c in _minimal_covers_of(forcing, x_set | y1):
            if len(fixed) + len(c) <= ell:
                found.append(frozenset(fixed | c))
    return _collect(found)


def _restrict(forcing: ForcingGraph, keep: list[int]) -> ForcingGraph:
    """Induced forcing graph on ``keep``, renumbered in ``keep`` order."""
    idx = {e: i for i, e in enumerate(keep)}
    return ForcingGraph(len(keep), [(idx[i], idx[j]) for i, j in forcing.induced(keep)])


def oracle_enum_all_minimal_vc(forcing: ForcingGraph) -> CoverFamily:
    """Brute force: every subset of the non-isolated vertices, kept if a minimal cover."""
    if forcing.num_vertices > ORACLE_LIMIT:
        raise PreconditionError(f"oracle limited to {ORACLE_LIMIT} forcing vertices, got {forcing.num_vertices}")
    live = forcing.non_isolated()
    found = []
    for r in range(len(live) + 1):
        for combo in combinations(live, r):
            c = frozenset(combo)
            if forcing.is_cover(c) and is_minimal_cover(forcing, c):
                found.append(c)
    return _collect(found)


def greedy_2k2_free_modulator(forcing: ForcingGraph) -> frozenset[int]:
    """Some X with ``forcing - X`` 2K2-free: repeatedly delete the smallest vertex of an induced 2K2."""
    removed: set[int] = set()
    while True:
        keep = [e for e in range(forcing.num_vertices) if e not in removed]
        witness = find_induced_2k2(_restrict(forcing, keep))
        if witness is None:
            return frozenset(removed)
        removed.add(keep[witness[0][0]])
