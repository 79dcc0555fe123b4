"""SPFG solvers: brute-force oracle, O*(2^k) branching, 2K2-free and modulator algorithms.

All non-oracle solvers share one shape: enumerate candidate vertex covers of
the forcing graph, extend each one to an s-t connecting edge set, keep the
smallest.  Ties are broken by the sorted witness so results are reproducible.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .cover_enum import (
    CoverFamily,
    PreconditionError,
    enum_minimal_vc_2k2free,
    enum_minimal_vc_bounded,
    enum_vc_with_modulator,
    is_2k2_free,
)
from .ext_spfg import extend
from .graph_core import GraphError, Instance

BRUTE_FORCE_EDGE_LIMIT = 20
ALGORITHMS = ("auto", "bruteforce", "fpt", "poly2k2", "modulator")


@dataclass
class Verdict:
    answer: bool
    witness: frozenset[int] | None
    algorithm: str
    optimum: int | None = None
    stats: dict[str, float] = field(default_factory=dict)

    @property
    def label(self) -> str:
        return "YES" if self.answer else "NO"

    @property
    def size(self) -> int | None:
        return None if self.witness is None else len(self.witness)


def _witness_key(edges: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    ordered = tuple(sorted(edges))
    return len(ordered), ordered


def brute_force_solve(inst: Instance, budget: int | None = None) -> Verdict:
    """Try every edge subset of size at most the budget, smallest first."""
    g = inst.graph
    if g.m > BRUTE_FORCE_EDGE_LIMIT:
        raise GraphError(f"brute force limited to {BRUTE_FORCE_EDGE_LIMIT} edges, got {g.m}")
    limit = inst.k if budget is None else budget
    start = time.perf_counter()
    pair_masks = [(1 << i) | (1 << j) for i, j in inst.forcing.pairs]
    adjacency = g.adjacency
    s, t = inst.s, inst.t

    def reaches(mask: int) -> bool:
        seen = 1 << s
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w, e in adjacency[u]:
                if mask >> e & 1 and not seen >> w & 1:
                    if w == t:
                        return True
                    seen |= 1 << w
                    queue.append(w)
        return False

    tried = 0
    for r in range(min(limit, g.m) + 1):
        for combo in combinations(range(g.m), r):
            tried += 1
            mask = 0
            for e in combo:
                mask |= 1 << e
            if all(mask & pm for pm in pair_masks) and reaches(mask):
                return Verdict(True, frozenset(combo), "bruteforce", r,
                               {"subsets_tried": tried, "elapsed_s": time.perf_counter() - start})
    return Verdict(False, None, "bruteforce", None,
                   {"subsets_tried": tried, "elapsed_s": time.perf_counter() - start})


def _best_extension(inst: Instance, covers: CoverFamily | Iterable[frozenset[int]]) -> tuple[frozenset[int] | None, int]:
    best: tuple[int, tuple[int, ...]] | None = None
    calls = 0
    for cover in covers:
        calls += 1
        res = extend(inst.graph, cover, inst.s, inst.t)
        if not res.feasible:
            continue
        key = _witness_key(res.edges)
        if best is None or key < best:
            best = key
    return (None if best is None else frozenset(best[1])), calls


def _decide(inst: Instance, algorithm: str, covers: Callable[[], CoverFamily], budget: int,
            report_optimum: bool) -> Verdict:
    start = time.perf_counter()
    family = covers()
    best, calls = _best_extension(inst, family)
    stats = {"covers_tried": len(family), "extend_calls": calls, "elapsed_s": time.perf_counter() - start}
    if best is None:
        return Verdict(False, None, algorithm, None, stats)
    if len(best) <= budget:
        return Verdict(True, best, algorithm, len(best), stats)
    return Verdict(False, None, algorithm, len(best) if report_optimum else None, stats)


def fpt_solve(inst: Instance) -> Verdict:
    """Branch over minimal covers of size at most k and extend each one."""
    if inst.k == 0:
        return Verdict(False, None, "fpt", None, {"covers_tried": 0, "extend_calls": 0, "elapsed_s": 0.0})
    return _decide(inst, "fpt", lambda: enum_minimal_vc_bounded(inst.forcing, inst.k), inst.k, False)


def poly_2k2_solve(inst: Instance) -> Verdict:
    """Optimize over every minimal cover of a 2K2-free forcing graph.

    ``optimum`` holds the minimum feasible size even when it exceeds k.
    """
    if not is_2k2_free(inst.forcing):
        raise PreconditionError("poly2k2 requires a 2K2-free forcing graph")
    return _decide(inst, "poly2k2", lambda: enum_minimal_vc_2k2free(inst.forcing), inst.k, True)


def modulator_solve(inst: Instance) -> Verdict:
    """Solve with budget ell using covers enumerated around the modulator."""
    if inst.modulator is None or inst.ell is None:
        raise PreconditionError("modulator solver needs a modulator and a budget ell")
    if inst.ell == 0:
        return Verdict(False, None, "modulator", None, {"covers_tried": 0, "extend_calls": 0, "elapsed_s": 0.0})
    return _decide(inst, "modulator",
                   lambda: enum_vc_with_modulator(inst.forcing, inst.modulator, inst.ell), inst.ell, False)


def solve(inst: Instance, algorithm: str = "auto") -> Verdict:
    if algorithm == "auto":
        return poly_2k2_solve(inst) if is_2k2_free(inst.forcing) else fpt_solve(inst)
    dispatch = {
        "bruteforce": brute_force_solve,
        "fpt": fpt_solve,
        "poly2k2": poly_2k2_solve,
        "modulator": modulator_solve,
    }
    if algorithm not in dispatch:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {', '.join(ALGORITHMS)}")
    return dispatch[algorithm](inst)
