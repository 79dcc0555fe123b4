from __future__ import annotations

import dataclasses
import importlib
from math import comb

import pytest
from hypothesis import assume, given, settings

from spfg.cover_enum import PreconditionError, enum_minimal_vc_bounded
from spfg.graph_core import ForcingGraph, Graph, GraphError, Instance
from spfg.instance_io import generate
from spfg.kernelize import (
    KernelConfig,
    KernelModeError,
    canonical_no_instance,
    classify_special,
    general_bound,
    kernelize,
    nonisolated_limit,
    partition_hlr,
    patch_h_degrees,
    planar_bound,
    special_bound,
    verify_kernel,
)
from spfg.solvers import brute_force_solve
from strategies import instances

kmod = importlib.import_module("spfg.kernelize")
SETTINGS = settings(max_examples=100, deadline=None)


def _inst(n, edges, pairs, s, t, k) -> Instance:
    return Instance(Graph(n, edges), ForcingGraph(len(edges), pairs), s, t, k)


def _disjoint_edges(count: int, offset: int = 0) -> list[tuple[int, int]]:
    return [(offset + 2 * i, offset + 2 * i + 1) for i in range(count)]


class TestPartition:
    def test_star(self):
        inst = _inst(6, _disjoint_edges(3), [(0, 1), (0, 2)], 0, 1, 1)
        p = partition_hlr(inst)
        assert (p.H, p.L, p.R) == ({0}, {1, 2}, set())
        assert not p.rejected

    def test_forcing_path(self):
        inst = _inst(6, _disjoint_edges(3), [(0, 1), (1, 2)], 0, 1, 1)
        p = partition_hlr(inst)
        assert (p.H, p.L, p.R) == ({1}, {0, 2}, set())

    def test_isolated_vertices_are_low(self, i1):
        p = partition_hlr(i1)
        assert p.L == {0, 1} and not p.H and not p.R

    def test_too_many_high(self):
        # K_{2,2} forcing: every vertex has degree 2 > k = 1
        inst = _inst(8, _disjoint_edges(4), [(0, 2), (0, 3), (1, 2), (1, 3)], 0, 1, 1)
        p = partition_hlr(inst)
        assert p.rejected and len(p.H) == 4

    def test_too_many_r_pairs(self):
        inst = _inst(8, _disjoint_edges(4), [(0, 1), (2, 3)], 0, 1, 1)
        p = partition_hlr(inst)
        assert p.H == set() and p.r_pairs == 2 and p.rejected

    @SETTINGS
    @given(instances())
    def test_invariants(self, inst):
        p = partition_hlr(inst)
        f, k = inst.forcing, inst.k
        assert p.H | p.L | p.R == set(range(f.num_vertices))
        assert not (p.H & p.L or p.H & p.R or p.L & p.R)
        for e in p.H:
            assert f.degree(e) > k
        for e in p.L:
            assert f.adjacency[e] <= p.H
        for e in p.R:
            assert f.adjacency[e] - p.H
        # no forcing pair joins L and R
        for i, j in f.pairs:
            assert not ({i, j} & p.L and {i, j} & p.R)


class TestPatch:
    def test_tops_up_to_k_plus_one(self):
        inst = _inst(12, _disjoint_edges(6), [(0, j) for j in range(1, 6)], 0, 1, 1)
        p = partition_hlr(inst)
        assert p.H == {0}
        assert patch_h_degrees(inst, p, {0}) == {0, 1, 2}

    def test_noop_when_enough_kept(self):
        inst = _inst(12, _disjoint_edges(6), [(0, j) for j in range(1, 6)], 0, 1, 1)
        p = partition_hlr(inst)
        assert patch_h_degrees(inst, p, {0, 4, 5}) == {0, 4, 5}

    def test_patch_is_needed(self, monkeypatch):
        # s-t edge e0; the H edge e1 is elsewhere and forced by e2, e3
        inst = _inst(8, [(0, 1), (2, 3), (4, 5), (6, 7)], [(1, 2), (1, 3)], 0, 1, 1)
        assert not brute_force_solve(inst).answer
        assert verify_kernel(inst, kernelize(inst))
        monkeypatch.setattr(kmod, "patch_h_degrees", lambda inst, part, kept: set(kept))
        assert not verify_kernel(inst, kernelize(inst))


class TestGeneral:
    def test_i1_unchanged(self, i1):
        r = kernelize(i1)
        assert r.reduced.graph == i1.graph
        assert (r.reduced.s, r.reduced.t, r.reduced.k) == (0, 2, 2)

    def test_pendant_path_dropped(self):
        k = 2
        # s-t path 0-1-2 plus a pendant chain 1 - 3 - 4 - ... of k + 5 edges
        chain = [1] + list(range(3, 3 + k + 5))
        edges = [(0, 1), (1, 2)] + [(min(a, b), max(a, b)) for a, b in zip(chain, chain[1:])]
        inst = _inst(3 + k + 5, edges, [], 0, 2, k)
        r = kernelize(inst)
        assert r.kept == {0, 1}
        assert r.reduced.graph.n == 3
        assert verify_kernel(inst, r)

    def test_reject_many_high(self):
        inst = _inst(8, _disjoint_edges(4), [(0, 2), (0, 3), (1, 2), (1, 3)], 0, 1, 1)
        r = kernelize(inst)
        assert r.rejected and r.reduced == canonical_no_instance(1)
        assert not brute_force_solve(inst).answer

    def test_canonical_no(self):
        for k in range(4):
            assert not brute_force_solve(canonical_no_instance(k)).answer

    def test_bound_values(self):
        assert general_bound(0) == 0
        assert general_bound(1) == 3 + 2 + 2 * comb(8, 2)
        assert general_bound(2) == 10 + 6 + 4 * comb(22, 2)

    def test_lift_witness(self):
        for seed in range(30):
            inst = generate("random", {"k": 3}, seed)
            r = kernelize(inst)
            if r.rejected:
                continue
            v = brute_force_solve(r.reduced)
            if v.answer:
                assert inst.is_solution(r.lift(v.witness))

    @SETTINGS
    @given(instances())
    def test_equivalent_and_bounded(self, inst):
        r = kernelize(inst)
        assert verify_kernel(inst, r)
        if not r.rejected:
            assert r.audit.within_bound
            # H edges stay forced after reduction
            red = partition_hlr(r.reduced)
            mapped_h = {r.edge_map.index(e) for e in r.partition.H}
            assert mapped_h <= red.H
            for cover in enum_minimal_vc_bounded(r.reduced.forcing, inst.k):
                assert mapped_h <= cover


class TestPlanar:
    def test_k5_rejected_by_mode(self):
        k5 = [(i, j) for i in range(5) for j in range(i + 1, 5)]
        inst = _inst(5, k5, [], 0, 1, 2)
        with pytest.raises(KernelModeError, match="planar"):
            kernelize(inst, KernelConfig("planar"))
        assert isinstance(KernelModeError("x"), PreconditionError)

    def test_i1(self, i1):
        r = kernelize(i1, KernelConfig("planar"))
        assert r.audit.terminal_vertices == 2 and r.audit.j_true_pairs == 1
        assert verify_kernel(i1, r)

    def test_bound_values(self):
        assert planar_bound(1, 2) == 3 + 2
        assert planar_bound(2, 5) == 10 + 6 + 4 * 9

    def test_grid(self):
        inst = generate("grid-planar", {"rows": 3, "cols": 3, "k": 2}, 4)
        r = kernelize(inst, KernelConfig("planar"))
        assert r.rejected or r.audit.within_bound
        assert verify_kernel(inst, r)

    @pytest.mark.parametrize("p", [3, 4, 5, 6])
    def test_wheel_pair_count(self, p):
        # rim 0..p-1 are terminals (rim edges sit in R), hub p is not; every rim
        # pair is linked through the hub, so all C(p, 2) pairs are J-true
        rim = [(i, i + 1) for i in range(p - 1)] + [(0, p - 1)]
        spokes = [(i, p) for i in range(p)]
        pairs = [(2 * j, 2 * j + 1) for j in range(p // 2)] + ([(0, p - 1)] if p % 2 else [])
        inst = _inst(p + 1, rim + spokes, pairs, 0, 2, 3)
        r = kernelize(inst, KernelConfig("planar"))
        assert r.audit.terminal_vertices == p
        assert r.audit.j_true_pairs == comb(p, 2)
        assert (comb(p, 2) > 3 * p - 6) == (p >= 5)
        assert r.audit.within_bound
        assert verify_kernel(inst, r)


class TestSpecial:
    def test_classify(self):
        tri = ForcingGraph(5, [(0, 1), (1, 2), (0, 2)])
        c = classify_special(tri)
        assert c.cluster and c.max_degree == 2 and c.non_isolated == 3 and c.edge_components == 1
        p3 = ForcingGraph(3, [(0, 1), (1, 2)])
        assert not classify_special(p3).cluster

    def test_limits(self):
        assert nonisolated_limit(KernelConfig("cluster"), 3) == 6
        assert nonisolated_limit(KernelConfig("bounded-degree", 2), 3) == 9

    def test_config_validation(self):
        with pytest.raises(ValueError):
            KernelConfig("bounded-degree")
        with pytest.raises(ValueError):
            KernelConfig("nope")

    def test_cluster_mode_needs_cluster(self):
        inst = _inst(6, _disjoint_edges(3), [(0, 1), (1, 2)], 0, 1, 3)
        with pytest.raises(KernelModeError):
            kernelize(inst, KernelConfig("cluster"))

    def test_degree_mode_needs_degree(self):
        inst = _inst(8, _disjoint_edges(4), [(0, 1), (0, 2), (0, 3)], 0, 1, 3)
        with pytest.raises(KernelModeError):
            kernelize(inst, KernelConfig("bounded-degree", 2))

    def test_cluster_triangle_rejected(self):
        inst = _inst(6, _disjoint_edges(3), [(0, 1), (1, 2), (0, 2)], 0, 1, 1)
        r = kernelize(inst, KernelConfig("cluster"))
        assert r.rejected
        assert not brute_force_solve(inst).answer

    def test_cluster_too_many_components(self):
        # k + 1 components with an edge already mean > 2k non-isolated vertices
        inst = _inst(8, _disjoint_edges(4), [(0, 1), (2, 3)], 0, 1, 1)
        r = kernelize(inst, KernelConfig("cluster"))
        assert r.rejected and "non-isolated" in r.audit.reject_reason
        assert not brute_force_solve(inst).answer

    def test_two_ladder_beyond_k_eta(self):
        # path 0-1-2 is the only s-t route; pairs (e0, e2), (e1, e3) make a 2-ladder
        inst = _inst(7, [(0, 1), (1, 2), (3, 4), (5, 6)], [(0, 2), (1, 3)], 0, 2, 2)
        assert brute_force_solve(inst).answer
        eta = classify_special(inst.forcing).max_degree
        assert eta == 1 and len(inst.forcing.non_isolated()) == 4 > inst.k * eta
        r = kernelize(inst, KernelConfig("bounded-degree", eta))
        assert not r.rejected and verify_kernel(inst, r)

    def test_bound_values(self):
        assert special_bound(0, 0) == 0
        assert special_bound(1, 2) == 2 + 2 * comb(6, 2)

    @SETTINGS
    @given(instances())
    def test_conserves_forcing_pairs(self, inst):
        info = classify_special(inst.forcing)
        eta = max(info.max_degree, 1)
        r = kernelize(inst, KernelConfig("bounded-degree", eta))
        assert verify_kernel(inst, r)
        if not r.rejected:
            assert len(r.reduced.forcing.pairs) == len(inst.forcing.pairs)
            assert r.reduced.graph.n <= 2 * len(r.kept) + 2
            assert r.audit.within_bound

    @SETTINGS
    @given(instances())
    def test_cluster_equivalence(self, inst):
        assume(classify_special(inst.forcing).cluster)
        assert verify_kernel(inst, kernelize(inst, KernelConfig("cluster")))


class TestVerify:
    def test_guard(self):
        g = Graph(18, [(i, i + 1) for i in range(17)])
        inst = Instance(g, ForcingGraph(17), 0, 17, 2)
        with pytest.raises(GraphError):
            verify_kernel(inst, inst)

    def test_accepts_instance(self, i2):
        assert verify_kernel(i2, i2)
        assert not verify_kernel(i2, dataclasses.replace(i2, k=1))
