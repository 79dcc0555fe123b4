from __future__ import annotations

import dataclasses
import statistics
import time

import pytest
from hypothesis import assume, given, settings

from spfg.cover_enum import PreconditionError, greedy_2k2_free_modulator, is_2k2_free
from spfg.graph_core import ForcingGraph, Graph, GraphError, Instance, connects
from spfg.instance_io import generate
from spfg.solvers import brute_force_solve, fpt_solve, modulator_solve, poly_2k2_solve, solve
from strategies import instances

SETTINGS = settings(max_examples=120, deadline=None)


def check_witness(inst: Instance, witness, budget: int) -> None:
    """Re-test every solution condition without touching library helpers."""
    assert witness is not None and len(witness) <= budget
    for i, j in inst.forcing.pairs:
        assert i in witness or j in witness
    assert connects(inst.graph, witness, inst.s, inst.t)


class TestBruteForce:
    def test_i1(self, i1):
        v = brute_force_solve(i1)
        assert v.answer and v.witness == {0, 1}

    def test_i2(self, i2):
        assert not brute_force_solve(dataclasses.replace(i2, k=1)).answer
        v = brute_force_solve(i2)
        assert v.answer and v.witness == {0, 1}

    def test_k_zero(self, i1):
        assert not brute_force_solve(dataclasses.replace(i1, k=0)).answer

    def test_guard(self):
        g = Graph(22, [(i, i + 1) for i in range(21)])
        with pytest.raises(GraphError):
            brute_force_solve(Instance(g, ForcingGraph(21), 0, 21, 3))


class TestFpt:
    def test_examples(self, i1, i2):
        for inst in (i1, i2, dataclasses.replace(i2, k=1)):
            assert fpt_solve(inst).answer == brute_force_solve(inst).answer

    def test_cover_too_large_skips_extend(self):
        tri = ForcingGraph(3, [(0, 1), (1, 2), (0, 2)])
        g = Graph(3, [(0, 1), (1, 2), (0, 2)])
        v = fpt_solve(Instance(g, tri, 0, 2, 1))
        assert not v.answer and v.stats["extend_calls"] == 0

    def test_i1_k1(self, i1):
        assert not fpt_solve(dataclasses.replace(i1, k=1)).answer

    @SETTINGS
    @given(instances())
    def test_matches_brute_force(self, inst):
        fp, bf = fpt_solve(inst), brute_force_solve(inst)
        assert fp.answer == bf.answer
        if fp.answer:
            check_witness(inst, fp.witness, inst.k)
            assert fp.size == bf.size


class TestPoly2K2:
    def test_star_forcing(self):
        g = Graph(5, [(0, 1), (2, 3), (3, 4), (1, 2)])
        inst = Instance(g, ForcingGraph(4, [(0, 1), (0, 2)]), 0, 4, 4)
        v, bf = poly_2k2_solve(inst), brute_force_solve(inst)
        assert v.optimum == bf.optimum == 4

    def test_no_pairs_is_plain_distance(self, i1):
        v = poly_2k2_solve(dataclasses.replace(i1, k=0))
        assert not v.answer and v.optimum == 2

    def test_disconnected(self):
        g = Graph(4, [(0, 1), (2, 3)])
        for k in range(4):
            v = poly_2k2_solve(Instance(g, ForcingGraph(2), 0, 3, k))
            assert not v.answer and v.optimum is None

    def test_precondition(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        with pytest.raises(PreconditionError):
            poly_2k2_solve(Instance(g, ForcingGraph(4, [(0, 1), (2, 3)]), 0, 4, 4))

    @SETTINGS
    @given(instances())
    def test_matches_brute_force(self, inst):
        assume(is_2k2_free(inst.forcing))
        v = poly_2k2_solve(inst)
        assert v.answer == brute_force_solve(inst).answer
        if v.optimum is not None:
            # the optimum is exact: brute force with that budget finds it, one less does not
            assert brute_force_solve(inst, budget=v.optimum).answer
            assert v.optimum == 0 or not brute_force_solve(inst, budget=v.optimum - 1).answer


class TestModulator:
    def test_empty_modulator_matches_poly(self, i2):
        inst = dataclasses.replace(i2, modulator=frozenset(), ell=2)
        assert modulator_solve(inst).answer == poly_2k2_solve(i2).answer

    def test_two_disjoint_pairs(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        f = ForcingGraph(5, [(0, 1), (2, 3)])
        for ell in range(6):
            inst = Instance(g, f, 0, 2, ell, frozenset({0, 2}), ell)
            assert modulator_solve(inst).answer == brute_force_solve(inst, budget=ell).answer

    def test_ell_zero(self, i1):
        assert not modulator_solve(dataclasses.replace(i1, modulator=frozenset(), ell=0)).answer

    def test_missing_modulator(self, i1):
        with pytest.raises(PreconditionError):
            modulator_solve(i1)

    @SETTINGS
    @given(instances())
    def test_matches_brute_force(self, inst):
        x = greedy_2k2_free_modulator(inst.forcing)
        mi = dataclasses.replace(inst, modulator=x, ell=inst.k)
        v = modulator_solve(mi)
        assert v.answer == brute_force_solve(inst).answer
        if v.answer:
            check_witness(inst, v.witness, inst.k)


class TestDispatch:
    def test_auto_routes(self, i1, i2):
        assert solve(i1).algorithm == "poly2k2"
        ladder = Instance(Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)]), ForcingGraph(4, [(0, 1), (2, 3)]), 0, 4, 4)
        assert solve(ladder).algorithm == "fpt"
        for algo in ("bruteforce", "fpt", "poly2k2"):
            assert solve(i2, algo).answer

    def test_unknown(self, i1):
        with pytest.raises(ValueError, match="unknown algorithm"):
            solve(i1, "magic")


class TestProperties:
    @SETTINGS
    @given(instances(max_k=4))
    def test_budget_monotone(self, inst):
        if fpt_solve(inst).answer:
            assert fpt_solve(dataclasses.replace(inst, k=inst.k + 1)).answer

    def test_deterministic_witness(self):
        for seed in range(20):
            inst = generate("random", {"k": 5}, seed)
            assert fpt_solve(inst).witness == fpt_solve(inst).witness


def test_poly2k2_runtime_grows_polynomially():
    """Smoke regression: log-log slope of runtime vs. size stays bounded."""
    import math
    sizes, times = [], []
    for n in (20, 40, 80, 160):
        inst = generate("2k2free-star", {"n": n, "m": 2 * n, "leaves": 4, "k": n}, 1)
        best = min(_timed(poly_2k2_solve, inst) for _ in range(3))
        sizes.append(n)
        times.append(best)
    slopes = [math.log(times[i + 1] / times[i]) / math.log(sizes[i + 1] / sizes[i]) for i in range(len(sizes) - 1)]
    assert statistics.median(slopes) < 4


def _timed(fn, inst) -> float:
    start = time.perf_counter()
    fn(inst)
    return time.perf_counter() - start
