"""Instance file format and seeded instance generators.

File grammar (line oriented, ``#`` starts a comment)::

    spfg 1
    graph <n> <m>
    e <u> <v>            # m lines, edge id = order of appearance
    forcing <m'>
    f <i> <j>            # m' lines over edge ids
    query <s> <t> <k>
    modulator <r>        # optional
    x <i>                # r lines
    budget <ell>         # present iff modulator is

Generators draw every random choice from numpy's PCG64 bit generator
(``numpy.random.Generator(numpy.random.PCG64(seed))``), so a
(kind, params, seed) triple always yields the same instance.
"""

from __future__ import annotations

import re
from itertools import combinations
from math import comb
from typing import Any, Iterator, Mapping

import numpy as np

from .cover_enum import is_2k2_free
from .graph_core import ForcingGraph, Graph, GraphError, Instance

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class _Tokens:
    """Non-blank, comment-stripped lines as (lineno, [(col, token), ...])."""

    def __init__(self, text: str) -> None:
        self.lines: list[tuple[int, list[tuple[int, str]]]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            toks = [(mt.start() + 1, mt.group()) for mt in re.finditer(r"\S+", body)]
            if toks:
                self.lines.append((lineno, toks))
        self.pos = 0
        self.last_line = len(text.splitlines())

    def peek(self) -> tuple[int, list[tuple[int, str]]] | None:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def take(self, keyword: str, arity: int) -> tuple[int, list[tuple[int, int]]]:
        item = self.peek()
        if item is None:
            raise ParseError(self.last_line + 1, 1, f"unexpected end of file, expected '{keyword}'")
        lineno, toks = item
        if toks[0][1] != keyword:
            raise ParseError(lineno, toks[0][0], f"expected '{keyword}', found '{toks[0][1]}'")
        if len(toks) != arity + 1:
            col = toks[min(len(toks), arity + 1) - 1][0]
            raise ParseError(lineno, col, f"'{keyword}' takes {arity} integer(s), found {len(toks) - 1}")
        values = []
        for col, tok in toks[1:]:
            try:
                value = int(tok)
            except ValueError:
                raise ParseError(lineno, col, f"expected an integer, found '{tok}'") from None
            if value < 0:
                raise ParseError(lineno, col, f"expected a non-negative integer, found {value}")
            values.append((col, value))
        self.pos += 1
        return lineno, values


def parse(text: str) -> Instance:
    """Parse and validate an instance file; errors carry line and column."""
    tk = _Tokens(text)
    _, (version,) = tk.take("spfg", 1)
    if version[1] != FORMAT_VERSION:
        raise ParseError(tk.lines[0][0], version[0], f"unsupported format version {version[1]}")
    _, ((_, n), (_, m)) = tk.take("graph", 2)
    edges: list[tuple[int, int]] = []
    seen_edges: dict[tuple[int, int], int] = {}
    for eid in range(m):
        lineno, ((cu, u), (cv, v)) = tk.take("e", 2)
        for col, x in ((cu, u), (cv, v)):
            if x >= n:
                raise ParseError(lineno, col, f"vertex {x} out of range 0..{n - 1}")
        if u == v:
            raise ParseError(lineno, cu, f"self-loop on vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen_edges:
            raise ParseError(lineno, cu, f"duplicate edge ({u}, {v}), already edge {seen_edges[key]}")
        seen_edges[key] = eid
        edges.append((u, v))
    _, ((_, mf),) = tk.take("forcing", 1)
    pairs: list[tuple[int, int]] = []
    seen_pairs: set[tuple[int, int]] = set()
    for _ in range(mf):
        lineno, ((ci, i), (cj, j)) = tk.take("f", 2)
        for col, x in ((ci, i), (cj, j)):
            if x >= m:
                raise ParseError(lineno, col, f"forcing id {x} out of range 0..{m - 1}")
        if i == j:
            raise ParseError(lineno, ci, f"forcing self-pair on edge {i}")
        key = (min(i, j), max(i, j))
        if key in seen_pairs:
            raise ParseError(lineno, ci, f"duplicate forcing pair ({i}, {j})")
        seen_pairs.add(key)
        pairs.append((i, j))
    lineno, ((cs, s), (ct, t), (_, k)) = tk.take("query", 3)
    for col, x in ((cs, s), (ct, t)):
        if x >= n:
            raise ParseError(lineno, col, f"terminal {x} out of range 0..{n - 1}")
    if s == t:
        raise ParseError(lineno, ct, "terminals s and t must be distinct")
    modulator = ell = None
    if tk.peek() is not None:
        _, ((_, r),) = tk.take("modulator", 1)
        mod: set[int] = set()
        for _ in range(r):
            lineno, ((cx, x),) = tk.take("x", 1)
            if x >= m:
                raise ParseError(lineno, cx, f"modulator id {x} out of range 0..{m - 1}")
            if x in mod:
                raise ParseError(lineno, cx, f"duplicate modulator id {x}")
            mod.add(x)
        _, ((_, ell),) = tk.take("budget", 1)
        modulator = frozenset(mod)
    extra = tk.peek()
    if extra is not None:
        raise ParseError(extra[0], extra[1][0][0], f"unexpected '{extra[1][0][1]}' after the last section")
    return Instance(Graph(n, edges), ForcingGraph(m, pairs), s, t, k, modulator, ell)


def serialize(inst: Instance) -> str:
    """Canonical text: fixed section order, edges by id, forcing pairs sorted."""
    g = inst.graph
    lines = [f"spfg {FORMAT_VERSION}", f"graph {g.n} {g.m}"]
    lines += [f"e {u} {v}" for u, v in g.edges]
    lines.append(f"forcing {len(inst.forcing.pairs)}")
    lines += [f"f {i} {j}" for i, j in inst.forcing.pairs]
    lines.append(f"query {inst.s} {inst.t} {inst.k}")
    if inst.modulator is not None:
        lines.append(f"modulator {len(inst.modulator)}")
        lines += [f"x {x}" for x in sorted(inst.modulator)]
        lines.append(f"budget {inst.ell}")
    return "\n".join(lines) + "\n"


def read_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_instance(path: str, inst: Instance) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(inst))


# -- generators ---------------------------------------------------------------

KINDS = (
    "random",
    "ladder",
    "cluster",
    "bounded-degree",
    "grid-planar",
    "triangulation",
    "2k2free-star",
    "2k2free-multipartite",
    "modulated",
)

DEFAULTS: dict[str, dict[str, int]] = {
    "random": {"n": 8, "m": 12, "pairs": 4, "k": 4},
    "ladder": {"n": 8, "m": 12, "pairs": 3, "k": 4},
    "cluster": {"n": 8, "m": 12, "clusters": 2, "size": 2, "k": 4},
    "bounded-degree": {"n": 8, "m": 12, "pairs": 5, "eta": 2, "k": 4},
    "grid-planar": {"rows": 3, "cols": 3, "pairs": 3, "k": 4},
    "triangulation": {"n": 8, "pairs": 3, "k": 4},
    "2k2free-star": {"n": 8, "m": 12, "leaves": 3, "k": 4},
    "2k2free-multipartite": {"n": 8, "m": 12, "parts": 3, "size": 2, "k": 4},
    "modulated": {"n": 8, "m": 12, "leaves": 2, "modulator": 2, "extra": 3, "k": 4},
}


class GenerateError(ValueError):
    pass


def _random_base(rng: np.random.Generator, n: int, m: int) -> Graph:
    total = comb(n, 2)
    if n < 2 or m > total:
        raise GenerateError(f"cannot place {m} edges on {n} vertices")
    all_pairs = list(combinations(range(n), 2))
    picks = sorted(int(i) for i in rng.choice(total, size=m, replace=False))
    return Graph(n, [all_pairs[i] for i in picks])


def _grid(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise GenerateError("grid needs at least two vertices")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, sorted(edges))


def _stacked_triangulation(rng: np.random.Generator, n: int) -> Graph:
    """Maximal planar graph built by repeatedly inserting a vertex into a face."""
    if n < 3:
        raise GenerateError("triangulation needs n >= 3")
    edges = {(0, 1), (0, 2), (1, 2)}
    faces = [(0, 1, 2)]
    # the outer face is a face too; keep it splittable
    faces.append((0, 1, 2))
    for v in range(3, n):
        a, b, c = faces.pop(int(rng.integers(len(faces))))
        edges.update({(a, v), (b, v), (c, v)})
        faces += [(a, b, v), (a, c, v), (b, c, v)]
    return Graph(n, sorted(edges))


def _random_pairs(rng: np.random.Generator, ids: list[int], count: int) -> list[tuple[int, int]]:
    """``count`` distinct pairs over ``ids`` without replacement (clamped to all pairs)."""
    all_pairs = list(combinations(ids, 2))
    count = min(count, len(all_pairs))
    if count <= 0:
        return []
    picks = sorted(int(i) for i in rng.choice(len(all_pairs), size=count, replace=False))
    return [all_pairs[i] for i in picks]


def _shuffled_ids(rng: np.random.Generator, m: int, need: int) -> list[int]:
    if need > m:
        raise GenerateError(f"need {need} distinct edge ids but the graph has {m} edges")
    return [int(x) for x in rng.permutation(m)[:need]]


def _terminals(rng: np.random.Generator, n: int) -> tuple[int, int]:
    s, t = (int(x) for x in rng.choice(n, size=2, replace=False))
    return s, t


def generate(kind: str, params: Mapping[str, Any] | None = None, seed: int = 0) -> Instance:
    """Deterministic instance of the given kind; see ``DEFAULTS`` for parameters."""
    if kind not in DEFAULTS:
        raise GenerateError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    p = dict(DEFAULTS[kind])
    for key, value in (params or {}).items():
        if key not in p:
            raise GenerateError(f"kind {kind!r} has no parameter {key!r}; known: {', '.join(sorted(p))}")
        p[key] = int(value)
    if any(v < 0 for v in p.values()):
        raise GenerateError("parameters must be non-negative")
    rng = np.random.Generator(np.random.PCG64(seed))

    if kind == "grid-planar":
        graph = _grid(p["rows"], p["cols"])
    elif kind == "triangulation":
        graph = _stacked_triangulation(rng, p["n"])
    else:
        graph = _random_base(rng, p["n"], p["m"])
    m = graph.m
    modulator = None

    if kind in ("random", "grid-planar", "triangulation"):
        pairs = _random_pairs(rng, list(range(m)), p["pairs"])
    elif kind == "ladder":
        ids = _shuffled_ids(rng, m, 2 * p["pairs"])
        pairs = [(ids[2 * i], ids[2 * i + 1]) for i in range(p["pairs"])]
    elif kind == "cluster":
        if p["size"] < 2:
            raise GenerateError("cluster size must be at least 2")
        ids = _shuffled_ids(rng, m, p["clusters"] * p["size"])
        pairs = []
        for c in range(p["clusters"]):
            pairs += list(combinations(ids[c * p["size"]:(c + 1) * p["size"]], 2))
    elif kind == "bounded-degree":
        if p["eta"] < 1:
            raise GenerateError("eta must be at least 1")
        degree = [0] * m
        pairs = []
        candidates = list(combinations(range(m), 2))
        for idx in rng.permutation(len(candidates)):
            if len(pairs) >= p["pairs"]:
                break
            i, j = candidates[int(idx)]
            if degree[i] < p["eta"] and degree[j] < p["eta"]:
                degree[i] += 1
                degree[j] += 1
                pairs.append((i, j))
    elif kind == "2k2free-star":
        ids = _shuffled_ids(rng, m, p["leaves"] + 1)
        pairs = [(ids[0], leaf) for leaf in ids[1:]]
    elif kind == "2k2free-multipartite":
        ids = _shuffled_ids(rng, m, p["parts"] * p["size"])
        groups = [ids[g * p["size"]:(g + 1) * p["size"]] for g in range(p["parts"])]
        pairs = [(a, b) for g1, g2 in combinations(groups, 2) for a in g1 for b in g2]
    else:  # modulated: star on the rest, modulator vertices attached at random
        ids = _shuffled_ids(rng, m, p["modulator"] + p["leaves"] + 1)
        xs, center, leaves = ids[:p["modulator"]], ids[p["modulator"]], ids[p["modulator"] + 1:]
        pairs = [(center, leaf) for leaf in leaves]
        touching = [(a, b) for a, b in combinations(range(m), 2) if a in xs or b in xs]
        picks = rng.choice(len(touching), size=min(p["extra"], len(touching)), replace=False) if touching else []
        pairs += [touching[int(i)] for i in sorted(picks)]
        modulator = frozenset(xs)

    s, t = _terminals(rng, graph.n)
    forcing = ForcingGraph(m, pairs)
    if kind.startswith("2k2free") and not is_2k2_free(forcing):
        raise GraphError(f"generator bug: {kind} produced a forcing graph with an induced 2K2")
    ell = p["k"] if modulator is not None else None
    return Instance(graph, forcing, s, t, p["k"], modulator, ell)


def generate_family(kinds: tuple[str, ...] = KINDS, seeds: range = range(10),
                    params: Mapping[str, Mapping[str, Any]] | None = None) -> Iterator[tuple[str, int, Instance]]:
    for kind in kinds:
        for seed in seeds:
            yield kind, seed, generate(kind, (params or {}).get(kind), seed)
