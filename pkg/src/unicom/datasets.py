"""Bundled benchmark fixtures and seeded synthetic generators.

Two classic datasets ship inside the package so examples and tests run
with zero setup: the Zachary karate club friendship graph (34 nodes, 78
undirected edges) and the Davis Southern Women attendance matrix (18
women by 14 events, 89 participations). Both are stored in their native
text formats and checksummed against drift.

The generators produce seeded random graphs for benchmarks and property
suites; a given seed always yields the same graph.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Dict, Optional

from .errors import ConfigError
from .graphs import (
    CLASS_U,
    CLASS_V,
    BipartiteGraph,
    DirectedGraph,
    Graph,
    LabelMap,
)
from .io import parse_biadjacency_csv, parse_edgelist
from .partition import Partition, renumber

KARATE_TEXT = """1 2
1 3
1 4
1 5
1 6
1 7
1 8
1 9
1 11
1 12
1 13
1 14
1 18
1 20
1 22
1 32
2 3
2 4
2 8
2 14
2 18
2 20
2 22
2 31
3 4
3 8
3 9
3 10
3 14
3 28
3 29
3 33
4 8
4 13
4 14
5 7
5 11
6 7
6 11
6 17
7 17
9 31
9 33
9 34
10 34
14 34
15 33
15 34
16 33
16 34
19 33
19 34
20 34
21 33
21 34
23 33
23 34
24 26
24 28
24 30
24 33
24 34
25 26
25 28
25 32
26 32
27 30
27 34
28 34
29 32
29 34
30 33
30 34
31 33
31 34
32 33
32 34
33 34
"""

SOUTHERN_WOMEN_TEXT = """,E1,E2,E3,E4,E5,E6,E7,E8,E9,E10,E11,E12,E13,E14
W1,1,1,1,1,1,1,0,1,1,0,0,0,0,0
W2,1,1,1,0,1,1,1,1,0,0,0,0,0,0
W3,0,1,1,1,1,1,1,1,1,0,0,0,0,0
W4,1,0,1,1,1,1,1,1,0,0,0,0,0,0
W5,0,0,1,1,1,0,1,0,0,0,0,0,0,0
W6,0,0,1,0,1,1,0,1,0,0,0,0,0,0
W7,0,0,0,0,1,1,1,1,0,0,0,0,0,0
W8,0,0,0,0,0,1,0,1,1,0,0,0,0,0
W9,0,0,0,0,1,0,1,1,1,0,0,0,0,0
W10,0,0,0,0,0,0,1,1,1,0,0,1,0,0
W11,0,0,0,0,0,0,0,1,1,1,0,1,0,0
W12,0,0,0,0,0,0,0,1,1,1,0,1,1,1
W13,0,0,0,0,0,0,1,1,1,1,0,1,1,1
W14,0,0,0,0,0,1,1,0,1,1,1,1,1,1
W15,0,0,0,0,0,0,1,1,0,1,1,1,0,0
W16,0,0,0,0,0,0,0,1,1,0,0,0,0,0
W17,0,0,0,0,0,0,0,0,1,0,1,0,0,0
W18,0,0,0,0,0,0,0,0,1,0,1,0,0,0
"""


@dataclass(frozen=True)
class Fixture:
    """One bundled dataset in its native on-disk format."""

    name: str
    filename: str
    fmt: str
    text: str

    @property
    def checksum(self) -> str:
        return hashlib.sha256(self.text.encode("utf-8")).hexdigest()


FIXTURES: Dict[str, Fixture] = {
    "karate": Fixture(
        name="karate", filename="karate.txt", fmt="edgelist", text=KARATE_TEXT
    ),
    "southern-women": Fixture(
        name="southern-women",
        filename="southern_women.csv",
        fmt="biadjacency",
        text=SOUTHERN_WOMEN_TEXT,
    ),
}

# Frozen digests of the shipped bytes; tests compare against these so any
# accidental edit of the fixture text fails loudly.
FIXTURE_CHECKSUMS = {
    "karate": "8ba57feda2f7c6f218352288fe38ba98c5c0e0eaac7df74bf1735f142617b415",
    "southern-women": "7c912f532f2feb483bb8f5f429b43ab8f7721bc012d72e28d83fd340d684ba17",
}


def fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise ConfigError(
            f"unknown fixture {name!r}; available: {', '.join(sorted(FIXTURES))}"
        ) from None


def load_karate():
    """The Zachary karate club graph as (Graph, LabelMap), labels '1'..'34'."""
    return parse_edgelist(KARATE_TEXT)


def load_southern_women():
    """The Davis Southern Women matrix as (BipartiteGraph, LabelMap)."""
    return parse_biadjacency_csv(SOUTHERN_WOMEN_TEXT)


def _sample_pairs(rng: random.Random, node_count: int, pair_count: int):
    limit = node_count * (node_count - 1) // 2
    if not 0 < pair_count <= limit:
        raise ConfigError(
            f"pair count must be in [1, {limit}] for {node_count} nodes, got {pair_count}"
        )
    chosen = set()
    order = []
    while len(order) < pair_count:
        u = rng.randrange(node_count)
        v = rng.randrange(node_count)
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in chosen:
            continue
        chosen.add(key)
        order.append(key)
    return order


def random_graph(node_count: int, edge_count: int, seed: int, weighted: bool = False):
    """Seeded uniform random graph as (Graph, LabelMap).

    Weights are 1.0, or uniform in [0.5, 2.0) when ``weighted``.
    """
    if node_count < 2:
        raise ConfigError("random graph needs at least 2 nodes")
    rng = random.Random(seed)
    edges = []
    for u, v in _sample_pairs(rng, node_count, edge_count):
        w = rng.uniform(0.5, 2.0) if weighted else 1.0
        edges.append((u, v, w))
    g = Graph(node_count, edges)
    return g, LabelMap([str(i) for i in range(node_count)])


def random_bipartite(rows: int, cols: int, entry_count: int, seed: int,
                     weighted: bool = True):
    """Seeded random biadjacency structure as (BipartiteGraph, LabelMap)."""
    if rows < 1 or cols < 1:
        raise ConfigError("bipartite generator needs at least one row and column")
    limit = rows * cols
    if not 0 < entry_count <= limit:
        raise ConfigError(
            f"entry count must be in [1, {limit}] for {rows}x{cols}, got {entry_count}"
        )
    rng = random.Random(seed)
    chosen = set()
    entries = []
    while len(entries) < entry_count:
        i = rng.randrange(rows)
        j = rng.randrange(cols)
        if (i, j) in chosen:
            continue
        chosen.add((i, j))
        entries.append((i, j, rng.uniform(0.5, 2.0) if weighted else 1.0))
    b = BipartiteGraph(rows, cols, entries)
    labels = [f"r{i}" for i in range(rows)] + [f"c{j}" for j in range(cols)]
    lm = LabelMap(labels, [CLASS_U] * rows + [CLASS_V] * cols)
    return b, lm


def random_weighted_biadjacency(rows: int, cols: int, seed: int, density: float = 0.15):
    """Dense-ish weighted matrix with no isolated rows or columns.

    Every cell is filled with probability ``density`` with a weight in
    [0.1, 5.0); empty rows or columns then receive one forced entry so
    every node participates. Used by the weighted end-to-end property
    suite.
    """
    if rows < 1 or cols < 1:
        raise ConfigError("generator needs at least one row and column")
    if not 0 < density <= 1:
        raise ConfigError("density must be in (0, 1]")
    rng = random.Random(seed)
    cells = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                cells[(i, j)] = rng.uniform(0.1, 5.0)
    for i in range(rows):
        if not any((i, j) in cells for j in range(cols)):
            cells[(i, rng.randrange(cols))] = rng.uniform(0.1, 5.0)
    for j in range(cols):
        if not any((i, j) in cells for i in range(rows)):
            cells[(rng.randrange(rows), j)] = rng.uniform(0.1, 5.0)
    entries = [(i, j, w) for (i, j), w in sorted(cells.items())]
    b = BipartiteGraph(rows, cols, entries)
    labels = [f"r{i}" for i in range(rows)] + [f"c{j}" for j in range(cols)]
    lm = LabelMap(labels, [CLASS_U] * rows + [CLASS_V] * cols)
    return b, lm


def random_symmetric_digraph(node_count: int, pair_count: int, seed: int,
                             self_loop_weight: float = 2.0):
    """Symmetric digraph: every off-diagonal arc has its mirror, plus self arcs.

    The self arcs tie each node's two roles through the diagonal of the
    role-duplication transform, the same coupling the clone transform
    gives originals and clones. The default diagonal weight is heavier
    than a unit arc so the coupling survives greedy early assignment on
    small dense graphs.
    """
    if node_count < 2:
        raise ConfigError("symmetric digraph needs at least 2 nodes")
    if self_loop_weight <= 0:
        raise ConfigError("self-loop weight must be positive")
    rng = random.Random(seed)
    arcs = []
    for u, v in _sample_pairs(rng, node_count, pair_count):
        arcs.append((u, v, 1.0))
        arcs.append((v, u, 1.0))
    for i in range(node_count):
        arcs.append((i, i, float(self_loop_weight)))
    d = DirectedGraph(node_count, arcs)
    return d, LabelMap([str(i) for i in range(node_count)])


def perturb_asymmetric(d: DirectedGraph, drop_count: int, seed: int,
                       self_loop_weight: Optional[float] = None) -> DirectedGraph:
    """Break symmetry by deleting one direction of some mirrored pairs.

    ``self_loop_weight`` rescales the surviving self arcs (None keeps
    them as they are); weakening the diagonal lets the two roles of a
    node drift apart, which is what the symmetry verdict is there to
    catch. Raises ConfigError when the graph has fewer mirrored pairs
    than requested.
    """
    pairs = sorted({(u, v) for u, v, _ in d.arcs if u < v})
    reverse = {(v, u) for u, v, _ in d.arcs}
    mirrored = [(u, v) for u, v in pairs if (u, v) in reverse]
    if drop_count < 1 or drop_count > len(mirrored):
        raise ConfigError(
            f"can drop between 1 and {len(mirrored)} arc mirrors, got {drop_count}"
        )
    if self_loop_weight is not None and self_loop_weight <= 0:
        raise ConfigError("self-loop weight must be positive")
    rng = random.Random(seed)
    drops = set()
    for u, v in rng.sample(mirrored, drop_count):
        # Keep u->v, drop the mirror v->u.
        drops.add((v, u))
    kept = []
    for u, v, w in d.arcs:
        if (u, v) in drops:
            continue
        if u == v and self_loop_weight is not None:
            w = float(self_loop_weight)
        kept.append((u, v, w))
    return DirectedGraph(d.node_count, kept)


def random_partition(node_count: int, max_communities: int, seed: int) -> Partition:
    """Uniform random assignment, renumbered to contiguous ids."""
    if node_count < 1 or max_communities < 1:
        raise ConfigError("partition generator needs positive sizes")
    rng = random.Random(seed)
    ids = [rng.randrange(max_communities) for _ in range(node_count)]
    return Partition(renumber(ids))
