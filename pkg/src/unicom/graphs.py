"""Sparse weighted graph containers and degree/weight accounting.

Three containers cover the three input families: :class:`Graph` (symmetric,
optionally with self-loops), :class:`BipartiteGraph` (biadjacency entries
over row and column node sets) and :class:`DirectedGraph` (weighted arcs).
A :class:`LabelMap` carries the label/index bijection plus node class tags
and clone pairings.

All degree, margin and total-weight figures are computed with
:func:`math.fsum`, which returns the correctly rounded sum regardless of
operand order. Because a bipartite graph and its block-matrix form sum the
same multisets of weights, their margins, degrees and totals come out
bit-identical, which keeps the modularity equivalence checks exact.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence

from .errors import (
    DuplicateEdgeError,
    DuplicateEntryError,
    EmptyGraphError,
    EmptyInputError,
    GraphConstructionError,
    NonPositiveWeightError,
    SelfLoopError,
    UnknownLabelError,
    UnknownNodeError,
)

CLASS_U = "u"
CLASS_V = "v"
CLASS_OUT = "out"
CLASS_IN = "in"
CLASS_PLAIN = "plain"

_CLASSES = (CLASS_U, CLASS_V, CLASS_OUT, CLASS_IN, CLASS_PLAIN)


class LabelMap:
    """Bijection between node labels and dense indices.

    Parameters
    ----------
    labels : sequence of str
        One label per index, in index order. Labels must be unique and
        nonempty.
    classes : str or sequence of str, optional
        Node class tag per index, one of ``u``, ``v``, ``out``, ``in`` or
        ``plain``. A single string applies to every index. Defaults to
        ``plain``.
    clone_pairs : dict, optional
        Mapping index to index pairing each node with its clone or role
        twin. Must be an involution without fixed points.
    """

    def __init__(self, labels, classes=None, clone_pairs=None):
        labels = [str(x) for x in labels]
        for lab in labels:
            if not lab:
                raise GraphConstructionError("node labels must be nonempty strings")
        if len(set(labels)) != len(labels):
            seen = set()
            dup = next(lab for lab in labels if lab in seen or seen.add(lab))
            raise DuplicateEntryError(f"duplicate label {dup!r}")
        if classes is None:
            classes = CLASS_PLAIN
        if isinstance(classes, str):
            classes = [classes] * len(labels)
        classes = list(classes)
        if len(classes) != len(labels):
            raise GraphConstructionError("one class tag per label required")
        for tag in classes:
            if tag not in _CLASSES:
                raise GraphConstructionError(f"unknown node class {tag!r}")
        pairs = dict(clone_pairs) if clone_pairs else {}
        for a, b in pairs.items():
            if a == b or pairs.get(b) != a:
                raise GraphConstructionError("clone pairing must be an involution")
            if not (0 <= a < len(labels) and 0 <= b < len(labels)):
                raise GraphConstructionError("clone pairing index out of range")
        self._labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._classes = tuple(classes)
        self._clone = pairs

    def __len__(self):
        return len(self._labels)

    def __contains__(self, label):
        return label in self._index

    @property
    def labels(self):
        return self._labels

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(f"unknown label {label!r}") from None

    def label(self, index):
        if not 0 <= index < len(self._labels):
            raise UnknownNodeError(f"node index {index} out of range")
        return self._labels[index]

    def class_of(self, index):
        if not 0 <= index < len(self._classes):
            raise UnknownNodeError(f"node index {index} out of range")
        return self._classes[index]

    def clone_of(self, index):
        """Return the paired clone index, or None when the node has no clone."""
        return self._clone.get(index)

    @property
    def clone_pairs(self):
        """Clone pairing as a dict, both directions present."""
        return dict(self._clone)

    def indices_of_class(self, *tags):
        return [i for i, t in enumerate(self._classes) if t in tags]


class Graph:
    """Immutable symmetric weighted graph.

    Parameters
    ----------
    node_count : int
        Number of nodes; indices run over ``range(node_count)``.
    edges : sequence of (u, v, w)
        Undirected edges with positive weights. A pair may appear once
        only, in either orientation. ``u == v`` is a self-loop and is
        rejected unless ``allow_self_loops`` is set.
    allow_self_loops : bool
        Records the self-loop policy; the pipeline enables it only for
        graphs it creates itself (aggregation, clone transform).

    Notes
    -----
    A self-loop of weight w contributes 2w to its node's degree and w to
    the total weight m, the standard convention under which the degree sum
    equals 2m exactly.
    """

    __slots__ = ("node_count", "edges", "adjacency", "degrees", "m", "self_loop_policy")

    def __init__(self, node_count, edges, allow_self_loops=False):
        if node_count < 0:
            raise GraphConstructionError("node_count must be nonnegative")
        adjacency = [dict() for _ in range(node_count)]
        clean = []
        weight_lists = [[] for _ in range(node_count)]
        for u, v, w in edges:
            u = int(u)
            v = int(v)
            w = float(w)
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphConstructionError(f"edge ({u}, {v}) outside node range")
            if not w > 0 or math.isinf(w) or math.isnan(w):
                raise NonPositiveWeightError(f"edge ({u}, {v}) has weight {w!r}")
            if u == v and not allow_self_loops:
                raise SelfLoopError(f"self-loop on node {u} not permitted here")
            if v in adjacency[u]:
                raise DuplicateEdgeError(f"duplicate edge between {u} and {v}")
            adjacency[u][v] = w
            if u != v:
                adjacency[v][u] = w
            clean.append((u, v, w))
            weight_lists[u].append(w)
            weight_lists[v].append(w)
        self.node_count = node_count
        self.edges = tuple(clean)
        self.adjacency = adjacency
        self.degrees = [math.fsum(ws) for ws in weight_lists]
        # m defined as half the degree sum so that sum(degrees) == 2m holds
        # with zero tolerance (division and multiplication by 2 are exact).
        self.m = math.fsum(self.degrees) / 2.0
        self.self_loop_policy = bool(allow_self_loops)

    def neighbors(self, u):
        return self.adjacency[u]

    def isolated_nodes(self):
        return [i for i, d in enumerate(self.degrees) if d == 0.0]

    def __repr__(self):
        return f"Graph(n={self.node_count}, edges={len(self.edges)}, m={self.m})"


class BipartiteGraph:
    """Weighted biadjacency structure over row set U and column set V.

    Entries are (row index, column index, weight) with positive weights
    and no duplicates. Margins are the row and column weight sums; the
    total weight m equals the sum of all entries.
    """

    __slots__ = ("r", "s", "entries", "row_margins", "col_margins", "m")

    def __init__(self, r, s, entries):
        if r < 0 or s < 0:
            raise GraphConstructionError("row and column counts must be nonnegative")
        seen = set()
        clean = []
        row_lists = [[] for _ in range(r)]
        col_lists = [[] for _ in range(s)]
        for i, j, w in entries:
            i = int(i)
            j = int(j)
            w = float(w)
            if not (0 <= i < r and 0 <= j < s):
                raise GraphConstructionError(f"entry ({i}, {j}) outside matrix bounds")
            if not w > 0 or math.isinf(w) or math.isnan(w):
                raise NonPositiveWeightError(f"entry ({i}, {j}) has weight {w!r}")
            if (i, j) in seen:
                raise DuplicateEntryError(f"duplicate entry at ({i}, {j})")
            seen.add((i, j))
            clean.append((i, j, w))
            row_lists[i].append(w)
            col_lists[j].append(w)
        self.r = r
        self.s = s
        self.entries = tuple(clean)
        self.row_margins = [math.fsum(ws) for ws in row_lists]
        self.col_margins = [math.fsum(ws) for ws in col_lists]
        # Same multiset of addends as the block graph's degree sum, so the
        # two totals agree bit for bit.
        self.m = math.fsum(self.row_margins + self.col_margins) / 2.0

    @property
    def node_count(self):
        return self.r + self.s

    def isolated_rows(self):
        return [i for i, d in enumerate(self.row_margins) if d == 0.0]

    def isolated_cols(self):
        return [j for j, d in enumerate(self.col_margins) if d == 0.0]

    def __repr__(self):
        return f"BipartiteGraph(r={self.r}, s={self.s}, nnz={len(self.entries)}, m={self.m})"


class DirectedGraph:
    """Weighted directed graph stored as a flat arc list."""

    __slots__ = ("node_count", "arcs", "in_degrees", "out_degrees", "m")

    def __init__(self, node_count, arcs):
        if node_count < 0:
            raise GraphConstructionError("node_count must be nonnegative")
        seen = set()
        clean = []
        in_lists = [[] for _ in range(node_count)]
        out_lists = [[] for _ in range(node_count)]
        for u, v, w in arcs:
            u = int(u)
            v = int(v)
            w = float(w)
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphConstructionError(f"arc ({u}, {v}) outside node range")
            if not w > 0 or math.isinf(w) or math.isnan(w):
                raise NonPositiveWeightError(f"arc ({u}, {v}) has weight {w!r}")
            if (u, v) in seen:
                raise DuplicateEdgeError(f"duplicate arc from {u} to {v}")
            seen.add((u, v))
            clean.append((u, v, w))
            out_lists[u].append(w)
            in_lists[v].append(w)
        self.node_count = node_count
        self.arcs = tuple(clean)
        self.in_degrees = [math.fsum(ws) for ws in in_lists]
        self.out_degrees = [math.fsum(ws) for ws in out_lists]
        self.m = math.fsum(w for _, _, w in clean)

    def __repr__(self):
        return f"DirectedGraph(n={self.node_count}, arcs={len(self.arcs)}, m={self.m})"


def _intern_label(label, table, order):
    lab = str(label)
    if not lab:
        raise GraphConstructionError("node labels must be nonempty strings")
    if lab not in table:
        table[lab] = len(order)
        order.append(lab)
    return table[lab]


def _coerce_weight(item):
    if len(item) == 2:
        return item[0], item[1], 1.0
    if len(item) == 3:
        return item
    raise GraphConstructionError(f"expected (src, dst[, weight]), got {item!r}")


def build_unipartite(edge_list, merge_duplicates=False, allow_self_loops=False):
    """Build a symmetric Graph from labeled edges.

    Parameters
    ----------
    edge_list : iterable of (label, label[, weight])
        Unweighted items default to weight 1.0.
    merge_duplicates : bool
        When True, repeated undirected pairs are summed instead of
        rejected.
    allow_self_loops : bool
        Passed through to the Graph; user inputs keep the default False.

    Returns
    -------
    (Graph, LabelMap)
        Labels are indexed densely in first-appearance order.
    """
    table, order = {}, []
    raw = []
    for item in edge_list:
        a, b, w = _coerce_weight(tuple(item))
        raw.append((_intern_label(a, table, order), _intern_label(b, table, order), float(w)))
    if not raw:
        raise EmptyInputError("edge list is empty")
    if merge_duplicates:
        merged = {}
        keys = []
        for u, v, w in raw:
            key = (u, v) if u <= v else (v, u)
            if key not in merged:
                merged[key] = 0.0
                keys.append(key)
            merged[key] += w
        raw = [(u, v, merged[(u, v)]) for u, v in keys]
    g = Graph(len(order), raw, allow_self_loops=allow_self_loops)
    return g, LabelMap(order, CLASS_PLAIN)


def build_bipartite(entry_list, merge_duplicates=False):
    """Build a BipartiteGraph from (row label, column label, weight) items.

    The returned LabelMap spans rows then columns (r + s labels, classes
    ``u`` and ``v``). A label appearing as both a row and a column is
    rejected because the combined label space must stay unique.
    """
    rows, row_order = {}, []
    cols, col_order = {}, []
    raw = []
    for item in entry_list:
        a, b, w = _coerce_weight(tuple(item))
        raw.append((_intern_label(a, rows, row_order), _intern_label(b, cols, col_order), float(w)))
    if not raw:
        raise EmptyInputError("entry list is empty")
    overlap = set(row_order) & set(col_order)
    if overlap:
        raise DuplicateEntryError(
            f"label {sorted(overlap)[0]!r} used for both a row and a column"
        )
    if merge_duplicates:
        merged = {}
        keys = []
        for i, j, w in raw:
            if (i, j) not in merged:
                merged[(i, j)] = 0.0
                keys.append((i, j))
            merged[(i, j)] += w
        raw = [(i, j, merged[(i, j)]) for i, j in keys]
    b = BipartiteGraph(len(row_order), len(col_order), raw)
    lm = LabelMap(row_order + col_order, [CLASS_U] * len(row_order) + [CLASS_V] * len(col_order))
    return b, lm


def build_directed(arc_list, merge_duplicates=False):
    """Build a DirectedGraph from (src label, dst label, weight) arcs.

    Self-arcs are permitted; they become diagonal entries after the
    role-duplication transform.
    """
    table, order = {}, []
    raw = []
    for item in arc_list:
        a, b, w = _coerce_weight(tuple(item))
        raw.append((_intern_label(a, table, order), _intern_label(b, table, order), float(w)))
    if not raw:
        raise EmptyInputError("arc list is empty")
    if merge_duplicates:
        merged = {}
        keys = []
        for u, v, w in raw:
            if (u, v) not in merged:
                merged[(u, v)] = 0.0
                keys.append((u, v))
            merged[(u, v)] += w
        raw = [(u, v, merged[(u, v)]) for u, v in keys]
    d = DirectedGraph(len(order), raw)
    return d, LabelMap(order, CLASS_PLAIN)


def total_weight(g):
    """Total weight m of any graph container.

    Raises EmptyGraphError for a graph with no nodes.
    """
    if isinstance(g, Graph):
        if g.node_count == 0:
            raise EmptyGraphError("graph has no nodes")
        return g.m
    if isinstance(g, BipartiteGraph):
        if g.r + g.s == 0:
            raise EmptyGraphError("bipartite graph has no nodes")
        return g.m
    if isinstance(g, DirectedGraph):
        if g.node_count == 0:
            raise EmptyGraphError("directed graph has no nodes")
        return g.m
    raise TypeError(f"not a graph container: {type(g).__name__}")
