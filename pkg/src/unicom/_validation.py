"""Input coercion shared by the estimator facades."""

from __future__ import annotations

import numpy as np

from .errors import PartitionMismatchError
from .graphs import BipartiteGraph, DirectedGraph, Graph
from .partition import Partition
from .unify import BlockGraph, bipartite_to_block, directed_to_bipartite, unipartite_to_bipartite


def as_graph(X) -> Graph:
    """Coerce estimator input to a symmetric Graph.

    Bipartite and directed containers go through their block form; plain
    arrays are read as integer edge lists with an optional weight column.
    """
    if isinstance(X, Graph):
        return X
    if isinstance(X, BlockGraph):
        return X.graph
    if isinstance(X, BipartiteGraph):
        return bipartite_to_block(X).graph
    if isinstance(X, DirectedGraph):
        b, lm = directed_to_bipartite(X)
        return bipartite_to_block(b, lm).graph
    return edge_array_to_graph(X)


def edge_array_to_graph(X) -> Graph:
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2 or arr.shape[1] not in (2, 3) or arr.shape[0] == 0:
        raise ValueError("expected an (n_edges, 2 or 3) array of endpoints")
    if not np.all(np.isfinite(arr)):
        raise ValueError("edge array contains non-finite values")
    ends = arr[:, :2]
    if np.any(ends != np.round(ends)) or np.any(ends < 0):
        raise ValueError("endpoints must be nonnegative integers")
    weights = arr[:, 2] if arr.shape[1] == 3 else np.ones(len(arr))
    node_count = int(ends.max()) + 1
    edges = [(int(u), int(v), float(w)) for (u, v), w in zip(ends, weights)]
    return Graph(node_count, edges)


def check_partition(p, n_nodes) -> Partition:
    part = p if isinstance(p, Partition) else Partition(list(p))
    if len(part) != n_nodes:
        raise PartitionMismatchError(
            f"partition covers {len(part)} nodes, expected {n_nodes}"
        )
    return part
