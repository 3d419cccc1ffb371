"""Modularity scorers for unipartite, bipartite and directed partitions.

Every scorer consumes a whole partition and runs in O(edges + nodes)
through per-community aggregates (intra-community weight and degree
sums), never through the quadratic double sum; the tests keep brute-force
double-sum twins for each formula. Weighted graphs are the general case
throughout, binary inputs being weights of 1.

Aggregates are accumulated with :func:`math.fsum` so results do not
depend on edge order and the bipartite score of a partition equals the
plain score of the same partition on the block graph bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

from .errors import EmptyGraphError, PartitionMismatchError
from .graphs import BipartiteGraph, DirectedGraph, Graph
from .partition import Partition


@dataclass
class CommunityAggregates:
    """Per-community sums feeding the community-form modularity formulas.

    Attributes
    ----------
    e : list of float
        Intra-community edge weight (self-loops counted once).
    d : list of float
        Total degree of the community's members.
    d_u, d_v : list of float, optional
        Degree split by node class for bipartite inputs; d then sums the
        same margins in one pass rather than adding d_u and d_v.
    """

    e: List[float]
    d: List[float]
    d_u: Optional[List[float]] = None
    d_v: Optional[List[float]] = None


def _as_assignment(p, expected, what):
    assignment = list(getattr(p, "assignment", p))
    if len(assignment) != expected:
        raise PartitionMismatchError(
            f"partition covers {len(assignment)} nodes, {what} has {expected}"
        )
    return Partition(assignment).assignment


def community_aggregates(g: Graph, p) -> CommunityAggregates:
    assignment = _as_assignment(p, g.node_count, "graph")
    k = max(assignment) + 1
    intra = [[] for _ in range(k)]
    degs = [[] for _ in range(k)]
    for u, v, w in g.edges:
        if assignment[u] == assignment[v]:
            intra[assignment[u]].append(w)
    for node, c in enumerate(assignment):
        degs[c].append(g.degrees[node])
    return CommunityAggregates(
        e=[math.fsum(ws) for ws in intra],
        d=[math.fsum(ds) for ds in degs],
    )


def bipartite_community_aggregates(b: BipartiteGraph, p) -> CommunityAggregates:
    assignment = _as_assignment(p, b.r + b.s, "block index space")
    k = max(assignment) + 1
    intra = [[] for _ in range(k)]
    margins = [[] for _ in range(k)]
    d_u = [[] for _ in range(k)]
    d_v = [[] for _ in range(k)]
    for i, j, w in b.entries:
        if assignment[i] == assignment[b.r + j]:
            intra[assignment[i]].append(w)
    for i in range(b.r):
        margins[assignment[i]].append(b.row_margins[i])
        d_u[assignment[i]].append(b.row_margins[i])
    for j in range(b.s):
        margins[assignment[b.r + j]].append(b.col_margins[j])
        d_v[assignment[b.r + j]].append(b.col_margins[j])
    return CommunityAggregates(
        e=[math.fsum(ws) for ws in intra],
        d=[math.fsum(ds) for ds in margins],
        d_u=[math.fsum(ds) for ds in d_u],
        d_v=[math.fsum(ds) for ds in d_v],
    )


def _require_weight(m, what):
    if m <= 0:
        raise EmptyGraphError(f"{what} has no edge weight, modularity undefined")


def newman_modularity(g: Graph, p) -> float:
    """Classic modularity of a partition on a symmetric graph.

    Q = (1/2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j), evaluated in
    its community form sum_c [e_c/m - (d_c/2m)^2]. A community holding
    the whole graph scores exactly 0; an all-singleton partition scores
    -sum (k_i/2m)^2.
    """
    if g.node_count == 0:
        raise EmptyGraphError("graph has no nodes")
    _require_weight(g.m, "graph")
    agg = community_aggregates(g, p)
    m = g.m
    terms = [e / m - (d / (2.0 * m)) ** 2 for e, d in zip(agg.e, agg.d)]
    return math.fsum(terms)


def bimodularity(b: BipartiteGraph, p) -> float:
    """Bipartite modularity over a partition binding both node classes.

    Q = (1/m) sum_ij [B_ij - (k_i + k_j)^2 / 4m] delta(c_i, c_j) in its
    community form sum_c [e_c/m - ((d_u|c + d_v|c)/2m)^2], which equals
    the plain modularity of the same partition on the block graph.
    """
    if b.r + b.s == 0:
        raise EmptyGraphError("bipartite graph has no nodes")
    _require_weight(b.m, "bipartite graph")
    agg = bipartite_community_aggregates(b, p)
    m = b.m
    terms = [e / m - (d / (2.0 * m)) ** 2 for e, d in zip(agg.e, agg.d)]
    return math.fsum(terms)


def barber_modularity(b: BipartiteGraph, p) -> float:
    """Probabilistic bipartite modularity.

    Q = (1/m) sum_ij [B_ij - k_i k_j / m] delta(c_i, c_j); the null term
    couples only row-class with column-class degrees.
    """
    if b.r + b.s == 0:
        raise EmptyGraphError("bipartite graph has no nodes")
    _require_weight(b.m, "bipartite graph")
    agg = bipartite_community_aggregates(b, p)
    m = b.m
    terms = [
        e / m - (du * dv) / (m * m)
        for e, du, dv in zip(agg.e, agg.d_u, agg.d_v)
    ]
    return math.fsum(terms)


def directed_bimodularity(d: DirectedGraph, p) -> float:
    """Bipartite modularity of the role-duplicated directed graph.

    The partition covers 2 * node_count role indices, OUT roles first.
    Defined as bimodularity(directed_to_bipartite(d), p); the two are one
    computation, not two formulas that happen to agree.
    """
    from .unify import directed_to_bipartite

    if d.node_count == 0:
        raise EmptyGraphError("directed graph has no nodes")
    b, _ = directed_to_bipartite(d)
    return bimodularity(b, p)


def leicht_newman_modularity(d: DirectedGraph, p) -> float:
    """Directed modularity over single-role node communities.

    Q = (1/m) sum_ij [A_ij - k_i^in k_j^out / m] delta(c_i, c_j). The
    community form sums intra-arc weight against in-degree times
    out-degree products, so the result does not depend on which arc
    orientation convention the adjacency uses.
    """
    if d.node_count == 0:
        raise EmptyGraphError("directed graph has no nodes")
    _require_weight(d.m, "directed graph")
    assignment = _as_assignment(p, d.node_count, "directed graph")
    k = max(assignment) + 1
    intra = [[] for _ in range(k)]
    inside = [[] for _ in range(k)]
    outside = [[] for _ in range(k)]
    for u, v, w in d.arcs:
        if assignment[u] == assignment[v]:
            intra[assignment[u]].append(w)
    for node, c in enumerate(assignment):
        inside[c].append(d.in_degrees[node])
        outside[c].append(d.out_degrees[node])
    m = d.m
    terms = [
        math.fsum(intra[c]) / m
        - (math.fsum(inside[c]) * math.fsum(outside[c])) / (m * m)
        for c in range(k)
    ]
    return math.fsum(terms)
