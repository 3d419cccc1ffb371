"""Belonging functions: from a hard partition to quantified overlap.

Three per-node, per-community scores over a bipartite (or block) graph:

* probability, the fraction of a node's incident weight landing in a
  community (sums to 1 over communities);
* legitimacy, links into a community divided by that community's
  opposite-class member count, optionally weighted (edge weights summed
  instead of counted);
* reassignment modularity (RM), the closed-form modularity change from
  moving one node into another community, zero at home by definition.

Values that are mathematically undefined (isolated node probability,
legitimacy toward a community with no opposite-class member) are stored
as NaN and the affected columns reported, never silently zeroed, because
zero is a meaningful score.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import (
    EmptyCommunityError,
    InconsistentDimensionsError,
    PartitionMismatchError,
    UnknownCommunityError,
    UnknownNodeError,
)
from .graphs import BipartiteGraph, Graph
from .modularity import bipartite_community_aggregates
from .partition import Partition

FN_PROBABILITY = "probability"
FN_LEGITIMACY = "legitimacy"
FN_WEIGHTED_LEGITIMACY = "weighted-legitimacy"
FN_RM = "reassignment-modularity"

_LEGITIMACY_FAMILY = (FN_LEGITIMACY, FN_WEIGHTED_LEGITIMACY)

SIDE_U = "u"
SIDE_V = "v"
SIDE_BOTH = "both"


@dataclass(frozen=True)
class OverlapMatrix:
    """Communities-by-nodes matrix of belonging values.

    ``values`` has one row per community id and one column per covered
    node; ``node_indices`` holds the block index of each column, ``home``
    its community, and ``undefined`` the column positions whose cells are
    NaN sentinels.
    """

    function: str
    values: np.ndarray
    side: str
    node_indices: Tuple[int, ...]
    home: Tuple[int, ...]
    undefined: Tuple[int, ...] = ()

    @property
    def k(self):
        return self.values.shape[0]

    @property
    def n(self):
        return self.values.shape[1]


@dataclass(frozen=True)
class ThresholdVector:
    """Per-community display thresholds.

    threshold(c) is the largest value that still admits every full
    member of c; raising it any higher would drop one.
    """

    values: Tuple[float, ...]

    def __getitem__(self, c):
        return self.values[c]

    def __len__(self):
        return len(self.values)


def _block_partition(b: BipartiteGraph, p) -> Partition:
    assignment = list(getattr(p, "assignment", p))
    if len(assignment) != b.r + b.s:
        raise PartitionMismatchError(
            f"partition covers {len(assignment)} nodes, block space has {b.r + b.s}"
        )
    return Partition(assignment)


def _side_indices(b: BipartiteGraph, side):
    if side == SIDE_U:
        return list(range(b.r))
    if side == SIDE_V:
        return list(range(b.r, b.r + b.s))
    if side == SIDE_BOTH:
        return list(range(b.r + b.s))
    raise ValueError(f"side must be u, v or both, not {side!r}")


def _link_tables(b: BipartiteGraph, assignment, k):
    """Weight sums and link counts into each community, per block node."""
    weight = [dict() for _ in range(b.r + b.s)]
    count = [dict() for _ in range(b.r + b.s)]
    for i, j, w in b.entries:
        cj = assignment[b.r + j]
        ci = assignment[i]
        wu = weight[i]
        wu[cj] = wu.get(cj, 0.0) + w
        cu = count[i]
        cu[cj] = cu.get(cj, 0) + 1
        wv = weight[b.r + j]
        wv[ci] = wv.get(ci, 0.0) + w
        cv = count[b.r + j]
        cv[ci] = cv.get(ci, 0) + 1
    return weight, count


def _class_counts(b: BipartiteGraph, assignment, k):
    members_u = [0] * k
    members_v = [0] * k
    for i in range(b.r):
        members_u[assignment[i]] += 1
    for j in range(b.s):
        members_v[assignment[b.r + j]] += 1
    return members_u, members_v


def _margin(b: BipartiteGraph, idx):
    return b.row_margins[idx] if idx < b.r else b.col_margins[idx - b.r]


def probability(b: BipartiteGraph, p, side=SIDE_U) -> OverlapMatrix:
    """Share of each node's incident weight falling into each community.

    Columns of nodes with degree zero are NaN (a fraction of nothing is
    undefined) and reported through ``undefined``.
    """
    part = _block_partition(b, p)
    assignment = part.assignment
    weight, _ = _link_tables(b, assignment, part.k)
    cols = _side_indices(b, side)
    values = np.full((part.k, len(cols)), 0.0)
    undefined = []
    for pos, idx in enumerate(cols):
        deg = _margin(b, idx)
        if deg == 0.0:
            values[:, pos] = np.nan
            undefined.append(pos)
            continue
        for c, wsum in weight[idx].items():
            values[c, pos] = wsum / deg
    return OverlapMatrix(
        function=FN_PROBABILITY,
        values=values,
        side=side,
        node_indices=tuple(cols),
        home=tuple(assignment[idx] for idx in cols),
        undefined=tuple(undefined),
    )


def legitimacy(b: BipartiteGraph, p, side=SIDE_U, weighted=False) -> OverlapMatrix:
    """Links into a community over its opposite-class member count.

    The unweighted numerator counts links; the weighted variant sums
    their weights. Cells toward a community with no opposite-class
    member are NaN and reported.
    """
    part = _block_partition(b, p)
    assignment = part.assignment
    weight, count = _link_tables(b, assignment, part.k)
    members_u, members_v = _class_counts(b, assignment, part.k)
    cols = _side_indices(b, side)
    values = np.zeros((part.k, len(cols)))
    undefined = set()
    for pos, idx in enumerate(cols):
        opposite = members_v if idx < b.r else members_u
        table = weight[idx] if weighted else count[idx]
        for c in range(part.k):
            if opposite[c] == 0:
                values[c, pos] = np.nan
                undefined.add(pos)
            else:
                values[c, pos] = table.get(c, 0) / opposite[c]
    return OverlapMatrix(
        function=FN_WEIGHTED_LEGITIMACY if weighted else FN_LEGITIMACY,
        values=values,
        side=side,
        node_indices=tuple(cols),
        home=tuple(assignment[idx] for idx in cols),
        undefined=tuple(sorted(undefined)),
    )


def _rm_value(m, dw, l_home, l_target, d_home, d_target):
    # d_home includes the moving node, d_target does not; the home case
    # returns a structural zero before reaching this expression.
    return (l_target - l_home) / m - (dw * dw + dw * (d_target - d_home)) / (2.0 * m * m)


def reassignment_modularity(graph_or_bip, p, node, target) -> float:
    """Closed-form modularity change from moving one node.

    Parameters
    ----------
    graph_or_bip : BipartiteGraph or Graph
        Plain graphs are routed through the clone transform with the
        partition duplicated onto the clones, so the same formula serves
        all input families.
    p : Partition over the block index space (or node space for Graph).
    node : int
        Block index (or plain node index for Graph input) of the node to
        move.
    target : int
        Destination community id; the home community yields exactly 0.0.
    """
    if isinstance(graph_or_bip, Graph):
        from .unify import unipartite_to_bipartite

        assignment = list(getattr(p, "assignment", p))
        if len(assignment) != graph_or_bip.node_count:
            raise PartitionMismatchError(
                f"partition covers {len(assignment)} nodes, graph has {graph_or_bip.node_count}"
            )
        b, _ = unipartite_to_bipartite(graph_or_bip)
        block_p = assignment + assignment
        return reassignment_modularity(b, block_p, node, target)

    b = graph_or_bip
    part = _block_partition(b, p)
    assignment = part.assignment
    if not 0 <= node < b.r + b.s:
        raise UnknownNodeError(f"node index {node} outside the block space")
    if not 0 <= target < part.k:
        raise UnknownCommunityError(f"community {target} does not exist")
    home = assignment[node]
    if target == home:
        return 0.0
    weight, _ = _link_tables(b, assignment, part.k)
    d = bipartite_community_aggregates(b, part).d
    dw = _margin(b, node)
    links = weight[node]
    return _rm_value(b.m, dw, links.get(home, 0.0), links.get(target, 0.0), d[home], d[target])


def rm_matrix(b: BipartiteGraph, p, side=SIDE_U) -> OverlapMatrix:
    """Tabulated reassignment modularity, one column per node.

    The home entry of every column is exactly 0.0; on a partition that
    is a strict local optimum of single moves all other entries are
    nonpositive.
    """
    part = _block_partition(b, p)
    assignment = part.assignment
    weight, _ = _link_tables(b, assignment, part.k)
    d = bipartite_community_aggregates(b, part).d
    cols = _side_indices(b, side)
    values = np.zeros((part.k, len(cols)))
    for pos, idx in enumerate(cols):
        home = assignment[idx]
        dw = _margin(b, idx)
        links = weight[idx]
        l_home = links.get(home, 0.0)
        for c in range(part.k):
            if c == home:
                continue
            values[c, pos] = _rm_value(b.m, dw, l_home, links.get(c, 0.0), d[home], d[c])
    return OverlapMatrix(
        function=FN_RM,
        values=values,
        side=side,
        node_indices=tuple(cols),
        home=tuple(assignment[idx] for idx in cols),
        undefined=(),
    )


def community_thresholds(om: OverlapMatrix, p) -> ThresholdVector:
    """Display threshold per community: the minimum over its own members.

    Any higher cutoff would hide a full member, so lighting cells at
    value >= threshold keeps every member visible by construction. Only
    legitimacy-family matrices carry the semantics this rule needs.
    """
    if om.function not in _LEGITIMACY_FAMILY:
        raise ValueError(
            f"thresholds need a legitimacy-family matrix, got {om.function!r}"
        )
    assignment = list(getattr(p, "assignment", p))
    for pos, idx in enumerate(om.node_indices):
        if idx >= len(assignment) or assignment[idx] != om.home[pos]:
            raise InconsistentDimensionsError(
                "partition disagrees with the overlap matrix home communities"
            )
    thresholds = []
    for c in range(om.k):
        member_vals = [
            float(om.values[c, pos])
            for pos in range(om.n)
            if om.home[pos] == c and not math.isnan(om.values[c, pos])
        ]
        if not member_vals:
            raise EmptyCommunityError(
                f"community {c} has no member on side {om.side!r}"
            )
        thresholds.append(min(member_vals))
    return ThresholdVector(values=tuple(thresholds))


def lit_mask(om: OverlapMatrix, thresholds: Optional[ThresholdVector]) -> np.ndarray:
    """Boolean mask of cells a threshold display lights up.

    A cell lights when its value is positive and reaches its community's
    threshold; with no thresholds (the zero-threshold display) every
    positive cell lights. NaN cells never light.
    """
    with np.errstate(invalid="ignore"):
        positive = om.values > 0.0
        if thresholds is None:
            return positive
        floor = np.asarray(thresholds.values).reshape(-1, 1)
        return positive & (om.values >= floor)


def best_cells(om: OverlapMatrix) -> np.ndarray:
    """Mask of each column's maximal defined cells (all of them on ties)."""
    mask = np.zeros_like(om.values, dtype=bool)
    for pos in range(om.n):
        col = om.values[:, pos]
        finite = ~np.isnan(col)
        if not finite.any():
            continue
        top = np.nanmax(col)
        mask[:, pos] = finite & (col == top)
    return mask
