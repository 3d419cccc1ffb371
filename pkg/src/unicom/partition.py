"""Hard partition of node indices into contiguous community ids."""

from __future__ import annotations

from typing import Iterable, Sequence


class Partition:
    """Total assignment of node indices to community ids.

    Community ids must be contiguous in ``[0, k)`` and every community
    nonempty; use :func:`renumber` to normalize arbitrary id sequences.
    """

    __slots__ = ("assignment", "k")

    def __init__(self, assignment: Sequence[int]):
        assignment = [int(c) for c in assignment]
        if not assignment:
            raise ValueError("partition must cover at least one node")
        present = set(assignment)
        k = max(present) + 1
        if min(present) < 0 or len(present) != k:
            raise ValueError("community ids must be contiguous and zero-based")
        self.assignment = assignment
        self.k = k

    def __len__(self):
        return len(self.assignment)

    def __getitem__(self, node):
        return self.assignment[node]

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.assignment == other.assignment
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.assignment))

    def communities(self):
        """Members per community id, each list in ascending node order."""
        out = [[] for _ in range(self.k)]
        for node, c in enumerate(self.assignment):
            out[c].append(node)
        return out

    def sizes(self):
        counts = [0] * self.k
        for c in self.assignment:
            counts[c] += 1
        return counts

    def __repr__(self):
        return f"Partition(n={len(self.assignment)}, k={self.k})"


def renumber(assignment: Iterable[int]) -> Partition:
    """Map arbitrary community ids to contiguous ones in first-appearance order."""
    ids = {}
    out = []
    for c in assignment:
        if c not in ids:
            ids[c] = len(ids)
        out.append(ids[c])
    return Partition(out)
