"""Parsers and serializers for the on-disk formats.

Three text formats cover the pipeline: whitespace-separated edge lists
(`src dst [weight]`, `#` comments), biadjacency CSV (first row and
column are labels, zero or empty cells mean no edge) and the partition
file (TSV `label<TAB>community_id` under a `# k=<int> Q=<float>` header
comment). Parsers reject malformed input with line/column positions
rather than guessing.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
import warnings
from typing import List, NamedTuple, Optional, Tuple

from .errors import (
    DuplicateEntryError,
    EmptyInputError,
    NegativeWeightError,
    NonContiguousIdsWarning,
    NonNumericCellError,
    ParseError,
    PartitionMismatchError,
    RaggedRowError,
)
from .graphs import (
    CLASS_U,
    CLASS_V,
    BipartiteGraph,
    Graph,
    LabelMap,
    build_directed,
    build_unipartite,
)
from .partition import Partition


def edge_items(text: str) -> List[Tuple[str, str, float]]:
    """Tokenize an edge list into (src, dst, weight) label triples.

    Lines are whitespace-separated `src dst [weight]`; blank lines and
    `#` comment lines are skipped; a missing weight means 1.0.
    """
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise ParseError(
                f"expected 'src dst [weight]', got {len(tokens)} fields", line=lineno
            )
        weight = 1.0
        if len(tokens) == 3:
            try:
                weight = float(tokens[2])
            except ValueError:
                raise ParseError(
                    f"weight {tokens[2]!r} is not a number", line=lineno, column=3
                ) from None
        items.append((tokens[0], tokens[1], weight))
    return items


def parse_edgelist(text: str):
    """Parse an undirected edge list into (Graph, LabelMap)."""
    return build_unipartite(edge_items(text))


def parse_directed_edgelist(text: str):
    """Parse the same edge-list format as a (DirectedGraph, LabelMap)."""
    return build_directed(edge_items(text))


def reciprocal_pairs_present(items) -> bool:
    """True when some pair appears in both orientations (a directed hint)."""
    seen = set()
    for a, b, _ in items:
        if a != b and (b, a) in seen:
            return True
        seen.add((a, b))
    return False


def parse_biadjacency_csv(text: str):
    """Parse a labeled biadjacency CSV into (BipartiteGraph, LabelMap).

    First row holds column labels (the corner cell is ignored), first
    column holds row labels. Cells must be nonnegative numbers; zero or
    empty cells mean no edge. All-zero rows or columns stay in the
    matrix as isolated nodes.
    """
    rows = list(csv.reader(io.StringIO(text.replace("\r\n", "\n"))))
    rows = [row for row in rows if row]
    if not rows:
        raise EmptyInputError("biadjacency CSV is empty")
    header = rows[0]
    col_labels = header[1:]
    if not col_labels:
        raise ParseError("header row declares no columns", line=1)
    row_labels = []
    entries = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise RaggedRowError(
                f"row has {len(row)} cells, header has {len(header)}", line=lineno
            )
        row_labels.append(row[0])
        i = len(row_labels) - 1
        for colno, cell in enumerate(row[1:], start=2):
            value = cell.strip()
            if value == "":
                continue
            try:
                w = float(value)
            except ValueError:
                raise NonNumericCellError(
                    f"cell {cell!r} is not a number", line=lineno, column=colno
                ) from None
            if w < 0:
                raise NegativeWeightError(
                    f"negative weight {value}", line=lineno, column=colno
                )
            if w == 0.0:
                continue
            entries.append((i, colno - 2, w))
    if not row_labels:
        raise EmptyInputError("biadjacency CSV has no data rows")
    if not entries:
        raise EmptyInputError("biadjacency CSV has no nonzero cells")
    b = BipartiteGraph(len(row_labels), len(col_labels), entries)
    lm = LabelMap(
        row_labels + col_labels,
        [CLASS_U] * len(row_labels) + [CLASS_V] * len(col_labels),
    )
    return b, lm


class PartitionMeta(NamedTuple):
    """Header values of a partition file; None when the header omits one."""

    k: Optional[int]
    q: Optional[float]


def write_partition(p, labels: LabelMap, q: Optional[float] = None) -> str:
    """Serialize a partition as TSV lines under a `# k=.. Q=..` header."""
    assignment = list(getattr(p, "assignment", p))
    if len(assignment) != len(labels):
        raise PartitionMismatchError(
            f"partition covers {len(assignment)} nodes, label map has {len(labels)}"
        )
    k = len(set(assignment))
    header = f"# k={k}" + (f" Q={q!r}" if q is not None else "")
    lines = [header]
    for idx, c in enumerate(assignment):
        lines.append(f"{labels.label(idx)}\t{c}")
    return "\n".join(lines) + "\n"


def read_partition(text: str, labels: LabelMap):
    """Parse a partition file back into (Partition, PartitionMeta).

    Every label must appear exactly once; line order is irrelevant.
    Non-contiguous community ids are renumbered by ascending id value
    (so the result is independent of line order) under a
    NonContiguousIdsWarning.
    """
    meta_k = None
    meta_q = None
    assignment = [None] * len(labels)
    seen_any = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for token in line[1:].split():
                if token.startswith("k=") and meta_k is None:
                    try:
                        meta_k = int(token[2:])
                    except ValueError:
                        raise ParseError(f"bad header field {token!r}", line=lineno) from None
                elif token.startswith("Q=") and meta_q is None:
                    try:
                        meta_q = float(token[2:])
                    except ValueError:
                        raise ParseError(f"bad header field {token!r}", line=lineno) from None
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(
                f"expected 'label<TAB>community_id', got {len(fields)} fields",
                line=lineno,
            )
        label, id_text = fields[0], fields[1].strip()
        idx = labels.index(label)
        try:
            cid = int(id_text)
        except ValueError:
            raise ParseError(f"community id {id_text!r} is not an integer", line=lineno) from None
        if cid < 0:
            raise ParseError(f"community id {cid} is negative", line=lineno)
        if assignment[idx] is not None:
            raise DuplicateEntryError(f"label {label!r} assigned twice (line {lineno})")
        assignment[idx] = cid
        seen_any = True
    if not seen_any:
        raise EmptyInputError("partition file has no assignments")
    missing = [labels.label(i) for i, c in enumerate(assignment) if c is None]
    if missing:
        raise PartitionMismatchError(
            f"partition file misses {len(missing)} labels (first: {missing[0]!r})"
        )
    ids = sorted(set(assignment))
    if ids != list(range(len(ids))):
        warnings.warn(
            "community ids are not contiguous from 0; renumbering by ascending id",
            NonContiguousIdsWarning,
            stacklevel=2,
        )
        remap = {c: i for i, c in enumerate(ids)}
        assignment = [remap[c] for c in assignment]
    return Partition(assignment), PartitionMeta(k=meta_k, q=meta_q)


def format_edgelist(g, labels: LabelMap) -> str:
    """Serialize a symmetric or directed graph as a loadable edge list."""
    pairs = g.edges if isinstance(g, Graph) else g.arcs
    lines = [f"{labels.label(u)} {labels.label(v)} {w!r}" for u, v, w in pairs]
    return "\n".join(lines) + "\n"


def write_text_atomic(path: str, text: str) -> None:
    """Write a file all-or-nothing: temp file in place, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
