"""Command-line pipeline: unify, detect, score, overlap, render.

One executable exposes the whole flow from a graph file to a figure
bundle. Exit codes are a stable scripting contract: 0 success, 2 input
error (unreadable or malformed data), 3 configuration error (bad flags
or parameters), 4 internal invariant violation. Machine-readable
outputs are JSON or CSV files; human summaries go to the standard
stream and notices to the diagnostic stream. Set ``UC_NO_COLOR`` to
disable ANSI styling.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import __version__
from .datasets import (
    FIXTURES,
    fixture,
    random_graph,
)
from .errors import (
    ConfigError,
    EmptyCommunityError,
    InternalInvariantError,
    PartitionMismatchError,
    UnicomError,
    UnknownLabelError,
)
from .graphs import (
    BipartiteGraph,
    DirectedGraph,
    Graph,
    LabelMap,
)
from .io import (
    edge_items,
    format_edgelist,
    parse_biadjacency_csv,
    parse_directed_edgelist,
    parse_edgelist,
    read_partition,
    reciprocal_pairs_present,
    write_partition,
    write_text_atomic,
)
from .louvain import (
    DEFAULT_MIN_GAIN,
    DEFAULT_SEED,
    LouvainConfig,
    LouvainResult,
    louvain,
    run_sweep,
)
from .modularity import (
    barber_modularity,
    bimodularity,
    directed_bimodularity,
    leicht_newman_modularity,
    newman_modularity,
)
from .overlap import (
    FN_LEGITIMACY,
    FN_PROBABILITY,
    FN_RM,
    FN_WEIGHTED_LEGITIMACY,
    community_thresholds,
    legitimacy,
    probability,
    rm_matrix,
)
from .partition import Partition, renumber
from .unify import (
    BlockGraph,
    bipartite_to_block,
    check_clone_consistency,
    directed_to_bipartite,
    fold_block_partition,
    unfold,
    unipartite_to_bipartite,
)
from .viz import MAPPING_LINEAR, MAPPING_THRESHOLD, RenderSpec, export_csv, render_dual, render_matrix

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_INTERNAL = 4

_FUNCTIONS = {
    "probability": FN_PROBABILITY,
    "legitimacy": FN_LEGITIMACY,
    "wlegitimacy": FN_WEIGHTED_LEGITIMACY,
    "rm": FN_RM,
}


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports flag problems as ConfigError (exit 3)."""

    def error(self, message):
        raise ConfigError(message)


def _use_color() -> bool:
    return "UC_NO_COLOR" not in os.environ and sys.stdout.isatty()


def _paint(text: str, code: str) -> str:
    if not _use_color():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _ok(text: str) -> str:
    return _paint(text, "32")


def _bad(text: str) -> str:
    return _paint(text, "31")


def _notice(message: str) -> None:
    print(message, file=sys.stderr)


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _resolve_format(path: str, fmt: str) -> str:
    if fmt != "auto":
        return fmt
    return "biadjacency" if path.lower().endswith(".csv") else "edgelist"


def _resolve_mode(fmt: str, text: str, mode: str) -> str:
    if mode != "auto":
        if fmt == "biadjacency" and mode != "bipartite":
            raise ConfigError(
                f"mode {mode!r} needs an edge list; biadjacency input is bipartite"
            )
        if fmt == "edgelist" and mode == "bipartite":
            raise ConfigError("mode 'bipartite' needs a biadjacency CSV input")
        return mode
    if fmt == "biadjacency":
        _notice("auto mode: biadjacency input, treating as bipartite")
        return "bipartite"
    if reciprocal_pairs_present(edge_items(text)):
        _notice(
            "auto mode: reciprocal arcs found, treating input as directed "
            "(pass --mode to override)"
        )
        return "directed"
    _notice("auto mode: plain edge list, treating as unipartite (pass --mode to override)")
    return "unipartite"


@dataclass
class _Loaded:
    """One input file resolved into every view a subcommand may need."""

    mode: str
    fmt: str
    plain_graph: Optional[Graph]
    plain_labels: Optional[LabelMap]
    directed: Optional[DirectedGraph]
    bip: BipartiteGraph
    block: BlockGraph

    @property
    def detect_graph(self) -> Graph:
        return self.plain_graph if self.mode == "unipartite" else self.block.graph

    @property
    def detect_labels(self) -> LabelMap:
        return self.plain_labels if self.mode == "unipartite" else self.block.label_map


def _load(path: str, fmt_opt: str, mode_opt: str) -> _Loaded:
    text = _read_text(path)
    fmt = _resolve_format(path, fmt_opt)
    mode = _resolve_mode(fmt, text, mode_opt)
    if mode in ("unipartite", "clone"):
        g, plm = parse_edgelist(text)
        b, blm = unipartite_to_bipartite(g, plm)
        block = bipartite_to_block(b, blm)
        return _Loaded(mode, fmt, g, plm, None, b, block)
    if mode == "bipartite":
        b, lm = parse_biadjacency_csv(text)
        block = bipartite_to_block(b, lm)
        return _Loaded(mode, fmt, None, None, None, b, block)
    d, plm = parse_directed_edgelist(text)
    b, blm = directed_to_bipartite(d, plm)
    block = bipartite_to_block(b, blm)
    return _Loaded(mode, fmt, None, plm, d, b, block)


def _parse_seeds(expr: str) -> List[int]:
    match = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", expr)
    if not match:
        raise ConfigError(f"--seeds wants 'a..b', got {expr!r}")
    lo, hi = int(match.group(1)), int(match.group(2))
    if hi < lo:
        raise ConfigError(f"--seeds range {expr!r} is empty")
    return list(range(lo, hi + 1))


def _louvain_config(ns) -> LouvainConfig:
    return LouvainConfig(
        min_gain=ns.min_gain,
        seed=ns.seed if ns.seed is not None else DEFAULT_SEED,
    )


def _detect(loaded: _Loaded, ns) -> Tuple[LouvainResult, Optional[int]]:
    cfg = _louvain_config(ns)
    if getattr(ns, "seeds", None):
        if ns.seed is not None:
            raise ConfigError("--seed and --seeds are mutually exclusive")
        seeds = _parse_seeds(ns.seeds)
        best_seed, result = run_sweep(loaded.detect_graph, seeds, cfg)
        return result, best_seed
    return louvain(loaded.detect_graph, cfg), None


def _block_result(loaded: _Loaded, result: LouvainResult):
    """Fold a block run into its stable partition, report and verdict."""
    lm = loaded.block.label_map
    u_part, v_part, creport = fold_block_partition(result.partition, lm)
    part = unfold(u_part, v_part, lm)
    verdict = None
    if loaded.mode in ("clone", "directed"):
        verdict = check_clone_consistency(creport)
    return part, creport, verdict


def _singleton_labels(graph: Graph, labels: LabelMap) -> List[str]:
    return [labels.label(i) for i in graph.isolated_nodes()]


def _run_report(loaded: _Loaded, result: LouvainResult, part: Partition) -> dict:
    graph = loaded.detect_graph
    return {
        "mode": loaded.mode,
        "m": graph.m,
        "k": part.k,
        "Q": result.modularity,
        "levels": [
            {"k": level.k, "Q": q}
            for level, q in zip(result.dendrogram.levels, result.dendrogram.modularities)
        ],
        "singletons": _singleton_labels(graph, loaded.detect_labels),
    }


def _clone_report_dict(creport, verdict) -> dict:
    return {
        "origin": creport.origin,
        "consistent": verdict.consistent,
        "violations": list(verdict.violating_labels),
        "pairs": [
            {
                "label": pair.label,
                "clone_label": pair.clone_label,
                "community": pair.community,
                "clone_community": pair.clone_community,
            }
            for pair in creport.pairs
        ],
    }


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def _stem(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def cmd_detect(ns) -> int:
    loaded = _load(ns.input, ns.format, ns.mode)
    result, best_seed = _detect(loaded, ns)
    if loaded.mode == "unipartite":
        part = result.partition
        creport = verdict = None
    else:
        part, creport, verdict = _block_result(loaded, result)
    labels = loaded.detect_labels

    out_path = ns.out or f"{_stem(ns.input)}.partition.tsv"
    report_path = ns.report or f"{_stem(ns.input)}.report.json"
    write_text_atomic(out_path, write_partition(part, labels, q=result.modularity))
    write_text_atomic(report_path, _json_text(_run_report(loaded, result, part)))

    seed_note = f" seed={best_seed}" if best_seed is not None else ""
    print(
        f"mode={loaded.mode} nodes={loaded.detect_graph.node_count} "
        f"m={loaded.detect_graph.m:g} k={part.k} Q={result.modularity:.6f}{seed_note}"
    )
    if verdict is not None:
        clone_path = ns.clone_report or f"{_stem(ns.input)}.clones.json"
        write_text_atomic(clone_path, _json_text(_clone_report_dict(creport, verdict)))
        total = len(creport.pairs)
        if verdict.consistent:
            print(_ok(f"clone consistency: OK ({total}/{total} pairs co-located)"))
        else:
            bad = ", ".join(verdict.violating_labels)
            print(_bad(f"clone consistency: {len(verdict.violating_labels)} violations ({bad})"))
        print(f"wrote {clone_path}")
    print(f"wrote {out_path}")
    print(f"wrote {report_path}")
    return EXIT_OK


def cmd_unify(ns) -> int:
    loaded = _load(ns.input, ns.format, ns.mode)
    text = format_edgelist(loaded.block.graph, loaded.block.label_map)
    _notice(
        f"block graph: r={loaded.block.r} s={loaded.block.s} "
        f"m={loaded.block.graph.m:g} origin={loaded.block.origin}"
    )
    if ns.out:
        write_text_atomic(ns.out, text)
        print(f"wrote {ns.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _project_to_clones(assignment: List[int]) -> Partition:
    return Partition(list(assignment) + list(assignment))


def _block_partition_from_file(text: str, loaded: _Loaded) -> Partition:
    """Read a partition in block-label space, accepting plain labels too.

    A plain-label file (one line per original node) is projected onto
    the block space by co-locating each node with its clone or role twin.
    """
    try:
        part, _ = read_partition(text, loaded.block.label_map)
        return part
    except (UnknownLabelError, PartitionMismatchError):
        if loaded.plain_labels is None:
            raise
    part, _ = read_partition(text, loaded.plain_labels)
    return _project_to_clones(part.assignment)


def _plain_partition_from_file(text: str, loaded: _Loaded) -> Partition:
    """Read a partition over original nodes, accepting block files too.

    A block-label file is folded onto the originals; a node whose two
    halves disagree cannot be folded and is rejected.
    """
    try:
        part, _ = read_partition(text, loaded.plain_labels)
        return part
    except (UnknownLabelError, PartitionMismatchError):
        pass
    block_part, _ = read_partition(text, loaded.block.label_map)
    lm = loaded.block.label_map
    n = len(loaded.plain_labels)
    halves = block_part.assignment
    for i in range(n):
        if halves[i] != halves[lm.clone_of(i)]:
            raise PartitionMismatchError(
                f"label {loaded.plain_labels.label(i)!r} is split across communities; "
                "a per-node metric needs co-located halves"
            )
    return Partition(renumber(halves[:n]))


def _applicable_metrics(loaded: _Loaded, text: str) -> List[Tuple[str, float]]:
    rows: List[Tuple[str, float]] = []
    if loaded.mode in ("unipartite", "clone"):
        plain = _plain_partition_from_file(text, loaded)
        rows.append(("newman", newman_modularity(loaded.plain_graph, plain)))
        block = _block_partition_from_file(text, loaded)
        rows.append(("bimod", bimodularity(loaded.bip, block)))
    elif loaded.mode == "bipartite":
        part, _ = read_partition(text, loaded.block.label_map)
        rows.append(("bimod", bimodularity(loaded.bip, part)))
        rows.append(("barber", barber_modularity(loaded.bip, part)))
    else:
        block = _block_partition_from_file(text, loaded)
        rows.append(("directed-bimod", directed_bimodularity(loaded.directed, block)))
        plain = _plain_partition_from_file(text, loaded)
        rows.append(("leicht", leicht_newman_modularity(loaded.directed, plain)))
    return rows


def cmd_score(ns) -> int:
    loaded = _load(ns.input, ns.format, ns.mode)
    text = _read_text(ns.partition)
    metric = ns.metric
    if metric == "newman":
        if loaded.plain_graph is None:
            raise ConfigError("newman modularity needs a unipartite edge list")
        value = newman_modularity(loaded.plain_graph, _plain_partition_from_file(text, loaded))
    elif metric == "bimod":
        value = bimodularity(loaded.bip, _block_partition_from_file(text, loaded))
    elif metric == "barber":
        value = barber_modularity(loaded.bip, _block_partition_from_file(text, loaded))
    elif metric == "directed-bimod":
        if loaded.directed is None:
            raise ConfigError("directed bimodularity needs a directed edge list")
        value = directed_bimodularity(loaded.directed, _block_partition_from_file(text, loaded))
    else:
        if loaded.directed is None:
            raise ConfigError("leicht-newman modularity needs a directed edge list")
        value = leicht_newman_modularity(loaded.directed, _plain_partition_from_file(text, loaded))
    if ns.json:
        sys.stdout.write(_json_text({"metric": metric, "Q": value}))
    else:
        print(f"{metric} Q={value!r}")
    return EXIT_OK


def cmd_compare(ns) -> int:
    loaded = _load(ns.input, ns.format, ns.mode)
    text = _read_text(ns.partition)
    rows = _applicable_metrics(loaded, text)
    if ns.json:
        sys.stdout.write(_json_text({metric: value for metric, value in rows}))
        return EXIT_OK
    width = max(len(metric) for metric, _ in rows)
    print(_paint(f"{'metric':<{width}}  Q", "1"))
    for metric, value in rows:
        print(f"{metric:<{width}}  {value!r}")
    return EXIT_OK


def _overlap_matrix(loaded: _Loaded, part: Partition, function: str, side: str):
    if function == FN_PROBABILITY:
        return probability(loaded.bip, part, side)
    if function == FN_LEGITIMACY:
        return legitimacy(loaded.bip, part, side)
    if function == FN_WEIGHTED_LEGITIMACY:
        return legitimacy(loaded.bip, part, side, weighted=True)
    return rm_matrix(loaded.bip, part, side)


def _thresholds_if_applicable(om, part):
    if om.function not in (FN_LEGITIMACY, FN_WEIGHTED_LEGITIMACY):
        return None
    try:
        return community_thresholds(om, part)
    except EmptyCommunityError as exc:
        _notice(f"thresholds omitted: {exc}")
        return None


def cmd_overlap(ns) -> int:
    loaded = _load(ns.input, ns.format, ns.mode)
    part = _block_partition_from_file(_read_text(ns.partition), loaded)
    om = _overlap_matrix(loaded, part, _FUNCTIONS[ns.function], ns.side)
    thresholds = _thresholds_if_applicable(om, part)
    text = export_csv(om, part, loaded.block.label_map, thresholds)
    if ns.out:
        write_text_atomic(ns.out, text)
        print(f"wrote {ns.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _render_spec(ns) -> RenderSpec:
    return RenderSpec(
        cell_size=ns.cell_size,
        mapping=MAPPING_THRESHOLD if ns.threshold_mode else MAPPING_LINEAR,
        show_values=ns.show_values,
        dual_view=ns.dual,
    )


def cmd_render(ns) -> int:
    loaded = _load(ns.input, ns.format, ns.mode)
    part = _block_partition_from_file(_read_text(ns.partition), loaded)
    function = _FUNCTIONS[ns.function]
    spec = _render_spec(ns)
    labels = loaded.block.label_map
    if ns.dual:
        om_u = _overlap_matrix(loaded, part, function, "u")
        om_v = _overlap_matrix(loaded, part, function, "v")
        svg = render_dual(om_u, om_v, part, labels, spec)
        csv_om = _overlap_matrix(loaded, part, function, "both")
    else:
        csv_om = _overlap_matrix(loaded, part, function, ns.side)
        svg = render_matrix(csv_om, part, labels, spec)
    write_text_atomic(ns.out, svg)
    print(f"wrote {ns.out}")
    if ns.csv:
        thresholds = _thresholds_if_applicable(csv_om, part)
        write_text_atomic(ns.csv, export_csv(csv_om, part, labels, thresholds))
        print(f"wrote {ns.csv}")
    return EXIT_OK


def _staged(stage: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except UnicomError as exc:
        exc.args = (f"[{stage}] {exc}",)
        raise


def cmd_pipeline(ns) -> int:
    outdir = ns.outdir or f"{_stem(ns.input)}-bundle"
    os.makedirs(outdir, exist_ok=True)

    loaded = _staged("parse", _load, ns.input, ns.format, ns.mode)
    result, best_seed = _staged("detect", _detect, loaded, ns)
    if loaded.mode == "unipartite":
        part_for_file = result.partition
        creport = verdict = None
        block_part = _project_to_clones(result.partition.assignment)
        file_labels = loaded.plain_labels
    else:
        part_for_file, creport, verdict = _staged("detect", _block_result, loaded, result)
        block_part = part_for_file
        file_labels = loaded.block.label_map

    written = []

    def _emit(name: str, text: str) -> None:
        path = os.path.join(outdir, name)
        write_text_atomic(path, text)
        written.append(path)

    _emit("partition.tsv", write_partition(part_for_file, file_labels, q=result.modularity))
    _emit("report.json", _json_text(_run_report(loaded, result, part_for_file)))
    if verdict is not None:
        _emit("clones.json", _json_text(_clone_report_dict(creport, verdict)))

    labels = loaded.block.label_map
    spec = _render_spec(ns)
    side = ns.side
    for name, function in (("legitimacy", FN_LEGITIMACY), ("rm", FN_RM)):
        om = _staged("overlap", _overlap_matrix, loaded, block_part, function, side)
        thresholds = (
            _thresholds_if_applicable(om, block_part) if function == FN_LEGITIMACY else None
        )
        _emit(f"{name}.csv", export_csv(om, block_part, labels, thresholds))
        if function == FN_RM and spec.mapping == MAPPING_THRESHOLD:
            om_spec = RenderSpec(
                cell_size=spec.cell_size,
                mapping=MAPPING_LINEAR,
                show_values=spec.show_values,
                dual_view=spec.dual_view,
            )
        else:
            om_spec = spec
        if ns.dual:
            om_u = _staged("overlap", _overlap_matrix, loaded, block_part, function, "u")
            om_v = _staged("overlap", _overlap_matrix, loaded, block_part, function, "v")
            svg = _staged("render", render_dual, om_u, om_v, block_part, labels, om_spec)
        else:
            svg = _staged("render", render_matrix, om, block_part, labels, om_spec)
        _emit(f"{name}.svg", svg)

    seed_note = f" seed={best_seed}" if best_seed is not None else ""
    print(
        f"mode={loaded.mode} k={part_for_file.k} Q={result.modularity:.6f}{seed_note}"
    )
    if verdict is not None:
        state = "OK" if verdict.consistent else f"{len(verdict.violating_labels)} violations"
        print(f"clone consistency: {state}")
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_bench(ns) -> int:
    t0 = time.perf_counter()
    g, _ = random_graph(ns.nodes, ns.edges, ns.seed, weighted=ns.weighted)
    t_generate = time.perf_counter() - t0

    t0 = time.perf_counter()
    b, _ = unipartite_to_bipartite(g)
    block = bipartite_to_block(b)
    t_transform = time.perf_counter() - t0

    cfg = LouvainConfig(min_gain=ns.min_gain, seed=ns.seed)
    t0 = time.perf_counter()
    result = louvain(g, cfg)
    t_louvain = time.perf_counter() - t0

    t0 = time.perf_counter()
    q_plain = newman_modularity(g, result.partition)
    q_block = bimodularity(b, _project_to_clones(result.partition.assignment))
    t_score = time.perf_counter() - t0

    payload = {
        "nodes": ns.nodes,
        "edges": ns.edges,
        "seed": ns.seed,
        "weighted": ns.weighted,
        "k": result.partition.k,
        "Q": q_plain,
        "Q_block": q_block,
        "block_nodes": block.graph.node_count,
        "seconds": {
            "generate": t_generate,
            "transform": t_transform,
            "louvain": t_louvain,
            "scoring": t_score,
        },
    }
    sys.stdout.write(_json_text(payload))
    return EXIT_OK


def cmd_fixtures(ns) -> int:
    names = sorted(FIXTURES) if ns.name == "all" else [ns.name]
    if ns.list:
        for name in names:
            fx = fixture(name)
            print(f"{name}\t{fx.filename}\t{fx.fmt}\tsha256={fx.checksum}")
        return EXIT_OK
    os.makedirs(ns.outdir, exist_ok=True)
    for name in names:
        fx = fixture(name)
        path = os.path.join(ns.outdir, fx.filename)
        write_text_atomic(path, fx.text)
        print(f"wrote {path} (sha256={fx.checksum})")
    return EXIT_OK


def _add_input_options(sub, bipartite_modes=True):
    sub.add_argument("--input", required=True, help="graph file to read")
    sub.add_argument(
        "--format",
        choices=["auto", "edgelist", "biadjacency"],
        default="auto",
        help="input format; auto picks biadjacency for .csv",
    )
    modes = ["auto", "unipartite", "bipartite", "clone", "directed"]
    if not bipartite_modes:
        modes = ["bipartite", "clone", "directed"]
    sub.add_argument(
        "--mode",
        choices=modes,
        default=modes[0],
        help="graph interpretation; auto infers from the input",
    )


def _add_louvain_options(sub):
    sub.add_argument("--seed", type=int, default=None,
                     help=f"sweep-order seed (default {DEFAULT_SEED})")
    sub.add_argument("--seeds", default=None,
                     help="inclusive seed range 'a..b'; keeps the best result")
    sub.add_argument("--min-gain", dest="min_gain", type=float, default=DEFAULT_MIN_GAIN,
                     help="smallest modularity gain that still moves a node")


def _add_overlap_options(sub):
    sub.add_argument("--partition", required=True, help="partition file from detect")
    sub.add_argument("--function", choices=sorted(_FUNCTIONS), default="legitimacy")
    sub.add_argument("--side", choices=["u", "v", "both"], default="u")


def _add_render_options(sub):
    sub.add_argument("--dual", action="store_true",
                     help="stack both node classes in one document")
    sub.add_argument("--threshold-mode", dest="threshold_mode", action="store_true",
                     help="light only cells at or above their community threshold")
    sub.add_argument("--cell-size", dest="cell_size", type=int, default=18)
    sub.add_argument("--show-values", dest="show_values", action="store_true")


def build_parser() -> _Parser:
    parser = _Parser(prog="unicom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("unify", help="emit the block-graph edge list for inspection")
    _add_input_options(p, bipartite_modes=False)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_unify)

    p = subs.add_parser("detect", help="run community detection, write partition + report")
    _add_input_options(p)
    _add_louvain_options(p)
    p.add_argument("--out", default=None, help="partition file path")
    p.add_argument("--report", default=None, help="JSON run report path")
    p.add_argument("--clone-report", dest="clone_report", default=None,
                   help="clone co-location report path (clone/directed modes)")
    p.set_defaults(func=cmd_detect)

    p = subs.add_parser("score", help="score a partition with one metric")
    _add_input_options(p)
    p.add_argument("--partition", required=True)
    p.add_argument("--metric", required=True,
                   choices=["newman", "bimod", "barber", "directed-bimod", "leicht"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_score)

    p = subs.add_parser("compare", help="print every applicable metric side by side")
    _add_input_options(p)
    p.add_argument("--partition", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = subs.add_parser("overlap", help="tabulate a belonging function as CSV")
    _add_input_options(p)
    _add_overlap_options(p)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_overlap)

    p = subs.add_parser("render", help="render a belonging matrix as SVG")
    _add_input_options(p)
    _add_overlap_options(p)
    _add_render_options(p)
    p.add_argument("--out", required=True, help="SVG path")
    p.add_argument("--csv", default=None, help="also export the matrix as CSV")
    p.set_defaults(func=cmd_render)

    p = subs.add_parser("pipeline", help="detect, score, tabulate and render in one run")
    _add_input_options(p)
    _add_louvain_options(p)
    p.add_argument("--side", choices=["u", "v", "both"], default="u")
    _add_render_options(p)
    p.add_argument("--outdir", default=None, help="bundle directory (default: <input>-bundle)")
    p.set_defaults(func=cmd_pipeline)

    p = subs.add_parser("bench", help="time the pipeline stages on a random graph")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--min-gain", dest="min_gain", type=float, default=DEFAULT_MIN_GAIN)
    p.set_defaults(func=cmd_bench)

    p = subs.add_parser("fixtures", help="dump the bundled benchmark datasets")
    p.add_argument("--name", choices=sorted(FIXTURES) + ["all"], default="all")
    p.add_argument("--outdir", default=".")
    p.add_argument("--list", action="store_true", help="print names and checksums only")
    p.set_defaults(func=cmd_fixtures)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        return ns.func(ns)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UnicomError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - last-resort guard
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entry_point() -> None:
    sys.exit(main())
