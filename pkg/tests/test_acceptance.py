"""End-to-end gate: one test per advertised guarantee.

Each passing test records a one-line summary in ``SUMMARY``; the
terminal-summary hook in conftest prints one ``criterion NN PASS/FAIL``
line per guarantee at the end of the run, whatever the capture mode.
"""

import json
import math
import random
import statistics
import time
from collections import Counter

import numpy as np
import pytest

from unicom import (
    SIDE_BOTH,
    SIDE_U,
    SIDE_V,
    Partition,
    best_cells,
    bimodularity,
    bipartite_to_block,
    check_clone_consistency,
    community_thresholds,
    directed_to_bipartite,
    fold_block_partition,
    legitimacy,
    lit_mask,
    louvain,
    newman_modularity,
    probability,
    reassignment_modularity,
    renumber,
    rm_matrix,
    unipartite_to_bipartite,
)
from unicom.cli import EXIT_OK, main
from unicom.datasets import (
    fixture,
    load_karate,
    load_southern_women,
    perturb_asymmetric,
    random_bipartite,
    random_graph,
    random_partition,
    random_symmetric_digraph,
    random_weighted_biadjacency,
)
from unicom.graphs import BipartiteGraph, LabelMap
from unicom.viz import export_csv, render_matrix

GOLDEN = __file__.rsplit("/", 1)[0] + "/golden"

BUNDLE_FILES = [
    "partition.tsv",
    "report.json",
    "legitimacy.csv",
    "legitimacy.svg",
    "rm.csv",
    "rm.svg",
]


SUMMARY = {}


def _report(num, text):
    SUMMARY[num] = text


def _grouping(p):
    groups = {}
    for idx, c in enumerate(p.assignment):
        groups.setdefault(c, set()).add(idx)
    return {frozenset(g) for g in groups.values()}


def _random_case(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 12)
    s = rng.randint(1, 12)
    entries = rng.randint(1, r * s)
    b, _ = random_bipartite(r, s, entries, seed, weighted=True)
    p = random_partition(r + s, rng.randint(1, r + s), seed)
    return rng, b, p


def test_c01_karate_yields_four_communities():
    g, _ = load_karate()
    started = time.perf_counter()
    first = louvain(g)
    elapsed = time.perf_counter() - started
    second = louvain(g)
    assert first.partition.k == 4
    assert elapsed < 1.0
    assert second.partition == first.partition
    _report(1, f"karate splits into 4 communities in {elapsed * 1000:.1f} ms, repeatably")


def test_c02_karate_clone_route_agrees_and_is_consistent():
    g, lm = load_karate()
    plain = louvain(g).partition
    bip, clone_lm = unipartite_to_bipartite(g, lm)
    block = bipartite_to_block(bip, clone_lm)
    folded_u, _, clone_report = fold_block_partition(
        louvain(block.graph).partition, block.label_map
    )
    verdict = check_clone_consistency(clone_report)
    assert verdict.consistent
    assert clone_report.violations == []
    assert len(clone_report.pairs) == 34
    folded = Partition(renumber([folded_u[lm.label(i)] for i in range(len(lm))]))
    assert folded.k == 4
    assert _grouping(folded) == _grouping(plain)
    _report(2, "clone route finds the same 4 communities, 34/34 pairs co-located")


def test_c03_karate_node_10_hesitates_between_communities():
    g, lm = load_karate()
    bip, clone_lm = unipartite_to_bipartite(g, lm)
    block = bipartite_to_block(bip, clone_lm)
    p = louvain(block.graph).partition

    def top2_gaps(om):
        return [
            (lambda v: v[0] - v[1])(sorted(om.values[:, col], reverse=True))
            for col in range(om.n)
        ]

    rm = rm_matrix(bip, p, side=SIDE_U)
    leg = legitimacy(bip, p, side=SIDE_U)
    col = rm.node_indices.index(lm.index("10"))
    rm_gaps = top2_gaps(rm)
    leg_gaps = top2_gaps(leg)
    assert rm_gaps[col] < statistics.median(rm_gaps)
    assert leg_gaps[col] < statistics.median(leg_gaps)
    home = rm.home[col]
    best_away = max(rm.values[c, col] for c in range(rm.k) if c != home)
    assert abs(best_away) < 0.02
    _report(3, f"node 10 top-2 gaps below median, best away-move RM {best_away:+.4f}")


def test_c04_southern_women_shape_and_overlap_flags():
    b, lm = load_southern_women()
    block = bipartite_to_block(b, lm)
    p = louvain(block.graph).partition
    _, v_part, _ = fold_block_partition(p, block.label_map)
    assert p.k == 3
    assert sorted(Counter(v_part.values()).values(), reverse=True) == [7, 5, 2]

    leg = legitimacy(b, p, side=SIDE_BOTH)
    best = best_cells(leg)
    flagged = set()
    for col, idx in enumerate(leg.node_indices):
        winners = {c for c in range(leg.k) if best[c, col]}
        if winners and leg.home[col] not in winners:
            flagged.add(block.label_map.label(idx))
    assert {"W8", "E8"} <= flagged
    assert len(flagged) <= 5

    rm = rm_matrix(b, p, side=SIDE_U)
    col = rm.node_indices.index(lm.index("W8"))
    home = rm.home[col]
    away = [rm.values[c, col] for c in range(rm.k) if c != home]
    assert max(away) > 0.0
    _report(4, f"3 communities, event sizes 7/5/2, off-home flags {sorted(flagged)}")


def test_c05_bimodularity_equals_block_modularity():
    started = time.perf_counter()
    worst = 0.0
    for seed in range(1000):
        _, b, p = _random_case(seed)
        direct = bimodularity(b, p)
        block = newman_modularity(bipartite_to_block(b).graph, p)
        worst = max(worst, abs(direct - block))
        assert abs(direct - block) < 1e-12
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    _report(5, f"1000 random trials, worst |bimod - block Q| = {worst:.3g}, {elapsed:.1f} s")


def test_c06_reassignment_closed_form_matches_recount():
    worst = 0.0
    for seed in range(1000):
        rng, b, p = _random_case(seed)
        node = rng.randrange(b.r + b.s)
        target = rng.randrange(p.k)
        home = p.assignment[node]
        closed = reassignment_modularity(b, p, node, target)
        if target == home:
            assert closed == 0.0
            continue
        moved = list(p.assignment)
        moved[node] = target
        recount = bimodularity(b, Partition(renumber(moved))) - bimodularity(b, p)
        worst = max(worst, abs(closed - recount))
        assert abs(closed - recount) < 1e-12
    _report(6, f"1000 random moves, worst |closed form - recount| = {worst:.3g}")


def test_c07_probabilities_sum_to_one():
    def check(b, p):
        om = probability(b, p, side=SIDE_BOTH)
        for col in range(om.n):
            if col in om.undefined:
                continue
            assert math.fsum(om.values[:, col]) == pytest.approx(1.0, abs=1e-9)

    for loader in (load_karate, load_southern_women):
        g, lm = loader()
        if isinstance(g, BipartiteGraph):
            bip, blm = g, lm
        else:
            bip, blm = unipartite_to_bipartite(g, lm)
        block = bipartite_to_block(bip, blm)
        check(bip, louvain(block.graph).partition)
    for seed in range(100):
        _, b, p = _random_case(seed + 5000)
        check(b, p)
    _report(7, "per-node probabilities sum to 1 on both fixtures and 100 random graphs")


def test_c08_worked_belonging_fractions():
    # One woman attending 4 of 14 events; event communities sized 7/5/2.
    b = BipartiteGraph(1, 14, [(0, j, 1.0) for j in range(4)])
    assignment = [0] + [0, 0, 1, 2] + [0] * 5 + [1] * 4 + [2]
    p = Partition(assignment)
    prob = probability(b, p, side=SIDE_U).values[:, 0]
    leg = legitimacy(b, p, side=SIDE_U).values[:, 0]
    assert list(prob) == [2 / 4, 1 / 4, 1 / 4]
    assert list(leg) == [2 / 7, 1 / 5, 1 / 2]
    _report(8, "toy configuration gives P=(1/2,1/4,1/4) and L=(2/7,1/5,1/2) exactly")


def _digraph_case(seed):
    rng = random.Random(seed + 1000)
    n = rng.randint(6, 14)
    pairs = rng.randint(n, n * (n - 1) // 2)
    return n, pairs, random_symmetric_digraph(n, pairs, seed)


def _detect_roles(bip, lm):
    block = bipartite_to_block(bip, lm)
    p = louvain(block.graph).partition
    _, _, report = fold_block_partition(p, block.label_map)
    return p, check_clone_consistency(report)


def test_c09_symmetry_verdict_mechanism():
    for seed in range(100):
        _, _, (d, lm) = _digraph_case(seed)
        bip, blm = directed_to_bipartite(d, lm)
        _, verdict = _detect_roles(bip, blm)
        assert verdict.consistent
        assert verdict.violating_labels == ()

    flagged_cases = 0
    for seed in range(100):
        n, pairs, (d, lm) = _digraph_case(seed)
        broken = perturb_asymmetric(d, max(1, pairs // 3), seed, self_loop_weight=0.25)
        bip, blm = directed_to_bipartite(broken, lm)
        p, verdict = _detect_roles(bip, blm)
        split = {
            blm.label(i).rsplit(":", 1)[0]
            for i in range(n)
            if p.assignment[i] != p.assignment[blm.clone_of(i)]
        }
        assert {v.rsplit(":", 1)[0] for v in verdict.violating_labels} == split
        assert verdict.consistent == (not split)
        if not verdict.consistent:
            flagged_cases += 1
    assert flagged_cases >= 1
    _report(9, f"100/100 symmetric runs consistent; {flagged_cases}/100 perturbed runs flagged")


def test_c10_weighted_pipeline_thresholds():
    b, lm = random_weighted_biadjacency(200, 60, seed=99)
    block = bipartite_to_block(b, lm)
    result = louvain(block.graph)
    p = result.partition
    for side in (SIDE_U, SIDE_V):
        om = legitimacy(b, p, side=side, weighted=True)
        thresholds = community_thresholds(om, p)
        for col in range(om.n):
            home = om.home[col]
            assert om.values[home, col] >= thresholds[home]
        zero_mode = lit_mask(om, None)
        gated = lit_mask(om, thresholds)
        assert np.all(gated <= zero_mode)
        assert int(zero_mode.sum()) > int(gated.sum())
    om_u = legitimacy(b, p, side=SIDE_U, weighted=True)
    assert render_matrix(om_u, p, block.label_map).startswith("<?xml")
    assert export_csv(om_u, p, block.label_map).startswith("community,")
    _report(10, f"200x60 weighted pipeline: k={p.k}, thresholds admit every member, zero mode lights more")


def test_c11_louvain_scales_sparsely():
    g, _ = random_graph(20000, 100000, seed=7)
    started = time.perf_counter()
    result = louvain(g)
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0
    assert result.partition.k > 1

    wide, _ = random_graph(100000, 150000, seed=7)
    sparse_run = louvain(wide)
    assert sparse_run.partition.k > 1
    _report(11, f"100k edges in {elapsed:.2f} s; 100k-node sparse case completes")


def test_c12_rendering_bundles_are_byte_stable(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("UC_NO_COLOR", "1")
    inputs = {
        "karate": ("karate.txt", fixture("karate").text),
        "southern_women": ("southern_women.csv", fixture("southern-women").text),
    }
    for name, (filename, text) in inputs.items():
        (tmp_path / filename).write_text(text)
        for run in ("one", "two"):
            outdir = tmp_path / f"{name}-{run}"
            code = main([
                "pipeline",
                "--input", str(tmp_path / filename),
                "--outdir", str(outdir),
            ])
            assert code == EXIT_OK
        capsys.readouterr()
        for entry in BUNDLE_FILES:
            first = (tmp_path / f"{name}-one" / entry).read_bytes()
            second = (tmp_path / f"{name}-two" / entry).read_bytes()
            assert first == second, f"{name}/{entry} differs between runs"
            golden = open(f"{GOLDEN}/{name}/{entry}", "rb").read()
            normalized = first.replace(b"\r\n", b"\n")
            assert normalized == golden.replace(b"\r\n", b"\n"), f"{name}/{entry} differs from golden"
    _report(12, "karate and southern women bundles byte-identical across runs and goldens")
