"""Every scorer is checked against its dense double-sum twin from
oracles.py, plus frozen reference values for the bundled datasets and the
exact bipartite/block equivalence that ties the whole design together."""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from unicom import (
    BipartiteGraph,
    DirectedGraph,
    EmptyGraphError,
    Graph,
    Partition,
    PartitionMismatchError,
    barber_modularity,
    bimodularity,
    bipartite_to_block,
    directed_bimodularity,
    directed_to_bipartite,
    leicht_newman_modularity,
    louvain,
    newman_modularity,
    renumber,
    unipartite_to_bipartite,
)
from unicom.modularity import bipartite_community_aggregates, community_aggregates

import oracles
from test_graphs import dedup_edges
from test_louvain import KARATE_Q, SW_BLOCK_Q

SW_BARBER = 0.31410175482893576


def random_bip(rng, r, s, nnz):
    cells = [(i, j) for i in range(r) for j in range(s)]
    rng.shuffle(cells)
    return BipartiteGraph(
        r, s, [(i, j, rng.uniform(0.1, 5.0)) for i, j in cells[:nnz]]
    )


def random_digraph(rng, n, arcs):
    cells = [(u, v) for u in range(n) for v in range(n)]
    rng.shuffle(cells)
    return DirectedGraph(n, [(u, v, rng.uniform(0.1, 5.0)) for u, v in cells[:arcs]])


def random_ids(rng, n, k):
    return renumber([rng.randrange(k) for _ in range(n)])


class TestNewman:
    def test_whole_graph_is_zero(self, karate):
        g, _ = karate
        assert newman_modularity(g, [0] * 34) == pytest.approx(0.0, abs=1e-15)

    def test_singletons_formula(self):
        g = Graph(3, [(0, 1, 1.0), (1, 2, 1.0)])
        expected = -sum((d / (2 * g.m)) ** 2 for d in g.degrees)
        assert newman_modularity(g, [0, 1, 2]) == pytest.approx(expected, abs=1e-15)

    def test_karate_reference_value(self, karate, karate_partition):
        g, _ = karate
        assert newman_modularity(g, karate_partition) == pytest.approx(
            KARATE_Q, abs=1e-12
        )

    def test_partition_length_enforced(self, karate):
        g, _ = karate
        with pytest.raises(PartitionMismatchError):
            newman_modularity(g, [0, 1])

    def test_weightless_graph_rejected(self):
        with pytest.raises(EmptyGraphError):
            newman_modularity(Graph(2, []), [0, 1])

    @settings(deadline=None, max_examples=40)
    @given(
        st.lists(
            st.tuples(
                st.integers(0, 9),
                st.integers(0, 9),
                st.floats(0.05, 8.0, allow_nan=False),
            ),
            min_size=1,
            max_size=30,
        ),
        st.lists(st.integers(0, 4), min_size=10, max_size=10),
    )
    def test_matches_double_sum(self, items, ids):
        edges = dedup_edges(items)
        if not edges:
            return
        g = Graph(10, edges)
        p = renumber(ids)
        assert newman_modularity(g, p) == pytest.approx(
            oracles.newman_q_dense(g, p.assignment), abs=1e-12
        )

    def test_self_loops_counted_once_in_e_twice_in_degree(self):
        g = Graph(2, [(0, 0, 3.0), (0, 1, 1.0)], allow_self_loops=True)
        agg = community_aggregates(g, [0, 1])
        assert agg.e == [3.0, 0.0]
        assert agg.d == [7.0, 1.0]
        assert newman_modularity(g, [0, 1]) == pytest.approx(
            oracles.newman_q_dense(g, [0, 1]), abs=1e-15
        )


class TestBimodularity:
    def test_sw_reference_value(self, southern_women, sw_partition):
        b, _ = southern_women
        assert bimodularity(b, sw_partition) == pytest.approx(SW_BLOCK_Q, abs=1e-12)

    def test_equals_block_newman_bit_for_bit(self, southern_women, sw_partition):
        b, lm = southern_women
        block = bipartite_to_block(b, lm)
        assert bimodularity(b, sw_partition) == newman_modularity(
            block.graph, sw_partition
        )

    @settings(deadline=None, max_examples=40)
    @given(st.integers(0, 10**6), st.integers(2, 6), st.integers(2, 6))
    def test_block_equivalence_is_exact_everywhere(self, seed, r, s):
        rng = random.Random(seed)
        b = random_bip(rng, r, s, min(r * s, rng.randrange(1, r * s + 1)))
        p = random_ids(rng, r + s, rng.randrange(1, 5))
        block = bipartite_to_block(b)
        # equality without tolerance: both sides sum identical multisets
        assert bimodularity(b, p) == newman_modularity(block.graph, p)

    @settings(deadline=None, max_examples=40)
    @given(st.integers(0, 10**6))
    def test_matches_dense_community_sum(self, seed):
        rng = random.Random(seed)
        b = random_bip(rng, 5, 4, rng.randrange(1, 21))
        p = random_ids(rng, 9, 3)
        assert bimodularity(b, p) == pytest.approx(
            oracles.bimod_dense(b, p.assignment), abs=1e-12
        )
        assert bimodularity(b, p) == pytest.approx(
            oracles.newman_q_block_dense(b, p.assignment), abs=1e-12
        )

    def test_aggregates_split_margins_by_class(self, southern_women, sw_partition):
        b, _ = southern_women
        agg = bipartite_community_aggregates(b, sw_partition)
        for c in range(sw_partition.k):
            assert agg.d[c] == pytest.approx(agg.d_u[c] + agg.d_v[c], abs=1e-12)
        assert math.fsum(agg.d) == pytest.approx(2.0 * b.m, abs=1e-12)


class TestBarber:
    def test_sw_reference_value(self, southern_women, sw_partition):
        b, _ = southern_women
        assert barber_modularity(b, sw_partition) == pytest.approx(
            SW_BARBER, abs=1e-12
        )

    @settings(deadline=None, max_examples=40)
    @given(st.integers(0, 10**6))
    def test_matches_dense_form(self, seed):
        rng = random.Random(seed)
        b = random_bip(rng, 4, 6, rng.randrange(1, 25))
        p = random_ids(rng, 10, 4)
        assert barber_modularity(b, p) == pytest.approx(
            oracles.barber_dense(b, p.assignment), abs=1e-12
        )

    def test_differs_from_bimodularity_in_general(self, southern_women, sw_partition):
        b, _ = southern_women
        assert barber_modularity(b, sw_partition) != bimodularity(b, sw_partition)


class TestDirected:
    def test_role_duplication_identity(self):
        rng = random.Random(13)
        d = random_digraph(rng, 5, 12)
        b, _ = directed_to_bipartite(d)
        p = random_ids(rng, 10, 3)
        assert directed_bimodularity(d, p) == bimodularity(b, p)

    @settings(deadline=None, max_examples=40)
    @given(st.integers(0, 10**6))
    def test_leicht_matches_double_sum(self, seed):
        rng = random.Random(seed)
        d = random_digraph(rng, 6, rng.randrange(2, 20))
        p = random_ids(rng, 6, 3)
        assert leicht_newman_modularity(d, p) == pytest.approx(
            oracles.leicht_dense(d, p.assignment), abs=1e-12
        )

    def test_leicht_whole_graph_zero_for_balanced_cycle(self):
        d = DirectedGraph(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])
        # intra weight m cancels the in*out product term exactly
        assert leicht_newman_modularity(d, [0, 0, 0]) == pytest.approx(0.0, abs=1e-15)

    def test_directed_partition_covers_roles(self):
        d = DirectedGraph(2, [(0, 1, 1.0)])
        with pytest.raises(PartitionMismatchError):
            directed_bimodularity(d, [0, 1])
        assert directed_bimodularity(d, [0, 0, 1, 0]) == pytest.approx(
            oracles.bimod_dense(directed_to_bipartite(d)[0], [0, 0, 1, 0]), abs=1e-15
        )


class TestCloneRoute:
    def test_clone_optimum_recovers_plain_grouping(self, karate, karate_clone):
        g, lm = karate
        b, block_lm = karate_clone
        block = bipartite_to_block(b, block_lm)
        plain = louvain(g).partition
        blockp = louvain(block.graph).partition
        n = g.node_count
        # clone halves agree and match the plain communities
        for i in range(n):
            assert blockp[i] == blockp[n + i]
        for i in range(n):
            for j in range(i + 1, n):
                assert (plain[i] == plain[j]) == (blockp[i] == blockp[j])

    def test_clone_bimodularity_equals_block_score(self, karate_clone):
        b, _ = karate_clone
        block = bipartite_to_block(b)
        p = louvain(block.graph).partition
        assert bimodularity(b, p) == newman_modularity(block.graph, p)
