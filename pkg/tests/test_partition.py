import pytest
from hypothesis import given, strategies as st

from unicom import Partition, renumber

from oracles import contiguous


class TestPartition:
    def test_basic_accessors(self):
        p = Partition([0, 1, 0, 2])
        assert p.k == 3
        assert len(p) == 4
        assert p[2] == 0
        assert p.communities() == [[0, 2], [1], [3]]
        assert p.sizes() == [2, 1, 1]

    def test_equality_and_hash(self):
        assert Partition([0, 1]) == Partition([0, 1])
        assert Partition([0, 1]) != Partition([0, 0])
        assert hash(Partition([0, 1, 1])) == hash(Partition([0, 1, 1]))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Partition([])

    @pytest.mark.parametrize("bad", [[1], [0, 2], [-1, 0], [0, 1, 3]])
    def test_non_contiguous_rejected(self, bad):
        with pytest.raises(ValueError):
            Partition(bad)


class TestRenumber:
    def test_first_appearance_order(self):
        p = renumber([7, 3, 7, 9])
        assert p.assignment == [0, 1, 0, 2]

    def test_already_contiguous_is_identity(self):
        p = renumber([0, 1, 2, 1])
        assert p.assignment == [0, 1, 2, 1]

    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=60))
    def test_matches_reference_renumbering(self, ids):
        assert renumber(ids).assignment == contiguous(ids)

    @given(st.lists(st.integers(0, 8), min_size=1, max_size=40))
    def test_preserves_grouping(self, ids):
        p = renumber(ids)
        n = len(ids)
        for i in range(n):
            for j in range(i + 1, n):
                assert (ids[i] == ids[j]) == (p[i] == p[j])
