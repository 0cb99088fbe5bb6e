"""
Unit tests for coalitions, partitions and partition enumeration.
"""

import pytest

from lppgames.exceptions import PartitionCapError, StructuralError
from lppgames.lattice import (
    Coalition,
    EmbeddedCoalition,
    Partition,
    bell_number,
    check_cap,
    coalitions,
    enumerate_partitions,
    is_refinement,
    partitions_of,
    submasks,
)


class TestCoalition:
    """Test coalition construction and set operations."""

    def test_of_labels(self):
        """Test 1-based labels map to bits."""
        coalition = Coalition.of(1, 3)
        assert coalition.mask == 0b101
        assert coalition.members == (0, 2)
        assert coalition.labels == (1, 3)
        assert len(coalition) == 2

    def test_label_zero_rejected(self):
        """Test labels start at 1."""
        with pytest.raises(StructuralError):
            Coalition.of(0)

    def test_negative_mask_rejected(self):
        """Test masks are nonnegative."""
        with pytest.raises(StructuralError):
            Coalition(-1)

    @pytest.mark.parametrize("text", ["1,3", "13", "{1,3}", " {1, 3} "])
    def test_parse_forms(self, text: str):
        """Test every accepted spelling of {1,3}."""
        assert Coalition.parse(text) == Coalition.of(1, 3)

    def test_parse_garbage(self):
        """Test unreadable coalitions raise."""
        with pytest.raises(StructuralError, match="Cannot read"):
            Coalition.parse("1,x")

    def test_text_forms(self):
        """Test compact labels and braces."""
        assert Coalition.of(1, 2).label() == "12"
        assert Coalition.of(1, 10).label() == "1,10"
        assert str(Coalition.of(2, 3)) == "{2,3}"

    def test_labels_sized_by_player_count(self):
        """Test ten or more players always get comma-separated labels."""
        assert Coalition.of(1, 2).label(12) == "1,2"
        assert Coalition.of(12).label(12) == "12"
        assert Coalition.of(1, 2).label(9) == "12"
        assert Coalition.parse("12", 12) == Coalition.of(12)
        assert Coalition.parse("12", 9) == Coalition.of(1, 2)
        assert Coalition.parse("1,2", 12) == Coalition.of(1, 2)

    def test_partition_parse_many_players(self):
        """Test single-block text reads as one player past nine."""
        text = "{1,2,3,4,5,6,7,8,9,10,11}{12}"
        partition = Partition.parse(text, 12)
        assert Coalition.of(12) in partition
        assert str(partition) == text

    def test_set_operations(self):
        """Test union, intersection, difference and containment."""
        a, b = Coalition.of(1, 2), Coalition.of(2, 3)
        assert a | b == Coalition.of(1, 2, 3)
        assert a & b == Coalition.of(2)
        assert a - b == Coalition.of(1)
        assert Coalition.of(2).issubset(a)
        assert Coalition.of(1).isdisjoint(Coalition.of(3))
        assert 0 in a
        assert 2 not in a

    def test_smallest_and_grand(self):
        """Test the smallest member and the grand coalition."""
        assert Coalition.of(2, 3).smallest == 1
        assert Coalition.grand(3).labels == (1, 2, 3)
        assert Coalition(0).is_empty()

    def test_submasks_and_coalitions(self):
        """Test subset iteration."""
        assert sorted(submasks(0b101)) == [0b001, 0b100, 0b101]
        assert len(list(coalitions(3))) == 7


class TestPartition:
    """Test partition validation and canonical form."""

    def test_canonical_order(self):
        """Test blocks are sorted by smallest member."""
        partition = Partition((Coalition.of(3), Coalition.of(1, 2)), 3)
        assert partition.blocks == (Coalition.of(1, 2), Coalition.of(3))
        assert str(partition) == "{1,2}{3}"

    def test_overlap_rejected(self):
        """Test overlapping blocks raise."""
        with pytest.raises(StructuralError, match="overlaps"):
            Partition.of(3, [1, 2], [2, 3])

    def test_cover_required(self):
        """Test blocks must cover every player."""
        with pytest.raises(StructuralError, match="cover"):
            Partition.of(3, [1, 2])

    def test_parse_round_trip(self):
        """Test the canonical text form parses back."""
        partition = Partition.parse("{3}{1,2}", 3)
        assert partition == Partition.of(3, [1, 2], [3])
        assert Partition.parse(str(partition), 3) == partition

    def test_parse_garbage(self):
        """Test malformed partitions raise."""
        with pytest.raises(StructuralError):
            Partition.parse("1,2}{3}", 3)

    def test_grand_and_singletons(self):
        """Test the two extreme partitions."""
        assert len(Partition.grand(3)) == 1
        assert len(Partition.singletons(3)) == 3
        assert Partition.singletons(3).refines(Partition.grand(3))

    def test_block_of_and_others(self):
        """Test block lookup."""
        partition = Partition.of(3, [1, 3], [2])
        assert partition.block_of(2) == Coalition.of(1, 3)
        assert partition.others(Coalition.of(2)) == (Coalition.of(1, 3),)
        assert Coalition.of(2) in partition


class TestEnumeration:
    """Test restricted-growth-string enumeration."""

    @pytest.mark.parametrize(("n", "expected"), [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
    def test_counts_match_bell_numbers(self, n: int, expected: int):
        """Test the number of partitions."""
        partitions = list(enumerate_partitions(n))
        assert len(partitions) == expected == bell_number(n)
        assert len(set(partitions)) == expected

    def test_canonical_order(self):
        """Test lexicographic order of the growth strings."""
        names = [str(p) for p in enumerate_partitions(3)]
        assert names == ["{1,2,3}", "{1,2}{3}", "{1,3}{2}", "{1}{2,3}", "{1}{2}{3}"]

    def test_cap(self):
        """Test enumeration refuses past the cap."""
        with pytest.raises(PartitionCapError):
            next(enumerate_partitions(11))
        with pytest.raises(PartitionCapError, match="cap of 2"):
            check_cap(3, 2)

    def test_bell_ten(self):
        """Test the count at the default cap."""
        assert bell_number(10) == 115975

    def test_partitions_of_coalition(self):
        """Test partitions of a sub-coalition use its own members."""
        parts = list(partitions_of(Coalition.of(1, 3)))
        assert parts == [(Coalition.of(1, 3),), (Coalition.of(1), Coalition.of(3))]


class TestRefinement:
    """Test the refinement order."""

    def test_refinement(self):
        """Test a finer and a crossing partition."""
        coarse = Partition.of(3, [1, 2], [3])
        assert is_refinement(Partition.singletons(3), coarse)
        assert is_refinement(coarse, coarse)
        assert not is_refinement(Partition.of(3, [1, 3], [2]), coarse)

    def test_mismatched_ground_sets(self):
        """Test partitions of different sizes are not comparable."""
        with pytest.raises(StructuralError, match="not comparable"):
            is_refinement(Partition.grand(2), Partition.grand(3))


class TestEmbeddedCoalition:
    """Test embedded coalitions."""

    def test_text_form(self):
        """Test the S|P text form."""
        embedded = EmbeddedCoalition(Coalition.of(1, 2), Partition.of(3, [1, 2], [3]))
        assert str(embedded) == "12|{1,2}{3}"

    def test_must_be_block(self):
        """Test S must be a block of P."""
        with pytest.raises(StructuralError, match="not a block"):
            EmbeddedCoalition(Coalition.of(1), Partition.grand(2))
