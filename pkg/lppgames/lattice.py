"""
Coalitions, partitions and the partition lattice.

Players are 0-based internally and 1-based in every label shown to users.
A coalition is a bitmask over the players; a partition is a canonical tuple
of disjoint coalitions covering the ground set, ordered by smallest member.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from lppgames.exceptions import PartitionCapError, StructuralError

DEFAULT_PARTITION_CAP = 10


@dataclass(frozen=True, order=True)
class Coalition:
    """Set of players stored as a bitmask."""

    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0:
            raise StructuralError(f"Coalition mask must be nonnegative, got {self.mask}")

    @classmethod
    def of(cls, *labels: int) -> Coalition:
        """Coalition from 1-based player labels: ``Coalition.of(1, 3)``."""
        mask = 0
        for label in labels:
            if label < 1:
                raise StructuralError(f"Player labels start at 1, got {label}")
            mask |= 1 << (label - 1)
        return cls(mask)

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> Coalition:
        mask = 0
        for index in indices:
            mask |= 1 << index
        return cls(mask)

    @classmethod
    def grand(cls, n: int) -> Coalition:
        return cls((1 << n) - 1)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Coalition:
        """Parse ``"1,3"``, ``"13"`` or ``"{1,3}"`` into a coalition.

        Without commas each digit is a player, unless ``n`` reaches 10: then
        the whole text is one label, so ``"12"`` is player 12.
        """
        cleaned = text.strip().strip("{}")
        if not cleaned:
            return cls(0)
        try:
            if "," in cleaned:
                labels = [int(part) for part in cleaned.split(",")]
            elif n is not None and n >= 10:
                labels = [int(cleaned)]
            else:
                labels = [int(ch) for ch in cleaned]
        except ValueError:
            raise StructuralError(f"Cannot read coalition '{text}'")
        return cls.of(*labels)

    @property
    def members(self) -> tuple[int, ...]:
        """0-based member indices in increasing order."""
        return tuple(i for i in range(self.mask.bit_length()) if self.mask >> i & 1)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.members)

    @property
    def smallest(self) -> int:
        return (self.mask & -self.mask).bit_length() - 1

    def is_empty(self) -> bool:
        return self.mask == 0

    def issubset(self, other: Coalition) -> bool:
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: Coalition) -> bool:
        return self.mask & other.mask == 0

    def label(self, n: int | None = None) -> str:
        """Concatenated 1-based labels; comma-separated once ``n`` reaches 10.

        Without ``n`` the coalition's own largest label decides.
        """
        labels = self.labels
        widest = n if n is not None else (labels[-1] if labels else 0)
        sep = "," if widest >= 10 else ""
        return sep.join(str(label) for label in labels)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def __or__(self, other: Coalition) -> Coalition:
        return Coalition(self.mask | other.mask)

    def __and__(self, other: Coalition) -> Coalition:
        return Coalition(self.mask & other.mask)

    def __sub__(self, other: Coalition) -> Coalition:
        return Coalition(self.mask & ~other.mask)

    def __str__(self) -> str:
        return "{" + ",".join(str(label) for label in self.labels) + "}"


def submasks(mask: int) -> Iterator[int]:
    """Non-empty submasks of ``mask`` in decreasing numeric order."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def coalitions(n: int) -> Iterator[Coalition]:
    """All non-empty coalitions of ``n`` players in increasing mask order."""
    for mask in range(1, 1 << n):
        yield Coalition(mask)


@dataclass(frozen=True)
class Partition:
    """Coalition structure: disjoint non-empty blocks covering ``n`` players."""

    blocks: tuple[Coalition, ...]
    n: int

    def __post_init__(self) -> None:
        seen = 0
        for block in self.blocks:
            if block.is_empty():
                raise StructuralError("Partition blocks must be non-empty")
            if block.mask & seen:
                raise StructuralError(f"Block {block} overlaps another block")
            seen |= block.mask
        if seen != (1 << self.n) - 1:
            raise StructuralError(f"Blocks do not cover the {self.n} players exactly")
        ordered = tuple(sorted(self.blocks, key=lambda block: block.smallest))
        object.__setattr__(self, "blocks", ordered)

    @classmethod
    def of(cls, n: int, *blocks: Iterable[int]) -> Partition:
        """Partition from 1-based label groups: ``Partition.of(3, [1, 2], [3])``."""
        return cls(tuple(Coalition.of(*block) for block in blocks), n)

    @classmethod
    def grand(cls, n: int) -> Partition:
        return cls((Coalition.grand(n),), n) if n else cls((), 0)

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(tuple(Coalition(1 << i) for i in range(n)), n)

    @classmethod
    def parse(cls, text: str, n: int) -> Partition:
        """Parse the canonical text form ``{1,2}{3}``."""
        chunks = [chunk for chunk in text.replace(" ", "").split("}") if chunk]
        if not all(chunk.startswith("{") for chunk in chunks):
            raise StructuralError(f"Cannot read partition '{text}'")
        return cls(tuple(Coalition.parse(chunk + "}", n) for chunk in chunks), n)

    @property
    def ground(self) -> Coalition:
        return Coalition.grand(self.n)

    def block_of(self, index: int) -> Coalition:
        for block in self.blocks:
            if index in block:
                return block
        raise StructuralError(f"Player {index + 1} is not in the ground set")

    def others(self, block: Coalition) -> tuple[Coalition, ...]:
        return tuple(other for other in self.blocks if other != block)

    def refines(self, other: Partition) -> bool:
        return is_refinement(self, other)

    def __contains__(self, coalition: object) -> bool:
        return coalition in self.blocks

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[Coalition]:
        return iter(self.blocks)

    def __str__(self) -> str:
        return "".join(str(block) for block in self.blocks)


@dataclass(frozen=True)
class EmbeddedCoalition:
    """A coalition together with the partition it is a block of."""

    coalition: Coalition
    partition: Partition

    def __post_init__(self) -> None:
        if self.coalition not in self.partition:
            raise StructuralError(f"{self.coalition} is not a block of {self.partition}")

    def __str__(self) -> str:
        return f"{self.coalition.label(self.partition.n)}|{self.partition}"


def check_cap(n: int, cap: int = DEFAULT_PARTITION_CAP) -> None:
    if n > cap:
        raise PartitionCapError(n, cap)


def _restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """Restricted growth strings of length n in lexicographic order."""
    if n == 0:
        yield []
        return
    word = [0] * n
    ceiling = [0] + [1] * (n - 1)  # ceiling[i] = max(word[:i]) + 1 for i >= 1
    while True:
        yield word
        i = n - 1
        while i > 0 and word[i] == ceiling[i]:
            i -= 1
        if i == 0:
            return
        word[i] += 1
        top = max(ceiling[i], word[i] + 1) if word[i] == ceiling[i] else ceiling[i]
        for k in range(i + 1, n):
            word[k] = 0
            ceiling[k] = top


def enumerate_partitions(n: int, cap: int = DEFAULT_PARTITION_CAP) -> Iterator[Partition]:
    """Yield every partition of ``n`` players exactly once, in canonical order.

    Raises:
        PartitionCapError: If ``n`` exceeds ``cap``.
    """
    check_cap(n, cap)
    for word in _restricted_growth_strings(n):
        masks = [0] * (max(word) + 1 if word else 0)
        for player, block in enumerate(word):
            masks[block] |= 1 << player
        yield Partition(tuple(Coalition(mask) for mask in masks), n)


def partitions_of(coalition: Coalition) -> Iterator[tuple[Coalition, ...]]:
    """Every partition of a coalition's members, as tuples of blocks."""
    members = coalition.members
    for word in _restricted_growth_strings(len(members)):
        masks = [0] * (max(word) + 1 if word else 0)
        for position, block in enumerate(word):
            masks[block] |= 1 << members[position]
        yield tuple(Coalition(mask) for mask in masks)


def is_refinement(finer: Partition, coarser: Partition) -> bool:
    """True iff every block of ``finer`` lies inside some block of ``coarser``.

    Raises:
        StructuralError: If the partitions have different ground sets.
    """
    if finer.n != coarser.n:
        raise StructuralError(
            f"Partitions over {finer.n} and {coarser.n} players are not comparable"
        )
    return all(any(block.issubset(big) for big in coarser.blocks) for block in finer.blocks)


def bell_number(n: int) -> int:
    """Number of partitions of an n-set (Bell triangle)."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]
