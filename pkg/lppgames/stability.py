"""
Partitional stability of coalition structures.

A union U of blocks of P plays a reduced game in which the blocks outside U
are assumed to take their full demands first, leaving U the budget
r_U = (r - outsider demands)+. Under ``capped`` semantics every T inside U
may buy up to min(d_T, r_U); under ``block-level`` semantics only U itself
is capped and the coalitions inside it are not.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from lppgames.core import core_nonempty
from lppgames.demand import DemandEngine
from lppgames.exceptions import StructuralError
from lppgames.games import CharacteristicGame
from lppgames.lattice import Coalition, Partition, check_cap, enumerate_partitions
from lppgames.schemas import StabilityCertificate, StabilityReport, StabilitySemantics

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


@dataclass(frozen=True)
class ReducedGame:
    """Game of the players in ``ground``, relabelled 1..|U| in increasing order."""

    ground: Coalition
    budget: Fraction
    game: CharacteristicGame

    def local(self, coalition: Coalition) -> Coalition:
        """Translate a coalition inside the ground set to local labels."""
        if not coalition.issubset(self.ground):
            raise StructuralError(f"{coalition} is not inside {self.ground}")
        members = self.ground.members
        return Coalition.from_indices(members.index(i) for i in coalition.members)

    def worth(self, coalition: Coalition) -> Fraction:
        return self.game.worth(self.local(coalition))


@dataclass
class StabilityAnalyzer:
    """Reduced games and stability checks over one demand engine."""

    engine: DemandEngine
    semantics: StabilitySemantics = StabilitySemantics.CAPPED
    _games: dict[tuple[Fraction, int], ReducedGame] = field(default_factory=dict, repr=False)
    _cores: dict[tuple[Fraction, int], bool] = field(default_factory=dict, repr=False)

    def _budget(self, partition: Partition, ground: Coalition) -> Fraction:
        outsiders = sum(
            (self.engine.optimal_demand(block) for block in partition if block.isdisjoint(ground)),
            ZERO,
        )
        return max(self.engine.stock - outsiders, ZERO)

    def reduced_game(self, partition: Partition, ground: Coalition) -> ReducedGame:
        """Game reduced to a union of blocks of ``partition``.

        Raises:
            StructuralError: If ``ground`` is empty or cuts through a block.
        """
        if partition.n != self.engine.n:
            raise StructuralError(f"Partition has {partition.n} players, instance has {self.engine.n}")
        if ground.is_empty():
            raise StructuralError("Reduced games need a non-empty ground set")
        for block in partition:
            if not (block.issubset(ground) or block.isdisjoint(ground)):
                raise StructuralError(f"{ground} is not a union of blocks of {partition}")
        budget = self._budget(partition, ground)
        key = (budget, ground.mask)
        if key not in self._games:
            self._games[key] = self._build(ground, budget)
        return self._games[key]

    def _build(self, ground: Coalition, budget: Fraction) -> ReducedGame:
        engine = self.engine
        members = ground.members

        def worth(local: Coalition) -> Fraction:
            coalition = Coalition.from_indices(members[i] for i in local.members)
            demand = engine.optimal_demand(coalition)
            if self.semantics is StabilitySemantics.BLOCK_LEVEL and coalition != ground:
                return engine.value_of(coalition, demand)
            return engine.value_of(coalition, min(demand, budget))

        game = CharacteristicGame.from_function(len(members), worth, f"v^{ground.label(engine.n)}")
        return ReducedGame(ground, budget, game)

    def has_core(self, partition: Partition, ground: Coalition) -> bool:
        reduced = self.reduced_game(partition, ground)
        key = (reduced.budget, ground.mask)
        if key not in self._cores:
            self._cores[key] = core_nonempty(reduced.game).nonempty
        return self._cores[key]

    def is_partitionally_stable(self, partition: Partition) -> StabilityCertificate:
        """Every block's reduced game has a core and no merger of blocks has one.

        Raises:
            PartitionCapError: If n exceeds the partition cap.
        """
        check_cap(self.engine.n, self.engine.partition_cap)
        for block in partition:
            if not self.has_core(partition, block):
                return StabilityCertificate(
                    partition=str(partition), stable=False, condition=1, witness=str(block)
                )
        blocks = partition.blocks
        for size in range(2, len(blocks) + 1):
            for merged in combinations(blocks, size):
                ground = Coalition(sum(block.mask for block in merged))
                if self.has_core(partition, ground):
                    return StabilityCertificate(
                        partition=str(partition), stable=False, condition=2, witness=str(ground)
                    )
        return StabilityCertificate(partition=str(partition), stable=True)

    def stable_partitions(self) -> list[Partition]:
        """Every partitionally stable partition, in canonical order."""
        stable = [
            partition
            for partition in enumerate_partitions(self.engine.n, self.engine.partition_cap)
            if self.is_partitionally_stable(partition).stable
        ]
        logger.debug("%d stable partitions under %s semantics", len(stable), self.semantics.value)
        return stable

    def report(self) -> StabilityReport:
        certificates = [
            self.is_partitionally_stable(partition)
            for partition in enumerate_partitions(self.engine.n, self.engine.partition_cap)
        ]
        return StabilityReport(
            semantics=self.semantics,
            stable=[c.partition for c in certificates if c.stable],
            certificates=certificates,
        )
