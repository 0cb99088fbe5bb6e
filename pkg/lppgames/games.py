"""
Cooperative games built from an LPP situation.

Characteristic games are dense tuples indexed by coalition bitmask with
``worths[0] == 0``. Partition function games map every embedded coalition
(S|P) to the profit S makes with the share z_S(P) an allocation rule grants it.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from lppgames.demand import DemandEngine
from lppgames.exceptions import (
    DomainError,
    PreconditionError,
    RegimeRefusalError,
    RuleViolationError,
    StructuralError,
)
from lppgames.lattice import Coalition, EmbeddedCoalition, Partition, check_cap, enumerate_partitions
from lppgames.schemas import RULE_NAMES, InstanceDocument, ModelSelector, Regime

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


def _ordered_masks(n: int) -> list[int]:
    """Non-empty masks by size, then by member labels."""
    return sorted(range(1, 1 << n), key=lambda mask: (bin(mask).count("1"), Coalition(mask).labels))


@dataclass(frozen=True)
class CharacteristicGame:
    """Worth of every coalition of ``n`` players."""

    n: int
    worths: tuple[Fraction, ...]
    name: str = "v"

    def __post_init__(self) -> None:
        if len(self.worths) != 1 << self.n:
            raise StructuralError(
                f"A game on {self.n} players needs {1 << self.n} worths, got {len(self.worths)}"
            )
        if self.worths[0] != 0:
            raise StructuralError("The empty coalition must be worth 0")

    @classmethod
    def from_function(
        cls, n: int, worth: Callable[[Coalition], Fraction], name: str = "v"
    ) -> CharacteristicGame:
        return cls(n, (ZERO,) + tuple(Fraction(worth(Coalition(m))) for m in range(1, 1 << n)), name)

    @classmethod
    def from_labels(cls, n: int, values: Mapping[str, Fraction], name: str = "R") -> CharacteristicGame:
        """Game from label keys such as ``"1"``, ``"12"`` or ``"1,10"``.

        Raises:
            StructuralError: If a coalition is missing, repeated or out of range.
        """
        worths: dict[int, Fraction] = {}
        for label, value in values.items():
            coalition = Coalition.parse(label, n)
            if coalition.is_empty() or coalition.mask >> n:
                raise StructuralError(f"'{label}' is not a coalition of {n} players")
            if coalition.mask in worths:
                raise StructuralError(f"Coalition {coalition} is given twice")
            worths[coalition.mask] = Fraction(value)
        missing = [Coalition(m).label(n) for m in _ordered_masks(n) if m not in worths]
        if missing:
            raise StructuralError(f"{name} has no worth for coalitions {', '.join(missing)}")
        return cls(n, (ZERO,) + tuple(worths[m] for m in range(1, 1 << n)), name)

    def worth(self, coalition: Coalition) -> Fraction:
        return self.worths[coalition.mask]

    @property
    def grand_worth(self) -> Fraction:
        return self.worths[-1]

    def items(self) -> Iterable[tuple[Coalition, Fraction]]:
        """Non-empty coalitions and worths, smallest coalitions first."""
        for mask in _ordered_masks(self.n):
            yield Coalition(mask), self.worths[mask]

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "name": self.name,
            "v": {coalition.label(self.n): str(value) for coalition, value in self.items()},
        }


@dataclass(frozen=True)
class PartitionFunctionGame:
    """Worth V(S|P) of every embedded coalition, with the shares that produced it."""

    n: int
    worths: Mapping[EmbeddedCoalition, Fraction]
    rule_name: str
    allocations: Mapping[EmbeddedCoalition, Fraction]

    def worth(self, coalition: Coalition, partition: Partition) -> Fraction:
        return self.worths[EmbeddedCoalition(coalition, partition)]

    def embedded_worths(self, coalition: Coalition) -> list[Fraction]:
        """V(S|P) over every partition P having S as a block."""
        return [value for key, value in self.worths.items() if key.coalition == coalition]

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "rule": self.rule_name,
            "V": {str(key): str(value) for key, value in self.worths.items()},
            "z": {str(key): str(value) for key, value in self.allocations.items()},
        }


RuleFunction = Callable[[Partition, Coalition, DemandEngine], Fraction]


@dataclass(frozen=True)
class AllocationRule:
    """Named way of sharing the stock among the blocks of a partition."""

    name: str
    function: RuleFunction

    def __call__(self, partition: Partition, block: Coalition, engine: DemandEngine) -> Fraction:
        return self.function(partition, block, engine)


def _proportional(partition: Partition, block: Coalition, engine: DemandEngine) -> Fraction:
    demand = engine.optimal_demand(block)
    total = engine.partition_demand(partition)
    if total <= engine.stock:
        return demand
    return engine.stock * demand / total


def _optimistic_embedded(partition: Partition, block: Coalition, engine: DemandEngine) -> Fraction:
    stock = engine.stock
    claims = {other: min(engine.optimal_demand(other), stock) for other in partition}
    total = sum(claims.values(), ZERO)
    if total <= stock:
        return claims[block]
    return stock * claims[block] / total


def _pessimistic_embedded(partition: Partition, block: Coalition, engine: DemandEngine) -> Fraction:
    outsiders = sum((engine.optimal_demand(other) for other in partition.others(block)), ZERO)
    return min(engine.optimal_demand(block), max(engine.stock - outsiders, ZERO))


BUILTIN_RULES: dict[str, AllocationRule] = {
    rule.name: rule
    for rule in (
        AllocationRule("proportional", _proportional),
        AllocationRule("optimistic-embedded", _optimistic_embedded),
        AllocationRule("pessimistic-embedded", _pessimistic_embedded),
    )
}


def get_rule(name: str) -> AllocationRule:
    try:
        return BUILTIN_RULES[name]
    except KeyError:
        raise DomainError("rule", name, f"known rules are {', '.join(RULE_NAMES)}")


def characteristic_game(engine: DemandEngine) -> CharacteristicGame:
    """v(S) = value(S; d_S) for S != N and v(N) = value(N; min(d_N, r)).

    Raises:
        RegimeRefusalError: In the general regime, naming M^min.
    """
    report = engine.compute_m_min()
    if report.regime is Regime.GENERAL:
        raise RegimeRefusalError(report.regime.value, [str(p) for p in report.m_min])
    grand = engine.grand

    def worth(coalition: Coalition) -> Fraction:
        if coalition == grand:
            return engine.value_of(grand, min(engine.optimal_demand(grand), engine.stock))
        return engine.standalone_value(coalition)

    return CharacteristicGame.from_function(engine.n, worth, "v")


def optimistic_resource_game(engine: DemandEngine) -> CharacteristicGame:
    """R^opt(S) = min(d_S, r)."""
    return CharacteristicGame.from_function(
        engine.n, lambda s: min(engine.optimal_demand(s), engine.stock), "R^opt"
    )


def pessimistic_resource_game(engine: DemandEngine) -> CharacteristicGame:
    """R^pes(S): what is left for S once the outsiders take the most they could demand.

    The largest outsider demand over partitions of N minus S comes from the
    refinement tables, so no partition is enumerated explicitly.
    """
    check_cap(engine.n, engine.partition_cap)
    grand = engine.grand

    def worth(coalition: Coalition) -> Fraction:
        leftover = max(engine.stock - engine.max_refined_demand(grand - coalition), ZERO)
        return min(leftover, engine.optimal_demand(coalition))

    return CharacteristicGame.from_function(engine.n, worth, "R^pes")


def lpp_game_from_resource_game(
    engine: DemandEngine, resource_game: CharacteristicGame, name: str = "v^R"
) -> CharacteristicGame:
    """v^R(S) = value(S; R(S)).

    Raises:
        DomainError: If some R(S) lies outside [0, r].
    """
    if resource_game.n != engine.n:
        raise StructuralError(f"Resource game has {resource_game.n} players, instance has {engine.n}")
    for coalition, amount in resource_game.items():
        if amount < 0 or amount > engine.stock:
            raise DomainError(
                f"{resource_game.name}({coalition.label(engine.n)})", amount, f"must lie in [0, r = {engine.stock}]"
            )
    return CharacteristicGame.from_function(
        engine.n, lambda s: engine.value_of(s, resource_game.worth(s)), name
    )


def optimistic_game(engine: DemandEngine) -> CharacteristicGame:
    return lpp_game_from_resource_game(engine, optimistic_resource_game(engine), "v^opt")


def pessimistic_game(engine: DemandEngine) -> CharacteristicGame:
    return lpp_game_from_resource_game(engine, pessimistic_resource_game(engine), "v^pes")


def partition_function_game(engine: DemandEngine, rule: AllocationRule) -> PartitionFunctionGame:
    """V(S|P) = value(S; z_S(P)) for every partition P and block S.

    Raises:
        RuleViolationError: If the rule hands a partition more than r in total
            or some block a negative share.
    """
    worths: dict[EmbeddedCoalition, Fraction] = {}
    allocations: dict[EmbeddedCoalition, Fraction] = {}
    for partition in enumerate_partitions(engine.n, engine.partition_cap):
        shares = {block: Fraction(rule(partition, block, engine)) for block in partition}
        for block, share in shares.items():
            if share < 0:
                raise RuleViolationError(rule.name, str(partition), f"{block} gets {share} < 0")
        total = sum(shares.values(), ZERO)
        if total > engine.stock:
            raise RuleViolationError(
                rule.name, str(partition), f"total {total} exceeds r = {engine.stock}"
            )
        for block, share in shares.items():
            key = EmbeddedCoalition(block, partition)
            allocations[key] = share
            worths[key] = engine.value_of(block, share)
    logger.debug("Built partition function game with rule %s (%d entries)", rule.name, len(worths))
    return PartitionFunctionGame(engine.n, worths, rule.name, allocations)


def pessimistic_and_optimistic_views(
    game: PartitionFunctionGame,
) -> tuple[CharacteristicGame, CharacteristicGame]:
    """(v^-, v^+): per coalition the least and the largest embedded worth."""
    low: dict[int, Fraction] = {}
    high: dict[int, Fraction] = {}
    for key, value in game.worths.items():
        mask = key.coalition.mask
        low[mask] = min(low.get(mask, value), value)
        high[mask] = max(high.get(mask, value), value)
    n = game.n
    lower = CharacteristicGame(n, (ZERO,) + tuple(low[m] for m in range(1, 1 << n)), "v^-")
    upper = CharacteristicGame(n, (ZERO,) + tuple(high[m] for m in range(1, 1 << n)), "v^+")
    return lower, upper


def bankruptcy_game(estate: Fraction | int, claims: Iterable[Fraction | int]) -> CharacteristicGame:
    """w(S) = max(E - claims of the players outside S, 0).

    Raises:
        DomainError: If the estate or a claim is negative, or the claims do
            not cover the estate.
    """
    estate = Fraction(estate)
    claims = tuple(Fraction(c) for c in claims)
    if estate < 0:
        raise DomainError("E", estate, "the estate must be nonnegative")
    for i, claim in enumerate(claims):
        if claim < 0:
            raise DomainError(f"claims[{i + 1}]", claim, "claims must be nonnegative")
    if sum(claims, ZERO) < estate:
        raise DomainError("claims", sum(claims, ZERO), f"claims must add up to at least E = {estate}")
    n = len(claims)
    total = sum(claims, ZERO)

    def worth(coalition: Coalition) -> Fraction:
        inside = sum((claims[i] for i in coalition.members), ZERO)
        return max(estate - (total - inside), ZERO)

    return CharacteristicGame.from_function(n, worth, "w")


def demand_bankruptcy_game(engine: DemandEngine) -> CharacteristicGame:
    """Bankruptcy game with the stock as estate and singleton demands as claims."""
    claims = [engine.optimal_demand(Coalition(1 << i)) for i in range(engine.n)]
    return bankruptcy_game(engine.stock, claims)


def equal_share_resource_game(engine: DemandEngine) -> tuple[CharacteristicGame, tuple[Fraction, ...]]:
    """R(S) = min(r|S|/n, d_S) with R(N) = r, and the equal split u = r/n.

    ``u`` lies in the core of this R by construction.
    """
    n, stock = engine.n, engine.stock
    grand = engine.grand

    def worth(coalition: Coalition) -> Fraction:
        if coalition == grand:
            return stock
        return min(stock * len(coalition) / n, engine.optimal_demand(coalition))

    game = CharacteristicGame.from_function(n, worth, "R")
    return game, tuple(stock / n for _ in range(n))


def supplied_resource_game(engine: DemandEngine, document: InstanceDocument) -> CharacteristicGame:
    """The resource game stored in an instance file.

    Raises:
        PreconditionError: If the file carries no resource game.
    """
    if document.resource_game is None:
        raise PreconditionError(
            "supplied_resource_game",
            "the instance file has no \"R\" entry",
            'Add "R": {"1": ..., "12": ...} to the instance file',
        )
    return CharacteristicGame.from_labels(engine.n, document.resource_game, "R")


def build_model_game(
    engine: DemandEngine,
    selector: ModelSelector,
    rule_name: str | None = None,
    document: InstanceDocument | None = None,
) -> CharacteristicGame | PartitionFunctionGame:
    """Dispatch a model selector to its builder."""
    if selector is ModelSelector.CHARACTERISTIC:
        return characteristic_game(engine)
    if selector is ModelSelector.OPTIMISTIC:
        return optimistic_game(engine)
    if selector is ModelSelector.PESSIMISTIC:
        return pessimistic_game(engine)
    if selector is ModelSelector.RESOURCE_OPT:
        return optimistic_resource_game(engine)
    if selector is ModelSelector.RESOURCE_PES:
        return pessimistic_resource_game(engine)
    if selector is ModelSelector.PARTITION:
        return partition_function_game(engine, get_rule(rule_name or RULE_NAMES[0]))
    if selector is ModelSelector.BANKRUPTCY:
        return demand_bankruptcy_game(engine)
    if document is None:
        raise PreconditionError(selector.value, "needs the instance file's resource game")
    resource = supplied_resource_game(engine, document)
    if selector is ModelSelector.SUPPLIED_RESOURCE:
        return resource
    return lpp_game_from_resource_game(engine, resource, "v^R")
