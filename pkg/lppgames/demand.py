"""
Optimal demands of the common-pool resource and regime classification.

``DemandEngine`` bundles an instance with a ``DemandProfile``: the lazily
filled, write-once cache of coalition demands d_S. Demands do not depend on
the stock r, so engines for different stocks share one profile.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from lppgames.exceptions import DomainError, PreconditionError
from lppgames.lattice import (
    DEFAULT_PARTITION_CAP,
    Coalition,
    Partition,
    check_cap,
    enumerate_partitions,
)
from lppgames.model import coalition_program, purchase_objective
from lppgames.schemas import LPPInstance, Regime, RegimeReport
from lppgames.simplex import LPStatus, solve, solve_with_value_constraint

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


@dataclass
class DemandProfile:
    """Write-once map from coalition mask to (d_S, value(S; d_S))."""

    demands: dict[int, Fraction] = field(default_factory=dict)
    standalone: dict[int, Fraction] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def record(self, mask: int, demand: Fraction, value: Fraction) -> None:
        with self._lock:
            self.demands.setdefault(mask, demand)
            self.standalone.setdefault(mask, value)

    def __contains__(self, mask: int) -> bool:
        return mask in self.demands


class DemandEngine:
    """Coalition values, optimal demands and M^min for one instance."""

    def __init__(
        self,
        instance: LPPInstance,
        partition_cap: int = DEFAULT_PARTITION_CAP,
        profile: DemandProfile | None = None,
    ):
        self.instance = instance
        self.partition_cap = partition_cap
        self.profile = profile if profile is not None else DemandProfile()
        self._values: dict[tuple[int, Fraction], Fraction] = {}
        self._best: list[Fraction] | None = None
        self._best_strict: list[Fraction | None] | None = None
        self._regime: RegimeReport | None = None

    @property
    def n(self) -> int:
        return self.instance.n

    @property
    def stock(self) -> Fraction:
        return self.instance.stock

    @property
    def grand(self) -> Coalition:
        return Coalition.grand(self.n)

    def with_stock(self, stock: Fraction | int) -> DemandEngine:
        """Engine for the same situation with another stock, sharing the demand cache."""
        return DemandEngine(self.instance.with_stock(stock), self.partition_cap, self.profile)

    def value_of(self, coalition: Coalition, allocation: Fraction | int) -> Fraction:
        """value(S; z): best profit of S when it may use up to z units of the pool.

        Raises:
            DomainError: If ``allocation`` is negative.
        """
        z = Fraction(allocation)
        if z < 0:
            raise DomainError("z", z, "resource allocations must be nonnegative")
        key = (coalition.mask, z)
        cached = self._values.get(key)
        if cached is not None:
            return cached
        if coalition.mask in self.profile and z >= self.profile.demands[coalition.mask]:
            value = self.profile.standalone[coalition.mask]
        else:
            outcome = solve(coalition_program(self.instance, coalition, z))
            if not outcome.is_optimal or outcome.value is None:
                raise PreconditionError(
                    "value_of",
                    f"program of {coalition} is {outcome.status.value}",
                    "Run validate on the instance first",
                )
            value = outcome.value
        self._values[key] = value
        return value

    def optimal_demand(self, coalition: Coalition) -> Fraction:
        """d_S: the least purchase at which S reaches its unrestricted optimum."""
        mask = coalition.mask
        if mask not in self.profile:
            program = coalition_program(self.instance, coalition)
            outcome = solve(program)
            if outcome.status is not LPStatus.OPTIMAL or outcome.value is None:
                raise PreconditionError(
                    "optimal_demand",
                    f"program of {coalition} is {outcome.status.value}",
                    "Run validate on the instance first",
                )
            least = solve_with_value_constraint(
                program, outcome.value, purchase_objective(self.instance)
            )
            assert least.secondary_value is not None
            self.profile.record(mask, least.secondary_value, outcome.value)
            logger.debug("d_%s = %s (profit %s)", coalition.label(self.n), least.secondary_value, outcome.value)
        return self.profile.demands[mask]

    def standalone_value(self, coalition: Coalition) -> Fraction:
        """value(S; d_S), the optimum of the unrestricted program."""
        self.optimal_demand(coalition)
        return self.profile.standalone[coalition.mask]

    def fill(self) -> DemandProfile:
        """Compute the demand of every non-empty coalition."""
        check_cap(self.n, self.partition_cap)
        for mask in range(1, 1 << self.n):
            self.optimal_demand(Coalition(mask))
        return self.profile

    def partition_demand(self, partition: Partition) -> Fraction:
        """d(P), the total demand of the blocks."""
        return sum((self.optimal_demand(block) for block in partition), ZERO)

    def _refinement_tables(self) -> tuple[list[Fraction], list[Fraction | None]]:
        """Per coalition, the largest total demand over its partitions.

        ``best[S]`` ranges over every partition of S, ``best_strict[S]`` over
        those with at least two blocks (None for singletons).
        """
        if self._best is None or self._best_strict is None:
            self.fill()
            demands = self.profile.demands
            full = (1 << self.n) - 1
            best: list[Fraction] = [ZERO] * (full + 1)
            best_strict: list[Fraction | None] = [None] * (full + 1)
            for mask in range(1, full + 1):
                low = mask & -mask
                rest = mask ^ low
                top: Fraction | None = None
                top_strict: Fraction | None = None
                sub = rest
                while True:
                    block = sub | low
                    total = demands[block] + best[mask ^ block]
                    if top is None or total > top:
                        top = total
                    if block != mask and (top_strict is None or total > top_strict):
                        top_strict = total
                    if sub == 0:
                        break
                    sub = (sub - 1) & rest
                assert top is not None
                best[mask] = top
                best_strict[mask] = top_strict
            self._best, self._best_strict = best, best_strict
        return self._best, self._best_strict

    def max_refined_demand(self, coalition: Coalition) -> Fraction:
        """Largest d(P') over partitions P' of ``coalition`` (0 for the empty set)."""
        best, _ = self._refinement_tables()
        return best[coalition.mask]

    def max_strict_refined_demand(self, coalition: Coalition) -> Fraction | None:
        """Largest d(P') over partitions of ``coalition`` into two or more blocks."""
        _, best_strict = self._refinement_tables()
        return best_strict[coalition.mask]

    def is_minimal_over_demand(self, partition: Partition) -> bool:
        """d(P) > r while no strict refinement of P demands more than r."""
        stock = self.stock
        if self.partition_demand(partition) <= stock:
            return False
        best, best_strict = self._refinement_tables()
        block_best = [best[block.mask] for block in partition]
        total_best = sum(block_best, ZERO)
        for block, own in zip(partition, block_best):
            strict = best_strict[block.mask]
            if strict is not None and total_best - own + strict > stock:
                return False
        return True

    def compute_m_min(self) -> RegimeReport:
        """Refinement-minimal partitions whose demand exceeds r, and the regime.

        Raises:
            PartitionCapError: If n exceeds the partition cap.
        """
        if self._regime is None:
            check_cap(self.n, self.partition_cap)
            m_min = tuple(
                partition
                for partition in enumerate_partitions(self.n, self.partition_cap)
                if self.is_minimal_over_demand(partition)
            )
            if not m_min:
                regime = Regime.UNCONSTRAINED
            elif len(m_min) == 1 and len(m_min[0]) == 1:
                regime = Regime.GRAND_ONLY
            else:
                regime = Regime.GENERAL
            logger.debug("Regime %s with %d minimal partitions", regime.value, len(m_min))
            self._regime = RegimeReport(
                regime=regime,
                m_min=m_min,
                stock=self.stock,
                grand_demand=self.optimal_demand(self.grand),
            )
        return self._regime

    def positivity_scan(self, coalition: Coalition, z_star: Fraction | int, grid: int) -> bool:
        """Check value(S; k z*/grid) > 0 for k = 1..grid-1.

        Raises:
            DomainError: If grid < 1 or value(S; z*) is not positive.
        """
        z_star = Fraction(z_star)
        if grid < 1:
            raise DomainError("grid", grid, "the scan needs at least one step")
        if self.value_of(coalition, z_star) <= 0:
            raise DomainError("z_star", z_star, f"value({coalition}; z*) must be positive")
        return all(self.value_of(coalition, z_star * k / grid) > 0 for k in range(1, grid))
