"""
Seeded random LPP instances in a requested regime.

Technology, endowments, cost and prices are drawn as small integers that
satisfy the modelling assumptions by construction. The stock r is then
placed relative to the refinement demands of the grand coalition so the
instance lands in the requested regime, and compute_m_min confirms it.
"""

from __future__ import annotations

import logging
import random
from fractions import Fraction

from lppgames.demand import DemandEngine
from lppgames.exceptions import DomainError, GenerationError
from lppgames.lattice import DEFAULT_PARTITION_CAP, check_cap
from lppgames.model import validate_instance
from lppgames.schemas import GeneratorConfig, LPPInstance, Regime

logger = logging.getLogger(__name__)


class InstanceGenerator:
    """Deterministic instance source: equal seeds give equal instances."""

    def __init__(
        self,
        seed: int,
        config: GeneratorConfig | None = None,
        partition_cap: int = DEFAULT_PARTITION_CAP,
    ):
        self.seed = seed
        self.config = config or GeneratorConfig()
        self.partition_cap = partition_cap
        self.rng = random.Random(seed)

    def draw_situation(self, n: int, q: int, g: int) -> LPPInstance:
        """Random situation with a placeholder stock of 1."""
        rng, cfg = self.rng, self.config
        full_row = rng.randrange(q)
        technology = [
            [
                rng.randint(1 if t == full_row else 0, cfg.max_technology_entry)
                for _ in range(g)
            ]
            for t in range(q)
        ]
        pool = [rng.randint(1, cfg.max_technology_entry) for _ in range(g)]
        endowments = []
        for _ in range(q):
            row = [rng.randint(0, cfg.max_endowment_entry) for _ in range(n)]
            if not any(row):
                row[rng.randrange(n)] = rng.randint(1, cfg.max_endowment_entry)
            endowments.append(row)
        unit_cost = rng.randint(0, cfg.max_unit_cost)
        prices = [a * unit_cost + rng.randint(1, 10) for a in pool]
        return LPPInstance(A=technology + [pool], B=endowments, p=prices, c=unit_cost, r=1)

    def _place_stock(self, engine: DemandEngine, regime: Regime) -> Fraction | None:
        grand = engine.grand
        demand = engine.optimal_demand(grand)
        strict = engine.max_strict_refined_demand(grand)
        if regime is Regime.UNCONSTRAINED:
            return engine.max_refined_demand(grand)
        if regime is Regime.GRAND_ONLY:
            floor = strict if strict is not None else demand / 2
            if demand <= floor:
                return None
            return floor + (demand - floor) * self.rng.randrange(10) / 10
        if strict is None:
            return None
        return strict * self.rng.randint(1, 9) / 10

    def generate(self, n: int, q: int, g: int, regime: Regime) -> LPPInstance:
        """Draw until an instance passes validation and lands in ``regime``.

        Raises:
            DomainError: If a dimension is below 1.
            GenerationError: If ``generator.max_attempts`` draws all miss.
        """
        for name, size in (("n", n), ("q", q), ("g", g)):
            if size < 1:
                raise DomainError(name, size, "dimensions must be at least 1")
        check_cap(n, self.partition_cap)
        if regime is Regime.GENERAL and n == 1:
            raise GenerationError(regime.value, 0)

        for attempt in range(1, self.config.max_attempts + 1):
            situation = self.draw_situation(n, q, g)
            if validate_instance(situation):
                continue
            engine = DemandEngine(situation, self.partition_cap)
            stock = self._place_stock(engine, regime)
            if stock is None or stock <= 0:
                continue
            candidate = engine.with_stock(stock)
            if candidate.compute_m_min().regime is regime:
                logger.debug("Seed %d: %s instance after %d draws", self.seed, regime.value, attempt)
                return candidate.instance
        raise GenerationError(regime.value, self.config.max_attempts)
