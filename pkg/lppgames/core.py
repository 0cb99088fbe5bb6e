"""
Core analysis: membership checks, emptiness decisions and dual-price witnesses.

The witnesses price each producer's endowment at grand-coalition dual
prices. With a non-scarce stock (d_N <= r) the prices come from the dual of
the unrestricted program; with a scarce one they come from the dual of the
program run at z = r, and the pool's shadow rent is split by a core
allocation of the resource game.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from lppgames.demand import DemandEngine
from lppgames.exceptions import (
    DomainError,
    LPPGamesError,
    PreconditionError,
    RefusalError,
    StructuralError,
)
from lppgames.games import (
    CharacteristicGame,
    PartitionFunctionGame,
    characteristic_game,
    lpp_game_from_resource_game,
    optimistic_game,
    pessimistic_and_optimistic_views,
)
from lppgames.lattice import Coalition
from lppgames.model import coalition_resources, grand_dual_program
from lppgames.schemas import (
    CoreReport,
    CoreVerdict,
    DominanceMode,
    PartitionCoreMode,
    Provenance,
    Regime,
)
from lppgames.simplex import LPStatus, StandardLP, enumerate_vertices, solve

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


@dataclass(frozen=True)
class Allocation:
    """Payoff vector, one entry per producer."""

    values: tuple[Fraction, ...]

    @classmethod
    def of(cls, *values: Fraction | int | str) -> Allocation:
        return cls(tuple(Fraction(v) for v in values))

    def total(self, coalition: Coalition | None = None) -> Fraction:
        if coalition is None:
            return sum(self.values, ZERO)
        return sum((self.values[i] for i in coalition.members), ZERO)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> Fraction:
        return self.values[index]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of a core membership check.

    ``violated`` lists the coalitions that get less than their worth;
    ``efficiency_gap`` is x(N) - v(N).
    """

    is_member: bool
    efficiency_gap: Fraction
    violated: tuple[Coalition, ...]

    def __bool__(self) -> bool:
        return self.is_member


@dataclass(frozen=True)
class DualPrices:
    """Grand-coalition shadow prices: one per private resource, one for the pool."""

    resources: tuple[Fraction, ...]
    pool: Fraction
    value: Fraction


def check_core_membership(game: CharacteristicGame, x: Allocation) -> MembershipResult:
    """Exact check of efficiency and coalitional rationality.

    Raises:
        StructuralError: If ``x`` does not have one entry per player.
    """
    if len(x) != game.n:
        raise StructuralError(f"Allocation has {len(x)} entries, game has {game.n} players")
    violated = tuple(
        Coalition(mask)
        for mask in range(1, 1 << game.n)
        if x.total(Coalition(mask)) < game.worths[mask]
    )
    gap = x.total() - game.grand_worth
    return MembershipResult(gap == 0 and not violated, gap, violated)


def core_nonempty(game: CharacteristicGame) -> CoreReport:
    """Decide C(v) != {} with a feasibility program over the core polytope.

    Payoffs are written x_i = v({i}) + s_i with s >= 0, which keeps the
    program in canonical form; the witness is the first feasible point the
    solver reaches.
    """
    n = game.n
    singles = [game.worths[1 << i] for i in range(n)]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for mask in range(1, 1 << n):
        coalition = Coalition(mask)
        if len(coalition) < 2:
            continue
        rows.append([Fraction(-1) if i in coalition else ZERO for i in range(n)])
        rhs.append(-(game.worths[mask] - sum((singles[i] for i in coalition.members), ZERO)))
    program = StandardLP.build([ZERO] * n, rows, rhs).with_equality(
        [1] * n, game.grand_worth - sum(singles, ZERO)
    )
    outcome = solve(program)
    if outcome.status is LPStatus.INFEASIBLE:
        logger.debug("Core of %s is empty", game.name)
        return CoreReport(game=game.name, verdict=CoreVerdict.EMPTY)
    witness = Allocation(tuple(v + s for v, s in zip(singles, outcome.primal)))
    _require_member(game, witness, "feasibility program")
    return CoreReport(
        game=game.name,
        verdict=CoreVerdict.NON_EMPTY,
        witness=witness.values,
        provenance=Provenance.FEASIBILITY_LP,
    )


def _require_member(game: CharacteristicGame, x: Allocation, source: str) -> None:
    result = check_core_membership(game, x)
    if not result:
        labels = ", ".join(str(c) for c in result.violated) or "efficiency"
        raise LPPGamesError(f"Witness from {source} fails core membership of {game.name} at {labels}")


def _dual_prices(engine: DemandEngine, budget: Fraction | None) -> DualPrices:
    instance = engine.instance
    program = grand_dual_program(instance, engine.grand, budget)
    outcome = solve(program)
    if not outcome.is_optimal or outcome.value is None:
        raise PreconditionError(
            "grand_coalition_prices",
            f"dual program is {outcome.status.value}",
            "Run validate on the instance first",
        )
    y = outcome.primal
    return DualPrices(resources=y[: instance.q], pool=y[instance.q], value=-outcome.value)


def grand_coalition_prices(engine: DemandEngine, scarce: bool = False) -> DualPrices:
    """Optimal dual prices of the grand coalition.

    ``scarce=False`` prices the unrestricted program (pool price at most c);
    ``scarce=True`` prices the program run with exactly r units.
    """
    return _dual_prices(engine, engine.stock if scarce else None)


def _price_endowments(engine: DemandEngine, prices: Sequence[Fraction]) -> list[Fraction]:
    instance = engine.instance
    return [
        sum((b * y for b, y in zip(instance.endowment(i), prices)), ZERO) for i in range(instance.n)
    ]


def owen_allocation(engine: DemandEngine) -> Allocation:
    """x_i = b^i . y for grand-coalition dual prices y (non-scarce stock).

    Raises:
        PreconditionError: If d_N > r.
    """
    demand = engine.optimal_demand(engine.grand)
    if demand > engine.stock:
        raise PreconditionError(
            "owen_allocation",
            f"d_N = {demand} exceeds r = {engine.stock}",
            "Use theorem4_allocation with a resource game R and some u in C(R)",
        )
    prices = grand_coalition_prices(engine)
    return Allocation(tuple(_price_endowments(engine, prices.resources)))


def owen_set_elements(engine: DemandEngine, max_players: int = 3) -> list[Allocation]:
    """Allocations from every vertex of the optimal dual face (small n only).

    Raises:
        RefusalError: If n exceeds ``max_players``.
        PreconditionError: If d_N > r.
    """
    if engine.n > max_players:
        raise RefusalError(
            f"Owen-set enumeration is limited to {max_players} players, instance has {engine.n}",
            "Raise limits.owen_enumeration_max_players in .lppgames.yml",
        )
    owen_allocation(engine)
    instance = engine.instance
    program = grand_dual_program(instance, engine.grand)
    optimum = grand_coalition_prices(engine).value
    resources = coalition_resources(instance, engine.grand)
    vertices = enumerate_vertices(
        program.matrix,
        program.rhs,
        program.num_vars,
        equalities=[tuple(resources) + (ZERO,)],
        equality_rhs=[optimum],
    )
    elements = sorted({tuple(_price_endowments(engine, y[: instance.q])) for y in vertices})
    return [Allocation(values) for values in elements]


def theorem4_allocation(
    engine: DemandEngine, resource_game: CharacteristicGame, u: Allocation
) -> Allocation:
    """x_i = b^i . y* + u_i (y*_pool - c) for the scarce-stock dual optimum y*.

    Raises:
        PreconditionError: If d_N <= r or u(N) != r.
        DomainError: If u is not in the core of the resource game.
    """
    stock = engine.stock
    demand = engine.optimal_demand(engine.grand)
    if demand <= stock:
        raise PreconditionError(
            "theorem4_allocation",
            f"d_N = {demand} does not exceed r = {stock}",
            "Use owen_allocation when the stock covers the grand demand",
        )
    if len(u) != engine.n:
        raise StructuralError(f"u has {len(u)} entries, instance has {engine.n} producers")
    if u.total() != stock:
        raise PreconditionError("theorem4_allocation", f"u(N) = {u.total()} differs from r = {stock}")
    membership = check_core_membership(resource_game, u)
    if not membership:
        if membership.violated:
            worst = membership.violated[0]
            reason = (
                f"coalition {worst} gets {u.total(worst)} < "
                f"{resource_game.name}({worst.label(engine.n)}) = {resource_game.worth(worst)}"
            )
        else:
            reason = f"u(N) differs from {resource_game.name}(N) = {resource_game.grand_worth}"
        raise DomainError("u", list(map(str, u.values)), reason)
    prices = grand_coalition_prices(engine, scarce=True)
    rent = prices.pool - engine.instance.unit_cost
    base = _price_endowments(engine, prices.resources)
    return Allocation(tuple(b + u_i * rent for b, u_i in zip(base, u.values)))


def dominates(
    x_new: Allocation,
    x: Allocation,
    coalition: Coalition,
    game: PartitionFunctionGame,
    mode: DominanceMode = DominanceMode.ALL_PARTITIONS,
) -> bool:
    """x_new dom_S x: every member of S gains and S can secure x_new(S).

    ``ALL_PARTITIONS`` needs x_new(S) <= V(S|P) for every P containing S,
    ``SOME_PARTITION`` for at least one.
    """
    if coalition.is_empty():
        raise StructuralError("Dominance needs a non-empty coalition")
    if not all(x_new[i] > x[i] for i in coalition.members):
        return False
    claimed = x_new.total(coalition)
    worths = game.embedded_worths(coalition)
    if mode is DominanceMode.ALL_PARTITIONS:
        return all(claimed <= w for w in worths)
    return any(claimed <= w for w in worths)


def find_dominating(
    x: Allocation,
    game: PartitionFunctionGame,
    mode: DominanceMode = DominanceMode.ALL_PARTITIONS,
    coalitions: Iterable[Coalition] | None = None,
) -> tuple[Coalition, Allocation] | None:
    """An allocation dominating ``x`` through some coalition, if one exists.

    The slack between the enforceable worth and x(S) is split equally over S.
    """
    candidates = coalitions if coalitions is not None else (
        Coalition(mask) for mask in range(1, 1 << game.n)
    )
    for coalition in candidates:
        worths = game.embedded_worths(coalition)
        bound = min(worths) if mode is DominanceMode.ALL_PARTITIONS else max(worths)
        slack = bound - x.total(coalition)
        if slack <= 0:
            continue
        share = slack / len(coalition)
        better = Allocation(
            tuple(v + share if i in coalition else v for i, v in enumerate(x.values))
        )
        return coalition, better
    return None


def partition_core(
    game: PartitionFunctionGame, mode: PartitionCoreMode = PartitionCoreMode.PESSIMISTIC
) -> CoreReport:
    """Core of V through its characteristic views: v^- or v^+."""
    lower, upper = pessimistic_and_optimistic_views(game)
    return core_nonempty(lower if mode is PartitionCoreMode.PESSIMISTIC else upper)


def owen_report(engine: DemandEngine) -> CoreReport:
    """Core report witnessed by the dual-price construction (d_N <= r).

    In the unconstrained regime the witness certifies the characteristic
    game; otherwise it certifies the optimistic game.
    """
    x = owen_allocation(engine)
    if engine.compute_m_min().regime is Regime.UNCONSTRAINED:
        game, provenance = characteristic_game(engine), Provenance.OWEN_CONSTRUCTION
    else:
        game, provenance = optimistic_game(engine), Provenance.THEOREM6_CONSTRUCTION
    _require_member(game, x, provenance.value)
    return CoreReport(
        game=game.name, verdict=CoreVerdict.NON_EMPTY, witness=x.values, provenance=provenance
    )


def theorem4_report(
    engine: DemandEngine, resource_game: CharacteristicGame, u: Allocation
) -> CoreReport:
    """Core report of v^R witnessed by the scarce-stock construction."""
    x = theorem4_allocation(engine, resource_game, u)
    game = lpp_game_from_resource_game(engine, resource_game, "v^R")
    _require_member(game, x, Provenance.THEOREM4_CONSTRUCTION.value)
    return CoreReport(
        game=game.name,
        verdict=CoreVerdict.NON_EMPTY,
        witness=x.values,
        provenance=Provenance.THEOREM4_CONSTRUCTION,
    )
