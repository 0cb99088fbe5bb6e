"""
Property suites over generated instances and programs.
"""

from fractions import Fraction
from itertools import product

import hypothesis.strategies as st
import pytest
from hypothesis import HealthCheck, assume, given, reject, settings

from lppgames.core import (
    Allocation,
    check_core_membership,
    core_nonempty,
    dominates,
    find_dominating,
    owen_allocation,
    theorem4_allocation,
)
from lppgames.demand import DemandEngine
from lppgames.exceptions import GenerationError
from lppgames.games import (
    BUILTIN_RULES,
    PartitionFunctionGame,
    bankruptcy_game,
    characteristic_game,
    equal_share_resource_game,
    lpp_game_from_resource_game,
    optimistic_game,
    optimistic_resource_game,
    partition_function_game,
    pessimistic_and_optimistic_views,
    pessimistic_game,
    pessimistic_resource_game,
)
from lppgames.generator import InstanceGenerator
from lppgames.lattice import Coalition, Partition, enumerate_partitions, is_refinement
from lppgames.model import coalition_resources, validate_instance
from lppgames.schemas import DominanceMode, LPPInstance, Regime
from lppgames.simplex import LPStatus, StandardLP, brute_force_optimum, solve
from lppgames.stability import StabilityAnalyzer
from tests.strategies import instances, small_programs

pytestmark = pytest.mark.slow

PROPERTY_SETTINGS = settings(
    max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
CORE_SUITE_SETTINGS = settings(
    max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)

RULES = st.sampled_from(sorted(BUILTIN_RULES))
UNIT_FRACTIONS = st.fractions(0, 1, max_denominator=8)


def efficient_allocations(total: Fraction, weights: list[tuple[int, ...]]) -> list[Allocation]:
    """Splits of ``total`` in proportion to each weight vector."""
    return [
        Allocation(tuple(total * w / sum(weight) for w in weight)) for weight in weights
    ]


def dominated_by_search(x: Allocation, game: PartitionFunctionGame, mode: DominanceMode) -> bool:
    """Search x + delta on S over every S for an allocation that dominates x.

    Steps are a fixed grid plus half of each gap between an embedded worth
    and x(S), so no positive gap is missed.
    """
    for mask in range(1, 1 << game.n):
        coalition = Coalition(mask)
        size = len(coalition)
        gaps = [(w - x.total(coalition)) / size for w in game.embedded_worths(coalition)]
        steps = {Fraction(1, 8), Fraction(1), Fraction(8)} | {g / 2 for g in gaps if g > 0}
        for step in steps:
            candidate = Allocation(
                tuple(v + step if i in coalition else v for i, v in enumerate(x.values))
            )
            if dominates(candidate, x, coalition, game, mode):
                return True
    return False


class TestSolverProperties:
    """Test the simplex solver against vertex enumeration."""

    @settings(max_examples=500, deadline=None)
    @given(small_programs())
    def test_matches_brute_force(self, lp: StandardLP):
        """Test status and optimal value agree with the reference solver."""
        outcome = solve(lp)
        reference = brute_force_optimum(lp)
        assert outcome.status is reference.status
        if outcome.status is LPStatus.OPTIMAL:
            assert outcome.value == reference.value
            assert lp.is_feasible(outcome.primal)
            assert lp.evaluate(outcome.primal) == outcome.value

    @settings(max_examples=200, deadline=None)
    @given(small_programs())
    def test_duality(self, lp: StandardLP):
        """Test dual feasibility and strong duality at optimal solves."""
        outcome = solve(lp)
        assume(outcome.status is LPStatus.OPTIMAL)
        y = outcome.dual
        assert all(price >= 0 for price in y)
        for j, c in enumerate(lp.objective):
            assert sum((row[j] * price for row, price in zip(lp.matrix, y)), Fraction(0)) >= c
        assert sum((b * price for b, price in zip(lp.rhs, y)), Fraction(0)) == outcome.value


class TestInstanceProperties:
    """Test the instance strategy, the lattice and the demand tables."""

    @PROPERTY_SETTINGS
    @given(instances())
    def test_generated_instances_are_valid(self, instance: LPPInstance):
        """Test the strategy only draws valid instances."""
        assert validate_instance(instance) == []

    @PROPERTY_SETTINGS
    @given(instances(), st.data())
    def test_resources_additive(self, instance: LPPInstance, data: st.DataObject):
        """Test b^(S u T) = b^S + b^T for disjoint S and T."""
        n = instance.n
        assume(n >= 2)
        split = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
        left = Coalition.from_indices(i for i, side in enumerate(split) if side == 0)
        right = Coalition.from_indices(i for i, side in enumerate(split) if side == 1)
        assume(not left.is_empty() and not right.is_empty())
        joined = coalition_resources(instance, left | right)
        parts = zip(coalition_resources(instance, left), coalition_resources(instance, right))
        assert joined == tuple(a + b for a, b in parts)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_refinement_partial_order(self, n: int):
        """Test refinement is reflexive, antisymmetric and transitive."""
        partitions = list(enumerate_partitions(n))
        below = {
            (i, j)
            for (i, p), (j, q) in product(enumerate(partitions), repeat=2)
            if is_refinement(p, q)
        }
        assert all((i, i) in below for i in range(len(partitions)))
        assert all(i == j for i, j in below if (j, i) in below)
        for i, j in below:
            for k in range(len(partitions)):
                if (j, k) in below:
                    assert (i, k) in below

    @PROPERTY_SETTINGS
    @given(instances())
    def test_m_min_matches_brute_force(self, instance: LPPInstance):
        """Test M^min against a direct scan of refinements."""
        engine = DemandEngine(instance)
        partitions = list(enumerate_partitions(engine.n))
        over = [p for p in partitions if engine.partition_demand(p) > engine.stock]
        expected = [
            p
            for p in over
            if not any(q != p and is_refinement(q, p) for q in over)
        ]
        assert list(engine.compute_m_min().m_min) == expected

    @PROPERTY_SETTINGS
    @given(instances())
    def test_demand_below_value_saturation(self, instance: LPPInstance):
        """Test value(S; d_S) is the unrestricted optimum and less stock loses profit."""
        engine = DemandEngine(instance)
        grand = engine.grand
        demand = engine.optimal_demand(grand)
        assert engine.value_of(grand, demand) == engine.standalone_value(grand)
        if demand > 0:
            assert engine.value_of(grand, demand / 2) < engine.standalone_value(grand)


class TestValueFunctionProperties:
    """Test value(S; z) as a function of the purchase and of the coalition."""

    @PROPERTY_SETTINGS
    @given(instances())
    def test_nondecreasing_and_concave(self, instance: LPPInstance):
        """Test equal steps in z give nonnegative, shrinking gains."""
        engine = DemandEngine(instance)
        for coalition in (Coalition.of(1), engine.grand):
            step = engine.optimal_demand(coalition) / 4
            values = [engine.value_of(coalition, step * k) for k in range(7)]
            gains = [b - a for a, b in zip(values, values[1:])]
            assert all(gain >= 0 for gain in gains)
            assert all(later <= earlier for earlier, later in zip(gains, gains[1:]))
            assert values[4:] == [engine.standalone_value(coalition)] * 3

    @PROPERTY_SETTINGS
    @given(instances(min_players=2), UNIT_FRACTIONS)
    def test_monotone_in_players(self, instance: LPPInstance, fraction: Fraction):
        """Test S within T earns at least as much as S for the same purchase."""
        engine = DemandEngine(instance)
        z = engine.optimal_demand(engine.grand) * fraction
        for mask in range(1, 1 << engine.n):
            coalition = Coalition(mask)
            assert engine.value_of(engine.grand, z) >= engine.value_of(coalition, z)
            for i in range(engine.n):
                bigger = coalition | Coalition(1 << i)
                assert engine.value_of(bigger, z) >= engine.value_of(coalition, z)

    @PROPERTY_SETTINGS
    @given(instances(), st.integers(1, 6))
    def test_positivity_below_profitable_purchase(self, instance: LPPInstance, grid: int):
        """Test value(S; z) > 0 on a grid below any z* with value(S; z*) > 0."""
        engine = DemandEngine(instance)
        for mask in range(1, 1 << engine.n):
            coalition = Coalition(mask)
            if engine.standalone_value(coalition) <= 0:
                continue
            z_star = engine.optimal_demand(coalition)
            assert engine.positivity_scan(coalition, z_star, grid)

    @PROPERTY_SETTINGS
    @given(instances(), UNIT_FRACTIONS)
    def test_optimistic_values_bounded_by_grand(self, instance: LPPInstance, slack: Fraction):
        """Test sum over P of value(S; d_S) <= value(N; d_N) when d_N <= r."""
        base = DemandEngine(instance)
        engine = base.with_stock(base.optimal_demand(base.grand) * (1 + slack))
        bound = engine.standalone_value(engine.grand)
        for partition in enumerate_partitions(engine.n):
            total = sum((engine.standalone_value(block) for block in partition), Fraction(0))
            assert total <= bound


class TestGameProperties:
    """Test orderings between the games."""

    @PROPERTY_SETTINGS
    @given(instances())
    def test_resource_games_ordered(self, instance: LPPInstance):
        """Test R^pes <= R^opt and v^pes <= v^opt."""
        engine = DemandEngine(instance)
        r_opt, r_pes = optimistic_resource_game(engine), pessimistic_resource_game(engine)
        v_opt, v_pes = optimistic_game(engine), pessimistic_game(engine)
        for mask in range(1, 1 << engine.n):
            assert 0 <= r_pes.worths[mask] <= r_opt.worths[mask] <= engine.stock
            assert v_pes.worths[mask] <= v_opt.worths[mask]

    @PROPERTY_SETTINGS
    @given(instances(), RULES)
    def test_views_between_bounds(self, instance: LPPInstance, rule_name: str):
        """Test v^opt >= v^+ >= v^- >= v^pes for every built-in rule."""
        engine = DemandEngine(instance)
        game = partition_function_game(engine, BUILTIN_RULES[rule_name])
        lower, upper = pessimistic_and_optimistic_views(game)
        v_opt, v_pes = optimistic_game(engine), pessimistic_game(engine)
        for mask in range(1, 1 << engine.n):
            assert v_opt.worths[mask] >= upper.worths[mask]
            assert upper.worths[mask] >= lower.worths[mask]
            assert lower.worths[mask] >= v_pes.worths[mask]

    @PROPERTY_SETTINGS
    @given(instances(), RULES)
    def test_grand_partition_outearns_every_partition(self, instance: LPPInstance, rule_name: str):
        """Test V(N|{N}) >= sum of V(S|P) over the blocks of every P."""
        engine = DemandEngine(instance)
        game = partition_function_game(engine, BUILTIN_RULES[rule_name])
        grand = game.worth(engine.grand, Partition.grand(engine.n))
        for partition in enumerate_partitions(engine.n):
            total = sum((game.worth(block, partition) for block in partition), Fraction(0))
            assert grand >= total

    @PROPERTY_SETTINGS
    @given(
        st.integers(0, 30),
        st.lists(st.integers(0, 12), min_size=1, max_size=4),
    )
    def test_bankruptcy_cores_nonempty(self, estate: int, claims: list[int]):
        """Test bankruptcy games are balanced."""
        assume(sum(claims) >= estate)
        assert core_nonempty(bankruptcy_game(estate, claims)).nonempty


class TestCoreProperties:
    """Test the dual-price constructions."""

    @CORE_SUITE_SETTINGS
    @given(instances())
    def test_owen_in_core_when_unconstrained(self, instance: LPPInstance):
        """Test the Owen allocation lies in the core of v."""
        base = DemandEngine(instance)
        engine = base.with_stock(base.max_refined_demand(base.grand))
        assert engine.compute_m_min().regime is Regime.UNCONSTRAINED
        x = owen_allocation(engine)
        assert check_core_membership(characteristic_game(engine), x)

    @CORE_SUITE_SETTINGS
    @given(instances(), UNIT_FRACTIONS)
    def test_owen_in_optimistic_core(self, instance: LPPInstance, slack: Fraction):
        """Test the Owen allocation lies in the core of v^opt when d_N <= r."""
        base = DemandEngine(instance)
        engine = base.with_stock(base.optimal_demand(base.grand) * (1 + slack))
        assert check_core_membership(optimistic_game(engine), owen_allocation(engine))

    @PROPERTY_SETTINGS
    @given(instances(), st.fractions(Fraction(1, 8), Fraction(7, 8), max_denominator=8))
    def test_scarce_construction_in_core(self, instance: LPPInstance, share: Fraction):
        """Test the equal-share construction lies in the core of v^R when d_N > r."""
        base = DemandEngine(instance)
        demand = base.optimal_demand(base.grand)
        assume(demand > 0)
        engine = base.with_stock(demand * share)
        resource, shares = equal_share_resource_game(engine)
        u = Allocation(shares)
        assert check_core_membership(resource, u)
        x = theorem4_allocation(engine, resource, u)
        assert check_core_membership(lpp_game_from_resource_game(engine, resource), x)

    @PROPERTY_SETTINGS
    @given(instances(), st.fractions(Fraction(1, 8), 1, max_denominator=8))
    def test_pessimistic_core_when_stock_scarce(self, instance: LPPInstance, share: Fraction):
        """Test v^pes is balanced when d_N > r and the singleton demands cover r."""
        base = DemandEngine(instance)
        singles = sum(base.optimal_demand(Coalition.of(i + 1)) for i in range(base.n))
        demand = base.optimal_demand(base.grand)
        stock = min(singles, demand) * share
        assume(0 < stock < demand)
        engine = base.with_stock(stock)
        assert core_nonempty(pessimistic_game(engine)).nonempty


class TestDominanceProperties:
    """Test dominance in partition function games against the core of the views."""

    @PROPERTY_SETTINGS
    @given(
        instances(min_players=2, max_players=2),
        RULES,
        st.lists(st.fractions(0, 40, max_denominator=4), min_size=2, max_size=2),
    )
    def test_found_domination_dominates(
        self, instance: LPPInstance, rule_name: str, payoffs: list[Fraction]
    ):
        """Test find_dominating only returns genuine dominations."""
        engine = DemandEngine(instance)
        game = partition_function_game(engine, BUILTIN_RULES[rule_name])
        x = Allocation(tuple(payoffs))
        found = find_dominating(x, game)
        if found is not None:
            coalition, better = found
            assert dominates(better, x, coalition, game)

    @settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(
        instances(min_players=3, max_players=3),
        RULES,
        st.lists(
            st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6)).filter(any),
            min_size=20,
            max_size=20,
        ),
    )
    def test_undominated_iff_in_view_core(
        self, instance: LPPInstance, rule_name: str, weights: list[tuple[int, ...]]
    ):
        """Test efficient x is undominated exactly when it lies in the core of v^- or v^+."""
        engine = DemandEngine(instance)
        game = partition_function_game(engine, BUILTIN_RULES[rule_name])
        lower, upper = pessimistic_and_optimistic_views(game)
        grand = game.worth(engine.grand, Partition.grand(3))
        for x in efficient_allocations(grand, weights):
            in_lower = bool(check_core_membership(lower, x))
            in_upper = bool(check_core_membership(upper, x))
            assert dominated_by_search(x, game, DominanceMode.ALL_PARTITIONS) is not in_lower
            assert dominated_by_search(x, game, DominanceMode.SOME_PARTITION) is not in_upper


class TestStabilityProperties:
    """Test stable structures on generated grand-only instances."""

    @settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(0, 10_000))
    def test_grand_only_structures(self, seed: int):
        """Test the grand coalition alone, or every N minus i with i, is stable."""
        try:
            instance = InstanceGenerator(seed).generate(3, 2, 2, Regime.GRAND_ONLY)
        except GenerationError:
            reject()
        engine = DemandEngine(instance)
        stable = StabilityAnalyzer(engine).stable_partitions()
        if core_nonempty(characteristic_game(engine)).nonempty:
            assert stable == [Partition.grand(3)]
        else:
            expected = {
                Partition.of(3, [1, 2], [3]),
                Partition.of(3, [1, 3], [2]),
                Partition.of(3, [2, 3], [1]),
            }
            assert set(stable) == expected
