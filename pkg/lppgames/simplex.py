"""
Exact simplex solver for small dense linear programs.

Every program is stated in one canonical form:

    max  c . x
    s.t. M x <= b
         x >= 0

Equalities are two opposite inequalities. All arithmetic uses
``fractions.Fraction``, so optimal values, primal points and dual prices are
exact. Pivoting follows Bland's rule, which rules out cycling and makes the
result a deterministic function of the input.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations

from lppgames.exceptions import InfeasiblePhaseError, StructuralError

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class LPStatus(str, Enum):
    """Outcome of a solve."""

    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


class Direction(str, Enum):
    """Optimization direction for a secondary objective."""

    MINIMIZE = "min"
    MAXIMIZE = "max"


def _vector(values: Iterable[object]) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)  # type: ignore[arg-type]


@dataclass(frozen=True)
class StandardLP:
    """Maximization program ``max c.x  s.t. Mx <= b, x >= 0``."""

    objective: tuple[Fraction, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.rhs) != len(self.matrix):
            raise StructuralError(
                f"{len(self.matrix)} constraint rows but {len(self.rhs)} right-hand sides"
            )
        width = len(self.objective)
        for i, row in enumerate(self.matrix):
            if len(row) != width:
                raise StructuralError(f"Row {i} has {len(row)} entries, expected {width}")

    @classmethod
    def build(
        cls,
        objective: Iterable[object],
        matrix: Iterable[Iterable[object]],
        rhs: Iterable[object],
    ) -> StandardLP:
        """Build a program converting every entry to an exact rational."""
        return cls(
            objective=_vector(objective),
            matrix=tuple(_vector(row) for row in matrix),
            rhs=_vector(rhs),
        )

    @property
    def num_rows(self) -> int:
        return len(self.matrix)

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def with_rows(
        self, rows: Iterable[Iterable[object]], rhs: Iterable[object]
    ) -> StandardLP:
        """Return a copy with extra ``<=`` rows appended."""
        return StandardLP(
            objective=self.objective,
            matrix=self.matrix + tuple(_vector(row) for row in rows),
            rhs=self.rhs + _vector(rhs),
        )

    def with_equality(self, row: Iterable[object], value: object) -> StandardLP:
        """Return a copy with ``row . x == value`` appended as two inequalities."""
        coefficients = _vector(row)
        target = Fraction(value)  # type: ignore[arg-type]
        return self.with_rows([coefficients, [-a for a in coefficients]], [target, -target])

    def with_objective(self, objective: Iterable[object]) -> StandardLP:
        return StandardLP(objective=_vector(objective), matrix=self.matrix, rhs=self.rhs)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.objective, point)), ZERO)

    def is_feasible(self, point: Sequence[Fraction]) -> bool:
        if len(point) != self.num_vars or any(x < 0 for x in point):
            return False
        return all(
            sum((a * x for a, x in zip(row, point)), ZERO) <= b
            for row, b in zip(self.matrix, self.rhs)
        )


@dataclass(frozen=True)
class LPOutcome:
    """Result of a solve.

    ``primal`` has one entry per variable and ``dual`` one entry per row.
    Both are empty unless the status is OPTIMAL. ``secondary_value`` is set
    only by :func:`solve_with_value_constraint`.
    """

    status: LPStatus
    value: Fraction | None = None
    primal: tuple[Fraction, ...] = field(default_factory=tuple)
    dual: tuple[Fraction, ...] = field(default_factory=tuple)
    secondary_value: Fraction | None = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


class _Tableau:
    """Dense simplex tableau with slack and artificial columns."""

    def __init__(self, lp: StandardLP):
        n, m = lp.num_vars, lp.num_rows
        negative = [i for i in range(m) if lp.rhs[i] < 0]
        self.n = n
        self.m = m
        self.artificial_start = n + m
        self.width = n + m + len(negative)
        self.rows: list[list[Fraction]] = []
        self.rhs: list[Fraction] = []
        self.basis: list[int] = []

        artificial = self.artificial_start
        for i in range(m):
            sign = -1 if lp.rhs[i] < 0 else 1
            row = [ZERO] * self.width
            for j in range(n):
                row[j] = sign * lp.matrix[i][j]
            row[n + i] = Fraction(sign)
            if sign < 0:
                row[artificial] = ONE
                self.basis.append(artificial)
                artificial += 1
            else:
                self.basis.append(n + i)
            self.rows.append(row)
            self.rhs.append(sign * lp.rhs[i])

    def reduced_cost(self, costs: Sequence[Fraction], column: int) -> Fraction:
        total = -costs[column]
        for i, basic in enumerate(self.basis):
            entry = self.rows[i][column]
            if entry and costs[basic]:
                total += costs[basic] * entry
        return total

    def objective(self, costs: Sequence[Fraction]) -> Fraction:
        return sum((costs[b] * v for b, v in zip(self.basis, self.rhs)), ZERO)

    def pivot(self, row: int, column: int) -> None:
        pivot_row = self.rows[row]
        factor = pivot_row[column]
        if factor != 1:
            self.rows[row] = pivot_row = [entry / factor for entry in pivot_row]
            self.rhs[row] /= factor
        for i in range(self.m):
            if i == row:
                continue
            scale = self.rows[i][column]
            if scale:
                current = self.rows[i]
                self.rows[i] = [a - scale * b for a, b in zip(current, pivot_row)]
                self.rhs[i] -= scale * self.rhs[row]
        self.basis[row] = column

    def optimize(self, costs: Sequence[Fraction], allowed: int) -> bool:
        """Run primal simplex with Bland's rule.

        Only columns below ``allowed`` may enter. Returns False when the
        objective is unbounded.
        """
        while True:
            entering = next(
                (j for j in range(allowed) if self.reduced_cost(costs, j) < 0),
                None,
            )
            if entering is None:
                return True
            leaving = None
            best: tuple[Fraction, int] | None = None
            for i in range(self.m):
                entry = self.rows[i][entering]
                if entry > 0:
                    key = (self.rhs[i] / entry, self.basis[i])
                    if best is None or key < best:
                        best = key
                        leaving = i
            if leaving is None:
                return False
            self.pivot(leaving, entering)

    def drive_out_artificials(self) -> None:
        for i, basic in enumerate(self.basis):
            if basic < self.artificial_start:
                continue
            column = next(
                (j for j in range(self.artificial_start) if self.rows[i][j] != 0),
                None,
            )
            # A row with no structural or slack entry is redundant; its
            # artificial stays basic at zero and never moves again.
            if column is not None:
                self.pivot(i, column)

    def primal(self) -> tuple[Fraction, ...]:
        point = [ZERO] * self.n
        for i, basic in enumerate(self.basis):
            if basic < self.n:
                point[basic] = self.rhs[i]
        return tuple(point)

    def dual(self, costs: Sequence[Fraction]) -> tuple[Fraction, ...]:
        # The reduced cost of row i's slack column equals the dual price of
        # row i in the original orientation, whether or not the row was negated.
        return tuple(self.reduced_cost(costs, self.n + i) for i in range(self.m))


def solve(lp: StandardLP) -> LPOutcome:
    """Solve ``lp`` exactly with the two-phase simplex method.

    Returns the optimal value, a primal optimum and the basis-determined dual
    optimum, for which ``objective . primal == rhs . dual`` holds exactly.
    """
    tableau = _Tableau(lp)

    if tableau.width > tableau.artificial_start:
        phase_one = [ZERO] * tableau.artificial_start + [-ONE] * (
            tableau.width - tableau.artificial_start
        )
        tableau.optimize(phase_one, tableau.width)
        if tableau.objective(phase_one) < 0:
            logger.debug("LP infeasible (%d rows, %d vars)", lp.num_rows, lp.num_vars)
            return LPOutcome(status=LPStatus.INFEASIBLE)
        tableau.drive_out_artificials()

    costs = list(lp.objective) + [ZERO] * (tableau.width - lp.num_vars)
    if not tableau.optimize(costs, tableau.artificial_start):
        logger.debug("LP unbounded (%d rows, %d vars)", lp.num_rows, lp.num_vars)
        return LPOutcome(status=LPStatus.UNBOUNDED)

    primal = tableau.primal()
    return LPOutcome(
        status=LPStatus.OPTIMAL,
        value=lp.evaluate(primal),
        primal=primal,
        dual=tableau.dual(costs),
    )


def solve_with_value_constraint(
    lp: StandardLP,
    fixed_value: Fraction,
    secondary_objective: Sequence[object],
    direction: Direction = Direction.MINIMIZE,
) -> LPOutcome:
    """Optimize a secondary objective over the optimal face of ``lp``.

    ``fixed_value`` must be the optimal value of ``lp``. The returned outcome
    carries the primary value (equal to ``fixed_value``) in ``value`` and the
    optimum of the secondary objective in ``secondary_value``. Its dual vector
    belongs to the augmented program (``lp`` rows, then the two rows pinning
    the primary objective).

    Raises:
        InfeasiblePhaseError: If no feasible point reaches ``fixed_value``.
    """
    secondary = _vector(secondary_objective)
    if len(secondary) != lp.num_vars:
        raise StructuralError(
            f"Secondary objective has {len(secondary)} entries, expected {lp.num_vars}"
        )
    sign = -1 if direction is Direction.MINIMIZE else 1
    pinned = lp.with_equality(lp.objective, fixed_value).with_objective(
        sign * a for a in secondary
    )
    outcome = solve(pinned)
    if outcome.status is LPStatus.INFEASIBLE:
        raise InfeasiblePhaseError(fixed_value)
    if not outcome.is_optimal:
        return outcome
    assert outcome.value is not None
    return LPOutcome(
        status=LPStatus.OPTIMAL,
        value=lp.evaluate(outcome.primal),
        primal=outcome.primal,
        dual=outcome.dual,
        secondary_value=sign * outcome.value,
    )


def _solve_square(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> tuple[Fraction, ...] | None:
    """Gauss-Jordan elimination; None when the system is singular."""
    size = len(rows)
    augmented = [list(row) + [value] for row, value in zip(rows, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if augmented[r][col] != 0), None)
        if pivot is None:
            return None
        augmented[col], augmented[pivot] = augmented[pivot], augmented[col]
        lead = augmented[col][col]
        augmented[col] = [entry / lead for entry in augmented[col]]
        for r in range(size):
            if r != col and augmented[r][col] != 0:
                scale = augmented[r][col]
                augmented[r] = [a - scale * b for a, b in zip(augmented[r], augmented[col])]
    return tuple(row[-1] for row in augmented)


def enumerate_vertices(
    matrix: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
    num_vars: int,
    equalities: Sequence[Sequence[Fraction]] = (),
    equality_rhs: Sequence[Fraction] = (),
) -> list[tuple[Fraction, ...]]:
    """List every vertex of ``{x >= 0, Mx <= b, Ex = f}`` by brute force.

    Each vertex is the unique solution of ``num_vars`` linearly independent
    tight constraints, so all subsets of inequality constraints of the right
    size are tried. Only sensible for a handful of variables.
    """
    bounds = [
        tuple(ONE if j == k else ZERO for j in range(num_vars)) for k in range(num_vars)
    ]
    inequalities = [(tuple(row), b) for row, b in zip(matrix, rhs)]
    inequalities += [(bound, ZERO) for bound in bounds]
    fixed = [(tuple(row), f) for row, f in zip(equalities, equality_rhs)]
    free = num_vars - len(fixed)
    if free < 0:
        return []

    vertices: list[tuple[Fraction, ...]] = []
    seen: set[tuple[Fraction, ...]] = set()
    for chosen in combinations(range(len(inequalities)), free):
        system = fixed + [inequalities[k] for k in chosen]
        point = _solve_square([row for row, _ in system], [v for _, v in system])
        if point is None or point in seen:
            continue
        if any(x < 0 for x in point):
            continue
        if any(sum(a * x for a, x in zip(row, point)) > b for row, b in zip(matrix, rhs)):
            continue
        if any(
            sum(a * x for a, x in zip(row, point)) != f for row, f in zip(equalities, equality_rhs)
        ):
            continue
        seen.add(point)
        vertices.append(point)
    return sorted(vertices)


def brute_force_optimum(lp: StandardLP) -> LPOutcome:
    """Reference solver by vertex enumeration (no dual information).

    The feasible region lies in the nonnegative orthant, so it is either
    empty or has a vertex. The objective is unbounded exactly when some
    extreme ray of ``{Md <= 0, d >= 0}`` improves it; those rays are the
    vertices of the cone cut by ``sum(d) == 1``.
    """
    vertices = enumerate_vertices(lp.matrix, lp.rhs, lp.num_vars)
    if not vertices:
        return LPOutcome(status=LPStatus.INFEASIBLE)
    rays = enumerate_vertices(
        lp.matrix,
        [ZERO] * lp.num_rows,
        lp.num_vars,
        equalities=[[ONE] * lp.num_vars] if lp.num_vars else [],
        equality_rhs=[ONE] if lp.num_vars else [],
    )
    if any(lp.evaluate(ray) > 0 for ray in rays):
        return LPOutcome(status=LPStatus.UNBOUNDED)
    best = max(vertices, key=lp.evaluate)
    return LPOutcome(status=LPStatus.OPTIMAL, value=lp.evaluate(best), primal=best)
