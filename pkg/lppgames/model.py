"""
LPP situations: instance files, assumption checks, and coalition programs.

The coalition program is always built over the variables ``(x_1..x_g, w)``
where ``x`` is the production plan and ``w`` the amount of common-pool
resource bought at unit cost ``c``:

    max  p.x - c w
    s.t. A_t.x <= b^S_t      for every private resource t
         a.x - w <= 0        (a = common-pool row of A)
         w <= z              (only when an allocation z is given)
"""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from lppgames.exceptions import DomainError, InstanceParseError, StructuralError
from lppgames.lattice import Coalition
from lppgames.schemas import InstanceDocument, LPPInstance, Violation
from lppgames.simplex import LPStatus, StandardLP, solve

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


def load_instance(data: Any, source: Path | str = "<document>") -> InstanceDocument:
    """Validate an already-decoded JSON document.

    Raises:
        InstanceParseError: With the offending field path for every error.
    """
    if not isinstance(data, dict):
        raise InstanceParseError(source, "top level must be a JSON object")
    try:
        return InstanceDocument.model_validate(data)
    except ValidationError as e:
        details = "; ".join(
            f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}"
            for err in e.errors()
        )
        raise InstanceParseError(source, details) from e


def read_instance(path: Path) -> InstanceDocument:
    """Read an instance file.

    Raises:
        InstanceParseError: If the file is missing, is not JSON, or has bad fields.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceParseError(path, str(e)) from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceParseError(path, f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    return load_instance(data, path)


def dump_instance(instance: LPPInstance) -> str:
    """Serialize an instance as JSON with exact rationals."""
    return json.dumps(instance.to_document(), indent=2) + "\n"


def coalition_resources(instance: LPPInstance, coalition: Coalition) -> tuple[Fraction, ...]:
    """b^S: the private resources pooled by ``coalition``.

    Raises:
        StructuralError: If the coalition is empty or names unknown players.
    """
    if coalition.is_empty():
        raise StructuralError("Coalition resources are undefined for the empty coalition")
    if coalition.mask >> instance.n:
        raise StructuralError(f"Coalition {coalition} has players beyond n = {instance.n}")
    members = coalition.members
    return tuple(sum((row[i] for i in members), ZERO) for row in instance.endowments)


def coalition_program(
    instance: LPPInstance, coalition: Coalition, allocation: Fraction | None = None
) -> StandardLP:
    """Production program of a coalition.

    With ``allocation`` the coalition may buy at most that much of the
    common-pool resource; without it the purchase is unrestricted.

    Raises:
        DomainError: If ``allocation`` is negative.
    """
    if allocation is not None and allocation < 0:
        raise DomainError("z", allocation, "resource allocations must be nonnegative")
    resources = coalition_resources(instance, coalition)
    rows: list[tuple[Fraction, ...]] = [tuple(row) + (ZERO,) for row in instance.resource_rows]
    rhs: list[Fraction] = list(resources)
    rows.append(tuple(instance.common_pool_row) + (Fraction(-1),))
    rhs.append(ZERO)
    if allocation is not None:
        rows.append((ZERO,) * instance.g + (Fraction(1),))
        rhs.append(Fraction(allocation))
    objective = tuple(instance.prices) + (-instance.unit_cost,)
    return StandardLP(objective=objective, matrix=tuple(rows), rhs=tuple(rhs))


def purchase_objective(instance: LPPInstance) -> tuple[Fraction, ...]:
    """Secondary objective selecting the purchase variable ``w``."""
    return (ZERO,) * instance.g + (Fraction(1),)


def grand_dual_program(
    instance: LPPInstance, coalition: Coalition, budget: Fraction | None = None
) -> StandardLP:
    """Dual price program of a coalition, over ``(y_1..y_q, y_pool)``.

    Without ``budget`` this is the dual of the unrestricted program:
    ``min b^S.y  s.t. A^T y >= p, y_pool <= c``. With ``budget`` it is the
    dual of producing with exactly ``budget`` units at hand:
    ``min b^S.y + budget y_pool  s.t. A^T y >= p``. Both are returned in
    maximization form (objective negated).
    """
    resources = coalition_resources(instance, coalition)
    q = instance.q
    rows = [
        tuple(-instance.production_matrix[t][j] for t in range(q + 1))
        for j in range(instance.g)
    ]
    rhs = [-price for price in instance.prices]
    pool_cost = ZERO
    if budget is None:
        rows.append((ZERO,) * q + (Fraction(1),))
        rhs.append(instance.unit_cost)
    else:
        pool_cost = Fraction(budget)
    objective = tuple(-b for b in resources) + (-pool_cost,)
    return StandardLP(objective=objective, matrix=tuple(rows), rhs=tuple(rhs))


def validate_instance(instance: LPPInstance) -> list[Violation]:
    """Every violated modelling assumption, with 1-based coordinates.

    The singleton profitability check solves one program per producer, so it
    only runs once every structural assumption holds.
    """
    violations: list[Violation] = []
    q, g = instance.q, instance.g
    pool = instance.common_pool_row

    for t, row in enumerate(instance.production_matrix):
        for j, a in enumerate(row):
            if a < 0:
                violations.append(
                    Violation(
                        code="negative-technology",
                        message="technology entries must be nonnegative",
                        location=f"A[{t + 1}][{j + 1}]",
                    )
                )
    for t, row in enumerate(instance.endowments):
        for i, b in enumerate(row):
            if b < 0:
                violations.append(
                    Violation(
                        code="negative-endowment",
                        message="endowments must be nonnegative",
                        location=f"B[{t + 1}][{i + 1}]",
                    )
                )
        if not any(b > 0 for b in row):
            violations.append(
                Violation(
                    code="unowned-resource",
                    message="every resource needs a producer holding a positive amount",
                    location=f"B[{t + 1}]",
                )
            )
    for j, a in enumerate(pool):
        if a <= 0:
            violations.append(
                Violation(
                    code="common-pool-row",
                    message="common-pool row must be strictly positive",
                    location=f"A[{q + 1}][{j + 1}]",
                )
            )
    for j in range(g):
        if not any(row[j] > 0 for row in instance.resource_rows):
            violations.append(
                Violation(
                    code="output-without-input",
                    message="every good must use some private resource",
                    location=f"A[*][{j + 1}]",
                )
            )
    for j, price in enumerate(instance.prices):
        if price <= 0:
            violations.append(
                Violation(code="price", message="prices must be positive", location=f"p[{j + 1}]")
            )
        if price <= pool[j] * instance.unit_cost:
            violations.append(
                Violation(
                    code="profitability",
                    message="profitability p_j > a_{(q+1)j} c fails",
                    location=f"p[{j + 1}]",
                )
            )
    if instance.unit_cost < 0:
        violations.append(
            Violation(code="unit-cost", message="unit cost c must be nonnegative", location="c")
        )
    if instance.stock <= 0:
        violations.append(
            Violation(code="stock", message="common-pool stock r must be positive", location="r")
        )

    if violations:
        logger.debug("Skipping profitability solves: %d structural violations", len(violations))
        return violations

    for i in range(instance.n):
        outcome = solve(coalition_program(instance, Coalition(1 << i)))
        if outcome.status is not LPStatus.OPTIMAL or outcome.value is None or outcome.value <= 0:
            violations.append(
                Violation(
                    code="unprofitable-producer",
                    message=f"producer {i + 1} cannot make a positive profit on its own",
                    location=f"B[*][{i + 1}]",
                )
            )
    return violations
