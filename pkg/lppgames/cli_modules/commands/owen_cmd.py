"""
Owen command - Core witness built from grand-coalition dual prices.
"""

from pathlib import Path

import click

from lppgames import cli_output as out
from lppgames.cli_modules.commands.core_cmd import print_core_report
from lppgames.cli_modules.utils import (
    handle_errors,
    instance_options,
    is_json,
    load_checked,
    make_run_config,
    working,
)
from lppgames.core import Allocation, owen_report, owen_set_elements, theorem4_report
from lppgames.exceptions import PreconditionError
from lppgames.games import equal_share_resource_game, supplied_resource_game


@click.command()
@instance_options
@click.pass_context
@handle_errors("Owen construction")
def owen(
    ctx: click.Context,
    instance: Path,
    output_format: str | None,
    decimals: int | None,
    partition_cap: int | None,
) -> None:
    """Price endowments at dual prices to get a core allocation.

    With d_N <= r the witness lies in the core of the optimistic game (and of
    the characteristic game when the stock never binds); small instances also
    list every allocation from the optimal dual face. With d_N > r the
    resource game R and the split u from the file are used, or the equal
    split r/n with R(S) = min(r|S|/n, d_S) when the file has neither. A file
    carrying only one of R and u is refused.

    Examples:

        lppgames owen example1.json
        lppgames owen example3_modR.json --format json
    """
    run = make_run_config(
        ctx,
        "owen",
        input_path=instance,
        output_format=output_format,
        decimals=decimals,
        partition_cap=partition_cap,
    )
    document, engine = load_checked(run)
    elements: list[Allocation] | None = None
    resource_source = None

    with working(run, "Solving the grand-coalition dual"):
        if engine.optimal_demand(engine.grand) <= engine.stock:
            report = owen_report(engine)
            if engine.n <= run.owen_enumeration_max_players:
                elements = owen_set_elements(engine, run.owen_enumeration_max_players)
        else:
            if (document.resource_game is None) != (document.allocation is None):
                given, absent = ("R", "u") if document.allocation is None else ("u", "R")
                raise PreconditionError(
                    "owen",
                    f"the instance file has \"{given}\" but no \"{absent}\"",
                    f"Add \"{absent}\" to the file, or drop \"{given}\" to use the equal-share resource game",
                )
            if document.resource_game is not None and document.allocation is not None:
                resource = supplied_resource_game(engine, document)
                u = Allocation(document.allocation)
                resource_source = "supplied"
            else:
                resource, shares = equal_share_resource_game(engine)
                u = Allocation(shares)
                resource_source = "equal-share"
            report = theorem4_report(engine, resource, u)

    if is_json(run):
        payload = report.model_dump(mode="json")
        payload["resource_game"] = resource_source
        payload["owen_set"] = (
            [[str(x) for x in element] for element in elements] if elements is not None else None
        )
        out.print_json(payload)
        return

    print_core_report(report, run)
    if resource_source is not None:
        out.info(f"d_N > r: rent on the pool split by the {resource_source} resource game")
    if elements is not None:
        table = out.create_table(title="Allocations from the optimal dual face")
        for i in range(engine.n):
            table.add_column(f"x_{i + 1}", justify="right")
        for element in elements:
            table.add_row(*(out.format_rational(x, run.decimals) for x in element))
        out.print_table(table)
