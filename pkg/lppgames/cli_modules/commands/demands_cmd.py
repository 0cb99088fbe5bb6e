"""
Demands command - Optimal common-pool demands of coalitions.
"""

from pathlib import Path

import click

from lppgames import cli_output as out
from lppgames.cli_modules.utils import (
    handle_errors,
    instance_options,
    is_json,
    load_checked,
    make_run_config,
    working,
)
from lppgames.exceptions import StructuralError
from lppgames.lattice import Coalition, check_cap


@click.command()
@instance_options
@click.option(
    "--coalition",
    "coalition_label",
    default=None,
    help="Only this coalition, e.g. 1,3",
)
@click.pass_context
@handle_errors("Demand computation")
def demands(
    ctx: click.Context,
    instance: Path,
    output_format: str | None,
    decimals: int | None,
    partition_cap: int | None,
    coalition_label: str | None,
) -> None:
    """List d_S and the stand-alone profit value(S; d_S) per coalition.

    Examples:

        lppgames demands example2.json
        lppgames demands example2.json --coalition 2,3 --decimals 3
    """
    run = make_run_config(
        ctx,
        "demands",
        input_path=instance,
        output_format=output_format,
        decimals=decimals,
        partition_cap=partition_cap,
    )
    document, engine = load_checked(run)

    if coalition_label is not None:
        chosen = Coalition.parse(coalition_label, engine.n)
        if chosen.is_empty() or chosen.mask >> engine.n:
            raise StructuralError(f"'{coalition_label}' is not a coalition of {engine.n} players")
        coalitions = [chosen]
    else:
        check_cap(engine.n, run.partition_cap)
        coalitions = sorted(
            (Coalition(mask) for mask in range(1, 1 << engine.n)),
            key=lambda c: (len(c), c.labels),
        )

    with working(run, "Solving coalition programs"):
        rows = [(c, engine.optimal_demand(c), engine.standalone_value(c)) for c in coalitions]

    if is_json(run):
        out.print_json(
            {
                "stock": str(engine.stock),
                "demands": {c.label(engine.n): str(d) for c, d, _ in rows},
                "values": {c.label(engine.n): str(v) for c, _, v in rows},
            }
        )
        return

    table = out.create_table(title=f"Optimal demands (r = {engine.stock})")
    table.caption = out.approximation_note(run.decimals)
    table.add_column("Coalition", style="cyan")
    table.add_column("d_S", style="green", justify="right")
    table.add_column("value(S; d_S)", justify="right")
    table.add_column("d_S > r", justify="center")
    for coalition, demand, value in rows:
        table.add_row(
            str(coalition),
            out.format_rational(demand, run.decimals),
            out.format_rational(value, run.decimals),
            "yes" if demand > engine.stock else "",
        )
    out.print_table(table)
