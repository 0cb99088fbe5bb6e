"""
Classify command - Minimal over-demanding partitions and the regime.
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


@click.command()
@instance_options
@click.pass_context
@handle_errors("Classification")
def classify(
    ctx: click.Context,
    instance: Path,
    output_format: str | None,
    decimals: int | None,
    partition_cap: int | None,
) -> None:
    """Compute M^min and classify the regime of the stock.

    Examples:

        lppgames classify example2.json
    """
    run = make_run_config(
        ctx,
        "classify",
        input_path=instance,
        output_format=output_format,
        decimals=decimals,
        partition_cap=partition_cap,
    )
    _, engine = load_checked(run)
    with working(run, "Scanning partitions"):
        report = engine.compute_m_min()

    if is_json(run):
        out.print_json(report.model_dump(mode="json"))
        return

    out.print_summary(
        "Regime",
        {
            "regime": report.regime.value,
            "stock r": out.format_rational(report.stock, run.decimals),
            "grand demand d_N": out.format_rational(report.grand_demand, run.decimals),
            "|M^min|": len(report.m_min),
        },
    )
    if report.m_min:
        table = out.create_table(title="M^min")
        table.add_column("Partition", style="cyan")
        table.add_column("d(P)", justify="right")
        for partition in report.m_min:
            table.add_row(
                str(partition),
                out.format_rational(engine.partition_demand(partition), run.decimals),
            )
        out.print_table(table)
