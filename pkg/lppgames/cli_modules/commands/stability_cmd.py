"""
Stability command - Partitionally stable coalition structures.
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
from lppgames.schemas import StabilitySemantics
from lppgames.stability import StabilityAnalyzer


@click.command()
@instance_options
@click.option(
    "--semantics",
    type=click.Choice([s.value for s in StabilitySemantics]),
    default=None,
    help="Reduced-game reading (default from config: capped)",
)
@click.option("--all", "show_all", is_flag=True, help="Show certificates of unstable partitions too")
@click.pass_context
@handle_errors("Stability analysis")
def stability(
    ctx: click.Context,
    instance: Path,
    output_format: str | None,
    decimals: int | None,
    partition_cap: int | None,
    semantics: str | None,
    show_all: bool,
) -> None:
    """Find every partitionally stable partition.

    Examples:

        lppgames stability example2.json
        lppgames stability example2.json --semantics block-level --all
    """
    run = make_run_config(
        ctx,
        "stability",
        input_path=instance,
        output_format=output_format,
        decimals=decimals,
        partition_cap=partition_cap,
        semantics=semantics,
    )
    _, engine = load_checked(run)
    analyzer = StabilityAnalyzer(engine, run.semantics)
    with working(run, "Checking partitions"):
        report = analyzer.report()

    if is_json(run):
        out.print_json(report.model_dump(mode="json"))
        return

    if report.stable:
        out.success(f"Stable partitions: {', '.join(report.stable)}")
    else:
        out.warning("No partition is partitionally stable")

    table = out.create_table(title=f"Certificates ({report.semantics.value} semantics)")
    table.add_column("Partition", style="cyan")
    table.add_column("Stable", justify="center")
    table.add_column("Failed condition", justify="center")
    table.add_column("Witness")
    for certificate in report.certificates:
        if certificate.stable or show_all:
            table.add_row(
                certificate.partition,
                "yes" if certificate.stable else "no",
                str(certificate.condition or ""),
                certificate.witness or "",
            )
    out.print_table(table)
