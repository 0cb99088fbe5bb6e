"""
Core command - Decide whether a game's core is empty.
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
from lppgames.core import core_nonempty, partition_core
from lppgames.games import PartitionFunctionGame, build_model_game
from lppgames.schemas import RULE_NAMES, CoreReport, ModelSelector, PartitionCoreMode, RunConfig


def print_core_report(report: CoreReport, run: RunConfig) -> None:
    """Summary panel for a core verdict, with the witness when there is one."""
    items: dict[str, object] = {"game": report.game, "core": report.verdict.value}
    if report.witness is not None and report.provenance is not None:
        items["witness"] = "(" + ", ".join(
            out.format_rational(x, run.decimals) for x in report.witness
        ) + ")"
        items["provenance"] = report.provenance.value
    out.print_summary("Core", items, style="green" if report.nonempty else "red")


@click.command()
@instance_options
@click.option(
    "--model",
    type=click.Choice([m.value for m in ModelSelector]),
    required=True,
    help="Which game to analyse",
)
@click.option(
    "--rule",
    type=click.Choice(list(RULE_NAMES)),
    default=None,
    help="Allocation rule for --model partition",
)
@click.option(
    "--view",
    type=click.Choice([m.value for m in PartitionCoreMode]),
    default=None,
    help="For --model partition: core through v^- (pessimistic, default) or v^+ (optimistic)",
)
@click.pass_context
@handle_errors("Core analysis")
def core(
    ctx: click.Context,
    instance: Path,
    output_format: str | None,
    decimals: int | None,
    partition_cap: int | None,
    model: str,
    rule: str | None,
    view: str | None,
) -> None:
    """Decide core non-emptiness and print a witness allocation.

    Examples:

        lppgames core example4.json --model optimistic
        lppgames core example2.json --model partition --view optimistic
    """
    run = make_run_config(
        ctx,
        "core",
        input_path=instance,
        output_format=output_format,
        decimals=decimals,
        partition_cap=partition_cap,
        model_selector=model,
        rule_name=rule,
        core_view=view,
    )
    document, engine = load_checked(run)
    assert run.model_selector is not None
    with working(run, "Solving the core feasibility program"):
        built = build_model_game(engine, run.model_selector, run.rule_name, document)
        if isinstance(built, PartitionFunctionGame):
            report = partition_core(built, run.core_view or PartitionCoreMode.PESSIMISTIC)
        else:
            report = core_nonempty(built)

    if is_json(run):
        out.print_json(report.model_dump(mode="json"))
    else:
        print_core_report(report, run)
