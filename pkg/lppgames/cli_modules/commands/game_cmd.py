"""
Game command - Build one of the cooperative games of an instance.
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
from lppgames.games import CharacteristicGame, PartitionFunctionGame, build_model_game
from lppgames.schemas import RULE_NAMES, ModelSelector, RunConfig

MODEL_CHOICES = [m.value for m in ModelSelector]


def print_characteristic(game: CharacteristicGame, run: RunConfig) -> None:
    table = out.create_table(title=f"Game {game.name} ({game.n} players)")
    table.caption = out.approximation_note(run.decimals)
    table.add_column("Coalition", style="cyan")
    table.add_column(f"{game.name}(S)", style="green", justify="right")
    for coalition, worth in game.items():
        table.add_row(str(coalition), out.format_rational(worth, run.decimals))
    out.print_table(table)


def print_partition_function(game: PartitionFunctionGame, run: RunConfig) -> None:
    table = out.create_table(title=f"Partition function game, rule {game.rule_name}")
    table.caption = out.approximation_note(run.decimals)
    table.add_column("Partition", style="cyan")
    table.add_column("Block", style="cyan")
    table.add_column("z_S(P)", justify="right")
    table.add_column("V(S|P)", style="green", justify="right")
    for key, worth in game.worths.items():
        table.add_row(
            str(key.partition),
            str(key.coalition),
            out.format_rational(game.allocations[key], run.decimals),
            out.format_rational(worth, run.decimals),
        )
    out.print_table(table)


@click.command()
@instance_options
@click.option(
    "--model",
    "model",
    type=click.Choice(MODEL_CHOICES),
    required=True,
    help="Which game to build",
)
@click.option(
    "--rule",
    type=click.Choice(list(RULE_NAMES)),
    default=None,
    help="Allocation rule for --model partition (default: proportional)",
)
@click.pass_context
@handle_errors("Game construction")
def game(
    ctx: click.Context,
    instance: Path,
    output_format: str | None,
    decimals: int | None,
    partition_cap: int | None,
    model: str,
    rule: str | None,
) -> None:
    """Print the worths of a characteristic or partition function game.

    Examples:

        lppgames game example2.json --model characteristic
        lppgames game example4.json --model optimistic --format json
        lppgames game example1.json --model partition --rule pessimistic-embedded
    """
    run = make_run_config(
        ctx,
        "game",
        input_path=instance,
        output_format=output_format,
        decimals=decimals,
        partition_cap=partition_cap,
        model_selector=model,
        rule_name=rule,
    )
    document, engine = load_checked(run)
    assert run.model_selector is not None
    with working(run, f"Building {run.model_selector.value} game"):
        built = build_model_game(engine, run.model_selector, run.rule_name, document)

    if is_json(run):
        out.print_json(built.to_dict())
    elif isinstance(built, PartitionFunctionGame):
        print_partition_function(built, run)
    else:
        print_characteristic(built, run)
