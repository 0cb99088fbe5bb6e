"""
Generate command - Seeded random instances in a chosen regime.
"""

from pathlib import Path

import click

from lppgames import cli_output as out
from lppgames.cli_modules.utils import get_config, handle_errors, make_run_config
from lppgames.generator import InstanceGenerator
from lppgames.model import dump_instance
from lppgames.schemas import Regime


@click.command()
@click.option("--n", "n", type=click.IntRange(min=1), default=3, help="Producers")
@click.option("--q", "q", type=click.IntRange(min=1), default=2, help="Private resources")
@click.option("--g", "g", type=click.IntRange(min=1), default=2, help="Goods")
@click.option("--seed", type=int, required=True, help="Random seed")
@click.option(
    "--regime",
    type=click.Choice([r.value for r in Regime]),
    default=Regime.UNCONSTRAINED.value,
    help="Regime the stock r is chosen for",
)
@click.option(
    "--output",
    "-o",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Write to a file instead of standard output",
)
@click.option("--partition-cap", type=int, default=None, help="Largest player count")
@click.pass_context
@handle_errors("Generation")
def generate(
    ctx: click.Context,
    n: int,
    q: int,
    g: int,
    seed: int,
    regime: str,
    output: Path | None,
    partition_cap: int | None,
) -> None:
    """Write a random valid instance; equal seeds give identical files.

    Examples:

        lppgames generate --seed 1 --n 3 --regime unconstrained
        lppgames generate --seed 7 --n 2 --regime grand-only -o inst.json
    """
    run = make_run_config(ctx, "generate", seed=seed, partition_cap=partition_cap)
    config = get_config(ctx)
    assert run.seed is not None
    generator = InstanceGenerator(run.seed, config.generator, run.partition_cap)
    instance = generator.generate(n, q, g, Regime(regime))
    text = dump_instance(instance)

    if output is None:
        click.echo(text, nl=False)
    else:
        output.write_text(text, encoding="utf-8")
        out.success(f"Wrote {regime} instance to {output}")
