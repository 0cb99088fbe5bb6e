"""
Command-line interface for lppgames.
"""

from pathlib import Path

import click
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

from lppgames import __version__  # noqa: E402
from lppgames.cli_modules.commands import (  # noqa: E402
    classify,
    core,
    demands,
    game,
    generate,
    owen,
    stability,
    validate,
)
from lppgames.cli_modules.utils import (  # noqa: E402
    fail,
    load_config,
    resolve_config_path,
    setup_logging,
)
from lppgames.exceptions import ConfigurationError  # noqa: E402

__all__ = [
    "classify",
    "core",
    "demands",
    "game",
    "generate",
    "main",
    "owen",
    "stability",
    "validate",
]


@click.group()
@click.version_option(version=__version__)
@click.option(
    "--config",
    "config_path",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Config file (default: $LPPGAMES_CONFIG or .lppgames.yml)",
)
@click.option("--verbose", "-v", is_flag=True, help="Log LP solves and regime decisions")
@click.pass_context
def main(ctx: click.Context, config_path: Path | None, verbose: bool) -> None:
    """lppgames: cooperative games of linear production with a common-pool resource."""
    ctx.ensure_object(dict)
    setup_logging(verbose)
    try:
        ctx.obj["config"] = load_config(resolve_config_path(config_path))
    except ConfigurationError as e:
        fail(e)


# Register commands
main.add_command(validate)
main.add_command(demands)
main.add_command(classify)
main.add_command(game)
main.add_command(core)
main.add_command(owen)
main.add_command(stability)
main.add_command(generate)


if __name__ == "__main__":
    main()
