"""
Shared utilities for CLI commands.
"""

import logging
import os
import sys
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from functools import wraps
from pathlib import Path
from typing import Any, NoReturn, TypeVar

import click
import yaml
from pydantic import ValidationError
from rich.logging import RichHandler

from lppgames import cli_output as out
from lppgames.demand import DemandEngine
from lppgames.exceptions import ConfigurationError, LPPGamesError
from lppgames.model import read_instance, validate_instance
from lppgames.schemas import (
    InstanceDocument,
    LPPGamesConfig,
    OutputFormat,
    RunConfig,
    Violation,
)

DEFAULT_CONFIG_PATH = Path(".lppgames.yml")
CONFIG_ENV_VAR = "LPPGAMES_CONFIG"

F = TypeVar("F", bound=Callable[..., Any])


def resolve_config_path(explicit: Path | None = None) -> Path:
    """Config path from the flag, then ``LPPGAMES_CONFIG``, then the default."""
    if explicit is not None:
        return explicit
    from_env = os.environ.get(CONFIG_ENV_VAR)
    return Path(from_env) if from_env else DEFAULT_CONFIG_PATH


def load_config(config_path: Path) -> LPPGamesConfig:
    """Load configuration from file.

    Args:
        config_path: Path to config file

    Returns:
        Loaded configuration (defaults when the file does not exist)

    Raises:
        ConfigurationError: If the file is not valid YAML or has bad values
    """
    if not config_path.exists():
        return LPPGamesConfig()  # Use defaults

    try:
        with open(config_path, encoding="utf-8") as f:
            config_dict = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Invalid YAML: {e}", config_path) from e

    if config_dict is None:
        return LPPGamesConfig()
    if not isinstance(config_dict, dict):
        raise ConfigurationError("Top level of the config must be a mapping", config_path)

    try:
        return LPPGamesConfig(**config_dict)
    except ValidationError as e:
        raise ConfigurationError(f"Config validation failed: {e}", config_path) from e


def setup_logging(verbose: bool) -> None:
    """Route library logs through rich; DEBUG when verbose."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=out.console, show_path=verbose)],
        force=True,
    )


def fail(exc: LPPGamesError) -> NoReturn:
    """Report a library error and exit with its code."""
    out.error(exc.message)
    if exc.suggestion:
        out.info(exc.suggestion)
    sys.exit(exc.exit_code)


def handle_errors(action: str) -> Callable[[F], F]:
    """Map library errors to exit codes and anything else to exit 1."""

    def decorator(func: F) -> F:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            try:
                return func(*args, **kwargs)
            except LPPGamesError as e:
                fail(e)
            except (click.exceptions.Exit, click.ClickException):
                raise
            except Exception as e:
                out.error(f"{action} failed: {e}")
                sys.exit(1)

        return wrapper  # type: ignore[return-value]

    return decorator


def get_config(ctx: click.Context) -> LPPGamesConfig:
    obj = ctx.find_root().obj or {}
    config = obj.get("config")
    return config if isinstance(config, LPPGamesConfig) else LPPGamesConfig()


def make_run_config(ctx: click.Context, command: str, **flags: Any) -> RunConfig:
    """Merge flags over the config file and validate the combination."""
    config = get_config(ctx)
    values: dict[str, Any] = {
        "command": command,
        "output_format": config.output.format,
        "decimals": config.output.decimals,
        "partition_cap": config.limits.partition_cap,
        "semantics": config.stability.semantics,
        "owen_enumeration_max_players": config.limits.owen_enumeration_max_players,
    }
    values.update({key: value for key, value in flags.items() if value is not None})
    try:
        return RunConfig(**values)
    except ValidationError as e:
        for err in e.errors():
            out.error(err["msg"].removeprefix("Value error, "))
        sys.exit(2)


def print_violations(violations: list[Violation], source: Path) -> None:
    table = out.create_table(title=f"Assumption violations in {source.name}")
    table.add_column("Code", style="red")
    table.add_column("Where", style="cyan")
    table.add_column("Problem")
    for violation in violations:
        table.add_row(violation.code, violation.location or "-", violation.message)
    out.print_table(table)


def load_checked(run: RunConfig) -> tuple[InstanceDocument, DemandEngine]:
    """Read and validate the instance file; exit 2 with the violations if it fails."""
    assert run.input_path is not None
    document = read_instance(run.input_path)
    violations = validate_instance(document)
    if violations:
        if run.output_format is OutputFormat.JSON:
            out.print_json({"valid": False, "violations": [v.model_dump() for v in violations]})
        else:
            print_violations(violations, run.input_path)
            out.error(f"{len(violations)} assumption(s) violated")
        sys.exit(2)
    return document, DemandEngine(document.situation(), run.partition_cap)


def is_json(run: RunConfig) -> bool:
    return run.output_format is OutputFormat.JSON


@contextmanager
def working(run: RunConfig, description: str) -> Iterator[None]:
    """Spinner for table output; silent for JSON so stdout stays parseable."""
    if is_json(run) or not out.console.is_terminal:
        yield
        return
    with out.spinner(description):
        yield


def instance_options(func: F) -> F:
    """Options shared by every command that reads an instance file."""
    decorators = [
        click.argument("instance", type=click.Path(path_type=Path, exists=True, dir_okay=False)),
        click.option(
            "--format",
            "output_format",
            type=click.Choice([f.value for f in OutputFormat]),
            default=None,
            help="Output format (default from config: table)",
        ),
        click.option(
            "--decimals",
            type=click.IntRange(min=0),
            default=None,
            help="Render rounded decimals instead of exact fractions",
        ),
        click.option(
            "--partition-cap",
            type=int,
            default=None,
            help="Largest player count for partition enumeration (default 10)",
        ),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func
