"""
Validate command - Check an instance file against the modelling assumptions.
"""

import sys
from pathlib import Path

import click

from lppgames import cli_output as out
from lppgames.cli_modules.utils import (
    handle_errors,
    instance_options,
    is_json,
    make_run_config,
    print_violations,
)
from lppgames.model import read_instance, validate_instance


@click.command()
@instance_options
@click.pass_context
@handle_errors("Validation")
def validate(
    ctx: click.Context,
    instance: Path,
    output_format: str | None,
    decimals: int | None,
    partition_cap: int | None,
) -> None:
    """Check that an instance satisfies every modelling assumption.

    Exits with code 2 and lists the violations when it does not.

    Examples:

        lppgames validate example2.json
        lppgames validate example2.json --format json
    """
    run = make_run_config(
        ctx,
        "validate",
        input_path=instance,
        output_format=output_format,
        decimals=decimals,
        partition_cap=partition_cap,
    )
    document = read_instance(instance)
    violations = validate_instance(document)

    if is_json(run):
        out.print_json(
            {
                "valid": not violations,
                "n": document.n,
                "q": document.q,
                "g": document.g,
                "violations": [v.model_dump() for v in violations],
            }
        )
    elif violations:
        print_violations(violations, instance)
        out.error(f"{len(violations)} assumption(s) violated")
    else:
        out.success(f"{instance.name} is a valid instance")
        out.print_summary(
            "Instance",
            {
                "producers (n)": document.n,
                "resources (q)": document.q,
                "goods (g)": document.g,
                "unit cost (c)": out.format_rational(document.unit_cost, run.decimals),
                "stock (r)": out.format_rational(document.stock, run.decimals),
            },
        )

    if violations:
        sys.exit(2)
