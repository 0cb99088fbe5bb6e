"""
CLI commands package.
"""

from lppgames.cli_modules.commands.classify_cmd import classify
from lppgames.cli_modules.commands.core_cmd import core
from lppgames.cli_modules.commands.demands_cmd import demands
from lppgames.cli_modules.commands.game_cmd import game
from lppgames.cli_modules.commands.generate_cmd import generate
from lppgames.cli_modules.commands.owen_cmd import owen
from lppgames.cli_modules.commands.stability_cmd import stability
from lppgames.cli_modules.commands.validate_cmd import validate

__all__ = [
    "classify",
    "core",
    "demands",
    "game",
    "generate",
    "owen",
    "stability",
    "validate",
]
