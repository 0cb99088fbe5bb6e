"""
CLI modules package for lppgames.
"""

from lppgames.cli_modules.utils import load_config

__all__ = ["load_config"]
