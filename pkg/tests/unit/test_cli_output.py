"""
Unit tests for cli_output module.
"""

from fractions import Fraction
from unittest.mock import patch

import pytest
from rich.panel import Panel
from rich.table import Table

from lppgames import cli_output


class TestStatusMessages:
    """Test status message functions."""

    @patch.object(cli_output.console, "print")
    def test_success(self, mock_print):
        """Test success message."""
        cli_output.success("Wrote instance")
        mock_print.assert_called_once()
        args = mock_print.call_args[0]
        assert "✓" in args[0]
        assert "Wrote instance" in args[0]

    @patch.object(cli_output.console, "print")
    def test_error(self, mock_print):
        """Test error message."""
        cli_output.error("Core analysis failed")
        args = mock_print.call_args[0]
        assert "✗" in args[0]
        assert mock_print.call_args[1].get("style") == "red"

    @patch.object(cli_output.console, "print")
    def test_warning(self, mock_print):
        """Test warning message."""
        cli_output.warning("No partition is partitionally stable")
        args = mock_print.call_args[0]
        assert "⚠" in args[0]
        assert mock_print.call_args[1].get("style") == "yellow"

    @patch.object(cli_output.console, "print")
    def test_info(self, mock_print):
        """Test info message."""
        cli_output.info("d_N > r")
        args = mock_print.call_args[0]
        assert "ℹ" in args[0]
        assert "d_N > r" in args[0]


class TestPanels:
    """Test panel and summary output."""

    @patch.object(cli_output.console, "print")
    def test_panel(self, mock_print):
        """Test a Panel is printed."""
        cli_output.panel("content", title="Core", subtitle="v^opt")
        assert isinstance(mock_print.call_args[0][0], Panel)

    @patch.object(cli_output, "panel")
    def test_print_summary(self, mock_panel):
        """Test one line per item."""
        cli_output.print_summary("Regime", {"regime": "general", "|M^min|": 1}, style="red")
        args, kwargs = mock_panel.call_args
        assert "regime:" in args[0]
        assert "|M^min|:[/cyan] 1" in args[0]
        assert kwargs == {"title": "Regime", "style": "red"}


class TestSpinner:
    """Test the spinner context manager."""

    def test_spinner_context(self):
        """Test spinner yields the progress and its task."""
        with cli_output.spinner("Checking partitions") as (progress, task):
            assert progress is not None
            assert task is not None

    def test_spinner_exception_handling(self):
        """Test spinner lets exceptions through."""
        with pytest.raises(ValueError):
            with cli_output.spinner("Test"):
                raise ValueError("Test error")


class TestTables:
    """Test table creation and printing."""

    def test_create_table(self):
        """Test create_table returns a titled table."""
        table = cli_output.create_table(title="M^min", show_lines=True)
        assert isinstance(table, Table)
        assert table.title == "M^min"

    @patch.object(cli_output.console, "print")
    def test_print_table(self, mock_print):
        """Test print_table passes the table through."""
        table = cli_output.create_table()
        table.add_column("Coalition")
        table.add_row("{1,2}")
        cli_output.print_table(table)
        mock_print.assert_called_once_with(table)


class TestFormatRational:
    """Test number rendering."""

    def test_exact(self):
        """Test the exact form is the default."""
        assert cli_output.format_rational(Fraction(31, 3)) == "31/3"
        assert cli_output.format_rational(Fraction(5)) == "5"

    def test_decimal_exact(self):
        """Test decimals that represent the value exactly are unmarked."""
        assert cli_output.format_rational(Fraction(1, 2), 2) == "0.50"
        assert cli_output.format_rational(Fraction(7), 0) == "7"

    def test_decimal_rounded(self):
        """Test rounded decimals carry a tilde."""
        assert cli_output.format_rational(Fraction(31, 3), 3) == "~10.333"
        assert cli_output.format_rational(Fraction(2, 3), 2) == "~0.67"

    def test_approximation_note(self):
        """Test the caption only appears with decimals."""
        assert cli_output.approximation_note(None) is None
        assert "~" in cli_output.approximation_note(2)


class TestPrintJson:
    """Test machine-readable output."""

    @patch.object(cli_output.console, "print_json")
    def test_print_json(self, mock_print_json):
        """Test data goes through rich without wrapping."""
        cli_output.print_json({"regime": "general"})
        mock_print_json.assert_called_once_with(data={"regime": "general"}, soft_wrap=True)
