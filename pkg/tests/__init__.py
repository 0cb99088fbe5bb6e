"""
Tests for lppgames.
"""
