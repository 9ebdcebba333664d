"""Tests for bcalc."""
