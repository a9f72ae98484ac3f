"""Tests for the skillcheck compiler and model checker."""
