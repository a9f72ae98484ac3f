"""Skillset compiler and explicit-state LTL model checker for robot executive layers."""

__version__ = "0.1.0"
