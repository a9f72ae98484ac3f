"""Command-line interface modules."""

from .skillcheck_cli import RunConfig, build_parser, main, run

__all__ = ["RunConfig", "build_parser", "main", "run"]
