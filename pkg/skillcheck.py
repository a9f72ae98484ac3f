#!/usr/bin/env python3
"""Entry point for skillcheck CLI - imports from src.cli.skillcheck_cli."""

from src.cli.skillcheck_cli import main

if __name__ == "__main__":
    main()
