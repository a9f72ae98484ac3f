"""File reading and writing helpers for the command-line tools."""

import os
import sys


def read_source(path: str) -> str:
    """
    Read a source file as text.

    Undecodable bytes become U+FFFD so that the parsers always receive text.

    Args:
        path: Path to the file

    Returns:
        File contents

    Raises:
        OSError: If the file cannot be read
    """
    with open(path, "rb") as fh:
        data = fh.read()
    return data.decode("utf-8", errors="replace")


def ensure_readable(path: str) -> None:
    """
    Check that an input file exists.

    Args:
        path: Path to the input file

    Raises:
        SystemExit: With code 2 if the file is missing
    """
    if not os.path.isfile(path):
        print(f"Error: file not found: {path}", file=sys.stderr)
        sys.exit(2)


def write_text(path: str, text: str) -> str:
    """Write ``text`` to ``path``, creating parent directories. Returns the path."""
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path
