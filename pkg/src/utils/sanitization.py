"""String sanitization utilities."""

import re


def sanitize_filename(name: str) -> str:
    """
    Sanitize a component name to be safe for use as a file name.

    Keeps letters, numbers, dashes, underscores and dots. Every other run of
    characters becomes a single underscore.

    Args:
        name: Component or model name

    Returns:
        Sanitized string safe for use as a file name

    Example:
        >>> sanitize_filename("lifecycle(goto)")
        'lifecycle_goto'
    """
    name = re.sub(r"[^\w\-.]+", "_", name.strip())
    name = name.strip("._")

    return name or "component"
