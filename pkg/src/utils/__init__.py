"""Utility functions for diagnostics, sanitization, and file operations."""

from .diagnostics import Diagnostic, DiagnosticError, Severity, error, has_errors, warning
from .file_utils import ensure_readable, read_source, write_text
from .sanitization import sanitize_filename

__all__ = [
    "Diagnostic",
    "DiagnosticError",
    "Severity",
    "error",
    "has_errors",
    "warning",
    "ensure_readable",
    "read_source",
    "write_text",
    "sanitize_filename",
]
