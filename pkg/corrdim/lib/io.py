"""
IO and logging utilities for corrdim.

This module provides:
- Colors: ANSI color codes for terminal diagnostics
- Output functions for logging, errors, warnings, progress and data output

Everything except out() goes to stderr, so result files and stdout stay
machine-clean while a run reports what it is doing.
"""
import os
import sys


class Colors:
    """ANSI color codes for terminal output."""
    HEADER = '\033[95m'
    BLUE = '\033[94m'
    GREEN = '\033[92m'
    WARNING = '\033[93m'
    FAIL = '\033[91m'
    ENDC = '\033[0m'
    BOLD = '\033[1m'


def use_color():
    """True when stderr is an interactive terminal and NO_COLOR is unset."""
    if os.environ.get('NO_COLOR'):
        return False
    return hasattr(sys.stderr, 'isatty') and sys.stderr.isatty()


def paint(message, color):
    """Wrap message in a color code when coloring is enabled."""
    if not use_color():
        return str(message)
    return f"{color}{message}{Colors.ENDC}"


def log(*args, **kwargs):
    """
    Print to stderr for diagnostic messages.

    Examples:
        >>> log("Embedding m=3...")
        >>> log("Loaded", n, "samples")
    """
    print(*args, file=sys.stderr, **kwargs)


def out(*args, **kwargs):
    """
    Print to stdout for actual program output/data.

    Examples:
        >>> out("m,slope")
    """
    print(*args, **kwargs)


def error(message, **kwargs):
    """Print an error message to stderr in red."""
    log(paint(message, Colors.FAIL), **kwargs)


def success(message, **kwargs):
    """Print a success message to stderr in green."""
    log(paint(message, Colors.GREEN), **kwargs)


def warning(message, **kwargs):
    """
    Print a warning message to stderr in yellow.

    Examples:
        >>> warning("r=1.5 lies outside (0, 1)")
    """
    log(paint(message, Colors.WARNING), **kwargs)


def info(message, **kwargs):
    """Print an info message to stderr in blue."""
    log(paint(message, Colors.BLUE), **kwargs)


def header(message, **kwargs):
    """
    Print a header message to stderr in magenta.

    Examples:
        >>> header("--- Correlation Integral ---")
    """
    log(paint(message, Colors.HEADER), **kwargs)


def bold(message, **kwargs):
    """Print a bold message to stderr."""
    log(paint(message, Colors.BOLD), **kwargs)


def progress(done, total, label=""):
    """
    Report progress of a long computation on a single stderr line.

    The line is rewritten in place and terminated once done == total.

    Examples:
        >>> for k, m in enumerate(m_values, 1):
        ...     progress(k, len(m_values), f"m={m}")
    """
    end = '\n' if done >= total else '\r'
    log(paint(f"  [{done}/{total}] {label}", Colors.BLUE), end=end, flush=True)
