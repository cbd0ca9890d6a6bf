#!/usr/bin/env python3
"""
Usage: corrdim config [options]

Manage corrdim defaults (kernel, metric, filter, threshold grid, workers).
Opens the config file in an editor, or prints the effective values.

Options:
  -e, --editor EDITOR    Use specific editor (overrides $EDITOR and fallback chain)
  --show                 Print the effective configuration as JSON

Examples:
  corrdim config              # Edit with the default editor
  corrdim config -e nano      # Force use of nano
  corrdim config --show       # Print effective defaults
"""
import os
import sys
import json
import shutil
import argparse
import subprocess

from corrdim.lib.io import info, error, out, warning
from corrdim.lib.config import sync_config, get_config_path, load_config, default_workers, WORKERS_ENV

FALLBACK_EDITORS = ('nano', 'vim', 'vi', 'emacs')


def get_parser():
    """Creates and returns the argparse parser for the config command."""
    parser = argparse.ArgumentParser(description="Manage corrdim configuration.")
    parser.add_argument('-e', '--editor', help='Use specific editor (e.g., nano, vim, emacs)')
    parser.add_argument('--show', action='store_true', help='Print the effective configuration and exit')
    return parser


def find_editor():
    """
    Find an available text editor.

    Priority: $EDITOR if it resolves on PATH, then nano, vim, vi, emacs.
    Falls back to vi.
    """
    editor = os.environ.get("EDITOR")
    if editor and shutil.which(editor):
        return editor
    for candidate in FALLBACK_EDITORS:
        if shutil.which(candidate):
            return candidate
    return 'vi'


def show_config():
    """Print the effective configuration (file merged over defaults) to stdout."""
    config = load_config()
    config["workers"] = default_workers(config)
    if os.environ.get(WORKERS_ENV):
        info(f"workers taken from ${WORKERS_ENV}")
    out(json.dumps(config, indent=4))
    return config


def run():
    parser = get_parser()
    args = parser.parse_args()

    if args.show:
        show_config()
        return

    sync_config()
    path = get_config_path()
    editor = args.editor or find_editor()

    info(f"Opening config: {path}")
    info(f"Editor: {editor}")
    warning("Command-line flags always override these values.")

    try:
        subprocess.run([editor, path])
    except FileNotFoundError:
        error(f"Editor '{editor}' not found.")
        error("Please install a text editor (nano, vim, or emacs) or set $EDITOR.")
        sys.exit(1)
