#!/usr/bin/env python3
"""
Usage: corrdim kernels [--r R] [--points N] [options]

Tabulate the Heaviside and exponential kernels against pair distance for
one threshold, d from 0 to 1.5 r. Writes kernels.csv (d,heaviside,exponential).

Examples:
  corrdim kernels --r 0.003
  corrdim kernels --r 1 --points 301 -o out/
"""
import os
import argparse

from corrdim.lib import DomainError, kernel_curve, write_table_csv, build_report, write_report_json
from corrdim.lib.io import success
from corrdim.lib.runconfig import (
    KERNEL_BOTH,
    add_output_args,
    blank_report_config,
    ensure_out_dir,
    run_guarded,
)

CURVE_COLUMNS = ("d", "heaviside", "exponential")


def get_parser():
    """Creates and returns the argparse parser for the kernels command."""
    parser = argparse.ArgumentParser(description="Tabulate both correlation kernels against distance.")
    parser.add_argument('--r', type=float, default=1.0, help='Threshold (default: 1)')
    parser.add_argument('--points', type=int, default=151, help='Number of distances (default: 151)')
    add_output_args(parser)
    return parser


def compute(args):
    if args.points < 2:
        raise DomainError(f"--points must be >= 2, got {args.points}")
    d, heaviside, exponential = kernel_curve(args.r, points=args.points)
    rows = [
        {"d": float(x), "heaviside": float(h), "exponential": float(e)}
        for x, h, e in zip(d, heaviside, exponential)
    ]
    ensure_out_dir(args.out)
    write_table_csv(rows, CURVE_COLUMNS, os.path.join(args.out, "kernels.csv"))
    config = blank_report_config(kernel=KERNEL_BOTH, r_values=[args.r], points=args.points)
    write_report_json(build_report("kernels", config), os.path.join(args.out, "report.json"))
    success(f"✓ Wrote {len(rows)} rows to kernels.csv")
    return rows


def run():
    parser = get_parser()
    args = parser.parse_args()
    run_guarded(compute, args)
