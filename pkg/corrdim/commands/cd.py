#!/usr/bin/env python3
"""
Usage: corrdim cd <signal> [options]

Estimate the correlation dimension for each embedding dimension as the
slope of ln C against ln r over an automatically chosen scaling region.
Writes dimension.csv and report.json.

Options:
  --kernel {cd,mcd}        Correlation-integral kernel
  --window N               Scaling-region width in grid points
  --saturation-guard C     Ignore windows whose mean C exceeds C

Examples:
  corrdim cd henon.txt --cutoff 0 --norm none --metric chebyshev --kernel cd --m 2-5
  corrdim cd Z001.txt --dataset bonn --m 10-15
"""
import argparse

from corrdim.lib import (
    grid,
    estimate_from_grid,
    write_table_csv,
    build_report,
    write_report_json,
)
from corrdim.lib.config import load_config
from corrdim.lib.io import header, info, log, success
from corrdim.lib.runconfig import (
    add_compute_args,
    add_embedding_args,
    add_fit_args,
    add_input_args,
    add_kernel_args,
    add_metric_args,
    add_output_args,
    add_preprocess_args,
    add_threshold_args,
    build_run_config,
    ensure_out_dir,
    export_taps,
    load_input_signal,
    out_path,
    progress_callback,
    run_guarded,
)

DIMENSION_COLUMNS = ("m", "slope", "intercept", "r_squared", "r_lo", "r_hi", "n_points")


def get_parser():
    """Creates and returns the argparse parser for the cd command."""
    config = load_config()
    parser = argparse.ArgumentParser(description="Estimate the correlation dimension per embedding dimension.")
    add_input_args(parser)
    add_kernel_args(parser, config, allow_both=False)
    add_metric_args(parser, config)
    add_preprocess_args(parser, config)
    add_embedding_args(parser, config)
    add_threshold_args(parser, config)
    add_fit_args(parser, config)
    add_compute_args(parser, config)
    add_output_args(parser)
    return parser


def compute_grid(run, signal, args):
    """Correlation-integral grid the estimates are fitted on."""
    return grid(signal, run.m_values, run.lag, run.r_values, run.kernel, run.metric,
                run.preprocessing, run.fixed_count_mode, run.workers, run.block_rows,
                progress_callback(args))


def estimates_from_grid(corr_grid, run):
    return estimate_from_grid(corr_grid, run.window, run.saturation_guard)


def compute(args):
    run = build_run_config(args)
    signal = load_input_signal(run)

    header("--- Correlation Dimension ---")
    info(f"  {run.input}: {len(signal)} samples, kernel {run.kernel.value}, metric {run.metric.value}")

    corr_grid = compute_grid(run, signal, args)
    estimates = estimates_from_grid(corr_grid, run)

    for e in estimates:
        log(f"  m={e.m:<3d} D={e.slope:.4f}  r^2={e.r_squared:.4f}  r in [{e.region.r_lo:.3g}, {e.region.r_hi:.3g}]")

    ensure_out_dir(run.out_dir)
    write_table_csv([e.as_row() for e in estimates], DIMENSION_COLUMNS, out_path(run, "dimension.csv"))
    export_taps(args, run)
    report = build_report("cd", run.report_config(), estimates=estimates)
    write_report_json(report, out_path(run, "report.json"))
    success(f"✓ Wrote dimension.csv and report.json to {run.out_dir}")
    return estimates


def run():
    parser = get_parser()
    args = parser.parse_args()
    run_guarded(compute, args)
