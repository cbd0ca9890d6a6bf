#!/usr/bin/env python3
"""
Usage: corrdim ci <signal> [options]

Compute the correlation integral C(r) over a grid of embedding dimensions
and thresholds. Writes grid.csv and report.json to the output directory.

Options:
  --kernel {cd,mcd,both}   Heaviside, exponential, or both side by side
  --m RANGE                Embedding dimensions, e.g. 1-20 or 2,3,5
  --r LIST                 Explicit thresholds instead of the log grid
  -o, --out DIR            Output directory

Examples:
  corrdim ci Z001.txt --dataset bonn
  corrdim ci henon.txt --cutoff 0 --norm none --kernel both -o out/
"""
import argparse

from corrdim.lib import grids, write_grid_csv, build_report, write_report_json
from corrdim.lib.config import load_config
from corrdim.lib.io import header, info, success
from corrdim.lib.runconfig import (
    add_compute_args,
    add_embedding_args,
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


def get_parser():
    """Creates and returns the argparse parser for the ci command."""
    config = load_config()
    parser = argparse.ArgumentParser(description="Compute correlation integrals over an (m, r) grid.")
    add_input_args(parser)
    add_kernel_args(parser, config, allow_both=True)
    add_metric_args(parser, config)
    add_preprocess_args(parser, config)
    add_embedding_args(parser, config)
    add_threshold_args(parser, config)
    add_compute_args(parser, config)
    add_output_args(parser)
    return parser


def compute(args):
    run = build_run_config(args)
    signal = load_input_signal(run)

    header("--- Correlation Integral ---")
    info(f"  {run.input}: {len(signal)} samples at {run.sample_rate_hz:g} Hz")
    info(f"  kernels: {', '.join(k.value for k in run.kernels)}, "
         f"m: {run.m_values[0]}..{run.m_values[-1]}, {len(run.r_values)} thresholds")

    result = grids(signal, run.m_values, run.lag, run.r_values, run.kernels, run.metric,
                   run.preprocessing, run.fixed_count_mode, run.workers, run.block_rows,
                   progress_callback(args))

    ensure_out_dir(run.out_dir)
    if len(run.kernels) == 1:
        write_grid_csv(result[run.kernel], out_path(run, "grid.csv"))
    else:
        write_grid_csv([result[k] for k in run.kernels], out_path(run, "grid.csv"))
    export_taps(args, run)

    n_vectors = {str(m): n for m, n in zip(run.m_values, result[run.kernel].n_vectors)}
    report = build_report("ci", run.report_config(), extra={"n_vectors": n_vectors})
    write_report_json(report, out_path(run, "report.json"))
    success(f"✓ Wrote grid.csv and report.json to {run.out_dir}")
    return result


def run():
    parser = get_parser()
    args = parser.parse_args()
    run_guarded(compute, args)
