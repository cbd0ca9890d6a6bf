#!/usr/bin/env python3
"""
Usage: corrdim scan <manifest> [options]

Threshold scan: mean and standard error of paired differences for both
kernels at each threshold. Writes scan.csv (kernel,r,m,n,mean_diff,std_err),
scan_pairs.csv (kernel,r,pair_id,diff) and report.json.

Examples:
  corrdim scan bonn_pairs.json --r 0.0005,0.001,0.003,0.005,0.01
  corrdim scan pairs.json --r-min 0.0005 --r-max 0.01 --r-points 12
"""
import argparse

from corrdim.lib import (
    DomainError,
    evaluate_pairs,
    summarize_pairs,
    write_table_csv,
    build_report,
    write_report_json,
)
from corrdim.lib.config import load_config
from corrdim.lib.io import header, info, success
from corrdim.lib.runconfig import (
    add_compute_args,
    add_input_args,
    add_metric_args,
    add_output_args,
    add_preprocess_args,
    add_threshold_args,
    ensure_out_dir,
    export_taps,
    load_manifest_run,
    out_path,
    pair_direction,
    progress_callback,
    run_guarded,
)
from corrdim.commands.compare import DEFAULT_M

# default range for normalized EEG segments
SCAN_R_MIN = 0.0005
SCAN_R_MAX = 0.01
SCAN_R_POINTS = 9

SCAN_COLUMNS = ("kernel", "r", "m", "n", "mean_diff", "std_err")
SCAN_PAIR_COLUMNS = ("kernel", "r", "pair_id", "diff")


def get_parser():
    """Creates and returns the argparse parser for the scan command."""
    config = load_config()
    parser = argparse.ArgumentParser(description="Scan paired differences across thresholds for both kernels.")
    add_input_args(parser, manifest=True)
    add_metric_args(parser, config)
    add_preprocess_args(parser, config)
    parser.add_argument('--m', default=str(DEFAULT_M), help=f'Embedding dimension (default: {DEFAULT_M})')
    parser.add_argument('--lag', type=int, default=config["lag"], help=f'Delay L (default: {config["lag"]})')
    add_threshold_args(parser, config, r_min=SCAN_R_MIN, r_max=SCAN_R_MAX, r_points=SCAN_R_POINTS)
    add_compute_args(parser, config)
    add_output_args(parser)
    return parser


def compute(args):
    manifest, run = load_manifest_run(args)
    if len(run.m_values) != 1:
        raise DomainError("scan takes a single --m")
    m = run.m_values[0]

    header("--- Threshold Scan ---")
    info(f"  {len(manifest)} pairs, m={m}, {len(run.r_values)} thresholds "
         f"[{run.r_values[0]:g}, {run.r_values[-1]:g}]")

    results = evaluate_pairs(manifest, m, run.r_values, run.kernels, run.metric,
                             run.preprocessing, run.lag, run.workers, run.block_rows,
                             run.sample_rate_hz, progress_callback(args))

    ensure_out_dir(run.out_dir)
    pairs = [
        {"kernel": p.kernel.value, "r": p.r, "pair_id": p.pair_id, "diff": p.difference}
        for p in results
    ]
    write_table_csv(pairs, SCAN_PAIR_COLUMNS, out_path(run, "scan_pairs.csv"))
    export_taps(args, run)

    table = summarize_pairs(results)
    write_table_csv([row.as_row() for row in table.rows], SCAN_COLUMNS, out_path(run, "scan.csv"))

    report = build_report("scan", run.report_config(), summaries=table.rows,
                          extra={"direction": pair_direction(manifest)})
    write_report_json(report, out_path(run, "report.json"))
    success(f"✓ Wrote scan.csv, scan_pairs.csv and report.json to {run.out_dir}")
    return table


def run():
    parser = get_parser()
    args = parser.parse_args()
    run_guarded(compute, args)
