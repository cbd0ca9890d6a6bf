#!/usr/bin/env python3
"""
Usage: corrdim compare <manifest> [options]

Compare two recording conditions pair by pair with both kernels at a single
(m, r). For each kernel writes pairs_<kernel>.csv (pair_id,c_a,c_b,diff);
summary.csv holds the mean and standard error of the differences.

Options:
  --m M          Embedding dimension (default: 15)
  --r R          Threshold (default: 0.003)
  --workers N    Signals evaluated concurrently

Examples:
  corrdim compare bonn_pairs.json
  corrdim compare pairs.json --m 10 --r 0.005 --cutoff 0 -o out/
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
from corrdim.lib.corrint import BOTH_KERNELS
from corrdim.lib.config import load_config
from corrdim.lib.io import bold, header, info, log, success
from corrdim.lib.runconfig import (
    add_compute_args,
    add_input_args,
    add_metric_args,
    add_output_args,
    add_preprocess_args,
    ensure_out_dir,
    export_taps,
    load_manifest_run,
    out_path,
    pair_direction,
    progress_callback,
    run_guarded,
)

DEFAULT_M = 15
DEFAULT_R = 0.003

PAIR_COLUMNS = ("pair_id", "c_a", "c_b", "diff")
SUMMARY_COLUMNS = ("kernel", "n", "mean_diff", "std_err")


def get_parser():
    """Creates and returns the argparse parser for the compare command."""
    config = load_config()
    parser = argparse.ArgumentParser(description="Compare paired conditions with both kernels at one (m, r).")
    add_input_args(parser, manifest=True)
    add_metric_args(parser, config)
    add_preprocess_args(parser, config)
    parser.add_argument('--m', default=str(DEFAULT_M), help=f'Embedding dimension (default: {DEFAULT_M})')
    parser.add_argument('--lag', type=int, default=config["lag"], help=f'Delay L (default: {config["lag"]})')
    parser.add_argument('--r', default=str(DEFAULT_R), help=f'Threshold (default: {DEFAULT_R:g})')
    add_compute_args(parser, config)
    add_output_args(parser)
    return parser


def compute(args):
    manifest, run = load_manifest_run(args)
    if len(run.m_values) != 1 or len(run.r_values) != 1:
        raise DomainError("compare takes a single --m and a single --r; use scan for several thresholds")
    m, r = run.m_values[0], float(run.r_values[0])

    header("--- Paired Comparison ---")
    info(f"  {len(manifest)} pairs from {manifest.path}, m={m}, r={r:g}")

    results = evaluate_pairs(manifest, m, [r], BOTH_KERNELS, run.metric, run.preprocessing, run.lag,
                             run.workers, run.block_rows, run.sample_rate_hz, progress_callback(args))

    # per-pair tables are written even when too few pairs remain for a summary
    ensure_out_dir(run.out_dir)
    for kernel in BOTH_KERNELS:
        pairs = [
            {"pair_id": p.pair_id, "c_a": p.c_a, "c_b": p.c_b, "diff": p.difference}
            for p in results if p.kernel is kernel
        ]
        write_table_csv(pairs, PAIR_COLUMNS, out_path(run, f"pairs_{kernel.value}.csv"))
    export_taps(args, run)

    table = summarize_pairs(results)
    summary = [
        {"kernel": row.kernel.value, "n": row.stat.n, "mean_diff": row.stat.mean, "std_err": row.stat.std_err}
        for row in table.rows
    ]
    write_table_csv(summary, SUMMARY_COLUMNS, out_path(run, "summary.csv"))

    log()
    for row in table.rows:
        bold(f"  {row.kernel.label:<12} mean diff {row.stat.mean:.6g} ± {row.stat.std_err:.3g} (n={row.stat.n})")

    report = build_report("compare", run.report_config(), summaries=table.rows,
                          extra={"direction": pair_direction(manifest)})
    write_report_json(report, out_path(run, "report.json"))
    success(f"✓ Wrote summary.csv and report.json to {run.out_dir}")
    return table


def run():
    parser = get_parser()
    args = parser.parse_args()
    run_guarded(compute, args)
