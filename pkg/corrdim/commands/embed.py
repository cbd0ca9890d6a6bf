#!/usr/bin/env python3
"""
Usage: corrdim embed <signal> [options]

Write the time-delay embedding of a preprocessed signal as CSV, one delay
vector per row (columns x0..x{m-1}).

Examples:
  corrdim embed henon.txt --cutoff 0 --norm none --m 3
  corrdim embed Z001.txt --dataset bonn --m 15 --lag 2
"""
import argparse

from corrdim.lib import ConfigurationError, EmbeddingConfig, embed, write_matrix_csv, build_report, write_report_json
from corrdim.lib.config import load_config
from corrdim.lib.io import success
from corrdim.lib.runconfig import (
    add_input_args,
    add_output_args,
    add_preprocess_args,
    build_run_config,
    ensure_out_dir,
    export_taps,
    load_input_signal,
    out_path,
    run_guarded,
)


def get_parser():
    """Creates and returns the argparse parser for the embed command."""
    config = load_config()
    parser = argparse.ArgumentParser(description="Write the delay-embedded vectors of a signal as CSV.")
    add_input_args(parser)
    add_preprocess_args(parser, config)
    parser.add_argument('--m', default="2", help='Embedding dimension (default: 2)')
    parser.add_argument('--lag', type=int, default=config["lag"], help=f'Delay L (default: {config["lag"]})')
    add_output_args(parser)
    return parser


def compute(args):
    run = build_run_config(args)
    if len(run.m_values) != 1:
        raise ConfigurationError("embed takes a single --m")
    m = run.m_values[0]
    signal = run.preprocessing.apply(load_input_signal(run))
    series = embed(signal, EmbeddingConfig(m, run.lag))

    ensure_out_dir(run.out_dir)
    write_matrix_csv(series.vectors, out_path(run, "embed.csv"), header=[f"x{k}" for k in range(m)])
    export_taps(args, run)
    report = build_report("embed", run.report_config(kernel=None, r_values=[]),
                          extra={"n_vectors": series.n_vectors})
    write_report_json(report, out_path(run, "report.json"))
    success(f"✓ Wrote {series.n_vectors} vectors of dimension {m} to embed.csv")
    return series


def run():
    parser = get_parser()
    args = parser.parse_args()
    run_guarded(compute, args)
