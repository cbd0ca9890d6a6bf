#!/usr/bin/env python3
"""
Usage: corrdim heatmap [<signal>] [--manifest FILE --pair ID] [options]

Render the pair-distance matrix d_ij of an embedded signal as a grayscale
PGM (0 = black, d_max = white). With a manifest and --pair, both
conditions of the pair are rendered (dij_a.pgm, dij_b.pgm), each scaled
by its own d_max.

Options:
  --weight {distance,cd,mcd}  Render raw distances or kernel weights at --r
  --invert                    Flip polarity (0 = white)
  --csv                       Also write the matrix as CSV

Examples:
  corrdim heatmap Z001.txt --dataset bonn --m 15
  corrdim heatmap --manifest pairs.json --pair 001 --weight mcd --r 0.003
"""
import argparse

from corrdim.lib import (
    ConfigurationError,
    EmbeddingConfig,
    Kernel,
    distance_matrix,
    embed,
    kernel_matrix,
    load_pair,
    write_heatmap_pgm,
    write_matrix_csv,
    build_report,
    write_report_json,
)
from corrdim.lib.config import load_config
from corrdim.lib.io import header, info, success
from corrdim.lib.runconfig import (
    add_input_args,
    add_metric_args,
    add_output_args,
    add_preprocess_args,
    build_run_config,
    ensure_out_dir,
    export_taps,
    load_input_signal,
    load_manifest_run,
    out_path,
    run_guarded,
)

WEIGHT_DISTANCE = "distance"
DEFAULT_M = 15


def get_parser():
    """Creates and returns the argparse parser for the heatmap command."""
    config = load_config()
    parser = argparse.ArgumentParser(description="Render the pair-distance matrix as a PGM heatmap.")
    add_input_args(parser, optional=True)
    parser.add_argument('--manifest', help='Dataset manifest (use with --pair)')
    parser.add_argument('--pair', help='Manifest pair id to render')
    add_metric_args(parser, config)
    add_preprocess_args(parser, config)
    parser.add_argument('--m', default=str(DEFAULT_M), help=f'Embedding dimension (default: {DEFAULT_M})')
    parser.add_argument('--lag', type=int, default=config["lag"], help=f'Delay L (default: {config["lag"]})')
    parser.add_argument('--weight', choices=[WEIGHT_DISTANCE] + [k.value for k in Kernel], default=WEIGHT_DISTANCE,
                        help='Render distances, or Heaviside/exponential kernel weights at --r')
    parser.add_argument('--r', help='Threshold for --weight cd/mcd')
    parser.add_argument('--invert', action='store_true', help='Invert gray levels')
    parser.add_argument('--csv', action='store_true', help='Also write the matrix as CSV')
    parser.add_argument('--distance-cap', type=int, default=config["distance_cap"],
                        help=f'Refuse more vectors than this (default: {config["distance_cap"]})')
    add_output_args(parser)
    return parser


def _resolve(args):
    if args.manifest:
        if not args.pair:
            raise ConfigurationError("--manifest requires --pair")
        manifest, run = load_manifest_run(args)
        pair = manifest.get(args.pair)
        if pair is None:
            raise ConfigurationError(f"Pair '{args.pair}' not found in {manifest.path}")
        signal_a, signal_b = load_pair(manifest, pair, run.sample_rate_hz)
        return run, [("a", signal_a), ("b", signal_b)]
    if args.pair:
        raise ConfigurationError("--pair requires --manifest")
    run = build_run_config(args)
    return run, [(None, load_input_signal(run))]


def render(run, signal, weight, r, invert, write_csv, suffix=None):
    """Embed one signal and write its heatmap; returns the report entry."""
    m = run.m_values[0]
    series = embed(run.preprocessing.apply(signal), EmbeddingConfig(m, run.lag))
    matrix = distance_matrix(series, run.metric, run.distance_cap)
    values = matrix if weight == WEIGHT_DISTANCE else kernel_matrix(matrix, Kernel(weight), r)

    stem = "dij" if suffix is None else f"dij_{suffix}"
    image = write_heatmap_pgm(values, out_path(run, f"{stem}.pgm"), invert=invert)
    if write_csv:
        write_matrix_csv(values, out_path(run, f"{stem}.csv"))
    info(f"  {signal.label}: {matrix.n} vectors, d_max = {matrix.d_max:.6g} -> {stem}.pgm")
    return {"signal": signal.label, "file": f"{stem}.pgm", "n_vectors": matrix.n,
            "d_max": matrix.d_max, "scale_max": image.d_max}


def compute(args):
    run, signals = _resolve(args)
    if len(run.m_values) != 1:
        raise ConfigurationError("heatmap takes a single --m")
    r = None
    if args.weight != WEIGHT_DISTANCE:
        if run.r_values is None or len(run.r_values) != 1:
            raise ConfigurationError(f"--weight {args.weight} requires a single --r")
        r = float(run.r_values[0])

    header("--- Distance Heatmap ---")
    ensure_out_dir(run.out_dir)
    images = [render(run, signal, args.weight, r, run.invert, args.csv, suffix) for suffix, signal in signals]
    export_taps(args, run)

    report = build_report(
        "heatmap",
        run.report_config(kernel=args.weight, weight=args.weight, invert=run.invert,
                          distance_cap=run.distance_cap),
        extra={"images": images, "d_max": images[0]["d_max"] if len(images) == 1 else [i["d_max"] for i in images]},
    )
    write_report_json(report, out_path(run, "report.json"))
    success(f"✓ Wrote {', '.join(i['file'] for i in images)} to {run.out_dir}")
    return images


def run():
    parser = get_parser()
    args = parser.parse_args()
    run_guarded(compute, args)
