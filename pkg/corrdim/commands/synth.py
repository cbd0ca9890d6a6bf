#!/usr/bin/env python3
"""
Usage: corrdim synth <kind> [options]

Generate a reference signal (logistic map, Henon map or sine) as a
one-sample-per-line file that every other command can read.

Options:
  --n N          Number of samples
  --name FILE    Output file name (default: <kind>.txt)
  -o, --out DIR  Output directory

Examples:
  corrdim synth logistic --mu 4 --x0 0.3 --n 3
  corrdim synth henon --n 5000 --burn-in 1000
  corrdim synth sine --freq 10 --sample-rate 250 --n 4097
"""
import os
import argparse

from corrdim.lib import gen_henon, gen_logistic, gen_sine, write_ascii_signal, build_report, write_report_json
from corrdim.lib.io import success
from corrdim.lib.runconfig import add_output_args, blank_report_config, ensure_out_dir, run_guarded

KINDS = ("logistic", "henon", "sine")


def get_parser():
    """Creates and returns the argparse parser for the synth command."""
    parser = argparse.ArgumentParser(description="Generate a synthetic reference signal.")
    parser.add_argument('kind', choices=KINDS, help='Signal family')
    parser.add_argument('--n', type=int, default=5000, help='Number of samples (default: 5000)')
    parser.add_argument('--mu', type=float, default=4.0, help='Logistic parameter (default: 4)')
    parser.add_argument('--x0', type=float, help='Initial x (default: 0.3 logistic, 0 Henon)')
    parser.add_argument('--y0', type=float, default=0.0, help='Initial y for Henon (default: 0)')
    parser.add_argument('--a', type=float, default=1.4, help='Henon a (default: 1.4)')
    parser.add_argument('--b', type=float, default=0.3, help='Henon b (default: 0.3)')
    parser.add_argument('--burn-in', type=int, default=1000, help='Henon iterates discarded (default: 1000)')
    parser.add_argument('--freq', type=float, default=10.0, help='Sine frequency in Hz (default: 10)')
    parser.add_argument('--sample-rate', type=float, default=250.0, help='Sine sampling rate in Hz (default: 250)')
    parser.add_argument('--amplitude', type=float, default=1.0, help='Sine amplitude (default: 1)')
    parser.add_argument('--name', help='Output file name (default: <kind>.txt)')
    add_output_args(parser)
    return parser


def generate(args):
    """Build the requested signal and the parameters that produced it."""
    if args.kind == "logistic":
        x0 = 0.3 if args.x0 is None else args.x0
        params = {"n": args.n, "mu": args.mu, "x0": x0}
        return gen_logistic(args.n, args.mu, x0), params
    if args.kind == "henon":
        x0 = 0.0 if args.x0 is None else args.x0
        params = {"n": args.n, "a": args.a, "b": args.b, "x0": x0, "y0": args.y0, "burn_in": args.burn_in}
        return gen_henon(args.n, args.a, args.b, x0, args.y0, args.burn_in), params
    params = {"n": args.n, "freq_hz": args.freq, "sample_rate_hz": args.sample_rate, "amplitude": args.amplitude}
    return gen_sine(args.n, args.freq, args.sample_rate, args.amplitude), params


def compute(args):
    signal, params = generate(args)
    ensure_out_dir(args.out)
    name = args.name or f"{args.kind}.txt"
    path = write_ascii_signal(signal, os.path.join(args.out, name))

    config = blank_report_config(generator=args.kind, parameters=params,
                                 sample_rate_hz=signal.sample_rate_hz, output=name)
    write_report_json(build_report("synth", config), os.path.join(args.out, "report.json"))
    success(f"✓ Wrote {len(signal)} samples to {path}")
    return path


def run():
    parser = get_parser()
    args = parser.parse_args()
    run_guarded(compute, args)
