"""
Shared command-line configuration.

Commands build their argparse parsers from the add_*_args helpers below so
every command spells a flag the same way and takes its defaults from the
user config. resolve_* turn parsed arguments into library objects and
enforce parameter invariants at parse time; run_guarded maps library
exceptions to exit codes.
"""
import argparse
import os
import sys
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from . import ConfigurationError, CorrdimError, DomainError, StorageError
from .config import default_workers, load_config
from .corrint import BOTH_KERNELS, DistanceMetric, Kernel
from .dimension import make_log_r_grid
from .io import error, progress, warning
from .export import REPORT_CONFIG_KEYS, write_matrix_csv
from .preprocess import FilterSpec, NormalizationMode, Preprocessing, design_lowpass
from .signal_io import DATASET_PRESETS, load_ascii_signal, load_manifest

KERNEL_BOTH = "both"


@dataclass
class RunConfig:
    """Everything a run needs, resolved from flags, environment and user config."""
    input: Optional[str] = None
    sample_rate_hz: Optional[float] = None
    kernels: Tuple[Kernel, ...] = (Kernel.EXPONENTIAL,)
    metric: DistanceMetric = DistanceMetric.EUCLIDEAN
    preprocessing: Preprocessing = field(default_factory=Preprocessing)
    m_values: Tuple[int, ...] = tuple(range(1, 21))
    lag: int = 1
    r_values: np.ndarray = None
    r_spec: dict = field(default_factory=dict)
    window: int = 5
    saturation_guard: float = 0.9
    workers: int = 1
    out_dir: str = "."
    invert: bool = False
    fixed_count_mode: bool = False
    block_rows: int = 64
    distance_cap: int = 8192
    dataset: Optional[str] = None
    filter_skipped: Optional[str] = None

    @property
    def kernel(self):
        return self.kernels[0]

    def report_config(self, **extra):
        """Configuration section of report.json (workers excluded: outputs do not depend on it)."""
        config = {
            "input": self.input,
            "kernel": KERNEL_BOTH if len(self.kernels) > 1 else self.kernel.value,
            "metric": self.metric.value,
            "m_values": list(self.m_values),
            "lag": self.lag,
            "r_values": [float(r) for r in self.r_values] if self.r_values is not None else [],
        }
        config.update(self.preprocessing.describe(self.sample_rate_hz))
        config.update({
            "filter_skipped": self.filter_skipped,
            "sample_rate_hz": self.sample_rate_hz,
            "dataset": self.dataset,
            "r_grid": self.r_spec,
            "window": self.window,
            "saturation_guard": self.saturation_guard,
            "fixed_count_mode": self.fixed_count_mode,
            "block_rows": self.block_rows,
        })
        config.update(extra)
        return config


def parse_m_values(text):
    """
    Parse embedding dimensions: a range "1-20", a list "2,3,5" or a single "15".

    Examples:
        >>> parse_m_values("2-5")
        (2, 3, 4, 5)
        >>> parse_m_values("15")
        (15,)
    """
    text = str(text).strip()
    try:
        if '-' in text and ',' not in text:
            lo, hi = (int(part) for part in text.split('-', 1))
            if hi < lo:
                raise DomainError(f"Empty embedding-dimension range '{text}'")
            values = tuple(range(lo, hi + 1))
        else:
            values = tuple(int(part) for part in text.split(',') if part.strip())
    except ValueError:
        raise DomainError(f"Cannot parse embedding dimensions '{text}' (use e.g. 1-20 or 2,3,5)") from None
    if not values:
        raise DomainError("At least one embedding dimension is required")
    if any(m < 1 for m in values):
        raise DomainError(f"Embedding dimensions must be positive, got '{text}'")
    if len(set(values)) != len(values):
        raise DomainError(f"Embedding dimensions must be unique, got '{text}'")
    return values


def parse_r_list(text):
    """Parse a comma-separated threshold list, e.g. "0.0005,0.001,0.003"."""
    try:
        values = [float(part) for part in str(text).split(',') if part.strip()]
    except ValueError:
        raise DomainError(f"Cannot parse threshold list '{text}'") from None
    if not values:
        raise DomainError("At least one threshold is required")
    return values


def add_input_args(parser, manifest=False, optional=False):
    if manifest:
        parser.add_argument('manifest', help='Dataset manifest (JSON) listing condition pairs')
    elif optional:
        parser.add_argument('input', nargs='?', help='Signal file (one amplitude per line)')
    else:
        parser.add_argument('input', help='Signal file (one amplitude per line)')
    parser.add_argument('--sample-rate', type=float, help='Sampling rate in Hz (overrides --dataset)')
    parser.add_argument('--dataset', choices=sorted(DATASET_PRESETS),
                        help='Use the sampling rate of a known dataset')


def add_preprocess_args(parser, config):
    parser.add_argument('--norm', choices=[mode.value for mode in NormalizationMode],
                        default=config["norm"], help=f'Normalization (default: {config["norm"]})')
    parser.add_argument('--cutoff', type=float, default=None,
                        help=f'Low-pass cutoff in Hz, 0 disables the filter (default: {config["cutoff_hz"]:g}, '
                             'skipped when no sampling rate is known)')
    parser.add_argument('--transition', type=float, default=config["transition_hz"],
                        help=f'Filter transition width in Hz (default: {config["transition_hz"]:g})')
    parser.add_argument('--export-taps', action='store_true', help='Also write the filter taps to taps.csv')


def add_embedding_args(parser, config, m_default=None):
    m_default = m_default if m_default is not None else config["m"]
    parser.add_argument('--m', default=str(m_default),
                        help=f'Embedding dimensions as a range or list (default: {m_default})')
    parser.add_argument('--lag', type=int, default=config["lag"], help=f'Delay L (default: {config["lag"]})')
    parser.add_argument('--fixed-count', action='store_true',
                        help='Use the same vector count for every m (that of the largest m)')


def add_threshold_args(parser, config, r_default=None, r_min=None, r_max=None, r_points=None):
    r_min = config["r_min"] if r_min is None else r_min
    r_max = config["r_max"] if r_max is None else r_max
    r_points = config["r_points"] if r_points is None else r_points
    parser.add_argument('--r-min', type=float, default=r_min, help=f'Smallest threshold (default: {r_min:g})')
    parser.add_argument('--r-max', type=float, default=r_max, help=f'Largest threshold (default: {r_max:g})')
    parser.add_argument('--r-points', type=int, default=r_points,
                        help=f'Number of log-spaced thresholds (default: {r_points})')
    parser.add_argument('--r', default=r_default,
                        help='Explicit comma-separated thresholds (overrides the log grid)')


def add_kernel_args(parser, config, allow_both=True):
    choices = [k.value for k in Kernel] + ([KERNEL_BOTH] if allow_both else [])
    parser.add_argument('--kernel', choices=choices, default=config["kernel"],
                        help=f'cd = Heaviside, mcd = exponential (default: {config["kernel"]})')


def add_metric_args(parser, config):
    parser.add_argument('--metric', choices=[m.value for m in DistanceMetric], default=config["metric"],
                        help=f'Distance between delay vectors (default: {config["metric"]})')


def add_fit_args(parser, config):
    parser.add_argument('--window', type=int, default=config["window"],
                        help=f'Scaling-region width in grid points (default: {config["window"]})')
    parser.add_argument('--saturation-guard', type=float, default=config["saturation_guard"],
                        help=f'Skip windows whose mean C exceeds this (default: {config["saturation_guard"]:g})')


def add_compute_args(parser, config):
    parser.add_argument('--workers', type=int, default=None,
                        help='Worker threads (default: $CORRDIM_WORKERS, config, or CPU count)')
    parser.add_argument('--block-rows', type=int, default=config["block_rows"],
                        help=argparse.SUPPRESS)
    parser.add_argument('-q', '--quiet', action='store_true', help='Do not report progress')


def add_output_args(parser):
    parser.add_argument('-o', '--out', default='.', help='Output directory (default: current directory)')


def resolve_sample_rate(args, required):
    """
    Sampling rate from --sample-rate, then --dataset.

    Raises:
        ConfigurationError: no rate given but one is required (filter enabled)
    """
    rate = getattr(args, 'sample_rate', None)
    if rate is not None:
        if not rate > 0:
            raise DomainError(f"--sample-rate must be positive, got {rate}")
        return float(rate)
    dataset = getattr(args, 'dataset', None)
    if dataset:
        return DATASET_PRESETS[dataset]
    if required:
        raise ConfigurationError(
            "The low-pass filter needs a sampling rate: pass --sample-rate or --dataset (or --cutoff 0)"
        )
    return None


def resolve_preprocessing(args, config):
    cutoff = args.cutoff if args.cutoff is not None else config["cutoff_hz"]
    flt = None
    if cutoff > 0:
        flt = FilterSpec(float(cutoff), float(args.transition))
    elif cutoff < 0:
        raise DomainError(f"--cutoff must be >= 0, got {cutoff}")
    return Preprocessing(flt, NormalizationMode(args.norm))


def resolve_thresholds(args):
    """Return (r_values, description) from --r or the log-grid flags."""
    if getattr(args, 'r', None):
        r = np.asarray(parse_r_list(args.r), dtype=np.float64)
        return r, {"spacing": "explicit", "points": int(r.size)}
    r_grid = make_log_r_grid(args.r_min, args.r_max, args.r_points)
    return r_grid.values, {
        "spacing": r_grid.spacing,
        "r_min": r_grid.r_min,
        "r_max": r_grid.r_max,
        "points": r_grid.points,
    }


def resolve_kernels(value):
    if value == KERNEL_BOTH:
        return BOTH_KERNELS
    return (Kernel(value),)


def resolve_workers(args, config):
    workers = args.workers if args.workers is not None else default_workers(config)
    if workers < 1:
        raise DomainError(f"--workers must be >= 1, got {workers}")
    return int(workers)


def build_run_config(args, config=None, sample_rate_hz=None, input_path=None):
    """
    Resolve parsed arguments into a RunConfig.

    Flags a command does not define keep their RunConfig defaults.
    `sample_rate_hz` (e.g. from a manifest) takes precedence over flags.
    """
    if config is None:
        config = load_config()
    run = RunConfig(out_dir=getattr(args, 'out', '.'))
    run.input = input_path if input_path is not None else getattr(args, 'input', None)
    run.dataset = getattr(args, 'dataset', None)

    if hasattr(args, 'norm'):
        run.preprocessing = resolve_preprocessing(args, config)
    else:
        run.preprocessing = Preprocessing(None, NormalizationMode.NONE)

    if sample_rate_hz is not None:
        run.sample_rate_hz = float(sample_rate_hz)
    else:
        explicit_filter = getattr(args, 'cutoff', None) is not None
        needs_rate = run.preprocessing.filter is not None
        run.sample_rate_hz = resolve_sample_rate(args, required=needs_rate and explicit_filter)
        if needs_rate and run.sample_rate_hz is None:
            run.filter_skipped = "no sampling rate given (--sample-rate or --dataset)"
            warning(f"Low-pass filter skipped: {run.filter_skipped}")
            run.preprocessing = replace(run.preprocessing, filter=None)
    if run.sample_rate_hz is None:
        run.sample_rate_hz = 1.0
    if run.preprocessing.filter is not None:
        run.preprocessing.filter.validate(run.sample_rate_hz)

    if hasattr(args, 'kernel'):
        run.kernels = resolve_kernels(args.kernel)
    if hasattr(args, 'metric'):
        run.metric = DistanceMetric(args.metric)
    if hasattr(args, 'm'):
        run.m_values = parse_m_values(args.m)
    if hasattr(args, 'lag'):
        if args.lag < 1:
            raise DomainError(f"--lag must be >= 1, got {args.lag}")
        run.lag = int(args.lag)
    run.fixed_count_mode = bool(getattr(args, 'fixed_count', False))
    if hasattr(args, 'r_min'):
        run.r_values, run.r_spec = resolve_thresholds(args)
    elif getattr(args, 'r', None):
        run.r_values = np.asarray(parse_r_list(args.r), dtype=np.float64)
        run.r_spec = {"spacing": "explicit", "points": int(run.r_values.size)}
    run.window = getattr(args, 'window', config["window"])
    run.saturation_guard = getattr(args, 'saturation_guard', config["saturation_guard"])
    if hasattr(args, 'workers'):
        run.workers = resolve_workers(args, config)
    run.block_rows = getattr(args, 'block_rows', config["block_rows"])
    if run.block_rows < 1:
        raise DomainError(f"--block-rows must be >= 1, got {run.block_rows}")
    run.distance_cap = getattr(args, 'distance_cap', config["distance_cap"])
    run.invert = bool(getattr(args, 'invert', False))
    return run


def ensure_out_dir(path):
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as e:
        raise StorageError(f"Cannot create output directory {path}: {e.strerror or e}") from e
    return path


def out_path(run, name):
    return os.path.join(run.out_dir, name)


def progress_callback(args):
    """progress() unless --quiet was given."""
    if getattr(args, 'quiet', False):
        return None
    return progress


def run_guarded(func, *args, **kwargs):
    """
    Call a command body, turning library errors into messages and exit codes.

    CorrdimError subclasses exit with their exit_code; OSError exits 4.
    """
    try:
        return func(*args, **kwargs)
    except CorrdimError as e:
        error(f"Error: {e}")
        sys.exit(e.exit_code)
    except OSError as e:
        error(f"Error: {e}")
        sys.exit(StorageError.exit_code)


def load_input_signal(run):
    """Load the single-signal input named by a RunConfig."""
    if not run.input:
        raise ConfigurationError("An input signal file is required")
    return load_ascii_signal(run.input, run.sample_rate_hz)


def export_taps(args, run):
    """Write taps.csv when --export-taps was given and the filter is enabled."""
    if not getattr(args, 'export_taps', False):
        return None
    if run.preprocessing.filter is None:
        warning("--export-taps ignored: the low-pass filter is disabled")
        return None
    taps = design_lowpass(run.preprocessing.filter, run.sample_rate_hz)
    return write_matrix_csv(taps, out_path(run, "taps.csv"), header=["tap"])


def load_manifest_run(args, config=None):
    """
    Load the manifest named on the command line and resolve the run around it.

    The sampling rate comes from --sample-rate when given, otherwise from
    the manifest; --dataset presets do not override a manifest.
    Paired runs always evaluate both kernels.
    """
    manifest = load_manifest(args.manifest)
    rate = args.sample_rate if getattr(args, 'sample_rate', None) is not None else manifest.sample_rate_hz
    run = build_run_config(args, config, sample_rate_hz=rate, input_path=manifest.path)
    run.kernels = BOTH_KERNELS
    return manifest, run


def pair_direction(manifest):
    """Report fragment stating which condition is subtracted from which."""
    labels_a = sorted({p.label_a for p in manifest.entries})
    labels_b = sorted({p.label_b for p in manifest.entries})
    return {
        "difference": "c_a - c_b",
        "label_a": labels_a[0] if len(labels_a) == 1 else labels_a,
        "label_b": labels_b[0] if len(labels_b) == 1 else labels_b,
        "pairs": len(manifest.entries),
    }


def blank_report_config(**values):
    """Report configuration for commands that run no correlation analysis."""
    config = {key: None for key in REPORT_CONFIG_KEYS}
    config.update({"m_values": [], "r_values": [], "order": []})
    config.update(values)
    return config
