"""
corrdim library - correlation-integral analysis of time series.

This package provides:
- signal_io: signal files, dataset manifests, synthetic reference signals
- preprocess: low-pass FIR filtering and normalization
- embedding: time-delay embedding
- corrint: Heaviside and exponential-kernel correlation integrals
- dimension: threshold grids and log-log slope estimation
- stats: paired condition comparison and threshold scans
- export: CSV, PGM and JSON writers
- runconfig: shared command-line configuration
- io: IO and logging utilities
- config: Configuration management
- commands: Command modules registry
"""

# Custom Exceptions
class CorrdimError(Exception):
    """Base exception for all corrdim errors."""
    exit_code = 1


class InputError(CorrdimError):
    """Raised when an input file or manifest cannot be used."""
    exit_code = 2


class SignalReadError(InputError):
    """Raised when a signal or manifest file cannot be read."""


class SignalParseError(InputError):
    """Raised when a line of a signal file is not a number."""

    def __init__(self, path, line_number, text):
        self.path = str(path)
        self.line_number = line_number
        self.text = text
        super().__init__(f"{path}:{line_number}: cannot parse {text!r} as a number")


class MalformedSignalError(InputError):
    """Raised when a signal violates its invariants (length, finiteness, rate)."""


class ManifestSchemaError(InputError):
    """Raised when a manifest is missing a required key or carries an unknown one."""


class ManifestValidationError(InputError):
    """Raised when manifest content is inconsistent (duplicate ids, missing files)."""


class ConfigurationError(CorrdimError):
    """Raised when analysis parameters are invalid."""
    exit_code = 2


class DomainError(ConfigurationError):
    """Raised when a parameter lies outside its admissible range."""


class OrderingError(ConfigurationError):
    """Raised when values that must be strictly increasing are not."""


class ShapeError(ConfigurationError):
    """Raised when vector dimensions do not match."""


class LengthError(ConfigurationError):
    """Raised when a signal or series is too short for the requested operation."""


class ConsistencyError(ConfigurationError):
    """Raised when paired results mix different analysis settings."""


class SampleSizeError(ConfigurationError):
    """Raised when too few values are available for a statistic."""


class ReportSchemaError(ConfigurationError):
    """Raised when a report lacks required configuration."""


class ResourceError(ConfigurationError):
    """Raised when a request would exceed a configured resource cap."""


class AnalysisError(CorrdimError):
    """Raised when the data do not support the requested analysis."""
    exit_code = 3


class DegenerateSignalError(AnalysisError):
    """Raised when a signal cannot be normalized (all zero or constant)."""


class DivergenceError(AnalysisError):
    """Raised when a generated trajectory escapes to infinity."""


class DegenerateFitError(AnalysisError):
    """Raised when a log-log fit meets a non-positive correlation integral."""


class RegionError(AnalysisError):
    """Raised when a scaling region is too small or out of range."""


class NoScalingRegionError(AnalysisError):
    """Raised when no window qualifies as a scaling region."""


class StorageError(CorrdimError):
    """Raised when an output file cannot be written."""
    exit_code = 4


# Signal ingestion and generators
from .signal_io import (
    RawSignal,
    SignalPair,
    DatasetManifest,
    DATASET_PRESETS,
    load_ascii_signal,
    write_ascii_signal,
    load_manifest,
    load_pair,
    gen_logistic,
    gen_henon,
    gen_sine,
)

# Preprocessing
from .preprocess import (
    FilterSpec,
    NormalizationMode,
    Preprocessing,
    design_lowpass,
    lowpass_fir,
    normalize,
)

# Embedding
from .embedding import (
    EmbeddingConfig,
    EmbeddedSeries,
    embed,
)

# Correlation integrals
from .corrint import (
    Kernel,
    DistanceMetric,
    CorrIntegralGrid,
    DistanceMatrix,
    kernel_value,
    kernel_curve,
    pair_distance,
    correlation_integral_naive,
    correlation_integral_fast,
    correlation_integrals,
    distance_matrix,
    kernel_matrix,
    grid,
    grids,
)

# Dimension estimation
from .dimension import (
    RGrid,
    ScalingRegion,
    DimensionEstimate,
    make_log_r_grid,
    fit_loglog_slope,
    auto_scaling_region,
    estimate_from_grid,
    estimate_cd,
)

# Paired statistics
from .stats import (
    PairedResult,
    SummaryStat,
    ScanRow,
    ScanTable,
    paired_differences,
    mean_stderr,
    evaluate_pairs,
    threshold_scan,
    summarize_pairs,
    compare_kernels,
)

# Writers
from .export import (
    HeatmapImage,
    heatmap_image,
    write_heatmap_pgm,
    write_grid_csv,
    write_table_csv,
    write_matrix_csv,
    build_report,
    write_report_json,
)

# IO and logging utilities
from .io import (
    Colors,
    log,
    out,
    error,
    success,
    warning,
    info,
    header,
    bold,
    progress,
)

# Configuration
from .config import (
    load_config,
    ensure_config,
    sync_config,
    get_config_path,
    default_workers,
)


# Command modules registry
def get_command_modules():
    """
    Auto-discovers and returns a dict mapping command names to their modules.

    Scans the commands/ directory for Python files and imports those that have
    the required get_parser() and run() functions. A module that fails to
    import is reported on stderr and left out.

    Returns:
        dict: Mapping of command names to their modules
    """
    import importlib
    from pathlib import Path

    from .io import warning

    commands = {}

    lib_dir = Path(__file__).parent
    commands_dir = lib_dir.parent / 'commands'

    if not commands_dir.exists():
        return commands

    for file_path in sorted(commands_dir.glob('*.py')):
        if file_path.stem.startswith('_'):
            continue

        module_name = f'corrdim.commands.{file_path.stem}'

        try:
            module = importlib.import_module(module_name)
        except Exception as e:
            warning(f"Skipping command '{file_path.stem}': {type(e).__name__}: {e}")
            continue

        if hasattr(module, 'get_parser') and hasattr(module, 'run'):
            commands[file_path.stem] = module

    return commands


__all__ = [
    # Exceptions
    'CorrdimError',
    'InputError',
    'SignalReadError',
    'SignalParseError',
    'MalformedSignalError',
    'ManifestSchemaError',
    'ManifestValidationError',
    'ConfigurationError',
    'DomainError',
    'OrderingError',
    'ShapeError',
    'LengthError',
    'ConsistencyError',
    'SampleSizeError',
    'ReportSchemaError',
    'ResourceError',
    'AnalysisError',
    'DegenerateSignalError',
    'DivergenceError',
    'DegenerateFitError',
    'RegionError',
    'NoScalingRegionError',
    'StorageError',
    # Signals
    'RawSignal',
    'SignalPair',
    'DatasetManifest',
    'DATASET_PRESETS',
    'load_ascii_signal',
    'write_ascii_signal',
    'load_manifest',
    'load_pair',
    'gen_logistic',
    'gen_henon',
    'gen_sine',
    # Preprocessing
    'FilterSpec',
    'NormalizationMode',
    'Preprocessing',
    'design_lowpass',
    'lowpass_fir',
    'normalize',
    # Embedding
    'EmbeddingConfig',
    'EmbeddedSeries',
    'embed',
    # Correlation integrals
    'Kernel',
    'DistanceMetric',
    'CorrIntegralGrid',
    'DistanceMatrix',
    'kernel_value',
    'kernel_curve',
    'pair_distance',
    'correlation_integral_naive',
    'correlation_integral_fast',
    'correlation_integrals',
    'distance_matrix',
    'kernel_matrix',
    'grid',
    'grids',
    # Dimension
    'RGrid',
    'ScalingRegion',
    'DimensionEstimate',
    'make_log_r_grid',
    'fit_loglog_slope',
    'auto_scaling_region',
    'estimate_from_grid',
    'estimate_cd',
    # Statistics
    'PairedResult',
    'SummaryStat',
    'ScanRow',
    'ScanTable',
    'paired_differences',
    'mean_stderr',
    'evaluate_pairs',
    'threshold_scan',
    'summarize_pairs',
    'compare_kernels',
    # Export
    'HeatmapImage',
    'heatmap_image',
    'write_heatmap_pgm',
    'write_grid_csv',
    'write_table_csv',
    'write_matrix_csv',
    'build_report',
    'write_report_json',
    # IO and logging
    'Colors',
    'log',
    'out',
    'error',
    'success',
    'warning',
    'info',
    'header',
    'bold',
    'progress',
    # Config
    'load_config',
    'ensure_config',
    'sync_config',
    'get_config_path',
    'default_workers',
    # Commands
    'get_command_modules',
]
