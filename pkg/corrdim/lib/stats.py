"""
Paired condition comparison.

Each manifest pair is run through the same pipeline; per-pair differences
(condition_a minus condition_b) are summarized by their mean and standard
error, per kernel and threshold.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from . import ConsistencyError, SampleSizeError
from .corrint import BOTH_KERNELS, DEFAULT_BLOCK_ROWS, DistanceMetric, Kernel, check_thresholds, correlation_integrals
from .embedding import EmbeddingConfig, embed
from .signal_io import load_pair


@dataclass(frozen=True)
class PairedResult:
    pair_id: str
    c_a: float
    c_b: float
    m: int
    r: float
    kernel: Kernel

    @property
    def difference(self):
        return self.c_a - self.c_b


@dataclass(frozen=True)
class SummaryStat:
    n: int
    mean: float
    std_dev: float
    std_err: float


@dataclass(frozen=True)
class ScanRow:
    kernel: Kernel
    r: float
    m: int
    stat: SummaryStat

    def as_row(self):
        return {
            "kernel": self.kernel.value,
            "r": self.r,
            "m": self.m,
            "n": self.stat.n,
            "mean_diff": self.stat.mean,
            "std_err": self.stat.std_err,
        }


@dataclass(frozen=True)
class ScanTable:
    """Summary rows ordered (kernel, r) plus the per-pair results behind them."""
    rows: Tuple[ScanRow, ...]
    results: Tuple[PairedResult, ...]

    def results_for(self, kernel, r):
        return [p for p in self.results if p.kernel is kernel and p.r == r]


def paired_differences(results):
    """
    Differences c_a - c_b in input order.

    Raises:
        SampleSizeError: empty input
        ConsistencyError: entries disagree on (m, r, kernel)
    """
    results = list(results)
    if not results:
        raise SampleSizeError("No paired results to compare")
    first = results[0]
    for p in results[1:]:
        if (p.m, p.r, Kernel(p.kernel)) != (first.m, first.r, Kernel(first.kernel)):
            raise ConsistencyError(
                f"Pair '{p.pair_id}' uses m={p.m}, r={p.r:g}, kernel={Kernel(p.kernel).value}; "
                f"expected m={first.m}, r={first.r:g}, kernel={Kernel(first.kernel).value}"
            )
    return [p.difference for p in results]


def mean_stderr(values):
    """
    Mean, sample standard deviation (n-1) and standard error.

    Examples:
        >>> mean_stderr([2, 4])
        SummaryStat(n=2, mean=3.0, std_dev=1.4142135623730951, std_err=1.0)
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    if v.size < 2:
        raise SampleSizeError(f"Standard error needs at least 2 values, got {v.size}")
    mean = float(np.mean(v))
    std_dev = float(np.std(v, ddof=1))
    return SummaryStat(int(v.size), mean, std_dev, std_dev / float(np.sqrt(v.size)))


def _signal_integrals(signal, m, lag, r_values, metric, preprocessing, kernels, block_rows):
    if preprocessing is not None:
        signal = preprocessing.apply(signal)
    series = embed(signal, EmbeddingConfig(m, lag))
    return correlation_integrals(series, r_values, metric, kernels, 1, block_rows)


def evaluate_pairs(manifest, m, r_values, kernels=BOTH_KERNELS, metric=DistanceMetric.EUCLIDEAN,
                   preprocessing=None, lag=1, workers=1, block_rows=DEFAULT_BLOCK_ROWS,
                   sample_rate_hz=None, on_progress=None):
    """
    Run every manifest pair through the pipeline.

    Signals are evaluated concurrently; results are collected in manifest order.

    Returns:
        list of PairedResult ordered by kernel, then r, then manifest entry
    """
    r = check_thresholds(r_values)
    kernels = tuple(Kernel(k) for k in kernels)
    metric = DistanceMetric(metric)
    entries = list(manifest.entries)
    signals = []
    for pair in entries:
        signals.extend(load_pair(manifest, pair, sample_rate_hz))

    def run_one(signal):
        return _signal_integrals(signal, m, lag, r, metric, preprocessing, kernels, block_rows)

    values = []
    if workers is None or workers <= 1:
        for index, sig in enumerate(signals, 1):
            values.append(run_one(sig))
            if on_progress is not None:
                on_progress(index, len(signals), sig.label)
    else:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            for index, value in enumerate(pool.map(run_one, signals), 1):
                values.append(value)
                if on_progress is not None:
                    on_progress(index, len(signals), signals[index - 1].label)

    results = []
    for kernel in kernels:
        for ri, r_value in enumerate(r.tolist()):
            for pi, pair in enumerate(entries):
                c_a = float(values[2 * pi][kernel][ri])
                c_b = float(values[2 * pi + 1][kernel][ri])
                results.append(PairedResult(pair.id, c_a, c_b, int(m), r_value, kernel))
    return results


def threshold_scan(manifest, r_values, m, kernels=BOTH_KERNELS, metric=DistanceMetric.EUCLIDEAN,
                   preprocessing=None, lag=1, workers=1, block_rows=DEFAULT_BLOCK_ROWS,
                   sample_rate_hz=None, on_progress=None):
    """
    Mean and standard error of paired differences per kernel and threshold.

    Returns:
        ScanTable with rows ordered by kernel, then r ascending
    """
    results = evaluate_pairs(manifest, m, r_values, kernels, metric, preprocessing, lag,
                             workers, block_rows, sample_rate_hz, on_progress)
    return summarize_pairs(results)


def summarize_pairs(results):
    """
    Summary rows for results produced by evaluate_pairs.

    Cells keep the order in which (kernel, r) first appear.

    Raises:
        SampleSizeError: a cell holds fewer than 2 pairs
    """
    results = tuple(results)
    cells = {}
    for p in results:
        cells.setdefault((Kernel(p.kernel), p.r), []).append(p)
    rows = []
    for (kernel, r_value), cell in cells.items():
        if len(cell) < 2:
            raise SampleSizeError(
                f"{kernel.label} at r={r_value:g}: {len(cell)} pair(s); a standard error needs at least 2"
            )
        rows.append(ScanRow(kernel, r_value, cell[0].m, mean_stderr(paired_differences(cell))))
    return ScanTable(tuple(rows), results)


def compare_kernels(manifest, m, r, metric=DistanceMetric.EUCLIDEAN, preprocessing=None, lag=1,
                    workers=1, block_rows=DEFAULT_BLOCK_ROWS, sample_rate_hz=None, on_progress=None):
    """
    CD and MCD side by side at a single (m, r).

    Returns:
        ScanTable with one row per kernel (HEAVISIDE first)
    """
    return threshold_scan(manifest, [r], m, BOTH_KERNELS, metric, preprocessing, lag,
                          workers, block_rows, sample_rate_hz, on_progress)
