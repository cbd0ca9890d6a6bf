"""
Band-limiting and normalization applied before embedding.

The low-pass filter is a linear-phase Hamming-windowed sinc designed with
scipy.signal.firwin and applied with mirror padding, so the output keeps
the input's length and timing.
"""
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import signal as sps

from . import DegenerateSignalError, DomainError, LengthError

# Hamming window transition-width rule: taps ~ 3.3 * fs / transition.
HAMMING_WIDTH_FACTOR = 3.3


class NormalizationMode(str, Enum):
    L1_SIGNAL = "l1"
    MINMAX_01 = "minmax"
    NONE = "none"


@dataclass(frozen=True)
class FilterSpec:
    """Low-pass design parameters; the tap count follows from the sample rate."""
    cutoff_hz: float = 60.0
    transition_hz: float = 10.0

    def validate(self, sample_rate_hz):
        if not self.cutoff_hz > 0 or not self.transition_hz > 0:
            raise DomainError(
                f"Filter cutoff and transition must be positive (got {self.cutoff_hz}, {self.transition_hz})"
            )
        nyquist = sample_rate_hz / 2
        if not self.cutoff_hz + self.transition_hz / 2 < nyquist:
            raise DomainError(
                f"Cutoff {self.cutoff_hz} Hz with {self.transition_hz} Hz transition "
                f"does not fit below Nyquist ({nyquist} Hz) at {sample_rate_hz} Hz"
            )

    def tap_count(self, sample_rate_hz):
        """Nearest odd integer >= 3.3 * fs / transition, at least 3."""
        taps = math.ceil(HAMMING_WIDTH_FACTOR * sample_rate_hz / self.transition_hz)
        if taps % 2 == 0:
            taps += 1
        return max(taps, 3)


@lru_cache(maxsize=32)
def _design(cutoff_hz, transition_hz, sample_rate_hz):
    spec = FilterSpec(cutoff_hz, transition_hz)
    numtaps = spec.tap_count(sample_rate_hz)
    taps = sps.firwin(numtaps, cutoff_hz, window='hamming', fs=sample_rate_hz)
    taps = taps / taps.sum()
    taps.setflags(write=False)
    return taps


def design_lowpass(spec, sample_rate_hz):
    """
    Design the FIR taps for a spec at a sample rate.

    Taps are symmetric, odd in number and sum to 1 (unit DC gain).
    Results are cached per (spec, sample rate).
    """
    spec.validate(sample_rate_hz)
    return _design(float(spec.cutoff_hz), float(spec.transition_hz), float(sample_rate_hz))


def lowpass_fir(signal, spec):
    """
    Low-pass filter a signal, preserving its length and alignment.

    Each end is mirror-padded by half the tap count and the padded signal is
    convolved in 'valid' mode, which removes the group delay of the
    symmetric filter.

    Raises:
        DomainError: cutoff infeasible for the signal's sample rate
        LengthError: signal shorter than the tap count
    """
    taps = design_lowpass(spec, signal.sample_rate_hz)
    if len(signal) < taps.size:
        raise LengthError(
            f"Signal has {len(signal)} samples; the {spec.cutoff_hz} Hz filter needs at least {taps.size}"
        )
    half = taps.size // 2
    padded = np.pad(signal.samples, half, mode='symmetric')
    filtered = np.convolve(padded, taps, mode='valid')
    return signal.with_samples(filtered, f"lowpass({spec.cutoff_hz:g}Hz)")


def normalize(signal, mode):
    """
    Normalize a signal.

    L1_SIGNAL divides by the sum of absolute values, MINMAX_01 maps onto
    [0, 1], NONE returns the signal unchanged.

    Raises:
        DegenerateSignalError: all-zero signal (L1) or constant signal (min-max)
    """
    mode = NormalizationMode(mode)
    x = signal.samples
    if mode is NormalizationMode.NONE:
        return signal
    if mode is NormalizationMode.L1_SIGNAL:
        norm = float(np.sum(np.abs(x)))
        if norm == 0:
            raise DegenerateSignalError(f"Signal '{signal.label}' is all zeros; 1-norm normalization undefined")
        return signal.with_samples(x / norm, "l1")
    lo, hi = float(x.min()), float(x.max())
    if hi <= lo:
        raise DegenerateSignalError(f"Signal '{signal.label}' is constant; min-max normalization undefined")
    scaled = (x - lo) / (hi - lo)
    return signal.with_samples(np.clip(scaled, 0.0, 1.0), "minmax")


@dataclass(frozen=True)
class Preprocessing:
    """Filter-then-normalize chain applied to every signal of a run."""
    filter: Optional[FilterSpec] = FilterSpec()
    norm: NormalizationMode = NormalizationMode.L1_SIGNAL

    def apply(self, signal):
        if self.filter is not None:
            signal = lowpass_fir(signal, self.filter)
        return normalize(signal, self.norm)

    def describe(self, sample_rate_hz=None):
        """Report fragment; records the order in which the steps ran."""
        if self.filter is None:
            flt = None
        else:
            flt = {
                "type": "fir-hamming-sinc",
                "cutoff_hz": self.filter.cutoff_hz,
                "transition_hz": self.filter.transition_hz,
                "tap_count": self.filter.tap_count(sample_rate_hz) if sample_rate_hz else None,
            }
        return {
            "filter": flt,
            "normalization": NormalizationMode(self.norm).value,
            "order": ["filter", "normalize"],
        }
