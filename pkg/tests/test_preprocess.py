"""
Tests for lib/preprocess.py - low-pass filter and normalization.
"""
import numpy as np
import pytest

from corrdim.lib import DegenerateSignalError, DomainError, LengthError, RawSignal, gen_sine
from corrdim.lib.preprocess import (
    FilterSpec,
    NormalizationMode,
    Preprocessing,
    design_lowpass,
    lowpass_fir,
    normalize,
)

FS = 250.0
SPEC = FilterSpec(60.0, 10.0)


def _rms(x):
    return float(np.sqrt(np.mean(np.square(x))))


def _gain(freq, n=2500, interior=False):
    sig = gen_sine(n, freq, FS)
    out = lowpass_fir(sig, SPEC).samples
    x = sig.samples
    if interior:
        taps = SPEC.tap_count(FS)
        out, x = out[taps:-taps], x[taps:-taps]
    return _rms(out) / _rms(x)


class TestFilterDesign:
    """Tests for FilterSpec and design_lowpass."""

    def test_tap_count_odd(self):
        assert SPEC.tap_count(FS) == 83
        assert SPEC.tap_count(173.61) % 2 == 1
        assert FilterSpec(10.0, 1000.0).tap_count(100.0) == 3

    def test_taps_symmetric_unit_gain(self):
        taps = design_lowpass(SPEC, FS)
        assert taps.size == 83
        assert np.allclose(taps, taps[::-1], rtol=0, atol=1e-15)
        assert taps.sum() == pytest.approx(1.0, abs=1e-15)

    def test_cutoff_above_nyquist(self):
        with pytest.raises(DomainError):
            design_lowpass(FilterSpec(60.0, 10.0), 120.0)

    def test_negative_cutoff(self):
        with pytest.raises(DomainError):
            FilterSpec(-1.0, 10.0).validate(FS)


class TestLowpass:
    """Tests for lowpass_fir."""

    def test_constant_preserved(self):
        sig = RawSignal(np.full(500, 5.0), FS)
        out = lowpass_fir(sig, SPEC)
        assert len(out) == 500
        assert np.max(np.abs(out.samples - 5.0)) <= 1e-12

    @pytest.mark.parametrize("freq", [10.0, 30.0])
    def test_passband(self, freq):
        assert 0.98 <= _gain(freq) <= 1.02

    def test_ten_hz_tight(self):
        assert 0.99 <= _gain(10.0) <= 1.01

    def test_stopband(self):
        assert _gain(100.0, interior=True) <= 0.01

    def test_length_error(self):
        with pytest.raises(LengthError, match="83"):
            lowpass_fir(RawSignal(np.ones(50), FS), SPEC)

    def test_linearity(self, rng):
        x = rng.standard_normal(600)
        y = rng.standard_normal(600)
        fx = lowpass_fir(RawSignal(x, FS), SPEC).samples
        fy = lowpass_fir(RawSignal(y, FS), SPEC).samples
        fxy = lowpass_fir(RawSignal(2.0 * x - 3.0 * y, FS), SPEC).samples
        assert np.allclose(fxy, 2.0 * fx - 3.0 * fy, rtol=1e-10, atol=1e-12)

    def test_shift_covariance_interior(self, rng):
        x = rng.standard_normal(700)
        shift = 7
        taps = SPEC.tap_count(FS)
        a = lowpass_fir(RawSignal(x[shift:], FS), SPEC).samples
        b = lowpass_fir(RawSignal(x, FS), SPEC).samples[shift:]
        interior = slice(taps, len(a) - taps)
        assert np.allclose(a[interior], b[interior], rtol=0, atol=1e-10)


class TestNormalize:
    """Tests for normalize."""

    def test_l1(self):
        out = normalize(RawSignal([1.0, -1.0, 2.0], 1.0), NormalizationMode.L1_SIGNAL)
        assert out.samples.tolist() == [0.25, -0.25, 0.5]

    def test_l1_unit_norm(self, rng):
        out = normalize(RawSignal(rng.standard_normal(1000), 1.0), "l1")
        assert np.sum(np.abs(out.samples)) == pytest.approx(1.0, abs=1e-12)

    def test_minmax(self):
        out = normalize(RawSignal([2.0, 4.0, 6.0], 1.0), NormalizationMode.MINMAX_01)
        assert out.samples.tolist() == [0.0, 0.5, 1.0]

    def test_minmax_idempotent(self, rng):
        once = normalize(RawSignal(rng.standard_normal(300), 1.0), "minmax")
        twice = normalize(once, "minmax")
        assert np.allclose(once.samples, twice.samples, atol=1e-12)

    def test_none_identity(self):
        sig = RawSignal([3.0, 1.0], 1.0)
        assert normalize(sig, NormalizationMode.NONE) is sig

    def test_all_zero_l1(self):
        with pytest.raises(DegenerateSignalError):
            normalize(RawSignal([0.0, 0.0, 0.0], 1.0), "l1")

    def test_constant_minmax(self):
        with pytest.raises(DegenerateSignalError):
            normalize(RawSignal([2.0, 2.0], 1.0), "minmax")


class TestPreprocessing:
    """Tests for the filter-then-normalize chain."""

    def test_filter_then_normalize(self):
        sig = gen_sine(1000, 10.0, FS)
        out = Preprocessing(SPEC, NormalizationMode.L1_SIGNAL).apply(sig)
        expected = normalize(lowpass_fir(sig, SPEC), "l1")
        assert np.array_equal(out.samples, expected.samples)

    def test_no_filter(self):
        sig = RawSignal([1.0, 3.0], 1.0)
        out = Preprocessing(None, NormalizationMode.L1_SIGNAL).apply(sig)
        assert out.samples.tolist() == [0.25, 0.75]

    def test_describe(self):
        desc = Preprocessing(SPEC).describe(FS)
        assert desc["order"] == ["filter", "normalize"]
        assert desc["normalization"] == "l1"
        assert desc["filter"]["tap_count"] == 83
        assert Preprocessing(None).describe()["filter"] is None
