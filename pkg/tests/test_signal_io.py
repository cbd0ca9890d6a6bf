"""
Tests for lib/signal_io.py - signal files, manifests and generators.
"""
import json

import numpy as np
import pytest

from corrdim.lib import (
    DivergenceError,
    DomainError,
    InputError,
    MalformedSignalError,
    ManifestSchemaError,
    ManifestValidationError,
    RawSignal,
    SignalParseError,
    SignalReadError,
    StorageError,
)
from corrdim.lib.signal_io import (
    DATASET_PRESETS,
    gen_henon,
    gen_logistic,
    gen_sine,
    load_ascii_signal,
    load_manifest,
    load_pair,
    write_ascii_signal,
)


class TestRawSignal:
    """Tests for RawSignal invariants."""

    def test_samples_are_read_only_copy(self):
        source = np.array([1.0, 2.0, 3.0])
        sig = RawSignal(source, 10.0)
        source[0] = 99.0
        assert sig.samples[0] == 1.0
        with pytest.raises(ValueError):
            sig.samples[0] = 5.0

    def test_too_short(self):
        with pytest.raises(MalformedSignalError):
            RawSignal([1.0], 1.0)

    def test_non_finite(self):
        with pytest.raises(MalformedSignalError, match="index 1"):
            RawSignal([1.0, float('nan'), 2.0], 1.0)

    def test_bad_rate(self):
        with pytest.raises(MalformedSignalError):
            RawSignal([1.0, 2.0], 0.0)

    def test_duration(self):
        sig = RawSignal(np.zeros(500), 250.0)
        assert len(sig) == 500
        assert sig.duration_s == 2.0

    def test_with_samples_records_step(self):
        sig = RawSignal([1.0, 2.0], 1.0, source="a.txt")
        derived = sig.with_samples([3.0, 4.0], "l1")
        assert derived.source == "a.txt|l1"
        assert derived.samples.tolist() == [3.0, 4.0]


class TestLoadAsciiSignal:
    """Tests for load_ascii_signal."""

    def test_basic(self, tmp_path):
        path = tmp_path / "s.txt"
        path.write_text("1\n-2\n3\n")
        sig = load_ascii_signal(path, 173.61)
        assert sig.samples.tolist() == [1.0, -2.0, 3.0]
        assert sig.sample_rate_hz == 173.61
        assert sig.label == "s"

    def test_blank_lines_and_crlf(self, tmp_path):
        path = tmp_path / "s.txt"
        path.write_bytes(b"1.5\r\n\r\n-2e-3\r\n  \r\n4\r\n")
        sig = load_ascii_signal(path, 1.0, label="x")
        assert sig.samples.tolist() == [1.5, -0.002, 4.0]
        assert sig.label == "x"

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("")
        with pytest.raises(MalformedSignalError):
            load_ascii_signal(path, 1.0)

    def test_parse_error_names_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1\n2\n3\n4\nabc\n6\n")
        with pytest.raises(SignalParseError) as exc_info:
            load_ascii_signal(path, 1.0)
        assert exc_info.value.line_number == 5
        assert ":5:" in str(exc_info.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(SignalReadError, match="missing.txt"):
            load_ascii_signal(tmp_path / "missing.txt", 1.0)

    def test_nan_literal_rejected(self, tmp_path):
        path = tmp_path / "nan.txt"
        path.write_text("1\nnan\n2\n")
        with pytest.raises(MalformedSignalError):
            load_ascii_signal(path, 1.0)

    def test_round_trip_exact(self, tmp_path, rng):
        sig = RawSignal(rng.standard_normal(200) * 1e-3, 250.0)
        path = write_ascii_signal(sig, tmp_path / "rt.txt")
        again = load_ascii_signal(path, 250.0)
        assert np.array_equal(sig.samples, again.samples)

    def test_write_unwritable(self, tmp_path):
        sig = RawSignal([1.0, 2.0], 1.0)
        with pytest.raises(StorageError):
            write_ascii_signal(sig, tmp_path / "no" / "such" / "dir.txt")


def _manifest(tmp_path, doc):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(doc))
    return path


def _pair(pid, a="a.txt", b="b.txt"):
    return {"id": pid, "path_a": a, "path_b": b, "label_a": "interictal", "label_b": "ictal"}


class TestLoadManifest:
    """Tests for load_manifest."""

    @pytest.fixture(autouse=True)
    def signal_files(self, tmp_path):
        (tmp_path / "a.txt").write_text("1\n2\n3\n")
        (tmp_path / "b.txt").write_text("3\n2\n1\n")

    def test_two_pairs(self, tmp_path):
        path = _manifest(tmp_path, {"sample_rate_hz": 173.61, "pairs": [_pair("p01"), _pair("p02")]})
        manifest = load_manifest(path)
        assert len(manifest) == 2
        assert [e.id for e in manifest.entries] == ["p01", "p02"]
        assert manifest.sample_rate_hz == 173.61
        assert manifest.entries[0].path_a == str(tmp_path / "a.txt")

    def test_missing_pairs_key(self, tmp_path):
        path = _manifest(tmp_path, {"sample_rate_hz": 1.0})
        with pytest.raises(ManifestSchemaError, match="pairs"):
            load_manifest(path)

    def test_unknown_key(self, tmp_path):
        path = _manifest(tmp_path, {"sample_rate_hz": 1.0, "pairs": [_pair("p01")], "extra": 1})
        with pytest.raises(ManifestSchemaError, match="extra"):
            load_manifest(path)

    def test_pair_missing_label(self, tmp_path):
        pair = _pair("p01")
        del pair["label_b"]
        path = _manifest(tmp_path, {"sample_rate_hz": 1.0, "pairs": [pair]})
        with pytest.raises(ManifestSchemaError, match="label_b"):
            load_manifest(path)

    def test_duplicate_id(self, tmp_path):
        path = _manifest(tmp_path, {"sample_rate_hz": 1.0, "pairs": [_pair("p01"), _pair("p01")]})
        with pytest.raises(ManifestValidationError, match="p01"):
            load_manifest(path)

    def test_missing_signal_file(self, tmp_path):
        path = _manifest(tmp_path, {"sample_rate_hz": 1.0, "pairs": [_pair("p07", b="gone.txt")]})
        with pytest.raises(ManifestValidationError, match="p07"):
            load_manifest(path)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text("{not json")
        with pytest.raises(ManifestSchemaError):
            load_manifest(path)

    def test_load_pair_reports_pair_id(self, tmp_path):
        (tmp_path / "b.txt").write_text("1\noops\n")
        manifest = load_manifest(_manifest(tmp_path, {"sample_rate_hz": 1.0, "pairs": [_pair("p03")]}))
        with pytest.raises(InputError, match="p03"):
            load_pair(manifest, manifest.entries[0])

    def test_load_pair_rate_override(self, tmp_path):
        manifest = load_manifest(_manifest(tmp_path, {"sample_rate_hz": 1.0, "pairs": [_pair("p01")]}))
        a, b = load_pair(manifest, manifest.get("p01"), sample_rate_hz=250.0)
        assert a.sample_rate_hz == b.sample_rate_hz == 250.0
        assert a.label == "p01:interictal"


class TestGenerators:
    """Tests for the synthetic signal generators."""

    def test_logistic_values(self):
        assert gen_logistic(3, 4.0, 0.3).samples.tolist() == pytest.approx([0.3, 0.84, 0.5376], abs=1e-15)
        assert gen_logistic(2, 4.0, 0.5).samples.tolist() == [0.5, 1.0]

    def test_logistic_range(self):
        samples = gen_logistic(1000, 4.0, 0.3).samples
        assert samples.min() >= 0.0 and samples.max() <= 1.0

    def test_logistic_bad_x0(self):
        with pytest.raises(DomainError):
            gen_logistic(10, 4.0, 1.0)

    def test_henon_first_iterates(self):
        assert gen_henon(3, 1.4, 0.3, 0.0, 0.0, burn_in=0).samples.tolist() == pytest.approx([0.0, 1.0, -0.4])

    def test_henon_bounded(self):
        samples = gen_henon(5000, 1.4, 0.3).samples
        assert np.all(np.abs(samples) < 2)

    def test_henon_diverges(self):
        with pytest.raises(DivergenceError):
            gen_henon(100, 5.0, 0.3, 2.0, 0.0)

    def test_sine_quarter_period(self):
        samples = gen_sine(4, 1.0, 4.0, 1.0).samples
        assert samples == pytest.approx([0.0, 1.0, 0.0, -1.0], abs=1e-12)

    def test_sine_nyquist(self):
        with pytest.raises(DomainError):
            gen_sine(100, 130.0, 250.0)

    def test_sine_amplitude(self):
        samples = gen_sine(250, 10.0, 250.0, 2.0).samples
        assert np.max(np.abs(samples)) <= 2.0

    def test_generators_deterministic(self):
        assert np.array_equal(gen_henon(500).samples, gen_henon(500).samples)
        assert np.array_equal(gen_logistic(500).samples, gen_logistic(500).samples)

    def test_count_checked(self):
        with pytest.raises(DomainError):
            gen_logistic(1)


def test_dataset_presets():
    assert DATASET_PRESETS["bonn"] == 173.61
    assert DATASET_PRESETS["temple"] == 250.0
