"""
Pytest fixtures for corrdim tests.

This file defines reusable test setup functions (fixtures) that can be
used by any test in the `tests/` directory.
"""
import json
import shutil
import tempfile

import numpy as np
import pytest

from corrdim.lib import RawSignal, EmbeddingConfig, embed, gen_logistic, gen_sine, write_ascii_signal


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Point the user config at an empty temp dir and clear CORRDIM_WORKERS."""
    config_dir = tmp_path / "_config"
    monkeypatch.setattr('corrdim.lib.config.CONFIG_DIR', str(config_dir))
    monkeypatch.setattr('corrdim.lib.config.CONFIG_PATH', str(config_dir / "config.json"))
    monkeypatch.delenv('CORRDIM_WORKERS', raising=False)
    monkeypatch.setenv('NO_COLOR', '1')
    return config_dir


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests to run in."""
    d = tempfile.mkdtemp()
    yield d
    shutil.rmtree(d)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def make_signal():
    """Build a RawSignal from a list of samples."""
    def _make(samples, rate=1.0, label="test"):
        return RawSignal(np.asarray(samples, dtype=np.float64), rate, label=label)
    return _make


@pytest.fixture
def make_series():
    """Embed raw samples directly (no preprocessing)."""
    def _make(samples, m=1, lag=1):
        return embed(np.asarray(samples, dtype=np.float64), EmbeddingConfig(m, lag))
    return _make


@pytest.fixture
def write_signal(tmp_path):
    """Write samples to a one-per-line file and return its path."""
    def _write(name, samples):
        path = tmp_path / name
        path.write_text(''.join(f"{float(v):.17g}\n" for v in samples))
        return str(path)
    return _write


@pytest.fixture
def logistic_file(tmp_path):
    """400-sample logistic-map signal on disk."""
    path = tmp_path / "logistic.txt"
    write_ascii_signal(gen_logistic(400, 4.0, 0.3), path)
    return str(path)


@pytest.fixture
def pair_manifest(tmp_path, rng):
    """
    Manifest with two synthetic pairs: noisy sine (a) against logistic map (b).

    Signals are short so every pipeline stays fast.
    """
    data_dir = tmp_path / "data"
    data_dir.mkdir()
    pairs = []
    for k in range(2):
        sine = gen_sine(300, 5.0 + k, 100.0).samples + 0.01 * rng.standard_normal(300)
        logistic = gen_logistic(300, 4.0, 0.2 + 0.1 * k).samples
        a = data_dir / f"sine_{k}.txt"
        b = data_dir / f"logistic_{k}.txt"
        a.write_text(''.join(f"{v:.17g}\n" for v in sine))
        b.write_text(''.join(f"{v:.17g}\n" for v in logistic))
        pairs.append({
            "id": f"p{k}",
            "path_a": f"data/{a.name}",
            "path_b": f"data/{b.name}",
            "label_a": "sine",
            "label_b": "logistic",
        })
    manifest = tmp_path / "pairs.json"
    manifest.write_text(json.dumps({"sample_rate_hz": 100.0, "pairs": pairs}))
    return str(manifest)


@pytest.fixture
def self_pair_manifest(tmp_path, logistic_file):
    """Manifest whose pairs compare a file with itself."""
    pairs = [
        {"id": f"same{k}", "path_a": logistic_file, "path_b": logistic_file,
         "label_a": "x", "label_b": "x"}
        for k in range(3)
    ]
    manifest = tmp_path / "self.json"
    manifest.write_text(json.dumps({"sample_rate_hz": 1.0, "pairs": pairs}))
    return str(manifest)
