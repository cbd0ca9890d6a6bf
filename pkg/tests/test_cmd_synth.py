"""
Integration tests for commands/synth.py
"""
import json

import numpy as np
import pytest
from unittest.mock import patch

from corrdim.commands import synth
from corrdim.lib import gen_henon, load_ascii_signal


def _run(argv):
    with patch('sys.argv', ['synth'] + argv):
        synth.run()


class TestSynthRun:
    """Tests for the synth command."""

    def test_logistic_three_samples(self, tmp_path):
        _run(['logistic', '--mu', '4', '--x0', '0.3', '--n', '3', '-o', str(tmp_path)])

        lines = (tmp_path / "logistic.txt").read_text().splitlines()
        assert len(lines) == 3
        assert [float(v) for v in lines] == pytest.approx([0.3, 0.84, 0.5376], abs=1e-15)

    def test_round_trip(self, tmp_path):
        _run(['henon', '--n', '500', '--name', 'h.txt', '-o', str(tmp_path)])

        loaded = load_ascii_signal(tmp_path / "h.txt", 1.0)
        assert np.array_equal(loaded.samples, gen_henon(500, 1.4, 0.3, 0.0, 0.0, 1000).samples)

    def test_report_records_parameters(self, tmp_path):
        _run(['sine', '--n', '100', '--freq', '5', '--sample-rate', '100', '-o', str(tmp_path)])

        report = json.loads((tmp_path / "report.json").read_text())
        assert report["command"] == "synth"
        assert report["config"]["generator"] == "sine"
        assert report["config"]["parameters"]["freq_hz"] == 5.0
        assert report["config"]["sample_rate_hz"] == 100.0

    def test_invalid_kind_exits_2(self, tmp_path):
        with pytest.raises(SystemExit) as exc_info:
            _run(['lorenz', '-o', str(tmp_path)])

        assert exc_info.value.code == 2

    def test_invalid_parameter_exits_2(self, tmp_path):
        with pytest.raises(SystemExit) as exc_info:
            _run(['logistic', '--x0', '1.5', '-o', str(tmp_path)])

        assert exc_info.value.code == 2

    def test_divergence_exits_3(self, tmp_path):
        with pytest.raises(SystemExit) as exc_info:
            _run(['henon', '--a', '5', '--x0', '2', '--n', '100', '-o', str(tmp_path)])

        assert exc_info.value.code == 3
