"""
Integration tests for commands/scan.py
"""
import json

import numpy as np
import pandas as pd
import pytest
from unittest.mock import patch

from corrdim.commands import scan
from corrdim.commands.scan import SCAN_R_MAX, SCAN_R_MIN, SCAN_R_POINTS


def _run(argv):
    with patch('sys.argv', ['scan'] + argv):
        scan.run()


class TestScanRun:
    """Tests for the scan command."""

    def test_default_threshold_range(self, pair_manifest, tmp_path):
        out = tmp_path / "out"
        _run([pair_manifest, '--cutoff', '0', '--m', '2', '-o', str(out), '-q'])

        table = pd.read_csv(out / "scan.csv", float_precision='round_trip')
        assert list(table.columns) == ["kernel", "r", "m", "n", "mean_diff", "std_err"]
        assert table["kernel"].tolist() == ["cd"] * SCAN_R_POINTS + ["mcd"] * SCAN_R_POINTS
        r = table["r"].to_numpy()[:SCAN_R_POINTS]
        assert r[0] == SCAN_R_MIN and r[-1] == SCAN_R_MAX
        assert np.all(np.diff(r) > 0)
        assert (table["n"] == 2).all()

        pairs = pd.read_csv(out / "scan_pairs.csv")
        assert list(pairs.columns) == ["kernel", "r", "pair_id", "diff"]
        assert len(pairs) == 2 * SCAN_R_POINTS * 2

    def test_explicit_list(self, pair_manifest, tmp_path):
        out = tmp_path / "out"
        _run([pair_manifest, '--cutoff', '0', '--m', '2', '--r', '0.0005,0.001,0.003,0.005,0.01',
              '-o', str(out), '-q'])

        table = pd.read_csv(out / "scan.csv")
        assert len(table) == 10
        report = json.loads((out / "report.json").read_text())
        assert report["config"]["r_grid"]["spacing"] == "explicit"
        assert len(report["summaries"]) == 10

    def test_self_pairs_zero(self, self_pair_manifest, tmp_path):
        out = tmp_path / "out"
        _run([self_pair_manifest, '--cutoff', '0', '--m', '3', '--r-points', '3', '-o', str(out), '-q'])

        table = pd.read_csv(out / "scan.csv")
        assert (table["mean_diff"] == 0.0).all()
        assert (table["std_err"] == 0.0).all()

    def test_single_m_only(self, pair_manifest, tmp_path):
        with pytest.raises(SystemExit) as exc_info:
            _run([pair_manifest, '--cutoff', '0', '--m', '2-3', '-o', str(tmp_path)])

        assert exc_info.value.code == 2

    def test_single_pair_keeps_pair_table(self, logistic_file, tmp_path):
        manifest = tmp_path / "one.json"
        manifest.write_text(json.dumps({"sample_rate_hz": 1.0, "pairs": [
            {"id": "only", "path_a": logistic_file, "path_b": logistic_file,
             "label_a": "x", "label_b": "y"},
        ]}))
        out = tmp_path / "out"
        with pytest.raises(SystemExit) as exc_info:
            _run([str(manifest), '--cutoff', '0', '--m', '2', '--r', '0.01,0.1', '-o', str(out), '-q'])

        assert exc_info.value.code == 2
        pairs = pd.read_csv(out / "scan_pairs.csv")
        assert pairs["kernel"].tolist() == ["cd", "cd", "mcd", "mcd"]
        assert not (out / "scan.csv").exists()
