"""
Integration tests for commands/kernels.py
"""
import json
import math

import pandas as pd
import pytest
from unittest.mock import patch

from corrdim.commands import kernels


class TestKernelsRun:
    """Tests for the kernels command."""

    def test_three_points(self, tmp_path):
        with patch('sys.argv', ['kernels', '--r', '1', '--points', '3', '-o', str(tmp_path)]):
            kernels.run()

        table = pd.read_csv(tmp_path / "kernels.csv")
        assert list(table.columns) == ["d", "heaviside", "exponential"]
        assert table["d"].tolist() == [0.0, 0.75, 1.5]
        assert table["heaviside"].tolist() == [1.0, 1.0, 0.0]
        assert table["exponential"][1] == pytest.approx(math.exp(-0.75), rel=1e-15)

    def test_report(self, tmp_path):
        with patch('sys.argv', ['kernels', '--r', '0.003', '--points', '5', '-o', str(tmp_path)]):
            kernels.run()

        report = json.loads((tmp_path / "report.json").read_text())
        assert report["command"] == "kernels"
        assert report["config"]["kernel"] == "both"
        assert report["config"]["r_values"] == [0.003]
        assert report["config"]["points"] == 5

    def test_bad_threshold(self, tmp_path):
        with patch('sys.argv', ['kernels', '--r', '0', '-o', str(tmp_path)]), \
             pytest.raises(SystemExit) as exc_info:
            kernels.run()

        assert exc_info.value.code == 2

    def test_too_few_points(self, tmp_path):
        with patch('sys.argv', ['kernels', '--points', '1', '-o', str(tmp_path)]), \
             pytest.raises(SystemExit) as exc_info:
            kernels.run()

        assert exc_info.value.code == 2
