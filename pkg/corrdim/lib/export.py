"""
Writers for distance-matrix heatmaps, correlation-integral grids and run reports.

All numbers are written with 17 significant digits so files reload
bit-exactly; tables use LF line endings and '.' as decimal separator.
"""
import json
import os
from dataclasses import dataclass

import numpy as np
import pandas as pd

from . import ReportSchemaError, StorageError

FLOAT_FORMAT = '%.17g'
PGM_MAXVAL = 255

REPORT_CONFIG_KEYS = (
    "input", "kernel", "metric", "m_values", "lag", "r_values",
    "filter", "normalization", "order",
)


@dataclass(frozen=True, eq=False)
class HeatmapImage:
    """8-bit grayscale raster, row-major."""
    width: int
    height: int
    pixels: np.ndarray
    d_max: float

    def header(self):
        return f"P5\n{self.width} {self.height}\n{PGM_MAXVAL}\n".encode('ascii')

    def to_bytes(self):
        return self.header() + self.pixels.tobytes()


def heatmap_image(matrix, invert=False):
    """
    Map distances linearly onto gray levels: 0 is black, d_max is white.

    Pixel values are round-half-up of 255 * d / d_max; an all-zero matrix
    gives an all-black image. `invert` flips the polarity.

    Examples:
        >>> heatmap_image(DistanceMatrix(np.array([[0., 1.], [1., 0.]]))).pixels.tolist()
        [[0, 255], [255, 0]]
    """
    d = np.asarray(getattr(matrix, 'd', matrix), dtype=np.float64)
    d_max = float(d.max()) if d.size else 0.0
    if d_max > 0:
        pixels = np.floor(PGM_MAXVAL * d / d_max + 0.5)
        pixels = np.clip(pixels, 0, PGM_MAXVAL).astype(np.uint8)
    else:
        pixels = np.zeros(d.shape, dtype=np.uint8)
    if invert:
        pixels = (PGM_MAXVAL - pixels).astype(np.uint8)
    return HeatmapImage(int(d.shape[1]), int(d.shape[0]), np.ascontiguousarray(pixels), d_max)


def _write_bytes(path, data):
    path = os.fspath(path)
    try:
        with open(path, 'wb') as f:
            f.write(data)
    except OSError as e:
        raise StorageError(f"Cannot write {path}: {e.strerror or e}") from e
    return path


def write_heatmap_pgm(matrix, path, invert=False):
    """
    Write a distance matrix as a binary PGM (P5, maxval 255).

    Returns:
        HeatmapImage that was written
    """
    image = heatmap_image(matrix, invert=invert)
    _write_bytes(path, image.to_bytes())
    return image


def _write_frame(frame, path):
    path = os.fspath(path)
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    except OSError as e:
        raise StorageError(f"Cannot write {path}: {e.strerror or e}") from e
    return path


def write_table_csv(rows, columns, path):
    """Write a list of dicts (or tuples) with a fixed column order."""
    frame = pd.DataFrame(list(rows), columns=list(columns))
    return _write_frame(frame, path)


def write_grid_csv(grid_or_grids, path):
    """
    Write one correlation-integral grid as `m,r,c`, or several as `kernel,m,r,c`.

    Rows are ordered by (m, r); with several kernels, by kernel first.

    Args:
        grid_or_grids: CorrIntegralGrid, or a dict/sequence of them
        path: Output CSV path
    """
    if hasattr(grid_or_grids, 'cells'):
        rows = [{"m": m, "r": r, "c": c} for m, r, c in grid_or_grids.cells()]
        return write_table_csv(rows, ("m", "r", "c"), path)

    grids = grid_or_grids.values() if isinstance(grid_or_grids, dict) else grid_or_grids
    rows = []
    for g in grids:
        rows.extend({"kernel": g.kernel.value, "m": m, "r": r, "c": c} for m, r, c in g.cells())
    return write_table_csv(rows, ("kernel", "m", "r", "c"), path)


def write_matrix_csv(matrix, path, header=None):
    """
    Write a 2-D array as CSV, one matrix row per line.

    Without a header the columns are named c0, c1, ...
    """
    values = np.asarray(getattr(matrix, 'd', getattr(matrix, 'vectors', matrix)), dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    columns = list(header) if header is not None else [f"c{k}" for k in range(values.shape[1])]
    return _write_frame(pd.DataFrame(values, columns=columns), path)


def tool_version():
    from importlib.metadata import version
    try:
        return version("corrdim")
    except Exception:
        return "unknown"


def build_report(command, config, estimates=None, summaries=None, extra=None):
    """
    Assemble a run report with a fixed key order.

    Args:
        command: Command name
        config: Full run configuration (see REPORT_CONFIG_KEYS)
        estimates: DimensionEstimate list (optional)
        summaries: ScanRow list (optional)
        extra: Additional command-specific entries, appended last

    Raises:
        ReportSchemaError: a required configuration key is missing
    """
    missing = [key for key in REPORT_CONFIG_KEYS if key not in config]
    if missing:
        raise ReportSchemaError(f"Report configuration lacks required key(s): {', '.join(missing)}")

    ordered = {key: config[key] for key in REPORT_CONFIG_KEYS}
    ordered.update({key: config[key] for key in config if key not in ordered})

    report = {
        "tool": "corrdim",
        "version": tool_version(),
        "command": command,
        "config": ordered,
        "estimates": [e.as_row() for e in estimates] if estimates else [],
        "summaries": [s.as_row() for s in summaries] if summaries else [],
    }
    if extra:
        report.update(extra)
    return report


def write_report_json(report, path):
    """
    Write a report built by build_report.

    The document contains no timestamps, so identical runs produce
    identical bytes.
    """
    if not isinstance(report.get("config"), dict):
        raise ReportSchemaError("Report has no configuration section")
    missing = [key for key in REPORT_CONFIG_KEYS if key not in report["config"]]
    if missing:
        raise ReportSchemaError(f"Report configuration lacks required key(s): {', '.join(missing)}")
    try:
        text = json.dumps(report, indent=2, allow_nan=False)
    except (TypeError, ValueError) as e:
        raise ReportSchemaError(f"Report is not serializable: {e}") from e
    return _write_bytes(path, (text + '\n').encode('utf-8'))
