"""
Threshold grids and correlation-dimension estimation.

The correlation dimension is the least-squares slope of ln C against ln r
over a scaling region. auto_scaling_region picks the region as the
best-fitting window below the saturation plateau.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import stats

from . import (
    DegenerateFitError,
    DomainError,
    NoScalingRegionError,
    OrderingError,
    RegionError,
)
from .corrint import DEFAULT_BLOCK_ROWS, DistanceMetric, Kernel, grid
from .io import warning

DEFAULT_WINDOW = 5
DEFAULT_SATURATION_GUARD = 0.9
# windows whose r^2 differs by less than this are treated as tied
R2_TIE_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class RGrid:
    """Geometrically spaced thresholds."""
    values: np.ndarray
    r_min: float
    r_max: float
    points: int
    spacing: str = "logarithmic"

    def __len__(self):
        return self.points


@dataclass(frozen=True)
class ScalingRegion:
    """Inclusive index range [start_index, end_index] into a threshold grid."""
    start_index: int
    end_index: int
    r_lo: float
    r_hi: float

    @property
    def n_points(self):
        return self.end_index - self.start_index + 1


@dataclass(frozen=True)
class DimensionEstimate:
    m: int
    slope: float
    intercept: float
    r_squared: float
    region: ScalingRegion
    n_points_used: int

    def as_row(self):
        return {
            "m": self.m,
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "r_lo": self.region.r_lo,
            "r_hi": self.region.r_hi,
            "n_points": self.n_points_used,
        }


def make_log_r_grid(r_min=1e-4, r_max=1.0, points=41):
    """
    Geometric threshold grid from r_min to r_max inclusive.

    Examples:
        >>> make_log_r_grid(1e-4, 1, 5).values
        array([1.e-04, 1.e-03, 1.e-02, 1.e-01, 1.e+00])
    """
    if not r_min > 0:
        raise DomainError(f"r_min must be positive, got {r_min}")
    if not r_min < r_max:
        raise OrderingError(f"r_min ({r_min}) must be smaller than r_max ({r_max})")
    if int(points) != points or points < 2:
        raise DomainError(f"A threshold grid needs at least 2 points, got {points}")
    if r_max > 1:
        warning(f"r_max={r_max:g} lies above 1")
    values = np.geomspace(r_min, r_max, int(points))
    values[0] = r_min
    values[-1] = r_max
    values.setflags(write=False)
    return RGrid(values, float(r_min), float(r_max), int(points))


def _region(r_values, start, end):
    return ScalingRegion(start, end, float(r_values[start]), float(r_values[end]))


def fit_loglog_slope(r_values, c_values, region, m=0):
    """
    Ordinary least squares of ln C on ln r over a scaling region.

    Returns:
        DimensionEstimate with slope, intercept (natural log) and r^2

    Raises:
        RegionError: fewer than 3 points or indices out of range
        DegenerateFitError: C <= 0 inside the region
    """
    r_values = np.asarray(r_values, dtype=np.float64)
    c_values = np.asarray(c_values, dtype=np.float64)
    start, end = region.start_index, region.end_index
    if start < 0 or end >= r_values.size or end >= c_values.size or start > end:
        raise RegionError(f"Region [{start}, {end}] lies outside a grid of {r_values.size} points")
    if region.n_points < 3:
        raise RegionError(f"A scaling region needs at least 3 points, got {region.n_points}")

    r_part = r_values[start:end + 1]
    c_part = c_values[start:end + 1]
    if np.any(c_part <= 0):
        raise DegenerateFitError(
            f"C <= 0 inside region r in [{r_part[0]:g}, {r_part[-1]:g}]; choose a region above the empty thresholds"
        )
    x = np.log(r_part)
    y = np.log(c_part)
    if np.ptp(y) == 0:
        slope, intercept, r_squared = 0.0, float(y[0]), 0.0
    else:
        fit = stats.linregress(x, y)
        slope, intercept = float(fit.slope), float(fit.intercept)
        r_squared = min(max(float(fit.rvalue) ** 2, 0.0), 1.0)
    return DimensionEstimate(int(m), slope, intercept, r_squared, region, region.n_points)


def auto_scaling_region(r_values, c_values, window=DEFAULT_WINDOW,
                        saturation_guard=DEFAULT_SATURATION_GUARD):
    """
    Choose the contiguous window with the best log-log linear fit.

    Eligible windows contain only positive C and have mean C no greater than
    the saturation guard. Ties in r^2 go to the smaller thresholds.

    Raises:
        NoScalingRegionError: no eligible window exists
    """
    if int(window) != window or window < 3:
        raise DomainError(f"Scaling window must be an integer >= 3, got {window}")
    window = int(window)
    r_values = np.asarray(r_values, dtype=np.float64)
    c_values = np.asarray(c_values, dtype=np.float64)

    candidates = []
    for start in range(0, r_values.size - window + 1):
        end = start + window - 1
        part = c_values[start:end + 1]
        if np.any(part <= 0) or float(np.mean(part)) > saturation_guard:
            continue
        region = _region(r_values, start, end)
        candidates.append((fit_loglog_slope(r_values, c_values, region).r_squared, region))

    if not candidates:
        raise NoScalingRegionError(
            f"No scaling region: no {window} consecutive thresholds with 0 < C and mean C <= {saturation_guard:g}"
        )
    best = max(score for score, _ in candidates)
    for score, region in candidates:
        if score >= best - R2_TIE_TOLERANCE:
            return region


def estimate_from_grid(corr_grid, window=DEFAULT_WINDOW, saturation_guard=DEFAULT_SATURATION_GUARD):
    """
    One DimensionEstimate per m row of a CorrIntegralGrid.

    Raises:
        NoScalingRegionError: naming the first m without a scaling region
    """
    estimates = []
    for mi, m in enumerate(corr_grid.m_values):
        row = corr_grid.c[mi]
        try:
            region = auto_scaling_region(corr_grid.r_values, row, window, saturation_guard)
        except NoScalingRegionError as e:
            raise NoScalingRegionError(f"m={m}: {e}") from e
        estimates.append(fit_loglog_slope(corr_grid.r_values, row, region, m=m))
    return estimates


def estimate_cd(signal, m_values, lag=1, r_grid=None, kernel=Kernel.HEAVISIDE,
                metric=DistanceMetric.EUCLIDEAN, preprocessing=None, window=DEFAULT_WINDOW,
                saturation_guard=DEFAULT_SATURATION_GUARD, workers=1,
                block_rows=DEFAULT_BLOCK_ROWS):
    """
    Correlation dimension per embedding dimension.

    Composes grid -> auto_scaling_region -> fit_loglog_slope.

    Returns:
        list of DimensionEstimate in m_values order
    """
    if r_grid is None:
        r_grid = make_log_r_grid()
    r_values = getattr(r_grid, 'values', r_grid)
    corr_grid = grid(signal, m_values, lag, r_values, kernel, metric, preprocessing,
                     workers=workers, block_rows=block_rows)
    return estimate_from_grid(corr_grid, window, saturation_guard)
