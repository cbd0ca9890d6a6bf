"""
Time-delay embedding: row i is [x_i, x_{i+L}, ..., x_{i+(m-1)L}].
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import DomainError, LengthError


@dataclass(frozen=True)
class EmbeddingConfig:
    """
    Embedding dimension m and lag L.

    In fixed_count_mode every m <= m_max keeps the same first
    N_s - (m_max-1)*L rows, so the pair set is identical across m.
    """
    m: int
    lag: int = 1
    fixed_count_mode: bool = False
    m_max: Optional[int] = None

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"Embedding dimension must be a positive integer, got {self.m}")
        if int(self.lag) != self.lag or self.lag < 1:
            raise DomainError(f"Lag must be a positive integer, got {self.lag}")
        if self.fixed_count_mode:
            if self.m_max is None:
                raise DomainError("fixed_count_mode requires m_max")
            if self.m_max < self.m:
                raise DomainError(f"m_max ({self.m_max}) must be >= m ({self.m})")

    def n_vectors(self, n_samples):
        """Vector count produced from n_samples (may be < 2 for short signals)."""
        span_m = self.m_max if self.fixed_count_mode else self.m
        return n_samples - (span_m - 1) * self.lag

    def min_samples(self):
        span_m = self.m_max if self.fixed_count_mode else self.m
        return (span_m - 1) * self.lag + 2


@dataclass(frozen=True, eq=False)
class EmbeddedSeries:
    """N_v x m matrix of delay vectors, row-major and read-only."""
    vectors: np.ndarray
    m: int
    lag: int

    @property
    def n_vectors(self):
        return int(self.vectors.shape[0])

    def __len__(self):
        return self.n_vectors


def embed(signal, config):
    """
    Map a signal into m-dimensional delay space.

    Args:
        signal: RawSignal (or any 1-D sequence of samples)
        config: EmbeddingConfig

    Returns:
        EmbeddedSeries whose entry [i, k] is samples[i + k*L]

    Raises:
        LengthError: fewer than two vectors would result

    Examples:
        >>> embed(sig([1, 2, 3, 4, 5]), EmbeddingConfig(m=2, lag=2)).vectors.tolist()
        [[1.0, 3.0], [2.0, 4.0], [3.0, 5.0]]
    """
    x = np.asarray(getattr(signal, 'samples', signal), dtype=np.float64).ravel()
    n_v = config.n_vectors(x.size)
    if n_v < 2:
        raise LengthError(
            f"Signal has {x.size} samples; m={config.m_max if config.fixed_count_mode else config.m}, "
            f"L={config.lag} needs at least {config.min_samples()}"
        )
    indices = np.arange(n_v)[:, None] + np.arange(config.m)[None, :] * config.lag
    vectors = np.ascontiguousarray(x[indices])
    vectors.setflags(write=False)
    return EmbeddedSeries(vectors, int(config.m), int(config.lag))
