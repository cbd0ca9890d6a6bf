"""
Signal files, dataset manifests and synthetic reference signals.

This module handles:
- Reading/writing one-amplitude-per-line ASCII signals (Bonn style)
- Loading JSON manifests that pair two conditions per entry
- Deterministic generators (logistic map, Henon map, sine) for validation
"""
import json
import math
import os
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from . import (
    DivergenceError,
    DomainError,
    InputError,
    MalformedSignalError,
    ManifestSchemaError,
    ManifestValidationError,
    SignalParseError,
    SignalReadError,
    StorageError,
)

# Sampling rates of the public EEG collections, in Hz.
DATASET_PRESETS = {
    "bonn": 173.61,
    "bonn-focal": 512.0,
    "temple": 250.0,
}

MANIFEST_KEYS = ("sample_rate_hz", "pairs", "notes")
MANIFEST_REQUIRED = ("sample_rate_hz", "pairs")
PAIR_KEYS = ("id", "path_a", "path_b", "label_a", "label_b")

DIVERGENCE_LIMIT = 1e10


@dataclass(frozen=True, eq=False)
class RawSignal:
    """A sampled amplitude sequence with its sampling rate and provenance."""
    samples: np.ndarray
    sample_rate_hz: float
    label: str = ""
    source: str = ""

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64).ravel()
        if samples.size < 2:
            raise MalformedSignalError(
                f"Signal '{self.label or self.source}' has {samples.size} sample(s); at least 2 are required"
            )
        if not np.all(np.isfinite(samples)):
            bad = int(np.flatnonzero(~np.isfinite(samples))[0])
            raise MalformedSignalError(
                f"Signal '{self.label or self.source}' has a non-finite sample at index {bad}"
            )
        rate = float(self.sample_rate_hz)
        if not (math.isfinite(rate) and rate > 0):
            raise MalformedSignalError(f"Sample rate must be positive, got {self.sample_rate_hz}")
        samples.setflags(write=False)
        object.__setattr__(self, 'samples', samples)
        object.__setattr__(self, 'sample_rate_hz', rate)

    def __len__(self):
        return int(self.samples.size)

    @property
    def duration_s(self):
        return len(self) / self.sample_rate_hz

    def with_samples(self, samples, step):
        """Return a copy carrying new samples, recording the step in its source."""
        source = f"{self.source}|{step}" if self.source else step
        return replace(self, samples=samples, source=source)


@dataclass(frozen=True)
class SignalPair:
    """Two signal files recorded under different conditions."""
    id: str
    path_a: str
    path_b: str
    label_a: str
    label_b: str


@dataclass(frozen=True)
class DatasetManifest:
    """Paired dataset description loaded from a JSON manifest."""
    entries: Tuple[SignalPair, ...]
    sample_rate_hz: float
    notes: str = ""
    path: Optional[str] = field(default=None, compare=False)

    def __len__(self):
        return len(self.entries)

    def get(self, pair_id):
        """Return the entry with the given id, or None."""
        for entry in self.entries:
            if entry.id == pair_id:
                return entry
        return None


def load_ascii_signal(path, sample_rate_hz, label=None):
    """
    Load a signal stored as one decimal number per line.

    Blank lines are ignored; integer and decimal literals are both accepted,
    with LF or CRLF endings.

    Args:
        path: Signal file
        sample_rate_hz: Sampling rate (not stored in the file)
        label: Signal label (default: file name without extension)

    Returns:
        RawSignal with samples in file order

    Examples:
        >>> sig = load_ascii_signal("Z001.txt", 173.61)
        >>> len(sig)
        4097
    """
    path = os.fspath(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except (OSError, UnicodeDecodeError) as e:
        reason = getattr(e, 'strerror', None) or str(e)
        raise SignalReadError(f"Cannot read signal file {path}: {reason}") from e

    values = []
    for line_number, line in enumerate(text.splitlines(), 1):
        token = line.strip()
        if not token:
            continue
        try:
            value = float(token)
        except ValueError:
            raise SignalParseError(path, line_number, token) from None
        if not math.isfinite(value):
            raise MalformedSignalError(f"{path}:{line_number}: non-finite value {token!r}")
        values.append(value)

    if len(values) < 2:
        raise MalformedSignalError(f"{path}: {len(values)} sample(s) found; at least 2 are required")

    if label is None:
        label = os.path.splitext(os.path.basename(path))[0]
    return RawSignal(np.array(values, dtype=np.float64), sample_rate_hz, label=label, source=path)


def write_ascii_signal(signal, path):
    """
    Write samples one per line with 17 significant digits.

    Reloading the file with load_ascii_signal reproduces the samples exactly.
    """
    path = os.fspath(path)
    text = ''.join(f"{value:.17g}\n" for value in signal.samples.tolist())
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
    except OSError as e:
        raise StorageError(f"Cannot write {path}: {e.strerror or e}") from e
    return path


def _require_keys(obj, required, allowed, where):
    for key in required:
        if key not in obj:
            raise ManifestSchemaError(f"{where}: missing required key '{key}'")
    for key in obj:
        if key not in allowed:
            raise ManifestSchemaError(f"{where}: unknown key '{key}'")


def load_manifest(path):
    """
    Load a paired-dataset manifest.

    The document has top-level keys `sample_rate_hz`, `pairs` and optional
    `notes`; every pair names `id`, `path_a`, `path_b`, `label_a`, `label_b`.
    Relative paths are resolved against the manifest's directory and must
    point at existing files.

    Returns:
        DatasetManifest with entries in file order
    """
    path = os.fspath(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            doc = json.load(f)
    except OSError as e:
        raise SignalReadError(f"Cannot read manifest {path}: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise ManifestSchemaError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e

    if not isinstance(doc, dict):
        raise ManifestSchemaError(f"{path}: top level must be an object")
    _require_keys(doc, MANIFEST_REQUIRED, MANIFEST_KEYS, path)

    rate = doc["sample_rate_hz"]
    if isinstance(rate, bool) or not isinstance(rate, (int, float)) or not rate > 0:
        raise ManifestSchemaError(f"{path}: 'sample_rate_hz' must be a positive number")

    pairs = doc["pairs"]
    if not isinstance(pairs, list):
        raise ManifestSchemaError(f"{path}: 'pairs' must be an array")

    notes = doc.get("notes", "")
    if not isinstance(notes, str):
        raise ManifestSchemaError(f"{path}: 'notes' must be a string")

    base_dir = os.path.dirname(os.path.abspath(path))
    entries = []
    seen = set()
    for index, item in enumerate(pairs):
        where = f"{path}: pairs[{index}]"
        if not isinstance(item, dict):
            raise ManifestSchemaError(f"{where} must be an object")
        _require_keys(item, PAIR_KEYS, PAIR_KEYS, where)
        for key in PAIR_KEYS:
            if not isinstance(item[key], str) or not item[key]:
                raise ManifestSchemaError(f"{where}: '{key}' must be a non-empty string")

        pair_id = item["id"]
        if pair_id in seen:
            raise ManifestValidationError(f"{path}: duplicate pair id '{pair_id}'")
        seen.add(pair_id)

        resolved = {}
        for key in ("path_a", "path_b"):
            target = item[key]
            if not os.path.isabs(target):
                target = os.path.normpath(os.path.join(base_dir, target))
            if not os.path.isfile(target):
                raise ManifestValidationError(f"Pair '{pair_id}': {key} does not exist ({target})")
            resolved[key] = target

        entries.append(SignalPair(
            id=pair_id,
            path_a=resolved["path_a"],
            path_b=resolved["path_b"],
            label_a=item["label_a"],
            label_b=item["label_b"],
        ))

    if not entries:
        raise ManifestValidationError(f"{path}: manifest lists no pairs")

    return DatasetManifest(tuple(entries), float(rate), notes=notes, path=path)


def load_pair(manifest, pair, sample_rate_hz=None):
    """
    Load both signals of a manifest entry.

    Errors are re-raised with the pair id in the message.
    """
    rate = sample_rate_hz if sample_rate_hz is not None else manifest.sample_rate_hz
    loaded = []
    for path, label in ((pair.path_a, pair.label_a), (pair.path_b, pair.label_b)):
        try:
            loaded.append(load_ascii_signal(path, rate, label=f"{pair.id}:{label}"))
        except InputError as e:
            raise InputError(f"Pair '{pair.id}': {e}") from e
    return loaded[0], loaded[1]


def _check_count(n):
    if int(n) != n or n < 2:
        raise DomainError(f"Sample count must be an integer >= 2, got {n}")
    return int(n)


def gen_logistic(n, mu=4.0, x0=0.3):
    """
    Iterate the logistic map x_{k+1} = mu * x_k * (1 - x_k).

    Examples:
        >>> gen_logistic(3, 4.0, 0.3).samples.tolist()
        [0.3, 0.84, 0.5376]
    """
    n = _check_count(n)
    if not 0 < x0 < 1:
        raise DomainError(f"x0 must lie in (0, 1), got {x0}")
    values = [float(x0)]
    x = float(x0)
    for _ in range(n - 1):
        x = mu * x * (1 - x)
        values.append(x)
    return RawSignal(np.array(values), 1.0, label="logistic",
                     source=f"logistic(n={n},mu={mu!r},x0={x0!r})")


def gen_henon(n, a=1.4, b=0.3, x0=0.0, y0=0.0, burn_in=1000):
    """
    x-coordinate of the Henon map x' = 1 - a*x^2 + y, y' = b*x.

    The first `burn_in` iterates are discarded; the returned series starts
    at the state reached after them.

    Raises:
        DivergenceError: if |x| exceeds 1e10 or stops being finite
    """
    n = _check_count(n)
    if int(burn_in) != burn_in or burn_in < 0:
        raise DomainError(f"burn_in must be a non-negative integer, got {burn_in}")
    x, y = float(x0), float(y0)
    values = []
    for k in range(int(burn_in) + n):
        if k >= burn_in:
            values.append(x)
            if len(values) == n:
                break
        x, y = 1 - a * x * x + y, b * x
        if not math.isfinite(x) or abs(x) > DIVERGENCE_LIMIT:
            raise DivergenceError(f"Henon trajectory diverged after {k + 1} iterations (a={a}, b={b})")
    return RawSignal(np.array(values), 1.0, label="henon",
                     source=f"henon(n={n},a={a!r},b={b!r},x0={x0!r},y0={y0!r},burn_in={burn_in})")


def gen_sine(n, freq_hz, sample_rate_hz, amplitude=1.0):
    """
    Sampled sine: amplitude * sin(2*pi*freq_hz*k/sample_rate_hz).

    Raises:
        DomainError: if freq_hz is at or above the Nyquist frequency
    """
    n = _check_count(n)
    if not sample_rate_hz > 0:
        raise DomainError(f"Sample rate must be positive, got {sample_rate_hz}")
    if not 0 < freq_hz < sample_rate_hz / 2:
        raise DomainError(
            f"Frequency {freq_hz} Hz must lie in (0, {sample_rate_hz / 2}) Hz (Nyquist)"
        )
    k = np.arange(n, dtype=np.float64)
    samples = amplitude * np.sin(2 * np.pi * freq_hz * k / sample_rate_hz)
    return RawSignal(samples, sample_rate_hz, label="sine",
                     source=f"sine(n={n},f={freq_hz!r},fs={sample_rate_hz!r},A={amplitude!r})")
