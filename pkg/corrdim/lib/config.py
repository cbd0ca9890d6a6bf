"""
Configuration management for corrdim.

User defaults live in ~/.config/corrdim/config.json. Command-line flags
always win over these values; CORRDIM_WORKERS wins over the file for the
worker count.
"""
import os
import json

CONFIG_DIR = os.path.join(os.path.expanduser("~"), ".config", "corrdim")
CONFIG_PATH = os.path.join(CONFIG_DIR, "config.json")

WORKERS_ENV = "CORRDIM_WORKERS"

DEFAULTS = {
    "workers": None,            # None = available parallelism
    "kernel": "mcd",
    "metric": "euclidean",
    "norm": "l1",
    "cutoff_hz": 60.0,          # 0 disables the low-pass filter
    "transition_hz": 10.0,
    "lag": 1,
    "m": "1-20",
    "r_min": 1e-4,
    "r_max": 1.0,
    "r_points": 41,
    "window": 5,
    "saturation_guard": 0.9,
    "distance_cap": 8192,
    "block_rows": 64,
}


def get_config_path():
    return CONFIG_PATH


def ensure_config():
    """Create config file with defaults if it doesn't exist."""
    if os.path.exists(CONFIG_PATH):
        return

    os.makedirs(CONFIG_DIR, exist_ok=True)
    with open(CONFIG_PATH, 'w') as f:
        json.dump(DEFAULTS, f, indent=4)
        f.write('\n')


def sync_config():
    """Add any keys missing from the config file using their default values."""
    ensure_config()
    try:
        with open(CONFIG_PATH, 'r') as f:
            user_config = json.load(f)
    except (json.JSONDecodeError, IOError):
        user_config = {}

    missing = {k: DEFAULTS[k] for k in DEFAULTS if k not in user_config}
    if not missing:
        return

    user_config.update(missing)
    with open(CONFIG_PATH, 'w') as f:
        json.dump(user_config, f, indent=4)
        f.write('\n')


def load_config():
    """
    Load config, merging with defaults for any missing keys.

    A missing or unreadable file yields the defaults; the file is never
    created just by reading it, so analysis runs leave $HOME untouched.
    """
    config = dict(DEFAULTS)
    if not os.path.exists(CONFIG_PATH):
        return config
    try:
        with open(CONFIG_PATH, 'r') as f:
            user_config = json.load(f)
    except (json.JSONDecodeError, IOError):
        user_config = {}

    if isinstance(user_config, dict):
        config.update({k: v for k, v in user_config.items() if k in DEFAULTS})
    return config


def default_workers(config=None):
    """
    Resolve the default worker count.

    Order: CORRDIM_WORKERS, then the config file, then os.cpu_count().
    Invalid environment values are ignored.
    """
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            value = int(raw)
            if value >= 1:
                return value
        except ValueError:
            pass
    if config is None:
        config = load_config()
    value = config.get("workers")
    if isinstance(value, int) and value >= 1:
        return value
    return os.cpu_count() or 1
