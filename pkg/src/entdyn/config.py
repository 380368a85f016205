"""Flat ``key = value`` experiment files and CSV output.

Precedence when resolving a run: command-line flag > ``ENTDYN_SEED``
(seed only) > config file > built-in default.
"""

import csv
import os
from pathlib import Path

import numpy as np

from .dynamics import DynamicsConfig, EnsembleSeries
from .errors import ConfigError

SEED_ENV = "ENTDYN_SEED"

# key -> converter
KEYS = {
    "initial": str,
    "q": float,
    "a_sq": float,
    "channel": str,
    "epsilon": float,
    "p": float,
    "side": str,
    "hamiltonian": str,
    "alpha": float,
    "steps": int,
    "seed": int,
    "ensemble_size": int,
    "record_every": int,
    "output": str,
}

DEFAULTS = {
    "initial": "bell",
    "q": 0.6,
    "a_sq": 0.75,
    "channel": "ref3",
    "epsilon": 0.01,
    "p": 0.05,
    "side": "B",
    "hamiltonian": "H",
    "alpha": 0.0,
    "steps": 500,
    "seed": 42,
    "ensemble_size": 1,
    "record_every": 1,
    "output": "-",
}

CSV_COLUMNS = (
    "step",
    "mean_E_nats",
    "mean_E_over_ln2",
    "mean_S",
    "mean_S_A",
    "mean_S_B",
    "std_E",
    "std_S",
)


def convert(key: str, raw):
    if key not in KEYS:
        raise ConfigError(f"unknown config key {key!r}", key)
    kind = KEYS[key]
    try:
        if kind is int:
            if isinstance(raw, str):
                return int(raw.strip(), 10)
            if int(raw) != raw:
                raise ValueError
            return int(raw)
        if kind is float:
            return float(raw)
    except (TypeError, ValueError):
        raise ConfigError(
            f"config key {key!r} expects {kind.__name__}, got {raw!r}", key
        ) from None
    value = str(raw).strip()
    if key == "initial":
        value = value.replace("-", "_")
    return value


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}", key)
        values[key] = convert(key, raw)
    return values


def load_config(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text, str(path))


def resolve(file_values=None, flag_values=None, environ=None) -> dict:
    """Merge the sources by precedence into a complete settings dict."""
    environ = os.environ if environ is None else environ
    merged = dict(DEFAULTS)
    merged.update(file_values or {})
    if environ.get(SEED_ENV):
        merged["seed"] = convert("seed", environ[SEED_ENV])
    for key, value in (flag_values or {}).items():
        if value is not None:
            merged[key] = convert(key, value)
    return merged


def to_dynamics(settings: dict) -> DynamicsConfig:
    kwargs = {k: v for k, v in settings.items() if k != "output"}
    return DynamicsConfig(**kwargs)


def format_number(x: float) -> str:
    return f"{float(x) + 0.0:.12g}"


def write_series_csv(series: EnsembleSeries, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    m, s = series.mean, series.std
    for i, n in enumerate(series.steps):
        row = (
            m["eof_nats"][i],
            m["eof_rescaled"][i],
            m["s_total"][i],
            m["s_a"][i],
            m["s_b"][i],
            s["eof_nats"][i],
            s["s_total"][i],
        )
        writer.writerow([str(int(n))] + [format_number(x) for x in row])


def read_series_csv(path) -> dict:
    """Columns of a series CSV as float arrays, keyed by header name."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    data = np.array(body, dtype=float).reshape(len(body), len(header))
    return {name: data[:, j] for j, name in enumerate(header)}
