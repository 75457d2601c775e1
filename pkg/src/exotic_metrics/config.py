"""Flat ``key = value`` run configurations and the spaces they describe.

Example::

    # zcon over a three-point space
    space = zcon
    eps = 2
    base = finite
    base.table = 0,1/2,1 ; 1/2,0,1 ; 1,1,0

Base-space keys carry a ``base.`` prefix when the space is built on top of
a base (``zcon``, ``tower``) and no prefix when the space *is* the base.
A table may also come from a CSV file via ``table_csv``, resolved relative
to the configuration file.
"""
from __future__ import annotations

import csv
import os
from fractions import Fraction
from pathlib import Path

from .base import BaseSpace
from .cobweb import CobwebSpace
from .extremal import ExtremalSpace
from .hedgehog import HedgehogSpace
from .invlimit import Tower
from .scalar import as_scalar, fmt, parse_rational
from .zcon import ZSpace


class ConfigError(ValueError):
    pass


BASE_KINDS = {"interval": "interval", "unitintervalq": "interval",
              "cantor": "cantor", "cantorfinite": "cantor",
              "finite": "finite", "finitediscrete": "finite"}
SPACE_KINDS = set(BASE_KINDS) | {"hedgehog", "cobweb", "zcon", "extremal", "tower"}
BASE_KEYS = {"grid", "universe", "table", "table_csv", "labels"}
RUN_KEYS = {"space", "seed", "eps", "spikes", "vortices", "height", "base", "audit", "n", "corrupt",
            "families", "eps_chain", "depth", "out", "workers"}

DEFAULTS = {"seed": 0, "eps": "2", "spikes": 4, "vortices": 6, "height": 3, "base": "interval"}

SEED_ENV = "EXOTIC_METRICS_SEED"


def read_kv(path) -> dict:
    """Parse a key-value file; later keys may not repeat earlier ones."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        if key in out:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        out[key] = value.strip()
    return out


def format_kv(config: dict) -> str:
    lines = []
    for key in sorted(config):
        value = config[key]
        if value is None:
            continue
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def check_keys(config: dict):
    for key in config:
        stem = key[5:] if key.startswith("base.") else key
        if key.startswith("base.") and stem in BASE_KEYS:
            continue
        if key in RUN_KEYS or key in BASE_KEYS:
            continue
        raise ConfigError(f"unknown configuration key {key!r}")


def parse_table(text: str):
    rows = [r for r in text.split(";") if r.strip()]
    try:
        return [[parse_rational(x) for x in row.split(",")] for row in rows]
    except ValueError as exc:
        raise ConfigError(f"bad distance table: {exc}") from None


def read_table_csv(path):
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row]
    try:
        return [[parse_rational(x) for x in row] for row in rows]
    except ValueError as exc:
        raise ConfigError(f"bad distance table in {path}: {exc}") from None


def flag(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off", ""):
        return False
    raise ConfigError(f"expected a boolean, got {value!r}")


def corrupt_table(table):
    """Break the triangle inequality at ``(0, n-1)`` while keeping symmetry."""
    n = len(table)
    if n < 3:
        raise ConfigError("corruption needs a table with at least three points")
    rows = [list(r) for r in table]
    big = sum((x for r in rows for x in r), Fraction(0)) + 1
    rows[0][n - 1] = rows[n - 1][0] = big
    return rows


def build_base(kind: str, params: dict, root: Path | None = None, corrupt: bool = False) -> BaseSpace:
    name = kind
    kind = BASE_KINDS.get(str(kind).lower())
    if kind is None:
        raise ConfigError(f"unknown base kind {name!r}")
    if corrupt and kind != "finite":
        raise ConfigError("corruption applies to finite distance tables only")
    if kind == "interval":
        return BaseSpace.unit_interval(int(params.get("grid", 2**16)))
    if kind == "cantor":
        return BaseSpace.cantor(int(params.get("universe", 12)))
    if "table_csv" in params:
        path = Path(params["table_csv"])
        if root is not None and not path.is_absolute():
            path = root / path
        table = read_table_csv(path)
    elif "table" in params:
        table = parse_table(str(params["table"]))
    else:
        raise ConfigError("a finite space needs 'table' or 'table_csv'")
    labels = [s.strip() for s in str(params["labels"]).split(",")] if "labels" in params else None
    try:
        if corrupt:
            return BaseSpace.finite(corrupt_table(table), labels, check=False)
        return BaseSpace.finite(table, labels)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def resolve(config: dict, overrides: dict | None = None) -> dict:
    """Merge defaults, environment, file values and command-line overrides."""
    merged = dict(DEFAULTS)
    if os.environ.get(SEED_ENV):
        merged["seed"] = os.environ[SEED_ENV]
    merged.update(config)
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    check_keys(merged)
    try:
        merged["seed"] = int(merged["seed"])
    except ValueError:
        raise ConfigError(f"seed must be an integer, got {merged['seed']!r}") from None
    if not -(2**63) <= merged["seed"] < 2**63:
        raise ConfigError("seed must fit in 64 bits")
    return merged


def build_space(config: dict, root: Path | None = None):
    """Instantiate the space a resolved configuration describes."""
    kind = str(config.get("space", "")).lower()
    if kind not in SPACE_KINDS:
        raise ConfigError(f"unknown space kind {config.get('space')!r}")
    try:
        eps = as_scalar(str(config.get("eps", "2")))
    except ValueError as exc:
        raise ConfigError(f"bad eps: {exc}") from None
    corrupt = flag(config.get("corrupt", False))
    if kind in BASE_KINDS:
        return build_base(kind, {k: v for k, v in config.items() if k in BASE_KEYS}, root, corrupt)
    if corrupt:
        raise ConfigError("corruption applies to finite distance tables only")
    base_params = {k[5:]: v for k, v in config.items() if k.startswith("base.")}
    try:
        if kind == "hedgehog":
            return HedgehogSpace(int(config.get("spikes", 4)), eps)
        if kind == "cobweb":
            listed = str(config.get("vortices", 6))
            ids = [int(x) for x in listed.split(",")] if "," in listed else list(range(int(listed)))
            return CobwebSpace(tuple(ids), eps)
        if kind == "extremal":
            if eps != 1 and "eps" in config and config["eps"] != DEFAULTS["eps"]:
                raise ConfigError("the extremal space has thread length 1")
            return ExtremalSpace()
        base = build_base(config.get("base", "interval"), base_params, root)
        if kind == "zcon":
            return ZSpace(base, eps)
        return Tower(base, int(config.get("height", 3)), eps)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def embedded(config: dict) -> dict:
    """The part of a resolved config that determines a report's content."""
    out = {}
    for key, value in sorted(config.items()):
        if key in ("out", "workers"):
            continue
        if key == "seed":
            out[key] = int(value)
        else:
            out[key] = fmt(value) if isinstance(value, Fraction) else str(value)
    return out
