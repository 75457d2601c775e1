"""Dispatch a resolved configuration to the matching audit."""
from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import audits
from .base import BaseKind, BaseSpace
from .config import ConfigError, build_space, embedded
from .extremal import ExtremalSpace, e_value
from .oracles import oracle_for
from .scalar import parse_rational
from .invlimit import Tower
from .zcon import ZSpace, f_project


def _int(config, key, default):
    try:
        value = int(config.get(key, default))
    except ValueError:
        raise ConfigError(f"{key} must be an integer") from None
    if value < 1:
        raise ConfigError(f"{key} must be positive")
    return value


def _rational(config, key, default):
    try:
        value = parse_rational(str(config.get(key, default)))
    except ValueError as exc:
        raise ConfigError(f"bad {key}: {exc}") from None
    if value <= 0:
        raise ConfigError(f"{key} must be positive")
    return value


def _need(space, cls, audit):
    if not isinstance(space, cls):
        raise ConfigError(f"audit {audit!r} does not apply to this space")


def _metric(space, cfg, seed, workers):
    return audits.audit_metric(oracle_for(space), _int(cfg, "n", 10_000), seed, workers)


def _ultrametric(space, cfg, seed, workers):
    return audits.audit_ultrametric(oracle_for(space), _int(cfg, "n", 10_000), seed, workers=workers)


def _distinct(space, cfg, seed, workers):
    ultra = isinstance(space, BaseSpace) and space.kind is BaseKind.CANTOR
    return audits.audit_distinct_distances(oracle_for(space), max(2, _int(cfg, "n", 64)), seed,
                                           _int(cfg, "families", 1), ultrametric=ultra)


def _lipschitz(space, cfg, seed, workers):
    oracle = oracle_for(space)
    n = _int(cfg, "n", 10_000)
    if isinstance(space, ZSpace):
        return audits.audit_lipschitz(oracle, f_project, space.base.gauge, n, seed, "f_project", workers)
    if isinstance(space, ExtremalSpace):
        return audits.audit_lipschitz(oracle, e_value, lambda x, y: abs(x - y), n, seed, "e_value", workers)
    return audits.audit_lipschitz(oracle, lambda p: p, oracle.distance, n, seed, "identity", workers)


def _chain(space, cfg, seed, workers):
    eps_chain = _rational(cfg, "eps_chain", "1/8")
    oracle = oracle_for(space)
    if isinstance(space, ZSpace) and space.base.kind is BaseKind.UNIT_INTERVAL:
        steps = _int(cfg, "n", 64)
        grid = [Fraction(i, steps) for i in range(steps + 1)]
        points = audits.zcon_skeleton(space, grid, eps_chain)
        report = audits.audit_chain(oracle, points, eps_chain, expected=1, sample_name=f"skeleton-1/{steps}")
    else:
        rng = random.Random(seed)
        points = [oracle.sample(rng) for _ in range(_int(cfg, "n", 200))]
        report = audits.audit_chain(oracle, points, eps_chain, sample_name="sampled")
    report.seed = seed
    return report


def _cauchy(space, cfg, seed, workers):
    return audits.audit_cauchy(audits.cauchy_families(), _int(cfg, "depth", 20))


def _fiber(space, cfg, seed, workers):
    _need(space, ZSpace, "fiber-separation")
    return audits.audit_fiber_separation(space, _int(cfg, "n", 100), 100, seed)


def _stars(space, cfg, seed, workers):
    _need(space, ZSpace, "star-discreteness")
    return audits.audit_star_discreteness(space, _int(cfg, "n", 50), seed)


def _margin(space, cfg, seed, workers):
    _need(space, ZSpace, "open-margin")
    return audits.audit_open_margin(space, _int(cfg, "n", 100), 50, seed)


def _ball(space, cfg, seed, workers):
    if isinstance(space, ZSpace):
        return audits.audit_ball_image_zcon(space, _int(cfg, "n", 100), seed)
    _need(space, ExtremalSpace, "ball-image")
    return audits.audit_ball_image_extremal(_int(cfg, "n", 100), seed, space=space)


def _extrema(space, cfg, seed, workers):
    _need(space, ExtremalSpace, "extrema")
    return audits.audit_extrema(_int(cfg, "n", 100), seed, space=space)


def _threads(space, cfg, seed, workers):
    _need(space, Tower, "tower-threads")
    return audits.audit_tower_threads(space, _int(cfg, "n", 1000), seed)


def _enclosures(space, cfg, seed, workers):
    _need(space, Tower, "tower-enclosures")
    return audits.audit_tower_enclosures(space, _int(cfg, "n", 1000), seed)


def _sigma(space, cfg, seed, workers):
    _need(space, Tower, "tower-sigma")
    return audits.audit_tower_sigma(space, _int(cfg, "n", 100), 64, seed)


AUDITS: dict[str, Callable] = {
    "metric": _metric,
    "ultrametric": _ultrametric,
    "distinct-distances": _distinct,
    "lipschitz": _lipschitz,
    "chain": _chain,
    "cauchy": _cauchy,
    "fiber-separation": _fiber,
    "star-discreteness": _stars,
    "open-margin": _margin,
    "ball-image": _ball,
    "extrema": _extrema,
    "tower-threads": _threads,
    "tower-enclosures": _enclosures,
    "tower-sigma": _sigma,
}


def run_audit(config: dict, workers: int = 1, root: Path | None = None) -> audits.AuditReport:
    """Build the configured space, run the configured audit, embed the config."""
    name = str(config.get("audit", "metric"))
    if name not in AUDITS:
        raise ConfigError(f"unknown audit {name!r}; choose from {', '.join(AUDITS)}")
    space = build_space(config, root)
    report = AUDITS[name](space, config, int(config["seed"]), workers)
    report.config = embedded({**config, "audit": name})
    return report
