"""Towers of iterated Z-constructions and their inverse limit.

Level 1 is the (truncated) base space and level ``k + 1`` is the
Z-construction over level ``k`` with its metric truncated at 1.  Limit
points are represented by a single coordinate at some level ``M``; lower
coordinates are obtained by projecting, higher ones by lifting to star
points forever.  For such threads the scaled-max product metric

    d(x, u) = max_n d_n(x_n, u_n) / 2**n

is computable exactly: once two threads differ at level ``M`` they sit on
distinct star vortices at every later level, where the truncated distance
is exactly 1, so the tail supremum is ``2**-(M + 1)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .base import BaseSpace, truncate
from .scalar import ONE, ZERO, as_scalar, fmt
from .zcon import ZSpace


@dataclass(frozen=True)
class LevelPoint:
    level: int
    payload: Any


@dataclass(frozen=True)
class LimitPoint:
    rep: LevelPoint


class Tower:
    """Levels ``X_1 .. X_N`` with a shared thread length ``eps``."""

    def __init__(self, base: BaseSpace, height: int = 3, eps=Fraction(2)):
        if height < 1:
            raise ValueError("tower height must be at least 1")
        self.base = truncate(base)
        self.height = height
        self.eps = as_scalar(eps)
        self.levels = [self.base]
        for _ in range(height - 1):
            self.levels.append(ZSpace(self.levels[-1], self.eps))

    def space(self, level: int):
        if not 1 <= level <= self.height:
            raise ValueError(f"level {level} outside 1..{self.height}")
        return self.levels[level - 1]

    def point(self, level: int, payload) -> LevelPoint:
        return LevelPoint(level, self.space(level).validate(payload))

    def level_distance(self, level: int, p, q) -> Fraction:
        """The level metric ``d_n``, already bounded by one."""
        return self.space(level).gauge(p, q)

    def sample_limit_point(self, rng: random.Random) -> LimitPoint:
        level = rng.randint(1, self.height)
        return LimitPoint(LevelPoint(level, self.space(level).sample(rng)))

    def sample_family(self, rng: random.Random, size: int, pool: int = 4) -> list[LimitPoint]:
        """Limit points grown from a few shared base points.

        Drawing every level from a small pool makes shared low coordinates
        common, which the independent sampler almost never produces.
        """
        pools = [[self.base.sample(rng) for _ in range(pool)]]
        for level in range(2, self.height + 1):
            space = self.space(level)
            below = pools[-1]
            pools.append([space.sample_point(rng, rng.choice(below), below) for _ in range(pool)])
        out = []
        for _ in range(size):
            level = rng.randint(1, self.height)
            if level == 1 or rng.random() < 0.5:
                payload = rng.choice(pools[level - 1])
            else:
                below = pools[level - 2]
                payload = self.space(level).sample_point(rng, rng.choice(below), below)
            out.append(LimitPoint(LevelPoint(level, payload)))
        return out

    def encode(self, x: LimitPoint):
        return {"level": x.rep.level, "point": self.space(x.rep.level).encode(x.rep.payload)}

    def decode(self, obj) -> LimitPoint:
        level = int(obj["level"])
        return LimitPoint(LevelPoint(level, self.space(level).decode(obj["point"])))

    def describe(self) -> dict:
        return {
            "kind": "tower",
            "height": self.height,
            "eps": fmt(self.eps),
            "base": self.base.describe(),
        }


def bond(tower: Tower, p: LevelPoint) -> LevelPoint:
    """``f_k``: the fiber tag of a level ``k + 1`` point."""
    if p.level < 2:
        raise ValueError("level-1 points have nothing below them")
    return LevelPoint(p.level - 1, p.payload.a)


def star_lift(tower: Tower, p: LevelPoint) -> LevelPoint:
    if p.level >= tower.height:
        raise ValueError(f"cannot lift above the top level {tower.height}")
    return LevelPoint(p.level + 1, tower.space(p.level + 1).star(p.payload))


def project(tower: Tower, x: LimitPoint, n: int) -> LevelPoint:
    if not 1 <= n <= tower.height:
        raise ValueError(f"level {n} outside 1..{tower.height}")
    p = x.rep
    while p.level > n:
        p = bond(tower, p)
    while p.level < n:
        p = star_lift(tower, p)
    return p


def _prefix_max(tower: Tower, x: LimitPoint, u: LimitPoint, top: int) -> Fraction:
    best = ZERO
    for n in range(1, top + 1):
        d = tower.level_distance(n, project(tower, x, n).payload, project(tower, u, n).payload)
        best = max(best, d / 2**n)
    return best


def same_thread(tower: Tower, x: LimitPoint, u: LimitPoint) -> bool:
    top = max(x.rep.level, u.rep.level)
    return project(tower, x, top) == project(tower, u, top)


def limit_distance(tower: Tower, x: LimitPoint, u: LimitPoint) -> Fraction:
    top = max(x.rep.level, u.rep.level)
    prefix = _prefix_max(tower, x, u, top)
    if project(tower, x, top) == project(tower, u, top):
        return prefix
    return max(prefix, Fraction(1, 2 ** (top + 1)))


def prefix_enclosure(tower: Tower, x: LimitPoint, u: LimitPoint, k: int) -> tuple[Fraction, Fraction]:
    """Certified bounds on :func:`limit_distance` from levels ``1..k`` only.

    Terms beyond ``k`` are each at most ``2**-(k + 1)``, so the width never
    exceeds that; it collapses to zero only for identical threads.
    """
    if not 1 <= k <= tower.height:
        raise ValueError(f"K = {k} outside 1..{tower.height}")
    lo = _prefix_max(tower, x, u, k)
    if same_thread(tower, x, u):
        return lo, lo
    return lo, max(lo, Fraction(1, 2 ** (k + 1)))


def economical_report(tower: Tower, sample: list[LimitPoint]) -> dict:
    """Distinct-distance counts for a finite sample of limit points.

    Level ``height + 1`` stands for the whole star tail, where distinct
    threads are at distance exactly 1.  Both the count bound and the
    stronger value-set inclusion behind it are checked exactly.
    """
    if not sample:
        raise ValueError("sample must be nonempty")
    n = len(sample)
    values = set()
    for i in range(n):
        for j in range(i, n):
            values.add(limit_distance(tower, sample[i], sample[j]))
    per_level = []
    scaled = set()
    projections = []
    for level in range(1, tower.height + 1):
        pts = [project(tower, x, level).payload for x in sample]
        space = tower.space(level)
        distinct_pts = {space.key(p): p for p in pts}
        projections.append(len(distinct_pts))
        reps = list(distinct_pts.values())
        level_values = {ZERO}
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                level_values.add(tower.level_distance(level, reps[i], reps[j]))
        per_level.append(len(level_values))
        scaled.update(v / 2**level for v in level_values)
    tail_values = {ZERO}
    tops = {tower.space(tower.height).key(project(tower, x, tower.height).payload) for x in sample}
    if len(tops) > 1:
        tail_values.add(ONE)
    per_level.append(len(tail_values))
    scaled.update(v / 2 ** (tower.height + 1) for v in tail_values)
    sigma = sum(per_level)
    return {
        "points": n,
        "distinct_distances": len(values),
        "distances": [fmt(v) for v in sorted(values)],
        "per_level_distinct_distances": per_level,
        "projection_sizes": projections,
        "sigma_bound": sigma,
        "sigma_bound_holds": len(values) <= sigma,
        "value_inclusion_holds": values <= scaled,
    }
