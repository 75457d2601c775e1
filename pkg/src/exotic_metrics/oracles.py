"""Uniform sampling/distance handles over every space in the package."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .base import BaseKind, BaseSpace
from .cobweb import CobwebSpace
from .extremal import DOWN_TAG, UP_TAG, ExtremalSpace, down, e_embed, fiber_gap, sample_ball, up
from .hedgehog import HedgehogSpace
from .invlimit import LimitPoint, Tower, limit_distance, project
from .zcon import ZSpace


@dataclass(frozen=True)
class SpaceOracle:
    """What an audit needs from a space.

    ``sample_tuple(rng, k)`` may correlate its ``k`` points (same or nearby
    fibers) so that audits see close pairs, which independent draws from a
    large carrier almost never produce.
    """

    descriptor: dict
    sample: Callable[[random.Random], Any]
    distance: Callable[[Any, Any], Fraction]
    encode: Callable[[Any], Any]
    key: Callable[[Any], Any] = field(default=lambda p: p)
    sample_tuple: Callable[[random.Random, int], list] | None = None
    embed: Callable[[Any], Any] | None = None
    eps: Fraction | None = None

    def draw(self, rng: random.Random, k: int) -> list:
        if self.sample_tuple is not None:
            return self.sample_tuple(rng, k)
        return [self.sample(rng) for _ in range(k)]

    def same(self, p, q) -> bool:
        return self.key(p) == self.key(q)


def base_oracle(space: BaseSpace) -> SpaceOracle:
    return SpaceOracle(space.describe(), space.sample, space.distance, space.encode, space.key)


def hedgehog_oracle(space: HedgehogSpace) -> SpaceOracle:
    return SpaceOracle(space.describe(), space.sample, space.distance, space.encode, space.key)


def cobweb_oracle(space: CobwebSpace) -> SpaceOracle:
    return SpaceOracle(
        space.describe(), space.sample, space.distance, space.encode, space.key,
        embed=space.validate, eps=space.eps,
    )


def _nearby(base, rng: random.Random, a):
    """A base point close to ``a`` when the carrier allows it."""
    if isinstance(base, BaseSpace) and base.kind is BaseKind.UNIT_INTERVAL:
        step = Fraction(rng.randint(-64, 64), 4096)
        return min(Fraction(1), max(Fraction(0), a + step))
    if rng.random() < 0.5:
        return a
    return base.sample(rng)


def zcon_oracle(space: ZSpace) -> SpaceOracle:
    def tuple_(rng: random.Random, k: int) -> list:
        a0 = space.base.sample(rng)
        tags = [a0] + [_nearby(space.base, rng, a0) for _ in range(k - 1)]
        return [space.sample_point(rng, a, tags) for a in tags]

    return SpaceOracle(
        space.describe(), space.sample, space.distance, space.encode, space.key,
        sample_tuple=tuple_, embed=space.embed, eps=space.eps,
    )


def extremal_oracle(space: ExtremalSpace) -> SpaceOracle:
    def tuple_(rng: random.Random, k: int) -> list:
        if rng.random() < 0.1:
            # An up/down vortex with the nearest point of another fiber:
            # the pair at which the value map is exactly 1-Lipschitz.
            a = space.sample_value(rng)
            c = space.sample_value(rng)
            tag, centre = (UP_TAG, up(a)) if rng.random() < 0.5 else (DOWN_TAG, down(a))
            out = [centre, fiber_gap(c, (tag, a))[1]]
        else:
            out = [space.sample(rng)]
        while len(out) < k:
            near = sample_ball(rng.choice(out), Fraction(1, 8), rng, 1)
            out.append(near[0] if near else space.sample(rng))
        return out

    return SpaceOracle(
        space.describe(), space.sample, space.distance, space.encode, space.key,
        sample_tuple=tuple_, embed=e_embed, eps=Fraction(1),
    )


def tower_oracle(tower: Tower) -> SpaceOracle:
    def key(x: LimitPoint):
        top = tower.height
        return tower.space(top).key(project(tower, x, top).payload)

    return SpaceOracle(
        tower.describe(),
        tower.sample_limit_point,
        lambda x, u: limit_distance(tower, x, u),
        tower.encode,
        key,
        sample_tuple=lambda rng, k: tower.sample_family(rng, k, pool=2),
    )


def oracle_for(space) -> SpaceOracle:
    if isinstance(space, BaseSpace):
        return base_oracle(space)
    if isinstance(space, HedgehogSpace):
        return hedgehog_oracle(space)
    if isinstance(space, CobwebSpace):
        return cobweb_oracle(space)
    if isinstance(space, ZSpace):
        return zcon_oracle(space)
    if isinstance(space, ExtremalSpace):
        return extremal_oracle(space)
    if isinstance(space, Tower):
        return tower_oracle(space)
    raise TypeError(f"no oracle for {type(space).__name__}")
