"""The Z-construction over a base metric space.

For every base point ``a`` the fiber ``Z_a`` is a hedgehog living inside the
cobweb spun over the vortices ``bar(a)`` and ``star(a)``: the full thread from
``bar(a)`` to ``star(a)`` plus, for each ``b != a``, the initial part of the
thread from ``bar(a)`` to ``star(b)`` that stops at distance ``gauge(b, a)``
short of ``star(b)``.  Distances are those of the ambient cobweb, so shortest
routes may leave ``Z``.

The projection sends a whole fiber to its tag.  A :class:`ZSpace` also
implements the base-space protocol itself (with the metric truncated at 1),
which is what lets :mod:`exotic_metrics.invlimit` stack the construction.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .base import BaseSpace, LiteralError, PointError, rational_literal, truncate
from .cobweb import CobwebPoint, Vortex, cobweb_distance, cw_canonicalize
from .scalar import ONE, ZERO, as_scalar, fmt

STAR = "star"

BAR_TAG = 0
STAR_TAG = 1


@dataclass(frozen=True)
class Toward:
    b: Any


@dataclass(frozen=True)
class ZPoint:
    a: Any
    spike: Any  # STAR or Toward
    t: Fraction


@dataclass(frozen=True)
class ZSpace:
    base: Any
    eps: Fraction = Fraction(2)
    grid: int = 2**10

    def __post_init__(self):
        object.__setattr__(self, "eps", as_scalar(self.eps))
        if self.eps <= 1:
            raise ValueError("eps must exceed 1 so that tips never reach star points")
        if isinstance(self.base, BaseSpace):
            object.__setattr__(self, "base", truncate(self.base))

    # -- named points ---------------------------------------------------------
    def bar(self, a) -> ZPoint:
        return ZPoint(self.base.validate(a), STAR, ZERO)

    def star(self, a) -> ZPoint:
        return ZPoint(self.base.validate(a), STAR, self.eps)

    def tip(self, a, b) -> ZPoint:
        """The end of the spike of ``Z_a`` aimed at ``star(b)``."""
        return z_make(self, a, Toward(b), self.spike_length(a, Toward(b)))

    def spike_length(self, a, spike) -> Fraction:
        if spike == STAR:
            return self.eps
        return self.eps - self.base.gauge(spike.b, a)

    # -- protocol -------------------------------------------------------------
    def validate(self, p: ZPoint) -> ZPoint:
        if not isinstance(p, ZPoint):
            raise PointError(f"{p!r} is not a point of the Z-construction")
        return z_make(self, p.a, p.spike, p.t)

    def embed(self, p: ZPoint) -> CobwebPoint:
        return z_embed(self, p)

    def distance(self, p: ZPoint, q: ZPoint) -> Fraction:
        return z_distance(self, p, q)

    def gauge(self, p: ZPoint, q: ZPoint) -> Fraction:
        return min(z_distance(self, p, q), ONE)

    def key(self, p: ZPoint):
        ka = self.base.key(p.a)
        if p.spike == STAR:
            return (ka, 0, (), p.t)
        return (ka, 1, self.base.key(p.spike.b), p.t)

    def sample(self, rng: random.Random) -> ZPoint:
        return self.sample_point(rng, self.base.sample(rng))

    def sample_point(self, rng: random.Random, a, targets=()) -> ZPoint:
        """One random point of fiber ``a``, biased toward vortices and tips."""
        roll = rng.random()
        if roll < 0.1:
            return self.bar(a)
        if roll < 0.2:
            return self.star(a)
        spike = STAR
        if roll < 0.65:
            for _ in range(8):
                if targets and rng.random() < 0.5:
                    b = rng.choice(list(targets))
                else:
                    b = self.base.sample(rng)
                if self.base.key(b) != self.base.key(a):
                    spike = Toward(self.base.validate(b))
                    break
        length = self.spike_length(a, spike)
        if spike != STAR and rng.random() < 0.25:
            t = length
        else:
            t = length * Fraction(rng.randint(0, self.grid), self.grid)
        return z_make(self, a, spike, t)

    def encode(self, p: ZPoint):
        spike = STAR if p.spike == STAR else {"toward": self.base.encode(p.spike.b)}
        return {"a": self.base.encode(p.a), "spike": spike, "t": fmt(p.t)}

    def decode(self, obj) -> ZPoint:
        a = self.base.decode(obj["a"])
        spike = obj["spike"]
        if spike != STAR:
            spike = Toward(self.base.decode(spike["toward"]))
        return z_make(self, a, spike, as_scalar(obj["t"]))

    def parse_literal(self, text: str) -> ZPoint:
        parts = text.split(":")
        if len(parts) != 3:
            raise LiteralError(f"zcon point must look like 'a:star:t' or 'a:b:t', got {text!r}")
        a = self.base.parse_literal(parts[0])
        spike = STAR if parts[1].strip() == STAR else Toward(self.base.parse_literal(parts[1]))
        return z_make(self, a, spike, rational_literal(parts[2]))

    def describe(self) -> dict:
        return {"kind": "zcon", "eps": fmt(self.eps), "base": self.base.describe()}


def z_make(space: ZSpace, a, spike, t) -> ZPoint:
    """Validate and canonicalize a fiber point; ``t = 0`` becomes ``bar(a)``."""
    a = space.base.validate(a)
    t = as_scalar(t)
    if spike != STAR:
        if not isinstance(spike, Toward):
            raise PointError(f"unknown spike {spike!r}")
        b = space.base.validate(spike.b)
        if space.base.key(b) == space.base.key(a):
            raise PointError("a spike of Z_a cannot aim at star(a) through Toward(a)")
        spike = Toward(b)
    length = space.spike_length(a, spike)
    if not 0 <= t <= length:
        raise PointError(f"parameter {fmt(t)} outside [0, {fmt(length)}] for this spike")
    if t == 0:
        return ZPoint(a, STAR, ZERO)
    return ZPoint(a, spike, t)


def z_embed(space: ZSpace, p: ZPoint) -> CobwebPoint:
    bar = (BAR_TAG, space.base.key(p.a))
    if p.t == 0:
        return Vortex(bar)
    target = p.a if p.spike == STAR else p.spike.b
    return cw_canonicalize((bar, (STAR_TAG, space.base.key(target)), p.t), space.eps)


def z_distance(space: ZSpace, p: ZPoint, q: ZPoint) -> Fraction:
    """Distance induced from the ambient cobweb."""
    return cobweb_distance(z_embed(space, p), z_embed(space, q), space.eps)


def z_distance_truncated(space: ZSpace, p: ZPoint, q: ZPoint) -> Fraction:
    return min(z_distance(space, p, q), ONE)


def f_project(p: ZPoint):
    return p.a


def fiber_min_distance(space: ZSpace, a, b):
    """Least distance between fibers ``Z_a`` and ``Z_b`` with a witness pair."""
    a, b = space.base.validate(a), space.base.validate(b)
    if space.base.key(a) == space.base.key(b):
        raise PointError("fiber distance needs two distinct base points")
    return space.base.gauge(a, b), (space.tip(a, b), space.star(b))


def ball_image_witness(space: ZSpace, a, b) -> ZPoint:
    """The point of ``Z_b`` nearest to ``star(a)``."""
    if space.base.key(a) == space.base.key(b):
        return space.star(a)
    return space.tip(b, a)


def ball_image_contains(space: ZSpace, a, r, b) -> bool:
    """Whether ``b`` lies in the projection of the open ball ``B(star(a), r)``."""
    r = as_scalar(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    return space.base.gauge(a, b) < r


def open_margin(space: ZSpace, p: ZPoint) -> Fraction:
    """Exact distance from ``p`` to the union of the other fibers.

    Other fibers only approach ``Z_a`` through star vortices, and the closest
    one to ``p`` is the far end of its own thread, so the margin is
    ``eps - t``.  It is zero only at ``star(a)``.
    """
    return space.eps - space.validate(p).t


def sample_fiber(space: ZSpace, a, count: int, seed: int, targets=()) -> list[ZPoint]:
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = random.Random(seed)
    a = space.base.validate(a)
    return [space.sample_point(rng, a, targets) for _ in range(count)]
