"""The hedgehog: one center with ``spike_count`` spikes of length ``eps``."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .base import LiteralError, rational_literal
from .scalar import as_scalar, fmt


@dataclass(frozen=True, order=True)
class HedgehogPoint:
    spike: int
    t: Fraction


@dataclass(frozen=True)
class HedgehogSpace:
    spike_count: int = 4
    eps: Fraction = Fraction(2)
    grid: int = 2**16

    def __post_init__(self):
        object.__setattr__(self, "eps", as_scalar(self.eps))
        if self.eps <= 0:
            raise ValueError("spike length must be positive")
        if self.spike_count < 1:
            raise ValueError("a hedgehog needs at least one spike")

    @property
    def center(self) -> HedgehogPoint:
        return HedgehogPoint(0, Fraction(0))

    def point(self, spike: int, t) -> HedgehogPoint:
        return self.validate(HedgehogPoint(spike, as_scalar(t)))

    def validate(self, p: HedgehogPoint) -> HedgehogPoint:
        if not isinstance(p, HedgehogPoint):
            raise TypeError(f"{p!r} is not a hedgehog point")
        if isinstance(p.spike, bool) or not isinstance(p.spike, int):
            raise ValueError(f"spike id {p.spike!r} is not an integer")
        if not 0 <= p.spike < self.spike_count:
            raise ValueError(f"spike {p.spike} outside 0..{self.spike_count - 1}")
        return hh_canonicalize(p, self.eps)

    def distance(self, p: HedgehogPoint, q: HedgehogPoint) -> Fraction:
        return hh_distance(self, p, q)

    def key(self, p: HedgehogPoint):
        p = self.validate(p)
        return (p.spike, p.t)

    def sample(self, rng: random.Random) -> HedgehogPoint:
        spike = rng.randrange(self.spike_count)
        t = self.eps * Fraction(rng.randint(0, self.grid), self.grid)
        return hh_canonicalize(HedgehogPoint(spike, t), self.eps)

    def encode(self, p: HedgehogPoint):
        return {"spike": p.spike, "t": fmt(p.t)}

    def decode(self, obj) -> HedgehogPoint:
        return self.point(int(obj["spike"]), obj["t"])

    def parse_literal(self, text: str) -> HedgehogPoint:
        spike, sep, t = text.partition(":")
        try:
            spike = int(spike)
        except ValueError:
            spike = None
        if not sep or spike is None:
            raise LiteralError(f"hedgehog point must look like 'spike:t', got {text!r}")
        return self.point(spike, rational_literal(t))

    def describe(self) -> dict:
        return {"kind": "hedgehog", "spike_count": self.spike_count, "eps": fmt(self.eps)}


def hh_canonicalize(p: HedgehogPoint, eps: Fraction | None = None) -> HedgehogPoint:
    t = as_scalar(p.t)
    if t < 0 or (eps is not None and t > eps):
        raise ValueError(f"spike parameter {fmt(t)} out of range")
    if t == 0:
        return HedgehogPoint(0, Fraction(0))
    return HedgehogPoint(p.spike, t)


def hh_distance(space: HedgehogSpace, p: HedgehogPoint, q: HedgehogPoint) -> Fraction:
    p, q = space.validate(p), space.validate(q)
    if p.spike == q.spike:
        return abs(p.t - q.t)
    return p.t + q.t
