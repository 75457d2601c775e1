"""A complete connected space over (0, 1) with a locally extremal projection.

Each ``a`` in (0, 1) owns three vortices: ``bar(a)``, ``up(a)`` and
``down(a)``, all pairwise at distance 1.  The fiber ``H_a`` holds the full
threads from ``bar(a)`` to ``up(a)`` and to ``down(a)``, and for every other
``b`` a spike starting at ``bar(a)``:

* for ``b > a`` along the thread to ``down(b)``, stopping ``b - a`` short;
* for ``b < a`` along the thread to ``up(b)``, stopping ``a - b`` short.

So near ``up(a)`` only fibers with values ``>= a`` appear, and near
``down(a)`` only values ``<= a``: the projection has a local minimum at
every ``up(a)``, a local maximum at every ``down(a)``, and is locally
constant elsewhere.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction

from .base import LiteralError, PointError, rational_literal
from .cobweb import CobwebPoint, Vortex, cobweb_distance, cw_canonicalize
from .scalar import ONE, ZERO, as_scalar, fmt

UP = "up"
DOWN = "down"

EPS = ONE
BAR_TAG, UP_TAG, DOWN_TAG = 0, 1, 2


@dataclass(frozen=True)
class TowardDown:
    """Spike of ``H_a`` on the thread to ``down(b)``, for ``b > a``."""

    b: Fraction


@dataclass(frozen=True)
class TowardUp:
    """Spike of ``H_a`` on the thread to ``up(b)``, for ``b < a``."""

    b: Fraction


@dataclass(frozen=True)
class EPoint:
    a: Fraction
    spike: object
    t: Fraction


class Extremum(str, enum.Enum):
    LOCAL_MIN = "LocalMin"
    LOCAL_MAX = "LocalMax"
    LOCALLY_CONSTANT = "LocallyConstant"


@dataclass(frozen=True)
class HalfOpen:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def __contains__(self, c) -> bool:
        above = c >= self.lo if self.lo_closed else c > self.lo
        below = c <= self.hi if self.hi_closed else c < self.hi
        return above and below

    def __str__(self) -> str:
        return f"{'[' if self.lo_closed else '('}{fmt(self.lo)}, {fmt(self.hi)}{']' if self.hi_closed else ')'}"


def _unit_open(x, what="value") -> Fraction:
    if isinstance(x, (bool, float)):
        raise PointError(f"{what} {x!r} is not rational")
    x = as_scalar(x)
    if not 0 < x < 1:
        raise PointError(f"{what} {fmt(x)} outside (0,1)")
    return x


def spike_length(a: Fraction, spike) -> Fraction:
    if spike in (UP, DOWN):
        return EPS
    if isinstance(spike, TowardDown):
        return EPS - (spike.b - a)
    return EPS - (a - spike.b)


def e_make(a, spike, t) -> EPoint:
    a = _unit_open(a, "fiber")
    t = as_scalar(t)
    if isinstance(spike, TowardDown):
        b = _unit_open(spike.b)
        if not b > a:
            raise PointError("TowardDown needs b > a")
        spike = TowardDown(b)
    elif isinstance(spike, TowardUp):
        b = _unit_open(spike.b)
        if not b < a:
            raise PointError("TowardUp needs b < a")
        spike = TowardUp(b)
    elif spike not in (UP, DOWN):
        raise PointError(f"unknown spike {spike!r}")
    length = spike_length(a, spike)
    if not 0 <= t <= length:
        raise PointError(f"parameter {fmt(t)} outside [0, {fmt(length)}]")
    if t == 0:
        return EPoint(a, UP, ZERO)
    return EPoint(a, spike, t)


def bar(a) -> EPoint:
    return e_make(a, UP, ZERO)


def up(a) -> EPoint:
    return e_make(a, UP, EPS)


def down(a) -> EPoint:
    return e_make(a, DOWN, EPS)


def _target(p: EPoint):
    if p.spike == UP:
        return (UP_TAG, p.a)
    if p.spike == DOWN:
        return (DOWN_TAG, p.a)
    if isinstance(p.spike, TowardDown):
        return (DOWN_TAG, p.spike.b)
    return (UP_TAG, p.spike.b)


def e_embed(p: EPoint) -> CobwebPoint:
    if p.t == 0:
        return Vortex((BAR_TAG, p.a))
    return cw_canonicalize(((BAR_TAG, p.a), _target(p), p.t), EPS)


def e_distance(p: EPoint, q: EPoint) -> Fraction:
    return cobweb_distance(e_embed(p), e_embed(q), EPS)


def e_value(p: EPoint) -> Fraction:
    return p.a


def e_ball_image(a, which: str, r) -> HalfOpen:
    """Projection of the open ball of radius ``r`` around ``up(a)``/``down(a)``."""
    a = _unit_open(a, "fiber")
    r = as_scalar(r)
    if not 0 < r < min(a, 1 - a):
        raise ValueError(f"radius {fmt(r)} must lie in (0, min(a, 1-a))")
    if which == UP:
        return HalfOpen(a, a + r, True, False)
    if which == DOWN:
        return HalfOpen(a - r, a, False, True)
    raise ValueError(f"which must be {UP!r} or {DOWN!r}")


def fiber_gap(c, vortex) -> tuple[Fraction, EPoint]:
    """Exact distance from a vortex to the fiber ``H_c``, with the nearest point.

    Found by listing the threads of ``H_c`` that end at the vortex; when
    there are none every route costs a full hop, and ``bar(c)`` realizes it.
    """
    c = _unit_open(c, "fiber")
    tag, x = vortex
    own = {BAR_TAG: bar(c), UP_TAG: up(c), DOWN_TAG: down(c)}
    if x == c:
        return ZERO, own[tag]
    if tag == UP_TAG and x < c:
        tip = e_make(c, TowardUp(x), spike_length(c, TowardUp(x)))
        return EPS - tip.t, tip
    if tag == DOWN_TAG and x > c:
        tip = e_make(c, TowardDown(x), spike_length(c, TowardDown(x)))
        return EPS - tip.t, tip
    return EPS, bar(c)


def classification_radius(p: EPoint) -> Fraction:
    """Largest radius for which the local behaviour at ``p`` is decided.

    Vortices see only their own threads within distance 1.  Other points
    see only their own fiber until the far end of their thread.
    """
    if p.t == 0 or p.t == EPS:
        return EPS
    return EPS - p.t


def e_classify(p: EPoint, r) -> Extremum:
    p = e_make(p.a, p.spike, p.t)
    r = as_scalar(r)
    if not 0 < r <= classification_radius(p):
        raise ValueError(f"radius {fmt(r)} too large for a local statement at this point")
    if p == up(p.a):
        return Extremum.LOCAL_MIN
    if p == down(p.a):
        return Extremum.LOCAL_MAX
    return Extremum.LOCALLY_CONSTANT


def _dyadic_below(rng: random.Random, hi: Fraction, grid: int) -> Fraction:
    """Uniform grid value in [0, hi)."""
    return hi * Fraction(rng.randrange(grid), grid)


def sample_ball(p: EPoint, r, rng: random.Random, count: int, grid: int = 2**10) -> list[EPoint]:
    """Points of the open ball ``B(p, r)``, built along the threads through ``p``.

    Candidates come from ``p``'s own thread and from every thread of the
    space ending at a vortex within ``r`` of ``p``.
    """
    r = as_scalar(r)
    emb = e_embed(p)
    exits = [(emb.v, ZERO)] if isinstance(emb, Vortex) else [(emb.u, emb.t), (emb.v, EPS - emb.t)]
    out = []
    for _ in range(count):
        roll = rng.random()
        reachable = [(w, c) for w, c in exits if c < r]
        if roll < 0.3 or not reachable:
            length = spike_length(p.a, p.spike)
            lo, hi = max(ZERO, p.t - r), min(length, p.t + r)
            t = lo + (hi - lo) * Fraction(rng.randint(0, grid), grid)
            if abs(t - p.t) < r:
                out.append(e_make(p.a, p.spike, t))
            continue
        (tag, x), cost = rng.choice(reachable)
        room = r - cost
        if tag == BAR_TAG:
            kind = rng.randrange(4)
            b = Fraction(rng.randint(1, grid - 1), grid)
            if kind == 1:
                spike = DOWN
            elif kind == 2 and b > x:
                spike = TowardDown(b)
            elif kind == 3 and b < x:
                spike = TowardUp(b)
            else:
                spike = UP
            length = spike_length(x, spike)
            out.append(e_make(x, spike, min(length, _dyadic_below(rng, room, grid))))
            continue
        if rng.random() < 0.3:
            own = UP if tag == UP_TAG else DOWN
            out.append(e_make(x, own, EPS - _dyadic_below(rng, room, grid)))
            continue
        gap = room * Fraction(rng.randint(1, grid - 1), grid)
        c = x + gap if tag == UP_TAG else x - gap
        if not 0 < c < 1:
            continue
        spike = TowardUp(x) if tag == UP_TAG else TowardDown(x)
        depth = gap + (room - gap) * Fraction(rng.randrange(grid), grid)
        out.append(e_make(c, spike, EPS - depth))
    return out


@dataclass(frozen=True)
class ExtremalSpace:
    grid: int = 2**16

    def validate(self, p: EPoint) -> EPoint:
        if not isinstance(p, EPoint):
            raise PointError(f"{p!r} is not a point of the extremal space")
        return e_make(p.a, p.spike, p.t)

    def distance(self, p: EPoint, q: EPoint) -> Fraction:
        return e_distance(self.validate(p), self.validate(q))

    def key(self, p: EPoint):
        s = p.spike
        if s == UP:
            return (p.a, 0, ZERO, p.t)
        if s == DOWN:
            return (p.a, 1, ZERO, p.t)
        return (p.a, 2 if isinstance(s, TowardDown) else 3, s.b, p.t)

    def sample_value(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(1, self.grid - 1), self.grid)

    def sample(self, rng: random.Random) -> EPoint:
        return self.sample_point(rng, self.sample_value(rng))

    def sample_point(self, rng: random.Random, a: Fraction) -> EPoint:
        roll = rng.random()
        if roll < 0.1:
            return bar(a)
        if roll < 0.2:
            return up(a)
        if roll < 0.3:
            return down(a)
        spike = rng.choice([UP, DOWN, "td", "tu"])
        if spike in ("td", "tu"):
            b = self.sample_value(rng)
            if b > a:
                spike = TowardDown(b)
            elif b < a:
                spike = TowardUp(b)
            else:
                spike = UP
        length = spike_length(a, spike)
        if rng.random() < 0.2:
            t = length
        else:
            t = length * Fraction(rng.randint(0, 2**10), 2**10)
        return e_make(a, spike, t)

    def encode(self, p: EPoint):
        s = p.spike
        if s in (UP, DOWN):
            spike = s
        elif isinstance(s, TowardDown):
            spike = {"toward_down": fmt(s.b)}
        else:
            spike = {"toward_up": fmt(s.b)}
        return {"a": fmt(p.a), "spike": spike, "t": fmt(p.t)}

    def decode(self, obj) -> EPoint:
        spike = obj["spike"]
        if isinstance(spike, dict):
            if "toward_down" in spike:
                spike = TowardDown(as_scalar(spike["toward_down"]))
            else:
                spike = TowardUp(as_scalar(spike["toward_up"]))
        return e_make(as_scalar(obj["a"]), spike, as_scalar(obj["t"]))

    def parse_literal(self, text: str) -> EPoint:
        parts = [s.strip() for s in text.split(":")]
        if len(parts) == 3 and parts[1] in (UP, DOWN):
            return e_make(rational_literal(parts[0]), parts[1], rational_literal(parts[2]))
        if len(parts) == 4 and parts[1] in ("toward-down", "toward-up"):
            cls = TowardDown if parts[1] == "toward-down" else TowardUp
            a, b, t = (rational_literal(x) for x in (parts[0], parts[2], parts[3]))
            return e_make(a, cls(b), t)
        raise LiteralError(f"extremal point must look like 'a:up:t' or 'a:toward-down:b:t', got {text!r}")

    def describe(self) -> dict:
        return {"kind": "extremal", "eps": fmt(EPS)}
