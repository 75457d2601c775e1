"""The cobweb spun over a vortex set.

Every pair of distinct vortices is joined by a thread of length ``eps`` and
distance is measured along threads.  A point is either a vortex or lies
strictly inside one thread ``(u, v)`` with ``u < v``, at parameter ``t``
measured from ``u``.

Two routes compute the distance.  :func:`cw_distance` is a closed form: a
shortest route never needs more than two vortex stops, because every hop
between vortices already costs ``eps``.  :func:`cw_distance_oracle` runs
Dijkstra on the explicit finite graph and is kept for cross-checking.
"""
from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Union

from .base import LiteralError, rational_literal
from .scalar import ZERO, as_scalar, fmt


@dataclass(frozen=True)
class Vortex:
    v: Hashable


@dataclass(frozen=True)
class Inner:
    u: Hashable
    v: Hashable
    t: Fraction


CobwebPoint = Union[Vortex, Inner]


def cw_canonicalize(raw, eps) -> CobwebPoint:
    """Normalize ``Vortex``, ``Inner`` or a raw ``(u, v, t)`` triple.

    Endpoint parameters collapse to the vortex and the orientation is
    flipped so that ``u < v``.
    """
    if isinstance(raw, Vortex):
        return raw
    if isinstance(raw, Inner):
        u, v, t = raw.u, raw.v, raw.t
    else:
        u, v, t = raw
    eps = as_scalar(eps)
    t = as_scalar(t)
    if u == v:
        raise ValueError(f"thread endpoints coincide: {u!r}")
    if not 0 <= t <= eps:
        raise ValueError(f"thread parameter {fmt(t)} outside [0, {fmt(eps)}]")
    if t == 0:
        return Vortex(u)
    if t == eps:
        return Vortex(v)
    if v < u:
        return Inner(v, u, eps - t)
    return Inner(u, v, t)


def endpoints(p: CobwebPoint, eps: Fraction) -> tuple[tuple[Hashable, Fraction], ...]:
    """Vortices a point can leave through, with the cost of reaching each."""
    if isinstance(p, Vortex):
        return ((p.v, ZERO),)
    return ((p.u, p.t), (p.v, eps - p.t))


def common_thread(p: CobwebPoint, q: CobwebPoint):
    """The thread ``(u, v)`` holding both points, or None."""
    if isinstance(p, Inner) and isinstance(q, Inner):
        return (p.u, p.v) if (p.u, p.v) == (q.u, q.v) else None
    if isinstance(p, Vortex) and isinstance(q, Vortex):
        if p.v == q.v:
            return None
        return (p.v, q.v) if p.v < q.v else (q.v, p.v)
    vortex, inner = (p, q) if isinstance(p, Vortex) else (q, p)
    if vortex.v in (inner.u, inner.v):
        return (inner.u, inner.v)
    return None


def thread_param(p: CobwebPoint, thread, eps: Fraction) -> Fraction:
    if isinstance(p, Inner):
        return p.t
    return ZERO if p.v == thread[0] else eps


def cobweb_distance(p: CobwebPoint, q: CobwebPoint, eps: Fraction) -> Fraction:
    """Closed-form thread distance between canonical points (no validation)."""
    if p == q:
        return ZERO
    best = None
    if isinstance(p, Inner) and isinstance(q, Inner) and p.u == q.u and p.v == q.v:
        best = abs(p.t - q.t)
    for w1, c1 in endpoints(p, eps):
        for w2, c2 in endpoints(q, eps):
            c = c1 + c2 if w1 == w2 else c1 + c2 + eps
            if best is None or c < best:
                best = c
    return best


def nearest_vortex(p: CobwebPoint, eps: Fraction):
    """A closest vortex and its distance; never farther than ``eps / 2``."""
    return min(endpoints(p, eps), key=lambda e: (e[1], e[0]))


@dataclass(frozen=True)
class CobwebSpace:
    vortices: tuple | None = tuple(range(6))
    eps: Fraction = Fraction(2)
    grid: int = 2**16

    def __post_init__(self):
        object.__setattr__(self, "eps", as_scalar(self.eps))
        if self.eps <= 0:
            raise ValueError("thread length must be positive")
        if self.vortices is not None:
            vs = tuple(self.vortices)
            if len(set(vs)) != len(vs):
                raise ValueError("vortex identifiers must be distinct")
            object.__setattr__(self, "vortices", tuple(sorted(vs)))

    def _check_vortex(self, v):
        if self.vortices is not None and v not in self.vortices:
            raise ValueError(f"{v!r} is not a vortex of this cobweb")

    def validate(self, p) -> CobwebPoint:
        p = cw_canonicalize(p, self.eps)
        if isinstance(p, Inner):
            self._check_vortex(p.u)
            self._check_vortex(p.v)
        else:
            self._check_vortex(p.v)
        return p

    def distance(self, p, q) -> Fraction:
        return cw_distance(self, p, q)

    def key(self, p):
        p = self.validate(p)
        if isinstance(p, Vortex):
            return (0, p.v, p.v, ZERO)
        return (1, p.u, p.v, p.t)

    def sample(self, rng: random.Random) -> CobwebPoint:
        if self.vortices is None or len(self.vortices) < 2:
            raise ValueError("sampling needs a finite universe of at least two vortices")
        u, v = rng.sample(self.vortices, 2)
        if rng.random() < 0.2:
            return Vortex(u)
        t = self.eps * Fraction(rng.randint(0, self.grid), self.grid)
        return cw_canonicalize((u, v, t), self.eps)

    def encode(self, p: CobwebPoint):
        if isinstance(p, Vortex):
            return {"vortex": encode_id(p.v)}
        return {"u": encode_id(p.u), "v": encode_id(p.v), "t": fmt(p.t)}

    def decode(self, obj) -> CobwebPoint:
        if "vortex" in obj:
            return self.validate(Vortex(obj["vortex"]))
        return self.validate((obj["u"], obj["v"], as_scalar(obj["t"])))

    def parse_literal(self, text: str) -> CobwebPoint:
        parts = [s.strip() for s in text.split(",")]
        try:
            if len(parts) == 1:
                raw = Vortex(int(parts[0].lstrip("v")))
            elif len(parts) == 3:
                raw = (int(parts[0]), int(parts[1]), rational_literal(parts[2]))
            else:
                raw = None
        except ValueError:
            raw = None
        if raw is None:
            raise LiteralError(f"cobweb point must be 'v' or 'u,v,t', got {text!r}")
        return self.validate(raw)

    def describe(self) -> dict:
        return {
            "kind": "cobweb",
            "eps": fmt(self.eps),
            "vortices": None if self.vortices is None else [encode_id(v) for v in self.vortices],
        }


def encode_id(v):
    """JSON-friendly rendering of a vortex identifier."""
    if isinstance(v, Fraction):
        return fmt(v)
    if isinstance(v, (tuple, list)):
        return [encode_id(x) for x in v]
    return v


def cw_distance(space: CobwebSpace, p, q) -> Fraction:
    return cobweb_distance(space.validate(p), space.validate(q), space.eps)


def _route_candidates(p: CobwebPoint, q: CobwebPoint, eps: Fraction):
    if p == q:
        yield ZERO, [p]
        return
    thread = common_thread(p, q)
    if thread is not None:
        yield abs(thread_param(p, thread, eps) - thread_param(q, thread, eps)), [p, q]
    for w1, c1 in endpoints(p, eps):
        for w2, c2 in endpoints(q, eps):
            path = [p, Vortex(w1), Vortex(w2), q]
            cost = c1 + c2 + (ZERO if w1 == w2 else eps)
            deduped = [x for i, x in enumerate(path) if i == 0 or x != path[i - 1]]
            yield cost, deduped


def cw_witness_path(space: CobwebSpace, p, q) -> list[CobwebPoint]:
    """Breakpoints of a shortest route, consecutive ones sharing a thread.

    Ties go to fewer breakpoints, then to the lexicographically least
    sequence of intermediate vortices.
    """
    p, q = space.validate(p), space.validate(q)

    def rank(item):
        cost, path = item
        return (cost, len(path), tuple(x.v for x in path[1:-1]))

    return min(_route_candidates(p, q, space.eps), key=rank)[1]


def leg_length(a: CobwebPoint, b: CobwebPoint, eps: Fraction) -> Fraction:
    """Length of a single leg between co-threaded breakpoints."""
    if a == b:
        return ZERO
    thread = common_thread(a, b)
    if thread is None:
        raise ValueError("breakpoints do not share a thread")
    return abs(thread_param(a, thread, eps) - thread_param(b, thread, eps))


def path_length(path: list[CobwebPoint], eps: Fraction) -> Fraction:
    return sum((leg_length(a, b, eps) for a, b in zip(path, path[1:])), ZERO)


def cw_distance_oracle(space: CobwebSpace, p, q, universe: Iterable | None = None) -> Fraction:
    """Shortest path by Dijkstra on the graph ``{p, q} + V``.

    Test-only cross-check of :func:`cw_distance`.  Needs a finite vortex
    universe, either from the space or passed explicitly.
    """
    eps = space.eps
    p, q = space.validate(p), space.validate(q)
    if universe is None:
        if space.vortices is None:
            raise ValueError("oracle needs a finite vortex universe")
        universe = space.vortices
    nodes = {("V", w) for w in universe}
    adj: dict = {}

    def link(a, b, w):
        adj.setdefault(a, []).append((b, w))
        adj.setdefault(b, []).append((a, w))

    def attach(label, pt):
        if isinstance(pt, Vortex):
            nodes.add(("V", pt.v))
            return ("V", pt.v)
        nodes.update({("V", pt.u), ("V", pt.v), label})
        link(label, ("V", pt.u), pt.t)
        link(label, ("V", pt.v), eps - pt.t)
        return label

    src = attach("P", p)
    dst = attach("Q", q) if q != p else src
    if isinstance(p, Inner) and isinstance(q, Inner) and (p.u, p.v) == (q.u, q.v) and p != q:
        link(src, dst, abs(p.t - q.t))
    vortex_nodes = sorted(n for n in nodes if n[0] == "V")
    for a, b in itertools.combinations(vortex_nodes, 2):
        link(a, b, eps)

    dist = {src: ZERO}
    heap = [(ZERO, 0, src)]
    counter = itertools.count(1)
    done = set()
    while heap:
        d, _, node = heapq.heappop(heap)
        if node in done:
            continue
        if node == dst:
            return d
        done.add(node)
        for nxt, w in adj.get(node, ()):
            nd = d + w
            if nxt not in dist or nd < dist[nxt]:
                dist[nxt] = nd
                heapq.heappush(heap, (nd, next(counter), nxt))
    raise ValueError("points are not connected in the oracle graph")


def chain_labels_local(points: list[CobwebPoint], eps, thresh) -> list[int]:
    """Components of ``d <= thresh`` for ``thresh < eps / 2``, in n log n.

    Below half a thread length two points are close only if they share a
    thread or both sit near one vortex, so it suffices to chain each thread
    in parameter order and to join every vortex neighbourhood through its
    innermost member.  Labels are least member indices.
    """
    eps, thresh = as_scalar(eps), as_scalar(thresh)
    if not 0 <= thresh < eps / 2:
        raise ValueError("the local chain rule needs 0 <= thresh < eps/2")
    parent = list(range(len(points)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    threads: dict = {}
    near: dict = {}
    for i, p in enumerate(points):
        if isinstance(p, Inner):
            threads.setdefault((p.u, p.v), []).append((p.t, i))
        for w, c in endpoints(p, eps):
            if c <= thresh:
                near.setdefault(w, []).append((c, i))
    for members in threads.values():
        members.sort()
        for (t1, i), (t2, j) in zip(members, members[1:]):
            if t2 - t1 <= thresh:
                union(i, j)
    for members in near.values():
        c0, i0 = min(members)
        for c, i in members:
            if c0 + c <= thresh:
                union(i0, i)
    return [find(i) for i in range(len(points))]
