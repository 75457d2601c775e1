"""Seeded, exact property audits.

Each audit draws all of its samples from one ``random.Random(seed)`` before
evaluating anything, then evaluates the checks (optionally on a thread pool)
and collects results by check index.  The report is therefore a function of
the arguments alone, whatever the worker count.
"""
from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from . import kernels
from .base import BaseSpace
from .cobweb import CobwebSpace, Vortex, chain_labels_local, cw_canonicalize, nearest_vortex
from .extremal import (
    DOWN, DOWN_TAG, UP, UP_TAG, Extremum, ExtremalSpace, e_ball_image, e_classify, e_distance,
    e_value, classification_radius, down, fiber_gap, sample_ball, up,
)
from .hedgehog import HedgehogSpace
from .invlimit import Tower, bond, economical_report, limit_distance, prefix_enclosure, project
from .oracles import SpaceOracle, _nearby
from .scalar import ZERO, fmt
from .zcon import (
    ZSpace, ball_image_contains, ball_image_witness, f_project, fiber_min_distance,
    STAR, Toward, open_margin, z_distance, z_make,
)

MAX_RECORDED = 100


def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    return x


@dataclass
class AuditReport:
    audit: str
    space: dict
    seed: int | None
    params: dict = field(default_factory=dict)
    attempted: int = 0
    passed: int = 0
    violations: list = field(default_factory=list)
    violation_count: int = 0
    stats: dict = field(default_factory=dict)
    config: dict | None = None

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def tick(self):
        """Count one passing check."""
        self.attempted += 1
        self.passed += 1

    def record(self, ok: bool, check: str, **detail):
        self.attempted += 1
        if ok:
            self.passed += 1
            return
        self.violation_count += 1
        if len(self.violations) < MAX_RECORDED:
            self.violations.append(_jsonable({"check": check, **detail}))

    def to_dict(self) -> dict:
        out = {
            "audit": self.audit,
            "space": _jsonable(self.space),
            "seed": self.seed,
            "params": _jsonable(self.params),
            "attempted": self.attempted,
            "passed": self.passed,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "stats": _jsonable(self.stats),
        }
        if self.config is not None:
            out["config"] = _jsonable(self.config)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _evaluate(items: Sequence, fn: Callable, workers: int) -> list:
    """``[fn(x) for x in items]``, possibly on threads, always in order."""
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * workers))
    chunks = [items[i:i + chunk] for i in range(0, len(items), chunk)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda c: [fn(x) for x in c], chunks))
    return [r for part in parts for r in part]


# -- generic metric audits ---------------------------------------------------

def _metric_checks(oracle: SpaceOracle, triple):
    x, y, z = triple
    d = oracle.distance
    dxy, dyx, dyz, dxz, dxx = d(x, y), d(y, x), d(y, z), d(x, z), d(x, x)
    pairs = {"xy": (x, y, dxy), "yz": (y, z, dyz), "xz": (x, z, dxz)}
    out = [
        ("identity", dxx == 0, {"d(x,x)": dxx}),
        ("symmetry", dxy == dyx, {"d(x,y)": dxy, "d(y,x)": dyx}),
        ("nonnegative", min(dxy, dyz, dxz) >= 0, {"d(x,y)": dxy, "d(y,z)": dyz, "d(x,z)": dxz}),
    ]
    for name, (p, q, dpq) in pairs.items():
        out.append((f"indiscernible-{name}", (dpq == 0) == oracle.same(p, q), {f"d({name})": dpq}))
    out += [
        ("triangle", dxz <= dxy + dyz, {"d(x,z)": dxz, "d(x,y)": dxy, "d(y,z)": dyz}),
        ("triangle", dxy <= dxz + dyz, {"d(x,y)": dxy, "d(x,z)": dxz, "d(z,y)": dyz}),
        ("triangle", dyz <= dxy + dxz, {"d(y,z)": dyz, "d(y,x)": dxy, "d(x,z)": dxz}),
    ]
    return out


def audit_metric(oracle: SpaceOracle, n_triples: int, seed: int, workers: int = 1) -> AuditReport:
    """Identity, symmetry, positivity and all three triangle inequalities."""
    if n_triples < 1:
        raise ValueError("n_triples must be at least 1")
    rng = random.Random(seed)
    triples = [oracle.draw(rng, 3) for _ in range(n_triples)]
    report = AuditReport("metric", oracle.descriptor, seed, {"n_triples": n_triples})
    results = _evaluate(triples, lambda tr: _metric_checks(oracle, tr), workers)
    for idx, (triple, checks) in enumerate(zip(triples, results)):
        for name, ok, values in checks:
            if ok:
                report.tick()
            else:
                report.record(False, name, index=idx,
                              points=[oracle.encode(p) for p in triple], values=values)
    return report


def _strong_ok(dac, dab, dbc) -> bool:
    return dac <= max(dab, dbc)


def audit_ultrametric(oracle: SpaceOracle, n_triples: int | None = None, seed: int | None = None,
                      points: Sequence | None = None, workers: int = 1) -> AuditReport:
    """Strong triangle inequality on sampled triples, or on all triples of ``points``."""
    if points is not None:
        pts = list(points)
        dm = [[oracle.distance(p, q) for q in pts] for p in pts]
        report = AuditReport("ultrametric", oracle.descriptor, seed,
                             {"mode": "exhaustive", "points": len(pts)})
        n = len(pts)
        for i, j, k in itertools.product(range(n), repeat=3):
            if _strong_ok(dm[i][k], dm[i][j], dm[j][k]):
                report.tick()
            else:
                report.record(False, "strong-triangle",
                              points=[oracle.encode(pts[m]) for m in (i, j, k)],
                              values={"d(x,z)": dm[i][k], "d(x,y)": dm[i][j], "d(y,z)": dm[j][k]})
        return report
    if n_triples is None or n_triples < 1:
        raise ValueError("n_triples must be at least 1")
    rng = random.Random(seed)
    triples = [oracle.draw(rng, 3) for _ in range(n_triples)]
    report = AuditReport("ultrametric", oracle.descriptor, seed,
                         {"mode": "sampled", "n_triples": n_triples})

    def check(tr):
        x, y, z = tr
        d = oracle.distance
        dxy, dyz, dxz = d(x, y), d(y, z), d(x, z)
        return [
            (_strong_ok(dxz, dxy, dyz), {"d(x,z)": dxz, "d(x,y)": dxy, "d(y,z)": dyz}),
            (_strong_ok(dxy, dxz, dyz), {"d(x,y)": dxy, "d(x,z)": dxz, "d(z,y)": dyz}),
            (_strong_ok(dyz, dxy, dxz), {"d(y,z)": dyz, "d(y,x)": dxy, "d(x,z)": dxz}),
        ]

    for idx, (tr, checks) in enumerate(zip(triples, _evaluate(triples, check, workers))):
        for ok, values in checks:
            if ok:
                report.tick()
            else:
                report.record(False, "strong-triangle", index=idx,
                              points=[oracle.encode(p) for p in tr], values=values)
    return report


def distinct_distances(oracle: SpaceOracle, points: Sequence) -> tuple[set, int]:
    """All pairwise distances (including 0) and the number of distinct points."""
    reps = {oracle.key(p): p for p in points}
    pts = list(reps.values())
    values = {ZERO}
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            values.add(oracle.distance(pts[i], pts[j]))
    return values, len(pts)


def audit_distinct_distances(oracle: SpaceOracle, n_points: int, seed: int, families: int = 1,
                             ultrametric: bool = False) -> AuditReport:
    """Count ``|d(A x A)|`` on seeded samples.

    A finite ultrametric space on ``m`` points realizes at most ``m - 1``
    nonzero distances, so that bound is asserted when ``ultrametric`` is
    set; otherwise the counts are only reported.
    """
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    rng = random.Random(seed)
    report = AuditReport("distinct-distances", oracle.descriptor, seed,
                         {"n_points": n_points, "families": families, "asserted": ultrametric})
    counts = []
    for fam in range(families):
        size = n_points if families == 1 else rng.randint(2, n_points)
        sample = [oracle.sample(rng) for _ in range(size)]
        values, m = distinct_distances(oracle, sample)
        counts.append({"points": m, "distinct": len(values)})
        if ultrametric:
            report.record(len(values) - 1 <= m - 1, "ultrametric-count", family=fam,
                          points=[oracle.encode(p) for p in sample],
                          values={"distinct_nonzero": len(values) - 1, "points": m})
    report.stats = {"families": counts}
    return report


def audit_lipschitz(oracle: SpaceOracle, f: Callable, target_distance: Callable, n_pairs: int,
                    seed: int, map_name: str = "f", workers: int = 1) -> AuditReport:
    """``target_distance(f(p), f(q)) <= distance(p, q)`` on sampled pairs."""
    rng = random.Random(seed)
    pairs = [oracle.draw(rng, 2) for _ in range(n_pairs)]
    report = AuditReport("lipschitz", oracle.descriptor, seed, {"n_pairs": n_pairs, "map": map_name})

    def check(pair):
        p, q = pair
        return target_distance(f(p), f(q)), oracle.distance(p, q)

    tight = 0
    for idx, (pair, (lhs, rhs)) in enumerate(zip(pairs, _evaluate(pairs, check, workers))):
        tight += lhs == rhs and rhs > 0
        if lhs <= rhs:
            report.tick()
        else:
            report.record(False, "lipschitz", index=idx,
                          points=[oracle.encode(p) for p in pair], values={"image": lhs, "source": rhs})
    report.stats = {"tight_pairs": tight}
    return report


# -- chains --------------------------------------------------------------------

def chain_labels(oracle: SpaceOracle, points: Sequence, eps_chain: Fraction) -> tuple[list[int], str]:
    """Components of the relation ``d <= eps_chain`` and the method used."""
    eps_chain = Fraction(eps_chain)
    if oracle.embed is not None:
        emb = [oracle.embed(p) for p in points]
        if eps_chain < oracle.eps / 2:
            return chain_labels_local(emb, oracle.eps, eps_chain), "local"
        enc = kernels.encode(emb, oracle.eps)
        if enc is not None:
            return [int(x) for x in kernels.chain_labels(enc, eps_chain)], "kernel"
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if oracle.distance(points[i], points[j]) <= eps_chain:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    return [find(i) for i in range(n)], "pairwise"


def audit_chain(oracle: SpaceOracle, points: Sequence, eps_chain, expected: int | None = None,
                sample_name: str = "explicit") -> AuditReport:
    """Count ``eps_chain``-chain components of a sample.

    Connected spaces are chainable at every scale, so a split sample refutes
    the sampling or the construction; a single component is supporting
    evidence only.
    """
    if not points:
        raise ValueError("chain audit needs a nonempty sample")
    eps_chain = Fraction(eps_chain)
    if eps_chain <= 0:
        raise ValueError("eps_chain must be positive")
    labels, method = chain_labels(oracle, points, eps_chain)
    sizes: dict = {}
    for lab in labels:
        sizes[lab] = sizes.get(lab, 0) + 1
    report = AuditReport("chain", oracle.descriptor, None,
                         {"eps_chain": eps_chain, "sample": sample_name, "points": len(points),
                          "expected_components": expected})
    report.stats = {"components": len(sizes), "method": method,
                    "largest_component": max(sizes.values())}
    if expected is not None:
        report.record(len(sizes) == expected, "component-count",
                      values={"components": len(sizes), "expected": expected})
    return report


def zcon_skeleton(space: ZSpace, grid: Sequence, eps_chain: Fraction) -> list:
    """Vortices, stars, spike tips and midpoints over a grid of base points,
    plus stations every ``eps_chain`` along each spike so that spikes are
    chained along their threads."""
    eps_chain = Fraction(eps_chain)
    pts = []
    for a in grid:
        pts.append(space.bar(a))
        pts.append(space.star(a))
        spikes = [("star", None)] + [("toward", b) for b in grid if space.base.key(b) != space.base.key(a)]
        for kind, b in spikes:
            spike = STAR if kind == "star" else Toward(b)
            length = space.spike_length(a, spike)
            if kind == "toward":
                pts.append(z_make(space, a, spike, length))
            pts.append(z_make(space, a, spike, length / 2))
            k = 1
            while k * eps_chain < length:
                pts.append(z_make(space, a, spike, k * eps_chain))
                k += 1
    return pts


# -- Cauchy probes -------------------------------------------------------------

@dataclass
class CauchyFamily:
    """A sequence generator with a declared limit candidate."""

    name: str
    term: Callable[[int], Any]
    candidate: Any
    distance: Callable[[Any, Any], Fraction]
    encode: Callable[[Any], Any]
    eps: Fraction | None = None
    nearest_vortex: Callable[[Any], tuple] | None = None


def cauchy_families() -> list[CauchyFamily]:
    hh = HedgehogSpace(4, Fraction(2))
    cw = CobwebSpace(tuple(range(6)), Fraction(2))
    zs = ZSpace(BaseSpace.unit_interval())
    a, b = Fraction(1, 3), Fraction(1, 2)
    tip = zs.tip(a, b)
    half = Fraction(1, 2)

    def vortex_of(p):
        w, c = nearest_vortex(p, cw.eps)
        return Vortex(w), c

    return [
        CauchyFamily("hedgehog-spike", lambda k: hh.point(1, Fraction(3, 2) - half**k),
                     hh.point(1, Fraction(3, 2)), hh.distance, hh.encode),
        CauchyFamily("cobweb-thread-tail", lambda k: cw_canonicalize((0, 1, 2 - half**k), 2),
                     Vortex(1), cw.distance, cw.encode, cw.eps, vortex_of),
        CauchyFamily("cobweb-vortex-spikes",
                     lambda k: cw_canonicalize((1, [0, 2, 3, 4, 5][k % 5], half**k), 2),
                     Vortex(1), cw.distance, cw.encode, cw.eps, vortex_of),
        CauchyFamily("zcon-spike", lambda k: z_make(zs, a, Toward(b), tip.t - half**k),
                     tip, zs.distance, zs.encode),
        CauchyFamily("constant", lambda k: cw_canonicalize((2, 3, half), 2),
                     cw_canonicalize((2, 3, half), 2), cw.distance, cw.encode),
    ]


def audit_cauchy(families: Iterable[CauchyFamily], depth: int = 20) -> AuditReport:
    """Distance to the candidate is at most ``2**-k`` at step ``k``.

    For cobweb families the localization step of the completeness argument
    is replayed too: from some index on the terms stay within ``eps/4`` of
    each other, a vortex lies within ``eps/2`` of that term, and the whole
    tail stays within ``3 eps/4`` of the vortex.
    """
    families = list(families)
    report = AuditReport("cauchy", {"families": [f.name for f in families]}, None, {"depth": depth})
    for fam in families:
        seq = [fam.term(k) for k in range(depth + 1)]
        for k, x in enumerate(seq):
            d = fam.distance(x, fam.candidate)
            report.record(d <= Fraction(1, 2**k), "step-bound", family=fam.name, step=k,
                          points=[fam.encode(x), fam.encode(fam.candidate)], values={"distance": d})
        if fam.nearest_vortex is None:
            continue
        eps = fam.eps
        start = next((k for k in range(len(seq))
                      if all(fam.distance(seq[n], seq[k]) <= eps / 4 for n in range(k, len(seq)))), None)
        report.record(start is not None, "tail-localized", family=fam.name)
        if start is None:
            continue
        vortex, cost = fam.nearest_vortex(seq[start])
        report.record(cost <= eps / 2, "vortex-nearby", family=fam.name, values={"distance": cost})
        worst = max(fam.distance(seq[n], vortex) for n in range(start, len(seq)))
        report.record(worst <= 3 * eps / 4, "tail-in-hedgehog", family=fam.name,
                      values={"max_distance": worst})
    return report


# -- Z-construction identities -----------------------------------------------

def _near_pair(space: ZSpace, rng: random.Random):
    a = space.base.sample(rng)
    for _ in range(16):
        if rng.random() < 0.5:
            b = space.base.sample(rng)
        else:
            b = _nearby(space.base, rng, a)
        if space.base.key(b) != space.base.key(a):
            return a, b
    raise ValueError("base space has a single point")


def audit_fiber_separation(space: ZSpace, n_pairs: int, per_pair: int, seed: int) -> AuditReport:
    """Least fiber distance equals the gauge, is attained, and is never beaten."""
    rng = random.Random(seed)
    report = AuditReport("fiber-separation", space.describe(), seed,
                         {"n_pairs": n_pairs, "per_pair": per_pair})
    for idx in range(n_pairs):
        a, b = _near_pair(space, rng)
        value, (x, u) = fiber_min_distance(space, a, b)
        enc = [space.base.encode(a), space.base.encode(b)]
        report.record(value == space.base.gauge(a, b) == space.base.gauge(b, a), "value-is-gauge",
                      index=idx, base=enc, values={"returned": value})
        report.record(f_project(x) == a and f_project(u) == b and z_distance(space, x, u) == value,
                      "witness-attains", index=idx, base=enc,
                      points=[space.encode(x), space.encode(u)], values={"witness": z_distance(space, x, u)})
        for _ in range(per_pair):
            p = space.sample_point(rng, a, [b])
            q = space.sample_point(rng, b, [a])
            d = z_distance(space, p, q)
            if d >= value:
                report.tick()
            else:
                report.record(False, "cross-fiber-below-min", index=idx,
                              points=[space.encode(p), space.encode(q)], values={"distance": d, "min": value})
    return report


def audit_star_discreteness(space: ZSpace, n_pairs: int, seed: int) -> AuditReport:
    rng = random.Random(seed)
    report = AuditReport("star-discreteness", space.describe(), seed, {"n_pairs": n_pairs})
    for idx in range(n_pairs):
        a, b = _near_pair(space, rng)
        d = z_distance(space, space.star(a), space.star(b))
        report.record(d == space.eps and min(d, 1) == 1, "star-distance", index=idx,
                      base=[space.base.encode(a), space.base.encode(b)], values={"distance": d})
    return report


def audit_open_margin(space: ZSpace, n_points: int, per_point: int, seed: int) -> AuditReport:
    """Every non-star point keeps a positive exact margin from other fibers."""
    rng = random.Random(seed)
    report = AuditReport("open-margin", space.describe(), seed,
                         {"n_points": n_points, "per_point": per_point})
    for idx in range(n_points):
        a, b = _near_pair(space, rng)
        p = space.sample_point(rng, a, [b])
        margin = open_margin(space, p)
        report.record((margin > 0) == (p != space.star(a)), "margin-positive-off-star",
                      index=idx, points=[space.encode(p)], values={"margin": margin})
        closest = None
        for _ in range(per_point):
            q = space.sample_point(rng, b, [a])
            d = z_distance(space, p, q)
            closest = d if closest is None else min(closest, d)
            if d < margin:
                report.record(False, "other-fiber-inside-margin", index=idx,
                              points=[space.encode(p), space.encode(q)], values={"distance": d, "margin": margin})
            else:
                report.tick()
        # The margin is attained exactly by the far vortex of the thread.
        far = space.star(p.spike.b if p.spike != STAR else a)
        report.record(z_distance(space, p, far) == margin, "margin-attained", index=idx,
                      points=[space.encode(p), space.encode(far)])
    return report


def audit_ball_image_zcon(space: ZSpace, n_trials: int, seed: int, samples: int = 20) -> AuditReport:
    """``f(B(a*, r)) = B(a, r)`` through exact witnesses and separation bounds.

    Every tenth trial puts the witness at distance exactly ``r`` to exercise
    the strict-ball convention.
    """
    rng = random.Random(seed)
    report = AuditReport("ball-image", space.describe(), seed, {"n_trials": n_trials, "samples": samples})
    boundary = 0
    for idx in range(n_trials):
        a = space.base.sample(rng)
        b = a if rng.random() < 0.1 else _near_pair(space, rng)[1]
        g = space.base.gauge(a, b)
        if idx % 10 == 9 and g > 0:
            r = g
            boundary += 1
        else:
            r = Fraction(rng.randint(1, 2**12), 2**12)
        inside = ball_image_contains(space, a, r, b)
        w = ball_image_witness(space, a, b)
        dw = z_distance(space, space.star(a), w)
        enc = [space.base.encode(a), space.base.encode(b)]
        report.record(f_project(w) == b and dw == g, "witness-exact", index=idx, base=enc,
                      points=[space.encode(w)], values={"distance": dw, "gauge": g})
        report.record(inside == (dw < r), "image-matches-witness", index=idx, base=enc,
                      values={"r": r, "witness_distance": dw, "contains": inside})
        if g > 0:
            for p in [space.sample_point(rng, b, [a]) for _ in range(samples)]:
                d = z_distance(space, space.star(a), p)
                if d < g:
                    report.record(False, "fiber-point-closer-than-witness", index=idx,
                                  points=[space.encode(p)], values={"distance": d, "gauge": g})
                else:
                    report.tick()
    report.stats = {"boundary_trials": boundary}
    return report


# -- locally extremal space ----------------------------------------------------

def _value(rng: random.Random, grid: int = 2**12) -> Fraction:
    return Fraction(rng.randint(1, grid - 1), grid)


def audit_ball_image_extremal(n_trials: int, seed: int, samples: int = 20, space=None) -> AuditReport:
    """Interval formula for ball images against exact nearest points of fibers."""
    space = space or ExtremalSpace()
    rng = random.Random(seed)
    report = AuditReport("ball-image-extremal", space.describe(), seed,
                         {"n_trials": n_trials, "samples": samples})
    for idx in range(n_trials):
        a = _value(rng)
        while not 0 < a < 1 or min(a, 1 - a) <= Fraction(1, 4096):
            a = _value(rng)
        which = rng.choice([UP, DOWN])
        r = min(a, 1 - a) * Fraction(rng.randint(1, 255), 256)
        c = a + Fraction(rng.randint(-2 * 256, 2 * 256), 256) * r
        if idx % 10 == 0:
            c = a
        elif idx % 10 == 1:
            c = a + r if which == UP else a - r
        if not 0 < c < 1:
            c = a
        vortex = (UP_TAG if which == UP else DOWN_TAG, a)
        centre = up(a) if which == UP else down(a)
        image = e_ball_image(a, which, r)
        gap, witness = fiber_gap(c, vortex)
        dw = e_distance(centre, witness)
        detail = {"a": a, "which": which, "r": r, "c": c}
        report.record(e_value(witness) == c and dw == gap, "witness-exact", index=idx,
                      values={**detail, "gap": gap, "distance": dw})
        report.record((c in image) == (gap < r), "image-matches-witness", index=idx,
                      values={**detail, "image": str(image), "gap": gap})
        for _ in range(samples):
            q = space.sample_point(rng, c)
            d = e_distance(centre, q)
            if d < gap:
                report.record(False, "fiber-point-closer-than-gap", index=idx,
                              points=[space.encode(q)], values={**detail, "distance": d, "gap": gap})
            else:
                report.tick()
    return report


def audit_extrema(n_interior: int, seed: int, n_extrema: int = 20, per_point: int = 50, space=None) -> AuditReport:
    """Classification at star-like vortices and interior points, checked by ball sampling."""
    space = space or ExtremalSpace()
    rng = random.Random(seed)
    report = AuditReport("extrema", space.describe(), seed,
                         {"n_interior": n_interior, "n_extrema": n_extrema, "per_point": per_point})
    cases = []
    for _ in range(n_extrema):
        a = _value(rng)
        cases.append((up(a), Extremum.LOCAL_MIN))
        cases.append((down(a), Extremum.LOCAL_MAX))
    while len(cases) < 2 * n_extrema + n_interior:
        p = space.sample(rng)
        if p in (up(p.a), down(p.a)):
            continue
        cases.append((p, Extremum.LOCALLY_CONSTANT))
    for idx, (p, expected) in enumerate(cases):
        bound = classification_radius(p)
        r = bound * Fraction(rng.randint(1, 64), 64)
        got = e_classify(p, r)
        report.record(got == expected, "classification", index=idx, points=[space.encode(p)],
                      values={"expected": expected.value, "got": got.value, "r": r})
        for q in sample_ball(p, r, rng, per_point):
            d = e_distance(p, q)
            if d >= r:
                report.record(False, "ball-sampler", index=idx, points=[space.encode(p), space.encode(q)],
                              values={"distance": d, "r": r})
                continue
            v, w = e_value(p), e_value(q)
            ok = {Extremum.LOCAL_MIN: w >= v, Extremum.LOCAL_MAX: w <= v,
                  Extremum.LOCALLY_CONSTANT: w == v}[got]
            report.record(ok, "local-behaviour", index=idx, points=[space.encode(p), space.encode(q)],
                          values={"kind": got.value, "f(p)": v, "f(q)": w, "distance": d})
    return report


# -- tower -------------------------------------------------------------------

def audit_tower_threads(tower: Tower, n_points: int, seed: int) -> AuditReport:
    """Projections are consistent with bonding maps, and lifting is a section."""
    rng = random.Random(seed)
    report = AuditReport("tower-threads", tower.describe(), seed, {"n_points": n_points})
    for idx in range(n_points):
        x = tower.sample_limit_point(rng)
        coords = [project(tower, x, n) for n in range(1, tower.height + 1)]
        for n in range(1, tower.height):
            report.record(coords[n - 1] == bond(tower, coords[n]), "thread-consistency",
                          index=idx, level=n, points=[tower.encode(x)])
        report.record(coords[x.rep.level - 1] == x.rep, "representative-kept", index=idx)
    return report


def audit_tower_enclosures(tower: Tower, n_pairs: int, seed: int) -> AuditReport:
    rng = random.Random(seed)
    report = AuditReport("tower-enclosures", tower.describe(), seed, {"n_pairs": n_pairs})
    for idx in range(n_pairs):
        x, u = tower.sample_family(rng, 2, pool=2)
        d = limit_distance(tower, x, u)
        prev_lo = None
        for k in range(1, tower.height + 1):
            lo, hi = prefix_enclosure(tower, x, u, k)
            detail = dict(index=idx, K=k, points=[tower.encode(x), tower.encode(u)],
                          values={"distance": d, "lo": lo, "hi": hi})
            report.record(lo <= d <= hi, "enclosure-sound", **detail)
            report.record(hi - lo <= Fraction(1, 2 ** (k + 1)), "enclosure-width", **detail)
            if prev_lo is not None:
                report.record(lo >= prev_lo, "lower-bound-monotone", **detail)
            prev_lo = lo
    return report


def audit_tower_sigma(tower: Tower, n_samples: int, max_points: int, seed: int) -> AuditReport:
    """``|d(A x A)| <= sum_n |d_n(pi_n A x pi_n A)|`` and the value inclusion behind it."""
    rng = random.Random(seed)
    report = AuditReport("tower-sigma-bound", tower.describe(), seed,
                         {"n_samples": n_samples, "max_points": max_points})
    summary = []
    for idx in range(n_samples):
        size = rng.randint(1, max_points)
        sample = tower.sample_family(rng, size, pool=rng.randint(1, 4))
        rep = economical_report(tower, sample)
        summary.append([rep["points"], rep["distinct_distances"], rep["sigma_bound"]])
        report.record(rep["sigma_bound_holds"], "sigma-bound", index=idx,
                      values={"distinct": rep["distinct_distances"], "sigma": rep["sigma_bound"]})
        report.record(rep["value_inclusion_holds"], "value-inclusion", index=idx)
    report.stats = {"samples": summary}
    return report
