"""The acceptance battery: eleven criteria, each with a runtime budget."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import audits
from .base import BaseSpace
from .cobweb import CobwebSpace, Inner, Vortex, cw_canonicalize, cw_distance, cw_distance_oracle
from .config import corrupt_table, resolve
from .extremal import ExtremalSpace, e_value
from .hedgehog import HedgehogSpace
from .invlimit import Tower
from .oracles import oracle_for
from .runner import run_audit
from .scalar import fmt
from .zcon import ZSpace, f_project

DEMO_TABLE = [
    [0, Fraction(1, 2), 1, Fraction(3, 4)],
    [Fraction(1, 2), 0, Fraction(1, 2), Fraction(1, 2)],
    [1, Fraction(1, 2), 0, Fraction(3, 4)],
    [Fraction(3, 4), Fraction(1, 2), Fraction(3, 4), 0],
]


@dataclass
class Context:
    seed: int = 0
    workers: int = 1
    corrupt: bool = False
    triples: int = 10_000


@dataclass
class Outcome:
    ident: str
    title: str
    passed: bool
    seconds: float
    budget: float | None
    detail: str
    reports: list = field(default_factory=list)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        budget = f" (budget {self.budget:g}s)" if self.budget else ""
        return f"{self.ident} {verdict} {self.seconds:.2f}s{budget} {self.title}: {self.detail}"


@dataclass(frozen=True)
class Criterion:
    ident: str
    title: str
    budget: float | None
    run: Callable[[Context], tuple[bool, str, list]]


def _all_ok(reports) -> bool:
    return all(r.ok for r in reports)


# -- C1 ----------------------------------------------------------------------

def _random_cobweb_pair(rng: random.Random, space: CobwebSpace):
    """Two points biased toward shared threads, shared vortices and thread ends."""
    vs, eps = space.vortices, space.eps

    def param(near_end: bool):
        if near_end:
            return eps - Fraction(rng.randint(1, 16), 64) * eps / 4
        return eps * Fraction(rng.randint(1, 255), 256)

    def point(u=None):
        if rng.random() < 0.15:
            return Vortex(u if u is not None else rng.choice(vs))
        u = u if u is not None else rng.choice(vs)
        v = rng.choice([w for w in vs if w != u])
        return cw_canonicalize((u, v, param(rng.random() < 0.4)), eps)

    p = point()
    mode = rng.randrange(3)
    if mode == 0 and isinstance(p, Inner):
        q = cw_canonicalize((p.u, p.v, eps * Fraction(rng.randint(1, 255), 256)), eps)
    elif mode == 1:
        shared = p.v if isinstance(p, Vortex) else rng.choice([p.u, p.v])
        q = point(shared)
    else:
        q = point()
    return p, q


def crit_cobweb_oracle(ctx: Context):
    rng = random.Random(ctx.seed)
    mismatches, won_by_far_route = [], 0
    two = Fraction(2)
    fixed = CobwebSpace((0, 1, 2), two)
    near_tips = (cw_canonicalize((0, 1, Fraction(19, 10)), two), cw_canonicalize((0, 2, Fraction(19, 10)), two))
    cases = [(fixed, *near_tips)]
    while len(cases) < 500:
        n = rng.randint(2, 8)
        space = CobwebSpace(tuple(range(n)), rng.choice([Fraction(1), Fraction(3, 2), two]))
        cases.append((space, *_random_cobweb_pair(rng, space)))
    for space, p, q in cases:
        closed, graph = cw_distance(space, p, q), cw_distance_oracle(space, p, q)
        if closed != graph:
            mismatches.append((space.encode(p), space.encode(q), fmt(closed), fmt(graph)))
        shared = isinstance(p, Inner) and isinstance(q, Inner) and {p.u, p.v} & {q.u, q.v}
        if shared and (p.u, p.v) != (q.u, q.v):
            via = min(_to(p, w, space.eps) + _to(q, w, space.eps) for w in shared)
            won_by_far_route += closed < via
    example = cw_distance(fixed, *near_tips)
    ok = not mismatches and example == Fraction(11, 5) and won_by_far_route > 0
    detail = (f"{len(cases)} instances, {len(mismatches)} mismatches, 11/5 example -> {fmt(example)}, "
              f"{won_by_far_route} cases won by the route avoiding the shared vortex")
    return ok, detail, []


def _to(p: Inner, w, eps):
    return p.t if w == p.u else eps - p.t


# -- C2 ----------------------------------------------------------------------

def metric_spaces(ctx: Context) -> list:
    spaces = [
        BaseSpace.unit_interval(),
        BaseSpace.cantor(),
        HedgehogSpace(4, Fraction(2)),
        CobwebSpace(tuple(range(6)), Fraction(2)),
        ZSpace(BaseSpace.unit_interval()),
        ExtremalSpace(),
        Tower(BaseSpace.unit_interval(), 3),
    ]
    if ctx.corrupt:
        spaces.append(BaseSpace.finite(corrupt_table(DEMO_TABLE), check=False))
    return spaces


def crit_metric(ctx: Context):
    reports = [audits.audit_metric(oracle_for(s), ctx.triples, ctx.seed, ctx.workers) for s in metric_spaces(ctx)]
    kinds = ", ".join(f"{r.space['kind']}={r.violation_count}" for r in reports)
    return _all_ok(reports), f"{ctx.triples} triples per space; violations {kinds}", reports


# -- C3 ----------------------------------------------------------------------

def crit_cantor(ctx: Context):
    cantor = BaseSpace.cantor(12)
    oracle = oracle_for(cantor)
    subsets = [frozenset(i + 1 for i in range(6) if m >> i & 1) for m in range(64)]
    strong = audits.audit_ultrametric(oracle, points=subsets)
    count = audits.audit_distinct_distances(oracle, 64, ctx.seed, families=200, ultrametric=True)
    worst = max(f["distinct"] - f["points"] for f in count.stats["families"])
    detail = (f"{strong.attempted} exhaustive triples, {strong.violation_count} violations; "
              f"200 families, max(distinct - points) = {worst}, {count.violation_count} violations")
    return strong.ok and count.ok, detail, [strong, count]


# -- C4, C5 --------------------------------------------------------------------

def crit_zcon(ctx: Context):
    space = ZSpace(BaseSpace.unit_interval())
    lip = audits.audit_lipschitz(oracle_for(space), f_project, space.base.gauge, 10_000, ctx.seed,
                                 "f_project", ctx.workers)
    sep = audits.audit_fiber_separation(space, 100, 100, ctx.seed)
    ball = audits.audit_ball_image_zcon(space, 100, ctx.seed)
    reports = [lip, sep, ball]
    detail = (f"lipschitz {lip.violation_count}/{lip.attempted} violations ({lip.stats['tight_pairs']} tight); "
              f"fiber separation {sep.violation_count}; ball image {ball.violation_count}")
    return _all_ok(reports), detail, reports


def crit_stars(ctx: Context):
    rep = audits.audit_star_discreteness(ZSpace(BaseSpace.unit_interval()), 50, ctx.seed)
    return rep.ok, f"{rep.attempted} star pairs, {rep.violation_count} not at distance 2", [rep]


# -- C6 ----------------------------------------------------------------------

def crit_tower(ctx: Context):
    tower = Tower(BaseSpace.unit_interval(), 3)
    reports = [
        audits.audit_tower_threads(tower, 1000, ctx.seed),
        audits.audit_tower_enclosures(tower, 1000, ctx.seed),
        audits.audit_tower_sigma(tower, 100, 64, ctx.seed),
    ]
    detail = "; ".join(f"{r.audit} {r.violation_count}/{r.attempted}" for r in reports)
    return _all_ok(reports), detail, reports


# -- C7 ----------------------------------------------------------------------

def crit_chain(ctx: Context):
    space = ZSpace(BaseSpace.unit_interval())
    oracle = oracle_for(space)
    eps_chain = Fraction(1, 8)
    grid = [Fraction(i, 64) for i in range(65)]
    skeleton = audits.audit_chain(oracle, audits.zcon_skeleton(space, grid, eps_chain), eps_chain,
                                  expected=1, sample_name="skeleton-1/64")
    stars = audits.audit_chain(oracle, [space.star(a) for a in grid], eps_chain,
                               expected=len(grid), sample_name="stars-1/64")
    detail = (f"skeleton of {skeleton.params['points']} points -> {skeleton.stats['components']} component(s); "
              f"{len(grid)} stars -> {stars.stats['components']} components")
    return skeleton.ok and stars.ok, detail, [skeleton, stars]


# -- C8 ----------------------------------------------------------------------

def crit_extremal(ctx: Context):
    space = ExtremalSpace()
    ext = audits.audit_extrema(100, ctx.seed, space=space)
    ball = audits.audit_ball_image_extremal(100, ctx.seed, space=space)
    lip = audits.audit_lipschitz(oracle_for(space), e_value, lambda x, y: abs(x - y), 10_000, ctx.seed,
                                 "e_value", ctx.workers)
    reports = [ext, ball, lip]
    detail = (f"classification {ext.violation_count}/{ext.attempted}; ball image {ball.violation_count}; "
              f"lipschitz {lip.violation_count} ({lip.stats['tight_pairs']} tight)")
    return _all_ok(reports), detail, reports


# -- C9 ----------------------------------------------------------------------

def crit_cauchy(ctx: Context):
    families = audits.cauchy_families()
    rep = audits.audit_cauchy(families, 20)
    names = {f.name for f in families}
    required = {"hedgehog-spike", "cobweb-thread-tail", "zcon-spike"}
    ok = rep.ok and required <= names
    return ok, f"{len(families)} families to depth 20, {rep.violation_count} violations", [rep]


# -- C10 ---------------------------------------------------------------------

def crit_negative(ctx: Context):
    broken = BaseSpace.finite(corrupt_table(DEMO_TABLE), check=False)
    metric = audits.audit_metric(oracle_for(broken), 2000, ctx.seed)
    ultra = audits.audit_ultrametric(oracle_for(BaseSpace.unit_interval()), 2000, ctx.seed)
    ultra_points = audits.audit_ultrametric(
        oracle_for(BaseSpace.unit_interval()), points=[Fraction(0), Fraction(1, 2), Fraction(1)])
    injected = run_suite(Context(ctx.seed, ctx.workers, corrupt=True, triples=500), only=["C2"])
    suite_failed = any(not o.passed for o in injected)
    ok = metric.violation_count > 0 and ultra.violation_count > 0 and ultra_points.violation_count > 0 and suite_failed
    detail = (f"corrupted table: {metric.violation_count} violations; interval ultrametric: "
              f"{ultra.violation_count} + {ultra_points.violation_count} on 0,1/2,1; "
              f"suite under injected corruption {'fails' if suite_failed else 'passes'}")
    return ok, detail, [metric, ultra, ultra_points]


# -- C11 ---------------------------------------------------------------------

DETERMINISM_RUNS = [
    {"space": "interval", "audit": "metric"},
    {"space": "cantor", "audit": "metric"},
    {"space": "cantor", "audit": "ultrametric"},
    {"space": "cantor", "audit": "distinct-distances", "n": "64", "families": "20"},
    {"space": "finite", "audit": "metric",
     "table": "0,1/2,1,3/4; 1/2,0,1/2,1/2; 1,1/2,0,3/4; 3/4,1/2,3/4,0", "corrupt": "true"},
    {"space": "hedgehog", "audit": "metric"},
    {"space": "cobweb", "audit": "metric"},
    {"space": "cobweb", "audit": "chain", "eps_chain": "1/2"},
    {"space": "zcon", "audit": "metric"},
    {"space": "zcon", "audit": "lipschitz"},
    {"space": "zcon", "audit": "chain", "n": "8"},
    {"space": "zcon", "audit": "fiber-separation", "n": "20"},
    {"space": "zcon", "audit": "star-discreteness"},
    {"space": "zcon", "audit": "open-margin", "n": "20"},
    {"space": "zcon", "audit": "ball-image", "n": "50"},
    {"space": "extremal", "audit": "metric"},
    {"space": "extremal", "audit": "lipschitz"},
    {"space": "extremal", "audit": "ball-image", "n": "50"},
    {"space": "extremal", "audit": "extrema", "n": "50"},
    {"space": "tower", "audit": "metric"},
    {"space": "tower", "audit": "tower-threads", "n": "200"},
    {"space": "tower", "audit": "tower-enclosures", "n": "200"},
    {"space": "tower", "audit": "tower-sigma", "n": "10"},
    {"space": "hedgehog", "audit": "cauchy"},
]


def crit_determinism(ctx: Context):
    """Every audit kind, twice per worker count; plus a replay from the embedded config."""
    differing = []
    for run in DETERMINISM_RUNS:
        cfg = resolve({"n": "1000", **run, "seed": str(ctx.seed)})
        outputs = [run_audit(cfg, workers).to_json() for workers in (1, 4, 1, 4)]
        replay = run_audit(resolve(run_audit(cfg).config), 1).to_json()
        if len(set(outputs + [replay])) != 1:
            differing.append(f"{run['space']}/{run['audit']}")
    detail = f"{len(DETERMINISM_RUNS)} audit configurations x 4 runs + replay; differing: {differing or 'none'}"
    return not differing, detail, []


CRITERIA = [
    Criterion("C1", "cobweb closed form vs graph oracle", 5, crit_cobweb_oracle),
    Criterion("C2", "metric axioms on seven spaces", 60, crit_metric),
    Criterion("C3", "Cantor ultrametric certificate", None, crit_cantor),
    Criterion("C4", "zcon projection identities", 30, crit_zcon),
    Criterion("C5", "star discreteness", None, crit_stars),
    Criterion("C6", "inverse-limit tower", 60, crit_tower),
    Criterion("C7", "connectedness proxy", None, crit_chain),
    Criterion("C8", "locally extremal space", 30, crit_extremal),
    Criterion("C9", "completeness probes", None, crit_cauchy),
    Criterion("C10", "negative controls", None, crit_negative),
    Criterion("C11", "determinism", None, crit_determinism),
]


def criterion_ids() -> list[str]:
    return [c.ident for c in CRITERIA]


def run_criterion(crit: Criterion, ctx: Context) -> Outcome:
    start = time.perf_counter()
    ok, detail, reports = crit.run(ctx)
    seconds = time.perf_counter() - start
    within = crit.budget is None or seconds < crit.budget
    if not within:
        detail += f"; over budget by {seconds - crit.budget:.2f}s"
    return Outcome(crit.ident, crit.title, ok and within, seconds, crit.budget, detail, reports)


def run_suite(ctx: Context, only: list[str] | None = None, on_result: Callable | None = None) -> list[Outcome]:
    wanted = set(only) if only else None
    unknown = (wanted or set()) - set(criterion_ids())
    if unknown:
        raise ValueError(f"unknown criteria: {', '.join(sorted(unknown))}")
    out = []
    for crit in CRITERIA:
        if wanted is not None and crit.ident not in wanted:
            continue
        outcome = run_criterion(crit, ctx)
        out.append(outcome)
        if on_result is not None:
            on_result(outcome)
    return out
