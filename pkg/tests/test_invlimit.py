import random
from fractions import Fraction as F

import pytest

from exotic_metrics.base import BaseSpace
from exotic_metrics.invlimit import (
    LevelPoint, LimitPoint, Tower, bond, economical_report, limit_distance, prefix_enclosure, project, star_lift,
)
from exotic_metrics.zcon import STAR, Toward, z_make

T = Tower(BaseSpace.unit_interval(), 3)


def lp(level, payload):
    return LimitPoint(LevelPoint(level, payload))


def test_bond_and_star_lift():
    a = T.point(1, F(1, 3))
    up = star_lift(T, a)
    assert up == LevelPoint(2, T.space(2).star(F(1, 3)))
    assert bond(T, up) == a
    twice = star_lift(T, up)
    assert twice.payload == T.space(3).star(up.payload)
    with pytest.raises(ValueError):
        bond(T, a)
    with pytest.raises(ValueError):
        star_lift(T, twice)
    b = star_lift(T, T.point(1, F(2, 3)))
    assert T.level_distance(2, up.payload, b.payload) == 1


def test_bond_is_constant_on_fibers():
    z2 = T.space(2)
    fiber = [z_make(z2, F(1, 4), STAR, F(1, 2)), z2.tip(F(1, 4), F(3, 4)), z2.bar(F(1, 4))]
    assert {bond(T, LevelPoint(2, p)) for p in fiber} == {T.point(1, F(1, 4))}


def test_project():
    z2 = T.space(2)
    rep = LevelPoint(2, z_make(z2, F(1, 4), Toward(F(1, 2)), F(1)))
    x = LimitPoint(rep)
    assert project(T, x, 2) == rep
    assert project(T, x, 1) == T.point(1, F(1, 4))
    assert project(T, x, 3) == star_lift(T, rep)
    with pytest.raises(ValueError):
        project(T, x, 4)


def test_limit_distance_examples():
    x0, x1, xs = lp(1, F(0)), lp(1, F(1)), lp(1, F(1, 100))
    assert limit_distance(T, x0, x0) == 0
    assert limit_distance(T, x0, x1) == F(1, 2)
    assert limit_distance(T, x0, xs) == F(1, 4)


def test_prefix_enclosure_examples():
    x0, x1, xs = lp(1, F(0)), lp(1, F(1)), lp(1, F(1, 100))
    assert prefix_enclosure(T, x0, x1, 1) == (F(1, 2), F(1, 2))
    lo, hi = prefix_enclosure(T, x0, xs, 1)
    assert (lo, hi) == (F(1, 200), F(1, 4)) and lo <= limit_distance(T, x0, xs) <= hi
    assert prefix_enclosure(T, x0, x0, 2) == (0, 0)
    with pytest.raises(ValueError):
        prefix_enclosure(T, x0, x1, 4)


def test_enclosure_sound_when_only_high_levels_differ():
    z2 = T.space(2)
    x = lp(2, z_make(z2, F(1, 3), STAR, F(1)))
    u = lp(2, z_make(z2, F(1, 3), STAR, F(3, 2)))
    d = limit_distance(T, x, u)
    lo, hi = prefix_enclosure(T, x, u, 1)
    assert lo == 0 < d <= hi


def test_thread_consistency_and_enclosures_on_samples():
    rng = random.Random(11)
    for _ in range(200):
        x, u = T.sample_family(rng, 2, pool=2)
        for n in range(1, T.height):
            assert project(T, x, n) == bond(T, project(T, x, n + 1))
        d = limit_distance(T, x, u)
        prev = None
        for k in range(1, T.height + 1):
            lo, hi = prefix_enclosure(T, x, u, k)
            assert lo <= d <= hi and hi - lo <= F(1, 2 ** (k + 1))
            assert prev is None or lo >= prev
            prev = lo


def test_limit_metric_axioms_on_samples():
    rng = random.Random(12)
    for _ in range(300):
        x, y, z = T.sample_family(rng, 3, pool=2)
        assert limit_distance(T, x, z) <= limit_distance(T, x, y) + limit_distance(T, y, z)
        assert limit_distance(T, x, y) == limit_distance(T, y, x)


def test_economical_report():
    x0, x1 = lp(1, F(0)), lp(1, F(1))
    assert economical_report(T, [x0])["distinct_distances"] == 1
    two = economical_report(T, [x0, x1])
    assert two["distinct_distances"] == 2 and two["sigma_bound_holds"] and two["value_inclusion_holds"]
    rng = random.Random(2)
    for _ in range(10):
        rep = economical_report(T, T.sample_family(rng, 20, pool=3))
        assert rep["sigma_bound_holds"] and rep["value_inclusion_holds"]
        assert len(rep["per_level_distinct_distances"]) == T.height + 1
    with pytest.raises(ValueError):
        economical_report(T, [])


def test_encode_roundtrip():
    rng = random.Random(4)
    for _ in range(50):
        x = T.sample_limit_point(rng)
        assert T.decode(T.encode(x)) == x


def test_tower_over_finite_base():
    tower = Tower(BaseSpace.finite([[0, 2, 2], [2, 0, 2], [2, 2, 0]]), 2)
    assert limit_distance(tower, lp(1, 0), lp(1, 1)) == F(1, 2)
