import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from exotic_metrics.base import BaseSpace, LiteralError, PointError
from exotic_metrics.cobweb import Inner, Vortex
from exotic_metrics.zcon import (
    STAR, Toward, ZSpace, ball_image_contains, ball_image_witness, f_project, fiber_min_distance, open_margin,
    sample_fiber, z_distance, z_distance_truncated, z_embed, z_make,
)

Z = ZSpace(BaseSpace.unit_interval())
A, B = F(1, 3), F(1, 2)


def test_make_examples():
    assert z_make(Z, A, STAR, F(2)) == Z.star(A)
    assert z_make(Z, A, Toward(B), 0) == Z.bar(A)
    assert z_make(Z, A, STAR, 0) == Z.bar(A)
    tip = z_make(Z, A, Toward(B), 2 - F(1, 6))
    assert tip == Z.tip(A, B)
    with pytest.raises(PointError):
        z_make(Z, A, Toward(B), 2)
    with pytest.raises(PointError):
        z_make(Z, A, Toward(A), F(1, 2))
    with pytest.raises(ValueError):
        ZSpace(BaseSpace.unit_interval(), F(1))


def test_embed_examples():
    assert z_embed(Z, Z.star(A)) == Vortex((1, A))
    assert z_embed(Z, Z.bar(A)) == Vortex((0, A))
    assert z_embed(Z, z_make(Z, A, Toward(B), F(1, 2))) == Inner((0, A), (1, B), F(1, 2))


def test_distance_examples():
    a, b = F(0), F(1, 2)
    assert z_distance(Z, Z.star(a), Z.tip(b, a)) == F(1, 2)
    assert z_distance(Z, Z.bar(a), Z.bar(b)) == 2
    assert z_distance_truncated(Z, Z.bar(a), Z.bar(b)) == 1
    p = Z.tip(a, b)
    assert z_distance(Z, p, p) == 0


def test_projection():
    assert f_project(z_make(Z, A, STAR, F(1, 2))) == A
    assert f_project(Z.star(A)) == A
    assert f_project(Z.tip(A, B)) == A


def test_fiber_min_distance_example():
    a, b = F(0), F(1, 3)
    value, (x, u) = fiber_min_distance(Z, a, b)
    assert value == F(1, 3)
    assert (x, u) == (Z.tip(a, b), Z.star(b))
    assert z_distance(Z, x, u) == value
    assert fiber_min_distance(Z, b, a)[0] == value
    rng = random.Random(0)
    for _ in range(300):
        p, q = Z.sample_point(rng, a, [b]), Z.sample_point(rng, b, [a])
        assert z_distance(Z, p, q) >= F(1, 3)
    with pytest.raises(PointError):
        fiber_min_distance(Z, a, a)


def test_ball_image_examples():
    assert ball_image_contains(Z, F(1, 2), F(1, 4), F(3, 5))
    w = ball_image_witness(Z, F(1, 2), F(3, 5))
    assert f_project(w) == F(3, 5) and z_distance(Z, Z.star(F(1, 2)), w) == F(1, 10)
    assert ball_image_contains(Z, A, F(1, 1000), A)
    assert not ball_image_contains(Z, F(0), F(1, 4), F(1, 2))
    rng = random.Random(1)
    for _ in range(300):
        q = Z.sample_point(rng, F(1, 2), [F(0)])
        assert z_distance(Z, Z.star(F(0)), q) >= F(1, 4)
    # strict ball: a witness at distance exactly r is outside
    assert not ball_image_contains(Z, F(0), F(1, 2), F(1, 2))
    with pytest.raises(ValueError):
        ball_image_contains(Z, A, 0, B)


def test_sample_fiber_is_deterministic_and_valid():
    one = sample_fiber(Z, A, 50, seed=9, targets=[B, F(0)])
    two = sample_fiber(Z, A, 50, seed=9, targets=[B, F(0)])
    assert one == two
    assert all(f_project(p) == A and Z.validate(p) == p for p in one)


def test_star_discreteness_and_margin():
    assert z_distance(Z, Z.star(A), Z.star(B)) == 2
    assert open_margin(Z, Z.star(A)) == 0
    p = z_make(Z, A, Toward(B), F(3, 2))
    assert open_margin(Z, p) == F(1, 2) == z_distance(Z, p, Z.star(B))


def test_literals_and_encoding():
    p = Z.parse_literal("1/3:1/2:1")
    assert p == z_make(Z, A, Toward(B), 1)
    assert Z.parse_literal("1/3:star:2") == Z.star(A)
    with pytest.raises(LiteralError):
        Z.parse_literal("1/3:1")
    assert Z.decode(Z.encode(p)) == p


def test_over_finite_and_cantor_bases():
    fin = ZSpace(BaseSpace.finite([[0, 3, 3], [3, 0, 3], [3, 3, 0]]))
    assert fiber_min_distance(fin, 0, 1)[0] == 1  # table truncated to 1
    assert fin.spike_length(0, Toward(1)) == 1
    cz = ZSpace(BaseSpace.cantor(6))
    a, b = frozenset({1}), frozenset({1, 2})
    assert fiber_min_distance(cz, a, b)[0] == F(1, 2)


grid = st.fractions(min_value=0, max_value=1, max_denominator=32)


@given(grid, grid, st.integers(0, 2**31))
def test_lipschitz_projection(a, b, seed):
    rng = random.Random(seed)
    p, q = Z.sample_point(rng, a, [b]), Z.sample_point(rng, b, [a])
    assert Z.base.gauge(f_project(p), f_project(q)) <= z_distance(Z, p, q)


@given(grid, grid, grid, st.integers(0, 2**31))
def test_truncated_metric_axioms(a, b, c, seed):
    rng = random.Random(seed)
    x, y, w = (Z.sample_point(rng, s, [a, b, c]) for s in (a, b, c))
    d = lambda p, q: z_distance_truncated(Z, p, q)  # noqa: E731
    assert d(x, w) <= d(x, y) + d(y, w)
    assert d(x, y) == d(y, x)
