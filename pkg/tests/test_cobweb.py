import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from exotic_metrics.base import LiteralError
from exotic_metrics.cobweb import (
    CobwebSpace, Inner, Vortex, chain_labels_local, cw_canonicalize, cw_distance, cw_distance_oracle,
    cw_witness_path, leg_length, nearest_vortex, path_length,
)

TWO = F(2)
CW = CobwebSpace(tuple(range(6)), TWO)


def test_canonicalize_examples():
    assert cw_canonicalize((1, 3, 0), TWO) == Vortex(1)
    assert cw_canonicalize((3, 1, F(1, 2)), TWO) == Inner(1, 3, F(3, 2))
    assert cw_canonicalize((1, 3, TWO), TWO) == Vortex(3)
    p = cw_canonicalize((4, 2, F(1, 3)), TWO)
    assert cw_canonicalize(p, TWO) == p
    with pytest.raises(ValueError):
        cw_canonicalize((1, 1, F(1)), TWO)
    with pytest.raises(ValueError):
        cw_canonicalize((1, 2, F(3)), TWO)


NEAR_TIPS = (cw_canonicalize((0, 1, F(19, 10)), TWO), cw_canonicalize((0, 2, F(19, 10)), TWO))


@pytest.mark.parametrize("p,q,d", [
    (Vortex(0), Vortex(4), TWO),
    (Inner(0, 1, F(1, 2)), Inner(0, 1, F(3, 2)), F(1)),
    (*NEAR_TIPS, F(11, 5)),
    (Inner(0, 1, F(1)), Inner(2, 3, F(1)), F(4)),
    (Inner(2, 5, F(1, 3)), Inner(2, 5, F(1, 3)), F(0)),
])
def test_distance_examples_match_oracle(p, q, d):
    assert cw_distance(CW, p, q) == d
    assert cw_distance_oracle(CW, p, q) == d


def test_witness_paths():
    p = Inner(0, 1, F(1, 2))
    assert cw_witness_path(CW, p, p) == [p]
    q = Inner(0, 1, F(3, 2))
    assert cw_witness_path(CW, p, q) == [p, q]
    a, b = NEAR_TIPS
    assert cw_witness_path(CW, a, b) == [a, Vortex(1), Vortex(2), b]


def test_witness_tie_break_prefers_fewer_breakpoints_then_least_vortex():
    # Midpoints of disjoint threads: every endpoint pair costs 1 + 2 + 1.
    p, q = Inner(0, 1, F(1)), Inner(2, 3, F(1))
    assert cw_witness_path(CW, p, q) == [p, Vortex(0), Vortex(2), q]
    # Vortex to the midpoint of its own thread: the direct leg wins over detours.
    assert cw_witness_path(CW, Vortex(0), p) == [Vortex(0), p]


def test_oracle_needs_finite_universe():
    open_web = CobwebSpace(None, TWO)
    with pytest.raises(ValueError):
        cw_distance_oracle(open_web, Vortex(0), Vortex(1))
    assert cw_distance_oracle(open_web, Vortex(0), Vortex(1), universe=[0, 1, 2]) == TWO


def test_validation_and_literals():
    with pytest.raises(ValueError):
        CW.validate(Vortex(9))
    with pytest.raises(ValueError):
        CobwebSpace((0, 1), F(0))
    assert CW.parse_literal("v3") == Vortex(3)
    assert CW.parse_literal("1,0,1/2") == Inner(0, 1, F(3, 2))
    with pytest.raises(LiteralError):
        CW.parse_literal("1,2")
    p = Inner(1, 4, F(5, 7))
    assert CW.decode(CW.encode(p)) == p


@st.composite
def instance(draw):
    n = draw(st.integers(2, 8))
    eps = draw(st.sampled_from([F(1), F(3, 2), F(2)]))
    space = CobwebSpace(tuple(range(n)), eps)

    def point():
        u = draw(st.integers(0, n - 1))
        if draw(st.booleans()) and n > 1:
            v = draw(st.integers(0, n - 1).filter(lambda w: w != u))
            t = draw(st.fractions(min_value=0, max_value=eps, max_denominator=40))
            return cw_canonicalize((u, v, t), eps)
        return Vortex(u)

    return space, point(), point(), point()


@given(instance())
def test_closed_form_equals_oracle(inst):
    space, p, q, _ = inst
    assert cw_distance(space, p, q) == cw_distance_oracle(space, p, q)


@given(instance())
def test_metric_axioms(inst):
    space, p, q, r = inst
    d = space.distance
    assert d(p, r) <= d(p, q) + d(q, r)
    assert d(p, q) == d(q, p)
    assert (d(p, q) == 0) == (p == q)


@given(instance())
def test_witness_leg_sum_equals_distance(inst):
    space, p, q, _ = inst
    path = cw_witness_path(space, p, q)
    assert path[0] == p and path[-1] == q
    for a, b in zip(path, path[1:]):
        leg_length(a, b, space.eps)  # raises unless co-threaded
    assert path_length(path, space.eps) == cw_distance(space, p, q)


@given(instance())
def test_localization_near_a_vortex(inst):
    space, p, q, _ = inst
    w, cost = nearest_vortex(p, space.eps)
    assert cost <= space.eps / 2
    if cw_distance(space, p, q) <= space.eps / 4:
        assert cw_distance(space, q, Vortex(w)) <= 3 * space.eps / 4


def test_local_chain_labels_match_pairwise():
    rng = random.Random(3)
    eps = TWO
    pts = [CW.sample(rng) for _ in range(150)]
    for thresh in (F(1, 8), F(1, 2), F(9, 10)):
        labels = chain_labels_local(pts, eps, thresh)
        parent = list(range(len(pts)))

        def find(i):
            while parent[i] != i:
                i = parent[i]
            return i

        for i in range(len(pts)):
            for j in range(i):
                if cw_distance(CW, pts[i], pts[j]) <= thresh:
                    ri, rj = find(i), find(j)
                    parent[max(ri, rj)] = min(ri, rj)
        assert labels == [find(i) for i in range(len(pts))]


def test_local_chain_labels_rejects_large_threshold():
    with pytest.raises(ValueError):
        chain_labels_local([Vortex(0)], TWO, F(1))


def test_cauchy_tail_along_thread():
    target = Vortex(1)
    for k in range(21):
        x = cw_canonicalize((0, 1, 2 - F(1, 2**k)), TWO)
        assert cw_distance(CW, x, target) <= F(1, 2**k)
