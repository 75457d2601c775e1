import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from exotic_metrics.base import (
    BaseKind, BaseSpace, LiteralError, PointError, base_distance, cantor_distance, gauge, table_violations,
    truncate,
)

UNIT = BaseSpace.unit_interval()
TABLE = [[0, F(1, 2), F(5, 2)], [F(1, 2), 0, 2], [F(5, 2), 2, 0]]


def test_unit_interval_examples():
    assert base_distance(UNIT, F(1, 3), F(1, 3)) == 0
    assert base_distance(UNIT, F(0), F(3, 4)) == F(3, 4)


def test_finite_table_lookup_and_gauge_truncation():
    space = BaseSpace.finite(TABLE)
    assert base_distance(space, 0, 1) == F(1, 2)
    assert gauge(space, 0, 2) == 1
    assert gauge(space, 1, 1) == 0


@pytest.mark.parametrize("a,b,d", [({1}, {2}, 1), ({1, 2}, {1, 3}, F(1, 2)), ({4, 5}, {4, 5}, 0), (set(), {7}, F(1, 7))])
def test_cantor_distance_examples(a, b, d):
    assert cantor_distance(a, b) == d


def test_kind_mismatch_is_rejected():
    with pytest.raises(PointError):
        UNIT.distance(F(1, 2), frozenset({1}))
    with pytest.raises(PointError):
        BaseSpace.cantor().distance({1}, F(1, 2))
    with pytest.raises(PointError):
        BaseSpace.finite(TABLE).distance(0, 3)
    with pytest.raises(PointError):
        UNIT.validate(0.5)
    with pytest.raises(PointError):
        UNIT.validate(F(3, 2))


def test_truncate():
    assert truncate(UNIT) is UNIT
    t = truncate(BaseSpace.finite([[0, 3, 3], [3, 0, 3], [3, 3, 0]]))
    assert t.table[0][1] == 1
    assert all(t.table[i][i] == 0 for i in range(3))
    assert table_violations(t.table) == []


def test_invalid_tables():
    with pytest.raises(ValueError):
        BaseSpace.finite([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    with pytest.raises(ValueError):
        BaseSpace.finite([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        BaseSpace.finite([[0, 1], [1]])
    # check=False exists for negative controls
    broken = BaseSpace.finite([[0, 1, 5], [1, 0, 1], [5, 1, 0]], check=False)
    assert broken.distance(0, 2) == 5


def test_literals():
    assert UNIT.parse_literal("3/4") == F(3, 4)
    assert BaseSpace.cantor().parse_literal("{1,3}") == frozenset({1, 3})
    assert BaseSpace.cantor().parse_literal("{}") == frozenset()
    labelled = BaseSpace.finite(TABLE, ["x", "y", "z"])
    assert labelled.parse_literal("y") == 1
    with pytest.raises(LiteralError):
        UNIT.parse_literal("half")
    with pytest.raises(LiteralError):
        labelled.parse_literal("w")
    with pytest.raises(PointError):
        UNIT.parse_literal("5/4")


@pytest.mark.parametrize("space", [UNIT, BaseSpace.cantor(), BaseSpace.finite(TABLE)])
def test_encode_roundtrip(space):
    rng = random.Random(5)
    for _ in range(50):
        p = space.sample(rng)
        assert space.decode(space.encode(p)) == p


def test_samples_lie_in_carrier():
    rng = random.Random(1)
    for _ in range(200):
        assert 0 <= UNIT.sample(rng) <= 1
        assert all(1 <= x <= 12 for x in BaseSpace.cantor().sample(rng))


sets = st.frozensets(st.integers(1, 8), max_size=8)


@given(sets, sets, sets)
def test_cantor_strong_triangle(a, b, c):
    assert cantor_distance(a, c) <= max(cantor_distance(a, b), cantor_distance(b, c))


def test_cantor_strong_triangle_exhaustive_small_universe():
    subsets = [frozenset(i + 1 for i in range(4) if m >> i & 1) for m in range(16)]
    for a, b, c in itertools.product(subsets, repeat=3):
        assert cantor_distance(a, c) <= max(cantor_distance(a, b), cantor_distance(b, c))


rationals = st.fractions(min_value=0, max_value=1, max_denominator=1000)


@given(rationals, rationals, rationals)
def test_interval_metric_axioms(x, y, z):
    d = UNIT.distance
    assert d(x, z) <= d(x, y) + d(y, z)
    assert d(x, y) == d(y, x)
    assert (d(x, y) == 0) == (x == y)
    assert gauge(UNIT, x, y) == min(d(x, y), 1) <= 1


def test_describe():
    assert UNIT.describe()["kind"] == BaseKind.UNIT_INTERVAL.value
    assert BaseSpace.finite(TABLE).describe()["table"][0][2] == "5/2"
