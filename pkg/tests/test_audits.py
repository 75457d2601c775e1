import json
import random
from fractions import Fraction as F

import pytest

from exotic_metrics import audits
from exotic_metrics.base import BaseSpace
from exotic_metrics.config import corrupt_table
from exotic_metrics.extremal import ExtremalSpace, e_value
from exotic_metrics.hedgehog import HedgehogSpace
from exotic_metrics.oracles import oracle_for
from exotic_metrics.zcon import ZSpace, f_project

UNIT = oracle_for(BaseSpace.unit_interval())
CANTOR = oracle_for(BaseSpace.cantor())
HEDGEHOG = oracle_for(HedgehogSpace(4, F(2)))
TABLE = [[0, F(1, 2), 1], [F(1, 2), 0, F(1, 2)], [1, F(1, 2), 0]]


def test_metric_audit_clean_spaces():
    for oracle in (UNIT, HEDGEHOG, CANTOR):
        rep = audits.audit_metric(oracle, 300, 1)
        assert rep.ok and rep.passed == rep.attempted == 300 * 9 and rep.violations == []


def test_metric_audit_names_the_offending_triple():
    broken = oracle_for(BaseSpace.finite(corrupt_table(TABLE), check=False))
    rep = audits.audit_metric(broken, 200, 0)
    assert not rep.ok
    assert len(rep.violations) == min(rep.violation_count, audits.MAX_RECORDED)
    v = rep.violations[0]
    assert v["check"] == "triangle" and len(v["points"]) == 3
    assert rep.passed + rep.violation_count == rep.attempted


def test_ultrametric_audits():
    assert audits.audit_ultrametric(CANTOR, 500, 2).ok
    assert not audits.audit_ultrametric(UNIT, 500, 2).ok
    single = audits.audit_ultrametric(CANTOR, points=[frozenset({1})])
    assert single.ok and single.attempted == 1
    neg = audits.audit_ultrametric(UNIT, points=[F(0), F(1, 2), F(1)])
    assert neg.violation_count > 0


def test_distinct_distance_counts():
    rep = audits.audit_distinct_distances(CANTOR, 64, 3, ultrametric=True)
    fam = rep.stats["families"][0]
    assert rep.ok and fam["distinct"] - 1 <= fam["points"] - 1
    two = oracle_for(BaseSpace.finite([[0, 1], [1, 0]]))
    values, m = audits.distinct_distances(two, [0, 1])
    assert len(values) == 2 and m == 2
    report_only = audits.audit_distinct_distances(UNIT, 16, 0)
    assert report_only.attempted == 0 and report_only.stats["families"][0]["distinct"] > 2
    with pytest.raises(ValueError):
        audits.audit_distinct_distances(UNIT, 1, 0)


def test_lipschitz_audits():
    z = ZSpace(BaseSpace.unit_interval())
    assert audits.audit_lipschitz(oracle_for(z), f_project, z.base.gauge, 500, 0).ok
    ext = ExtremalSpace()
    assert audits.audit_lipschitz(oracle_for(ext), e_value, lambda a, b: abs(a - b), 500, 0).ok
    assert audits.audit_lipschitz(HEDGEHOG, lambda p: p, HEDGEHOG.distance, 200, 0).ok
    # doubling is not 1-Lipschitz: the audit must notice
    assert not audits.audit_lipschitz(UNIT, lambda x: x, lambda a, b: 2 * abs(a - b), 200, 0).ok


def test_chain_audits():
    z = ZSpace(BaseSpace.unit_interval())
    oz = oracle_for(z)
    grid = [F(i, 8) for i in range(9)]
    pts = audits.zcon_skeleton(z, grid, F(1, 8))
    rep = audits.audit_chain(oz, pts, F(1, 8), expected=1)
    assert rep.ok and rep.stats["components"] == 1
    stars = audits.audit_chain(oz, [z.star(a) for a in grid], F(1, 2), expected=len(grid))
    assert stars.ok
    single = audits.audit_chain(UNIT, [F(1, 3)], F(1, 8))
    assert single.stats["components"] == 1
    with pytest.raises(ValueError):
        audits.audit_chain(UNIT, [], F(1, 8))


def test_chain_methods_agree():
    z = ZSpace(BaseSpace.unit_interval())
    oz = oracle_for(z)
    grid = [F(i, 4) for i in range(5)]
    pts = audits.zcon_skeleton(z, grid, F(1, 2))
    for eps_chain in (F(1, 8), F(1, 2), F(3, 2)):
        labels, method = audits.chain_labels(oz, pts, eps_chain)
        bare = audits.SpaceOracle(oz.descriptor, oz.sample, oz.distance, oz.encode, oz.key)
        ref, ref_method = audits.chain_labels(bare, pts, eps_chain)
        assert ref_method == "pairwise" and labels == ref
        assert method == ("local" if eps_chain < 1 else "kernel")


def test_cauchy_probes_and_blindness():
    rep = audits.audit_cauchy(audits.cauchy_families(), 20)
    assert rep.ok
    hh = HedgehogSpace(2, F(2))
    slow = audits.CauchyFamily("slow", lambda k: hh.point(1, F(1) - F(1, k + 2)), hh.point(1, F(1)),
                               hh.distance, hh.encode)
    assert not audits.audit_cauchy([slow], 5).ok


def test_zcon_identity_audits():
    z = ZSpace(BaseSpace.unit_interval())
    assert audits.audit_fiber_separation(z, 20, 20, 0).ok
    assert audits.audit_star_discreteness(z, 20, 0).ok
    assert audits.audit_open_margin(z, 20, 20, 0).ok
    ball = audits.audit_ball_image_zcon(z, 40, 0)
    assert ball.ok and ball.stats["boundary_trials"] > 0


def test_extremal_audits():
    assert audits.audit_ball_image_extremal(50, 0).ok
    assert audits.audit_extrema(30, 0, n_extrema=5, per_point=20).ok


def test_report_json_is_stable_and_exact():
    rep = audits.audit_metric(HEDGEHOG, 50, 7)
    doc = json.loads(rep.to_json())
    assert set(doc) >= {"audit", "space", "seed", "attempted", "passed", "violations", "violation_count"}
    assert doc["space"]["eps"] == "2/1"
    assert rep.to_json() == audits.audit_metric(HEDGEHOG, 50, 7).to_json()


def test_workers_do_not_change_reports():
    z = oracle_for(ZSpace(BaseSpace.unit_interval()))
    broken = oracle_for(BaseSpace.finite(corrupt_table(TABLE), check=False))
    for oracle in (z, broken):
        one = audits.audit_metric(oracle, 400, 5, workers=1).to_json()
        four = audits.audit_metric(oracle, 400, 5, workers=4).to_json()
        assert one == four


def test_sampling_is_seeded():
    a = [UNIT.sample(random.Random(3)) for _ in range(3)]
    b = [UNIT.sample(random.Random(3)) for _ in range(3)]
    assert a == b
