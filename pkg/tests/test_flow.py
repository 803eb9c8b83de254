import itertools
import random
from fractions import Fraction as F

import pytest

from structramsey.circle import CirclePlacement, in_s
from structramsey.classes import age_membership
from structramsey.flow import (
    FlowError,
    FlowPoint,
    Interval,
    Variant,
    act_rotation,
    expanded_trace_structure,
    flow_grid,
    interval_from_basic_open,
    interval_membership,
    is_doubled,
    part_is_ordered,
    partition_from_flowpoint,
    partition_from_flowpoint_s3,
    shift_trace,
    trace,
    undoubled_points,
)
from structramsey.registry import catalog

HAT, TILDE = Variant.HAT, Variant.TILDE


def test_labels_follow_doubling():
    assert is_doubled(F(1, 10), HAT)
    assert not is_doubled(F(1, 4), HAT)
    assert is_doubled(F(1, 15), TILDE)
    with pytest.raises(FlowError):
        FlowPoint(F(1, 5))
    with pytest.raises(FlowError):
        FlowPoint(F(1, 4), 0)
    assert str(FlowPoint.parse("3/5:1")) == "3/5:1"


def test_interval_membership_examples():
    iv = Interval(F(0), F(1, 5))
    assert interval_membership(iv, FlowPoint(0, 0))
    assert not interval_membership(iv, FlowPoint(0, 1))
    assert interval_membership(iv, FlowPoint(F(1, 10), 0))
    assert interval_membership(iv, FlowPoint(F(1, 5), 1))
    with pytest.raises(FlowError):
        interval_membership(iv, FlowPoint(F(1, 4), None, TILDE))


def test_interval_validation():
    with pytest.raises(FlowError):
        Interval(F(0), F(3, 5))
    with pytest.raises(FlowError):
        Interval(F(0), F(1, 4))


def test_coding_boundaries():
    # label 0 keeps the coded angle in part 0, label 1 sends it to part 1
    F3 = [0, F(1, 5), F(3, 5)]
    a = partition_from_flowpoint(FlowPoint(0, 0), F3)
    b = partition_from_flowpoint(FlowPoint(0, 1), F3)
    assert a.parts[0] == 0 and b.parts[0] == 1
    assert a.parts[1:] == b.parts[1:]
    # antipodal boundary 3/5 = 1/10 + 1/2 is resolved the other way round
    c0 = partition_from_flowpoint(FlowPoint(F(1, 10), 0), [0, F(3, 5)])
    c1 = partition_from_flowpoint(FlowPoint(F(1, 10), 1), [0, F(3, 5)])
    assert c0.parts == (0, 1) and c1.parts == (0, 0)


def test_parts_are_half_planes():
    # part 0 is the open half circle ending at the coded angle
    t = FlowPoint(F(1, 4))
    tr = partition_from_flowpoint(t, [0, F(1, 5), F(2, 5), F(4, 5)])
    assert tr.members(0) == (0, F(1, 5), F(4, 5)) and tr.members(1) == (F(2, 5),)


def test_interval_examples():
    assert interval_from_basic_open([0, F(1, 5)], FlowPoint(F(1, 10), 0)) == Interval(F(0), F(1, 5))
    assert interval_from_basic_open([0, F(1, 5)], FlowPoint(F(3, 5), 0)) == Interval(F(1, 2), F(7, 10))
    assert interval_from_basic_open([0], FlowPoint(F(1, 4))) == Interval(F(0), F(1, 2))
    with pytest.raises(FlowError):
        interval_from_basic_open([], FlowPoint(F(1, 4)))


def test_boundary_intervals():
    assert interval_from_basic_open([0, F(1, 5)], FlowPoint(0, 0)) == Interval(F(0), F(1, 5))
    assert interval_from_basic_open([0, F(1, 5)], FlowPoint(0, 1)) == Interval(F(7, 10), F(0))


def test_tilde_examples():
    tr = partition_from_flowpoint_s3(FlowPoint(0, 0, TILDE), [0, F(2, 5), F(5, 7)])
    assert tr.parts == (0, 1, 2)
    assert partition_from_flowpoint_s3(FlowPoint(0, 1, TILDE), [0]).parts == (2,)
    assert partition_from_flowpoint_s3(FlowPoint(F(1, 15), 0, TILDE), [F(2, 5)]).parts == (1,)
    assert partition_from_flowpoint_s3(FlowPoint(F(1, 15), 1, TILDE), [F(2, 5)]).parts == (0,)


def test_rotation():
    t = FlowPoint(0, 0)
    assert act_rotation(0, t) == t
    assert act_rotation(F(1, 5), t) == FlowPoint(F(1, 5), 0)
    with pytest.raises(FlowError):
        act_rotation(F(1, 2), t)
    q, F2 = F(1, 7), CirclePlacement.of([0, F(2, 5)])
    moved, _ = F2.rotate(q)
    assert partition_from_flowpoint(act_rotation(q, t), moved) == shift_trace(partition_from_flowpoint(t, F2), q)


@pytest.mark.parametrize("variant", [HAT, TILDE])
def test_rotation_equivariance_random(variant):
    rng = random.Random(0)
    grid = [x for x in (F(k, 35) for k in range(35)) if in_s(x)]
    points = flow_grid(variant, 12) + undoubled_points(variant, 20)
    shifts = [F(k, d) for d in (1, 5, 7, 11, 13) for k in range(d) if in_s(F(k, d))]
    for _ in range(100):
        t = rng.choice(points)
        q = rng.choice(shifts)
        Fp = CirclePlacement.of(rng.sample(grid, rng.randint(1, 4)))
        moved, _ = Fp.rotate(q)
        assert trace(act_rotation(q, t), moved) == shift_trace(trace(t, Fp), q)


@pytest.mark.parametrize("variant, star", [(HAT, "s2star"), (TILDE, "s3star")])
def test_age_consistency_small(variant, star):
    cat = catalog(star, 4)
    grid = [x for x in (F(k, 11) for k in range(11))]
    points = flow_grid(variant, 6) + undoubled_points(variant, 5)
    for n in range(1, 5):
        for Fp in itertools.combinations(grid, n):
            for t in points:
                assert age_membership(cat, expanded_trace_structure(t, Fp))
                assert part_is_ordered(trace(t, Fp), variant)


def test_basis_correspondence_small():
    grid = [F(k, 7) for k in range(7)]
    points = flow_grid(HAT, 10)
    for n in range(1, 3):
        for Fp in itertools.combinations(grid, n):
            for t in points:
                iv = interval_from_basic_open(Fp, t)
                for u in points:
                    assert interval_membership(iv, u) == (trace(t, Fp) == trace(u, Fp))


@pytest.mark.parametrize("variant", [HAT, TILDE])
def test_doubling_separates_points(variant):
    # distinct flow points give distinct traces on some 1- or 2-point set
    pts = flow_grid(variant, 8)
    grid = [F(k, d) for d in (35, 77) for k in range(d) if in_s(F(k, d))]
    sets = [(x,) for x in grid] + [(x, y) for x, y in itertools.combinations(grid[:40], 2)]
    for t, u in itertools.combinations(pts, 2):
        assert any(trace(t, s) != trace(u, s) for s in sets), (t, u)
