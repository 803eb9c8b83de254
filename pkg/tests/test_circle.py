from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from structramsey.circle import (
    CirclePlacement,
    Family,
    grid_realize,
    pick_point,
    qn_generator,
    qn_structure,
    realize,
    realize_mapping,
    s2_star_structure,
    s2_structure,
    s3_star_structure,
    s3_structure,
    sorted_parts_spec,
    type_placement,
)
from structramsey.classes import generate_age, is_tournament, linear_order, tournaments_spec
from structramsey.registry import catalog
from structramsey.structures import StructureError, are_isomorphic, is_embedding

from conftest import digraph


def test_placement_validation():
    with pytest.raises(StructureError):
        CirclePlacement((F(0), F(1, 2)))
    with pytest.raises(StructureError):
        CirclePlacement((F(1, 5), F(0)))
    with pytest.raises(StructureError):
        CirclePlacement((F(1, 3),))
    assert CirclePlacement.of(["3/5", "0", "1/5"]).points == (0, F(1, 5), F(3, 5))


def test_s2_examples(cyclic, transitive):
    assert s2_structure(CirclePlacement.of([0, F(1, 5), F(2, 5)])) == transitive
    assert s2_structure(CirclePlacement.of([0, F(1, 5), F(3, 5)])) == cyclic
    assert s2_structure(CirclePlacement.of([0])).size == 1


def test_s2_star_examples():
    assert s2_star_structure(CirclePlacement.of([0])).rel("P0") == {(0,)}
    assert s2_star_structure(CirclePlacement.of([F(2, 5)])).rel("P1") == {(0,)}
    s = s2_star_structure(CirclePlacement.of([0, F(3, 5)]))
    assert s.rel("arc") == {(1, 0)} and s.rel("P0") == {(0,)} and s.rel("P1") == {(1,)}


def test_s3_examples(transitive):
    s = s3_structure(CirclePlacement.of([0, F(1, 5), F(2, 5)]))
    assert s.rel("arc") == {(0, 1), (1, 2)}
    assert s3_structure(CirclePlacement.of([0, F(1, 7), F(2, 7)])) == transitive


def test_s3_star_examples():
    parts = [s3_star_structure(CirclePlacement.of([x])) for x in (0, F(2, 5), F(5, 7))]
    assert [next(j for j in range(3) if s.rel(f"P{j}")) for s in parts] == [0, 1, 2]


def test_realize_examples(cyclic):
    p = realize(Family.S2, cyclic)
    assert p is not None and are_isomorphic(s2_structure(p), cyclic)
    assert is_embedding(realize_mapping(Family.S2, cyclic, p))
    no_arc = digraph(2, [])
    p = realize(Family.S3, no_arc)
    assert p is not None and s3_structure(p) == no_arc


def test_non_local_order_is_not_realized():
    tours = generate_age(tournaments_spec(), 4)
    s2 = catalog("s2", 4)
    outside = [t for t in tours.of_size(4) if t not in s2]
    assert outside
    for t in outside:
        assert realize(Family.S2, t) is None
        assert grid_realize(Family.S2, t, 35) is None


@pytest.mark.parametrize("family", list(Family))
def test_type_words_realize_their_labels(family):
    # the label of each point, read in residue order, is the word itself
    for word in [(0,), (1, 0), (0, 1, 1), tuple(range(family.labels))]:
        p = type_placement(family, word)
        got = []
        for x in p.points:
            u = (x + family.offset) % 1
            got.append((u % family.period, int(u / family.period)))
        assert tuple(j for _, j in sorted(got)) == word


@given(st.lists(st.fractions(0, 1, max_denominator=60), min_size=1, max_size=6, unique=True))
def test_circle_tournaments_are_local_orders(raw):
    pts = [x % 1 for x in raw if F(x).denominator % 2 and F(x).denominator % 3]
    pts = sorted(set(pts))
    if not pts:
        return
    s = s2_structure(CirclePlacement(tuple(pts)))
    assert is_tournament(s)
    assert s in catalog("s2", 6)
    assert s3_structure(CirclePlacement(tuple(pts))) in catalog("s3", 6)


@given(st.fractions(0, 1, max_denominator=1000), st.fractions(0, 1, max_denominator=1000))
def test_pick_point(a, b):
    lo, hi = sorted((a, b))
    if lo == hi:
        return
    x = pick_point(lo, hi)
    assert lo < x < hi or (x == 0 and lo < 1 <= hi)


def test_qn_generator_counts():
    assert len(qn_generator(2, 1)) == 2
    assert len(qn_generator(2, 2)) == 6
    assert len(qn_generator(3, 2)) == 12


def test_sorted_parts():
    cat = generate_age(sorted_parts_spec(2), 4)
    assert [len(cat.of_size(n)) for n in range(1, 5)] == [2, 3, 4, 5]
    assert qn_structure([0, 1], 2) in cat and qn_structure([1, 0], 2) not in cat
    assert linear_order(1).size == 1
