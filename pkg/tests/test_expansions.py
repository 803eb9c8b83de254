import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from structramsey.circle import CirclePlacement, qn_structure, s2_star_structure, s3_star_structure, type_placement, Family
from structramsey.classes import ARC, CatalogIntegrityError, Kind, OutOfRange, generate_age, explicit_spec, linear_order, parts_signature
from structramsey.expansions import (
    ExpandedSignature,
    ExpansionPair,
    TransformError,
    check_expansion_property,
    enumerate_expansion_assignments,
    ep_witness_for_expansion,
    expand,
    list_expansions,
    precompactness_profile,
    reduct,
    transform_q2_s2star,
    transform_q3_s3star,
    transform_s2star_q2,
    transform_s3star_q3,
    verify_ep_certificate,
    verify_refutations,
)
from structramsey.registry import catalog, standard_pair
from structramsey.structures import Signature, Structure, StructureError, automorphism_order, canonical_form, embeds

from conftest import digraph

P2, P3 = parts_signature(2), parts_signature(3)


def test_expanded_signature():
    sig = ExpandedSignature.between(ARC, P2)
    assert sig.extra.names == ("P0", "P1")
    with pytest.raises(StructureError):
        ExpandedSignature.between(Signature.of(("arc", 1)), P2)


def test_reduct_examples(cyclic):
    star = Structure.build(P2, 3, {"arc": cyclic.rel("arc"), "P0": [(0,)], "P1": [(1,), (2,)]})
    assert reduct(star, ARC) == cyclic
    assert reduct(expand(cyclic, P2, {}), ARC) == cyclic
    assert reduct(qn_structure([0, 1], 2), ARC) == linear_order(2)
    with pytest.raises(StructureError):
        reduct(cyclic, P2)


def test_counts_for_the_point(point):
    assert list_expansions(standard_pair("s2", 3), point).count == 2
    assert list_expansions(standard_pair("s3", 3), point).count == 3


def test_cyclic_triangle_count_in_s3(cyclic):
    # the cyclic triangle is not in the S(3) age: three arcs of less than a third cannot close up
    with pytest.raises(StructureError):
        list_expansions(standard_pair("s3", 3), cyclic)


def test_representatives_reduct_exactly():
    pair = standard_pair("s2", 5)
    for a in pair.base_cat.iter_members(5):
        reps = list_expansions(pair, a).representatives
        assert all(reduct(r, ARC) == a for r in reps)
        assert len({canonical_form(r) for r in reps}) == len(reps)


@pytest.mark.parametrize("name, parts", [("s2", 2), ("s3", 3)])
def test_t_formula(name, parts):
    pair = standard_pair(name, 4)
    for a in pair.base_cat.iter_members(4):
        assert list_expansions(pair, a).count * automorphism_order(a) == parts * a.size


@pytest.mark.parametrize("name", ["s2", "s3", "q2", "lo-q2"])
def test_fast_count_matches_assignment_oracle(name):
    pair = standard_pair(name, 4)
    for a in pair.base_cat.iter_members(4):
        fast = {canonical_form(s) for s in list_expansions(pair, a).representatives}
        slow = {canonical_form(s) for s in enumerate_expansion_assignments(pair, a)}
        assert fast == slow


def test_out_of_range(point):
    with pytest.raises(OutOfRange):
        list_expansions(standard_pair("s2", 3), linear_order(4))


def test_profiles():
    assert precompactness_profile(standard_pair("s2", 2), 1) == {1: 2}
    assert precompactness_profile(standard_pair("s3", 2), 1) == {1: 3}
    assert set(precompactness_profile(standard_pair("lo", 4), 4).values()) == {1}


def test_zero_expansions_is_an_integrity_error():
    base = generate_age(explicit_spec("lo2", [linear_order(1), linear_order(2)]), 2)
    star = generate_age(explicit_spec("q2-points", [qn_structure([0], 2), qn_structure([1], 2)]), 2)
    pair = ExpansionPair(base, star)
    with pytest.raises(CatalogIntegrityError):
        precompactness_profile(pair, 2)


def test_star_reducts_must_be_base_members():
    base = generate_age(explicit_spec("point", [linear_order(1)]), 2)
    with pytest.raises(CatalogIntegrityError):
        ExpansionPair(base, catalog("q2", 2))


def test_ep_for_the_point_in_s2(point):
    pair = standard_pair("s2", 5)
    cert = check_expansion_property(pair, point, 5)
    assert cert.kind is Kind.EP and cert.witness.size <= 5
    assert verify_ep_certificate(pair, cert, list_expansions(pair, point).representatives)
    # the witness must contain points of both parts in each of its expansions
    for b_star in list_expansions(pair, cert.witness).representatives:
        assert b_star.rel("P0") and b_star.rel("P1")


def test_ep_trivial_pair(point):
    cert = check_expansion_property(standard_pair("lo", 3), point, 3)
    assert cert.witness == point


def test_mixed_expansion_refuted():
    mixed = qn_structure([1, 0], 2)
    for name in ("lo-q2", "q2"):
        pair = standard_pair(name, 5)
        cert = ep_witness_for_expansion(pair, mixed, 5)
        assert cert.kind is Kind.NONE and verify_refutations(pair, cert, [mixed])
        for b, b_star in cert.refutations:
            # the refuting expansion puts every P0 point below every P1 point
            lab = [0 if (x,) in b_star.rel("P0") else 1 for x in range(b.size)]
            arcs = b_star.rel("arc")
            assert all((x, y) in arcs for x in range(b.size) for y in range(b.size) if lab[x] < lab[y])
    a = linear_order(2)
    assert check_expansion_property(standard_pair("lo-q2", 5), a, 5).kind is Kind.NONE


def test_subclass_k():
    pair = standard_pair("q2k", 4)
    cert = ep_witness_for_expansion(pair, qn_structure([0, 1], 2), 4)
    assert cert.kind is Kind.EP
    with pytest.raises(StructureError):
        ep_witness_for_expansion(pair, qn_structure([1, 0], 2), 4)


def test_ep_witness_point_p0():
    # brute force: smallest b (size, code order) all of whose expansions have a P0 point
    pair = standard_pair("s2", 4)
    star = s2_star_structure(CirclePlacement.of([0]))
    cert = ep_witness_for_expansion(pair, star, 4)
    expected = next(b for b in pair.base_cat.iter_members(4)
                    if all(r.rel("P0") for r in list_expansions(pair, b).representatives))
    assert cert.witness == expected


def test_s2_transform_example():
    s = Structure.build(P2, 3, {"arc": [(0, 1), (1, 2), (2, 0)], "P0": [(0,), (1,)], "P1": [(2,)]})
    q = transform_s2star_q2(s)
    assert q.rel("arc") == {(0, 1), (2, 1), (0, 2)}
    assert transform_q2_s2star(q) == s
    single = s2_star_structure(CirclePlacement.of([0]))
    assert transform_s2star_q2(single) == single


def test_s3_transform_examples():
    no_arc = Structure.build(P3, 2, {"P0": [(0,)], "P1": [(1,)]})
    assert transform_s3star_q3(no_arc).rel("arc") == {(0, 1)}
    same = Structure.build(P3, 2, {"arc": [(0, 1)], "P2": [(0,), (1,)]})
    assert transform_s3star_q3(same) == same
    s = s3_star_structure(type_placement(Family.S3STAR, (0, 1, 2)))
    q = transform_s3star_q3(s)
    assert transform_q3_s3star(q) == s


def test_transforms_reject_non_members():
    bad = Structure.build(P3, 2, {"arc": [(1, 0)], "P0": [(0,)], "P1": [(1,)]})
    with pytest.raises(TransformError):
        transform_s3star_q3(bad)
    with pytest.raises(TransformError):
        transform_q2_s2star(Structure.build(P2, 2, {"P0": [(0,), (1,)]}))


@pytest.mark.parametrize("star, q, fwd, back, bound", [
    ("s2star", "q2", transform_s2star_q2, transform_q2_s2star, 5),
    ("s3star", "q3", transform_s3star_q3, transform_q3_s3star, 4),
])
def test_transform_is_an_age_bijection(star, q, fwd, back, bound):
    for n in range(1, bound + 1):
        src = catalog(star, bound).of_size(n)
        image = {canonical_form(fwd(s)) for s in src}
        assert image == set(catalog(q, bound).level(n))
        assert all(back(fwd(s)) == s for s in src)


@pytest.mark.parametrize("star, fwd", [("s2star", transform_s2star_q2), ("s3star", transform_s3star_q3)])
def test_transform_preserves_embeddability(star, fwd):
    members = list(catalog(star, 4).iter_members(4))
    for a, b in itertools.product(members, repeat=2):
        if a.size <= b.size:
            assert embeds(a, b) == embeds(fwd(a), fwd(b))
