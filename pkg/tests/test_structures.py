import itertools

import pytest
from hypothesis import given, strategies as st

from structramsey.classes import ARC, linear_order
from structramsey.structures import (
    CanonicalCode,
    Mapping,
    Signature,
    Structure,
    StructureError,
    are_isomorphic,
    automorphism_order,
    brute_force_code,
    brute_force_isomorphic,
    canonical_form,
    canonical_representative,
    empty_structure,
    enumerate_copies,
    enumerate_embeddings,
    find_isomorphism,
    induced_substructure,
    is_embedding,
    is_rigid,
)

from conftest import PARTS2, digraph, relabeled, structures, tournaments


def test_signature_rejects_bad_symbols():
    with pytest.raises(StructureError):
        Signature.of(("arc", 2), ("arc", 1))
    with pytest.raises(StructureError):
        Signature.of(("arc", 0))
    assert str(Signature.of(("arc", 2), ("P0", 1))) == "arc/2, P0/1"


def test_structure_validates_tuples():
    with pytest.raises(StructureError):
        Structure.build(ARC, 2, {"arc": [(0, 2)]})
    with pytest.raises(StructureError):
        Structure.build(ARC, 2, {"arc": [(0,)]})
    with pytest.raises(StructureError):
        Structure.build(ARC, 2, {"edge": [(0, 1)]})


def test_induced_substructure(transitive, cyclic):
    sub = induced_substructure(transitive, [0, 2])
    assert sub == digraph(2, [(0, 1)])
    assert induced_substructure(cyclic, range(3)) == cyclic
    assert induced_substructure(cyclic, [0, 1]) == digraph(2, [(0, 1)])


def test_is_embedding_examples(cyclic):
    arc = digraph(2, [(0, 1)])
    assert is_embedding(Mapping(cyclic, cyclic, (0, 1, 2)))
    assert is_embedding(Mapping(arc, cyclic, (0, 1)))
    assert not is_embedding(Mapping(arc, cyclic, (1, 0)))


def test_non_injective_map_is_not_an_embedding():
    empty = digraph(2, [])
    assert not is_embedding(Mapping(empty, digraph(1, []), (0, 0)))


def test_embedding_counts(cyclic):
    empty_sig = Signature(())
    assert len(enumerate_embeddings(empty_structure(empty_sig, 1), empty_structure(empty_sig, 4))) == 4
    assert len(enumerate_embeddings(linear_order(2), linear_order(4))) == 6
    assert len(enumerate_embeddings(cyclic, cyclic)) == 3


def test_copies(cyclic, transitive):
    assert len(enumerate_copies(linear_order(2), linear_order(4))) == 6
    assert enumerate_copies(cyclic, transitive) == []
    assert enumerate_copies(cyclic, cyclic) == [(0, 1, 2)]


def test_automorphisms(cyclic):
    assert automorphism_order(linear_order(3)) == 1 and is_rigid(linear_order(3))
    assert automorphism_order(cyclic) == 3 and not is_rigid(cyclic)
    assert automorphism_order(empty_structure(Signature(()), 2)) == 2


def test_canonical_examples(cyclic, transitive):
    assert canonical_form(cyclic) == canonical_form(cyclic.relabel((1, 2, 0)))
    assert canonical_form(cyclic) != canonical_form(transitive)
    assert isinstance(canonical_form(cyclic), CanonicalCode)


def test_score_sequence_1122_tournaments():
    # the 4-tournaments with scores (1,1,2,2): the rest of an out-degree 3 or in-degree 3 vertex
    tours = []
    for bits in itertools.product((0, 1), repeat=6):
        arcs = [(x, y) if b else (y, x) for (x, y), b in zip(itertools.combinations(range(4), 2), bits)]
        t = digraph(4, arcs)
        if sorted(sum(1 for u, _ in arcs if u == v) for v in range(4)) == [1, 1, 2, 2]:
            tours.append(t)
    for a, b in itertools.combinations(tours, 2):
        assert are_isomorphic(a, b) == brute_force_isomorphic(a, b)


@given(relabeled(structures(max_size=6)))
def test_canonical_form_is_relabeling_invariant(pair):
    a, b = pair
    assert canonical_form(a) == canonical_form(b)
    assert find_isomorphism(a, b) is not None


@given(structures(max_size=4), structures(max_size=4))
def test_canonical_form_matches_brute_force(a, b):
    same = a.size == b.size and brute_force_code(a) == brute_force_code(b)
    assert (canonical_form(a) == canonical_form(b)) == same
    assert are_isomorphic(a, b) == brute_force_isomorphic(a, b)


@given(structures(signature=PARTS2, max_size=5))
def test_canonical_representative_is_isomorphic(s):
    rep = canonical_representative(s)
    assert brute_force_isomorphic(rep, s)
    assert canonical_representative(rep) == rep


@given(tournaments(max_size=5))
def test_isomorphism_is_an_embedding(t):
    perm = list(reversed(range(t.size)))
    iso = find_isomorphism(t, t.relabel(perm))
    assert is_embedding(iso)


@given(structures(max_size=5), st.data())
def test_induced_inclusion_is_an_embedding(s, data):
    subset = sorted(data.draw(st.sets(st.integers(0, max(s.size - 1, 0)), max_size=s.size)) if s.size else set())
    sub = induced_substructure(s, subset)
    assert is_embedding(Mapping(sub, s, tuple(subset)))


def test_mapping_compose(transitive):
    two = linear_order(2)
    f = Mapping(two, transitive, (0, 2))
    g = Mapping(transitive, linear_order(4), (0, 1, 3))
    assert g.compose(f).images == (0, 3)
