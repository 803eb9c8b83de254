"""Expansions, reducts, expansion counts and the expansion property.

An :class:`ExpansionPair` couples a base catalog with a catalog over a
larger signature.  The number ``t(A)`` of non-isomorphic expansions of a
base structure ``A`` is read off the expanded catalog: its members whose
reduct is isomorphic to ``A`` are exactly the expansions of ``A`` up to
isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .classes import AgeCatalog, CatalogIntegrityError, Kind, OutOfRange, WitnessCertificate, age_membership
from .structures import (
    CanonicalCode,
    Mapping,
    Signature,
    Structure,
    StructureError,
    canonical_form,
    find_isomorphism,
    induced_substructure,
    iter_embeddings,
)


class TransformError(RuntimeError):
    """A transform produced something outside its target age."""


@dataclass(frozen=True)
class ExpandedSignature:
    base: Signature
    extra: Signature

    @classmethod
    def between(cls, base: Signature, star: Signature) -> "ExpandedSignature":
        """Split ``star`` into ``base`` plus the extra symbols, checking containment."""
        star_symbols = dict(star.symbols)
        for name, arity in base.symbols:
            if star_symbols.get(name) != arity:
                raise StructureError(f"[{star}] does not extend [{base}] at symbol {name}/{arity}")
        extra = tuple((n, a) for n, a in star.symbols if n not in base.names)
        return cls(base, Signature(extra))

    @property
    def combined(self) -> Signature:
        return Signature(self.base.symbols + self.extra.symbols)


def reduct(a_star: Structure, base: Signature) -> Structure:
    """Forget every relation not named in ``base``."""
    ExpandedSignature.between(base, a_star.signature)
    rels = tuple(a_star.rel(name) for name in base.names)
    return Structure(base, a_star.size, rels)


def expand(a: Structure, star: Signature, extra: dict) -> Structure:
    """``a`` together with interpretations of the extra symbols."""
    ExpandedSignature.between(a.signature, star)
    rels = {name: a.rel(name) for name in a.signature.names}
    rels.update(extra)
    return Structure.build(star, a.size, rels)


@dataclass
class ExpansionCount:
    structure: Structure
    count: int
    representatives: list[Structure]


class ExpansionPair:
    """A base catalog and an expanded catalog whose reducts lie in it."""

    def __init__(self, base_cat: AgeCatalog, star_cat: AgeCatalog, name: str = "", check: bool = True):
        self.base_cat = base_cat
        self.star_cat = star_cat
        self.name = name or f"{base_cat.spec.name}/{star_cat.spec.name}"
        self.signature = ExpandedSignature.between(base_cat.signature, star_cat.signature)
        self._index: dict[int, dict[CanonicalCode, list[Structure]]] = {}
        if check:
            for n in range(1, min(base_cat.bound, star_cat.bound) + 1):
                self._by_base(n)

    @property
    def bound(self) -> int:
        return min(self.base_cat.bound, self.star_cat.bound)

    def _by_base(self, n: int) -> dict[CanonicalCode, list[Structure]]:
        if n not in self._index:
            groups: dict[CanonicalCode, list[Structure]] = {}
            base_level = self.base_cat.level(n)
            for s in self.star_cat.of_size(n):
                code = canonical_form(reduct(s, self.base_cat.signature))
                if code not in base_level:
                    raise CatalogIntegrityError(f"{self.name}: reduct of {s!r} is not a base member")
                groups.setdefault(code, []).append(s)
            self._index[n] = groups
        return self._index[n]

    def __repr__(self) -> str:
        return f"ExpansionPair({self.name!r}, bound={self.bound})"


def list_expansions(pair: ExpansionPair, a: Structure) -> ExpansionCount:
    """All expansions of ``a`` up to isomorphism, each reducting exactly to ``a``."""
    if a.size > pair.star_cat.bound:
        raise OutOfRange(f"size {a.size} exceeds the expanded catalog bound {pair.star_cat.bound}")
    if not age_membership(pair.base_cat, a):
        raise StructureError(f"{a!r} is not a member of {pair.base_cat.spec.name}")
    base = pair.base_cat.signature
    reps = []
    for s in pair._by_base(a.size).get(canonical_form(a), []):
        iso = find_isomorphism(reduct(s, base), a)
        reps.append(s.relabel(iso.images))
    return ExpansionCount(a, len(reps), reps)


def enumerate_expansion_assignments(pair: ExpansionPair, a: Structure) -> list[Structure]:
    """Expansions of ``a`` by brute force over extra-relation assignments.

    Element ``k`` is added at step ``k`` together with every new extra tuple
    mentioning it; the expanded prefix must be a member of the expanded
    catalog, which prunes hopeless assignments early.  Results are deduped
    by canonical form.  Independent of :func:`list_expansions`.
    """
    star = pair.star_cat.signature
    extra = pair.signature.extra.symbols
    partial: list[dict[str, frozenset]] = [{name: frozenset() for name, _ in extra}]
    for k in range(a.size):
        prefix = induced_substructure(a, range(k + 1))
        new = [(name, t) for name, arity in extra
               for t in itertools.product(range(k + 1), repeat=arity) if k in t]
        grown = []
        for assignment in partial:
            for mask in range(1 << len(new)):
                rels = {name: set(assignment[name]) for name, _ in extra}
                for bit, (name, t) in enumerate(new):
                    if mask >> bit & 1:
                        rels[name].add(t)
                candidate = expand(prefix, star, rels)
                if age_membership(pair.star_cat, candidate):
                    grown.append({name: frozenset(r) for name, r in rels.items()})
        partial = grown
    seen = {}
    for assignment in partial:
        s = expand(a, star, assignment)
        seen.setdefault(canonical_form(s), s)
    return [seen[c] for c in sorted(seen)]


def precompactness_profile(pair: ExpansionPair, bound: int) -> dict[int, int]:
    """Largest expansion count at each size; zero counts are integrity errors."""
    if bound > pair.bound:
        raise OutOfRange(f"bound {bound} exceeds the pair bound {pair.bound}")
    profile = {}
    for n in range(1, bound + 1):
        best = 0
        for a in pair.base_cat.of_size(n):
            t = list_expansions(pair, a).count
            if t == 0:
                raise CatalogIntegrityError(f"{a!r} has no expansion in {pair.star_cat.spec.name}")
            best = max(best, t)
        profile[n] = best
    return profile


def _first_missing(a_stars: list[Structure], b_stars: list[Structure]):
    """First ``b*`` missing some ``a*``, or the list of embeddings ``a* -> b*``."""
    found = []
    for b_star in b_stars:
        for a_star in a_stars:
            images = next(iter_embeddings(a_star, b_star), None)
            if images is None:
                return b_star, None
            found.append(Mapping(a_star, b_star, images))
    return None, found


def check_expansion_property(pair: ExpansionPair, a: Structure, bound: int) -> WitnessCertificate:
    """Smallest base ``b`` such that every expansion of ``a`` embeds in every expansion of ``b``."""
    a_stars = list_expansions(pair, a).representatives
    cert = WitnessCertificate(Kind.NONE, bound)
    for b in pair.base_cat.iter_members(bound, min_size=a.size):
        missing, embeddings = _first_missing(a_stars, list_expansions(pair, b).representatives)
        if missing is None:
            return WitnessCertificate(Kind.EP, bound, b, embeddings, cert.refutations)
        cert.refutations.append((b, missing))
    return cert


def ep_witness_for_expansion(pair: ExpansionPair, a_star: Structure, bound: int) -> WitnessCertificate:
    """Smallest base ``b`` all of whose expansions contain ``a_star``."""
    if not age_membership(pair.star_cat, a_star):
        raise StructureError(f"{a_star!r} is not a member of {pair.star_cat.spec.name}")
    cert = WitnessCertificate(Kind.NONE, bound)
    for b in pair.base_cat.iter_members(bound, min_size=a_star.size):
        missing, embeddings = _first_missing([a_star], list_expansions(pair, b).representatives)
        if missing is None:
            return WitnessCertificate(Kind.EP, bound, b, embeddings, cert.refutations)
        cert.refutations.append((b, missing))
    return cert


def verify_ep_certificate(pair: ExpansionPair, cert: WitnessCertificate, a_stars: list[Structure]) -> bool:
    """Every pair (a*, b*) over the witness ``b`` is covered by a recorded embedding."""
    if cert.kind is not Kind.EP:
        return False
    from .structures import is_embedding
    b_stars = list_expansions(pair, cert.witness).representatives
    covered = {(m.source, m.target) for m in cert.embeddings if is_embedding(m)}
    return all((a, b) in covered for a in a_stars for b in b_stars) and verify_refutations(pair, cert, a_stars)


def verify_refutations(pair: ExpansionPair, cert: WitnessCertificate, a_stars: list[Structure]) -> bool:
    """Every recorded ``(b, b*)`` has ``b*`` expanding ``b`` and missing some ``a*``."""
    base = pair.base_cat.signature
    for b, b_star in cert.refutations:
        if reduct(b_star, base) != b or not age_membership(pair.star_cat, b_star):
            return False
        if all(next(iter_embeddings(a, b_star), None) is not None for a in a_stars):
            return False
    return True


# --- bi-definability transforms --------------------------------------------

def _parts(s: Structure, m: int) -> list[int]:
    labels = []
    for x in range(s.size):
        owners = [j for j in range(m) if (x,) in s.rel(f"P{j}")]
        if len(owners) != 1:
            raise TransformError(f"element {x} does not lie in exactly one part")
        labels.append(owners[0])
    return labels


def _is_labeled_order(s: Structure) -> bool:
    from .classes import is_linear_order
    return is_linear_order(s)


def _replace_arcs(s: Structure, arcs) -> Structure:
    rels = {name: s.rel(name) for name in s.signature.names}
    rels["arc"] = arcs
    return Structure.build(s.signature, s.size, rels)


def _reverse_cross_arcs(s: Structure) -> Structure:
    labels = _parts(s, 2)
    arcs = {(x, y) if labels[x] == labels[y] else (y, x) for x, y in s.rel("arc")}
    return _replace_arcs(s, arcs)


def transform_s2star_q2(a_star: Structure) -> Structure:
    """Reverse every arc between distinct parts; the result must be a labeled order."""
    out = _reverse_cross_arcs(a_star)
    if not _is_labeled_order(out):
        raise TransformError("result is not a linear order: input is not in Age(S(2)*)")
    return out


def transform_q2_s2star(q: Structure) -> Structure:
    """Inverse of :func:`transform_s2star_q2` (the same rule)."""
    if not _is_labeled_order(q):
        raise TransformError("input is not a labeled linear order")
    return _reverse_cross_arcs(q)


def transform_s3star_q3(a_star: Structure) -> Structure:
    """Turn an S(3)* fragment into a 3-labeled linear order.

    For ``x`` in ``P_j`` and ``y`` in ``P_{j+1}`` (indices mod 3) the arc
    ``x -> y`` is reversed and a missing arc becomes ``x -> y``.  Pairs inside
    one part are left alone.
    """
    labels = _parts(a_star, 3)
    old = a_star.rel("arc")
    arcs = set()
    for x, y in itertools.permutations(range(a_star.size), 2):
        if labels[x] == labels[y]:
            if (x, y) in old:
                arcs.add((x, y))
        elif labels[y] == (labels[x] + 1) % 3:
            if (y, x) in old:
                raise TransformError(f"arc {y}->{x} from P{labels[y]} back to P{labels[x]}")
            arcs.add((y, x) if (x, y) in old else (x, y))
    out = _replace_arcs(a_star, arcs)
    if not _is_labeled_order(out):
        raise TransformError("result is not a linear order: input is not in Age(S(3)*)")
    return out


def transform_q3_s3star(q: Structure) -> Structure:
    """Inverse of :func:`transform_s3star_q3`."""
    if not _is_labeled_order(q):
        raise TransformError("input is not a labeled linear order")
    labels = _parts(q, 3)
    old = q.rel("arc")
    arcs = set()
    for x, y in itertools.permutations(range(q.size), 2):
        if labels[x] == labels[y]:
            if (x, y) in old:
                arcs.add((x, y))
        elif labels[y] == (labels[x] + 1) % 3 and (y, x) in old:
            arcs.add((x, y))
    return _replace_arcs(q, arcs)


TRANSFORMS = {
    "s2q2": transform_s2star_q2,
    "q2s2": transform_q2_s2star,
    "s3q3": transform_s3star_q3,
    "q3s3": transform_q3_s3star,
}
