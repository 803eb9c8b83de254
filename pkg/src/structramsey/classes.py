"""Ages as finite catalogs and bounded checks of their closure properties.

Every statement of the form "for all B in the class" is turned into a search
over a catalog truncated at some size.  Searches that come back empty report
``NONE_UP_TO_BOUND`` rather than a negative answer.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .structures import (
    CanonicalCode,
    Mapping,
    Signature,
    Structure,
    StructureError,
    canonical_form,
    canonical_representative,
    induced_substructure,
    is_embedding,
    iter_embeddings,
)

ARC = Signature.of(("arc", 2))


def parts_signature(n: int, with_arc: bool = True) -> Signature:
    """``arc`` followed by unary ``P0..P{n-1}`` (or the unary symbols alone)."""
    unary = tuple((f"P{j}", 1) for j in range(n))
    return Signature((("arc", 2),) + unary if with_arc else unary)


class CatalogIntegrityError(RuntimeError):
    """A generator produced a class that is not closed under substructures."""


class OutOfRange(ValueError):
    """A request exceeds the size bound of a catalog."""


# --- membership predicates for "all structures satisfying P" ----------------

def is_tournament(s: Structure, name: str = "arc") -> bool:
    arcs = s.rel(name)
    if any(x == y for x, y in arcs):
        return False
    return all(((x, y) in arcs) != ((y, x) in arcs) for x, y in itertools.combinations(range(s.size), 2))


def is_oriented_graph(s: Structure, name: str = "arc") -> bool:
    arcs = s.rel(name)
    return all(x != y and (y, x) not in arcs for x, y in arcs)


def is_linear_order(s: Structure, name: str = "arc") -> bool:
    """Strict total order: a transitive tournament."""
    arcs = s.rel(name)
    if not is_tournament(s, name):
        return False
    return all((x, z) in arcs for x, y in arcs for y2, z in arcs if y == y2)


def is_partition(s: Structure, names: Sequence[str]) -> bool:
    """Every element lies in exactly one of the unary relations ``names``."""
    rels = [s.rel(n) for n in names]
    return all(sum((x,) in r for r in rels) == 1 for x in range(s.size))


# --- class specifications -----------------------------------------------------

@dataclass(frozen=True)
class ClassSpec:
    """A rule enumerating the members of a class of a given size.

    Exactly one of ``members`` (direct enumeration, duplicates allowed) and
    ``predicate`` (all structures over ``signature`` satisfying it, built by
    one-point extensions) must be given.
    """

    name: str
    signature: Signature
    members: Callable[[int], Iterable[Structure]] | None = field(default=None, compare=False)
    predicate: Callable[[Structure], bool] | None = field(default=None, compare=False)

    def __post_init__(self):
        if (self.members is None) == (self.predicate is None):
            raise ValueError("give exactly one of members= or predicate=")


def explicit_spec(name: str, structures: Sequence[Structure]) -> ClassSpec:
    structures = list(structures)
    if not structures:
        raise ValueError("explicit class needs at least one structure")
    signature = structures[0].signature
    if any(s.signature != signature for s in structures):
        raise StructureError("explicit class mixes signatures")
    return ClassSpec(name, signature, members=lambda n: [s for s in structures if s.size == n])


def linear_order(n: int) -> Structure:
    return Structure.build(ARC, n, {"arc": itertools.combinations(range(n), 2)})


def lo_spec() -> ClassSpec:
    return ClassSpec("lo", ARC, members=lambda n: [linear_order(n)])


def tournaments_spec() -> ClassSpec:
    return ClassSpec("tournaments", ARC, predicate=is_tournament)


def partitions_spec(n: int) -> ClassSpec:
    """Sets partitioned by unary ``P0..P{n-1}`` (no other structure)."""
    names = [f"P{j}" for j in range(n)]
    return ClassSpec(f"partitions:{n}", parts_signature(n, with_arc=False),
                     predicate=lambda s: is_partition(s, names))


# --- catalogs -------------------------------------------------------------------

class AgeCatalog:
    """Isomorphism classes of a class's members of size ``1..bound``.

    Levels are generated on first use and then frozen; every level is checked
    to be closed under one-point deletion before it becomes visible.
    """

    def __init__(self, spec: ClassSpec, bound: int,
                 preloaded: Iterable[Structure] | None = None):
        if bound < 1:
            raise ValueError("bound must be at least 1")
        self.spec = spec
        self.bound = bound
        self._levels: dict[int, dict[CanonicalCode, Structure]] = {}
        if preloaded is not None:
            by_size: dict[int, list[Structure]] = {}
            for s in preloaded:
                by_size.setdefault(s.size, []).append(s)
            for n in range(1, bound + 1):
                self._install(n, by_size.get(n, []))

    @property
    def signature(self) -> Signature:
        return self.spec.signature

    def _install(self, n: int, raw: Iterable[Structure]) -> None:
        level: dict[CanonicalCode, Structure] = {}
        for s in raw:
            if s.signature != self.signature or s.size != n:
                raise CatalogIntegrityError(f"{self.spec.name}: generator returned {s!r} for size {n}")
            code = canonical_form(s)
            if code not in level:
                level[code] = canonical_representative(s)
        self._levels[n] = dict(sorted(level.items()))
        if n > 1:
            below = self.level(n - 1)
            for code, s in self._levels[n].items():
                for x in range(n):
                    sub = induced_substructure(s, [y for y in range(n) if y != x])
                    if canonical_form(sub) not in below:
                        del self._levels[n]
                        raise CatalogIntegrityError(
                            f"{self.spec.name} is not hereditary: {s!r} minus {x} is missing")

    def _generate(self, n: int) -> Iterable[Structure]:
        if self.spec.members is not None:
            return self.spec.members(n)
        return self._extensions(n)

    def _extensions(self, n: int) -> Iterator[Structure]:
        pred = self.spec.predicate
        bases = [Structure.build(self.signature, 0)] if n == 1 else list(self.level(n - 1).values())
        k = n - 1
        new = [(i, t) for i, (_, arity) in enumerate(self.signature.symbols)
               for t in itertools.product(range(n), repeat=arity) if k in t]
        for base in bases:
            for mask in range(1 << len(new)):
                rels = [set(r) for r in base.relations]
                for bit, (i, t) in enumerate(new):
                    if mask >> bit & 1:
                        rels[i].add(t)
                s = Structure(self.signature, n, tuple(frozenset(r) for r in rels))
                if pred(s):
                    yield s

    def level(self, n: int) -> dict[CanonicalCode, Structure]:
        """Representatives of size ``n`` keyed by code, in code order."""
        if n < 1 or n > self.bound:
            raise OutOfRange(f"size {n} outside 1..{self.bound} for catalog {self.spec.name}")
        if n not in self._levels:
            if n > 1:
                self.level(n - 1)
            self._install(n, self._generate(n))
        return self._levels[n]

    def of_size(self, n: int) -> list[Structure]:
        return list(self.level(n).values())

    def iter_members(self, max_size: int | None = None, min_size: int = 1) -> Iterator[Structure]:
        """Members in (size, code) order."""
        top = self.bound if max_size is None else min(max_size, self.bound)
        for n in range(max(min_size, 1), top + 1):
            yield from self.level(n).values()

    @property
    def members(self) -> dict[CanonicalCode, Structure]:
        out: dict[CanonicalCode, Structure] = {}
        for n in range(1, self.bound + 1):
            out.update(self.level(n))
        return out

    def __len__(self) -> int:
        return len(self.members)

    def codes(self, max_size: int | None = None) -> set[CanonicalCode]:
        return {canonical_form(s) for s in self.iter_members(max_size)}

    def __contains__(self, a: Structure) -> bool:
        return age_membership(self, a)

    def __repr__(self) -> str:
        return f"AgeCatalog({self.spec.name!r}, bound={self.bound})"


def generate_age(spec: ClassSpec, bound: int, lazy: bool = False) -> AgeCatalog:
    """Catalog of ``spec`` up to ``bound``; eager unless ``lazy``."""
    cat = AgeCatalog(spec, bound)
    if not lazy:
        cat.level(bound)
    return cat


def age_membership(cat: AgeCatalog, a: Structure) -> bool:
    if a.signature != cat.signature:
        raise StructureError(f"signature [{a.signature}] does not match catalog [{cat.signature}]")
    if a.size > cat.bound:
        raise OutOfRange(f"size {a.size} exceeds catalog bound {cat.bound}")
    if a.size == 0:
        return True
    return canonical_form(a) in cat.level(a.size)


# --- certificates -----------------------------------------------------------

class Kind(str, enum.Enum):
    JEP = "JEP"
    AP = "AP"
    EP = "EP"
    NONE = "NONE-UP-TO-BOUND"


@dataclass
class WitnessCertificate:
    """Outcome of a bounded existence search.

    ``refutations`` is only used by expansion-property searches: for every
    rejected candidate it stores one expansion that fails.
    """

    kind: Kind
    bound: int
    witness: Structure | None = None
    embeddings: list[Mapping] = field(default_factory=list)
    refutations: list[tuple[Structure, Structure]] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.kind is not Kind.NONE

    def verify(self, *inputs: Mapping) -> bool:
        """Re-check embeddings (and for AP the commuting square ``r f = s g``)."""
        if not self.found:
            return True
        # expansion-property embeddings land in expansions of the witness
        if not all(is_embedding(m) and (self.kind is Kind.EP or m.target == self.witness)
                   for m in self.embeddings):
            return False
        if self.kind is Kind.AP:
            f, g = inputs
            r, s = self.embeddings
            return r.compose(f).images == s.compose(g).images
        return True


def _require_member(cat: AgeCatalog, *structures: Structure) -> None:
    for s in structures:
        if not age_membership(cat, s):
            raise StructureError(f"{s!r} is not a member of {cat.spec.name}")


def check_jep(cat: AgeCatalog, a: Structure, b: Structure, bound: int) -> WitnessCertificate:
    """Smallest catalog member (size, then code) into which both embed."""
    _require_member(cat, a, b)
    for c in cat.iter_members(bound, min_size=max(a.size, b.size)):
        fa = next(iter_embeddings(a, c), None)
        if fa is None:
            continue
        fb = next(iter_embeddings(b, c), None)
        if fb is not None:
            return WitnessCertificate(Kind.JEP, bound, c, [Mapping(a, c, fa), Mapping(b, c, fb)])
    return WitnessCertificate(Kind.NONE, bound)


def check_amalgamation(cat: AgeCatalog, f: Mapping, g: Mapping, bound: int) -> WitnessCertificate:
    """Search ``d`` with embeddings ``r: b -> d``, ``s: c -> d`` and ``r f = s g``."""
    if f.source != g.source:
        raise StructureError("amalgamation needs two embeddings of the same structure")
    if not (is_embedding(f) and is_embedding(g)):
        raise StructureError("amalgamation inputs must be embeddings")
    a, b, c = f.source, f.target, g.target
    _require_member(cat, b, c)
    for d in cat.iter_members(bound, min_size=max(b.size, c.size)):
        for r in iter_embeddings(b, d):
            fixed = {g.images[x]: r[f.images[x]] for x in range(a.size)}
            s = next(iter_embeddings(c, d, fixed), None)
            if s is not None:
                return WitnessCertificate(Kind.AP, bound, d, [Mapping(b, d, r), Mapping(c, d, s)])
    return WitnessCertificate(Kind.NONE, bound)


@dataclass
class SubsetResult:
    holds: bool
    counterexample: Structure | None = None

    def __bool__(self) -> bool:
        return self.holds


def age_subset(cat1: AgeCatalog, cat2: AgeCatalog, bound: int) -> SubsetResult:
    """Whether every member of ``cat1`` up to ``bound`` lies in ``cat2``."""
    if cat1.signature != cat2.signature:
        raise StructureError("catalogs over different signatures")
    if bound > min(cat1.bound, cat2.bound):
        raise OutOfRange(f"bound {bound} exceeds a catalog bound")
    for s in cat1.iter_members(bound):
        if not age_membership(cat2, s):
            return SubsetResult(False, s)
    return SubsetResult(True)
