"""Finite relational structures, embeddings and canonical forms.

A :class:`Structure` lives on the universe ``0..n-1`` and interprets every
symbol of its :class:`Signature` as an exact set of tuples.  Everything here
is an immutable value, so structures can be used as dictionary keys and
shared freely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping as TMapping, Sequence


class StructureError(ValueError):
    """Raised on malformed structures or mismatched signatures."""


@dataclass(frozen=True)
class Signature:
    """Ordered list of ``(name, arity)`` relation symbols."""

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        symbols = tuple((str(name), int(arity)) for name, arity in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        names = [name for name, _ in symbols]
        if len(set(names)) != len(names):
            raise StructureError(f"duplicate symbol names in {names}")
        for name, arity in symbols:
            if arity < 1:
                raise StructureError(f"symbol {name!r} has arity {arity} < 1")
            if not name.isidentifier():
                raise StructureError(f"symbol name {name!r} is not an identifier")

    @classmethod
    def of(cls, *symbols: tuple[str, int]) -> "Signature":
        return cls(tuple(symbols))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    def arity(self, name: str) -> int:
        for sym, arity in self.symbols:
            if sym == name:
                return arity
        raise KeyError(name)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return ", ".join(f"{name}/{arity}" for name, arity in self.symbols)


@dataclass(frozen=True)
class Structure:
    """A finite structure with universe ``range(size)``.

    ``relations`` is aligned with ``signature.symbols``; each entry is a
    frozenset of tuples of the symbol's arity.
    """

    signature: Signature
    size: int
    relations: tuple[frozenset, ...]
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        if self.size < 0:
            raise StructureError("size must be non-negative")
        if len(self.relations) != len(self.signature):
            raise StructureError("one relation per symbol is required")
        rels = []
        for (name, arity), rel in zip(self.signature.symbols, self.relations):
            rel = frozenset(tuple(int(x) for x in t) for t in rel)
            for t in rel:
                if len(t) != arity:
                    raise StructureError(f"tuple {t} has wrong length for {name}/{arity}")
                if any(x < 0 or x >= self.size for x in t):
                    raise StructureError(f"tuple {t} of {name} leaves the universe 0..{self.size - 1}")
            rels.append(rel)
        object.__setattr__(self, "relations", tuple(rels))
        object.__setattr__(self, "_hash", hash((self.signature, self.size, self.relations)))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def build(cls, signature: Signature, size: int,
              relations: TMapping[str, Iterable[Sequence[int]]] | None = None) -> "Structure":
        """Build from a ``{name: tuples}`` mapping; missing symbols are empty."""
        relations = dict(relations or {})
        unknown = set(relations) - set(signature.names)
        if unknown:
            raise StructureError(f"unknown symbols {sorted(unknown)}")
        rels = []
        for name, arity in signature.symbols:
            tuples = []
            for t in relations.get(name, ()):
                t = (t,) if isinstance(t, int) else tuple(t)
                tuples.append(t)
            rels.append(frozenset(tuples))
        return cls(signature, size, tuple(rels))

    def rel(self, name: str) -> frozenset:
        return self.relations[self.signature.index(name)]

    @property
    def universe(self) -> range:
        return range(self.size)

    def relabel(self, perm: Sequence[int]) -> "Structure":
        """Image of the structure under the bijection ``x -> perm[x]``."""
        if sorted(perm) != list(range(self.size)):
            raise StructureError("relabeling must be a permutation of the universe")
        rels = tuple(frozenset(tuple(perm[x] for x in t) for t in rel) for rel in self.relations)
        return Structure(self.signature, self.size, rels)

    def __repr__(self) -> str:
        parts = []
        for (name, _), rel in zip(self.signature.symbols, self.relations):
            parts.append(f"{name}={sorted(rel)}")
        return f"Structure(n={self.size}, {', '.join(parts)})"


@dataclass(frozen=True)
class Mapping:
    """A map from the universe of ``source`` into the universe of ``target``."""

    source: Structure
    target: Structure
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source.size:
            raise StructureError("one image per source element is required")
        if any(x < 0 or x >= self.target.size for x in images):
            raise StructureError("image outside the target universe")

    def __call__(self, x: int) -> int:
        return self.images[x]

    @property
    def range(self) -> tuple[int, ...]:
        return tuple(sorted(self.images))

    def compose(self, other: "Mapping") -> "Mapping":
        """``other`` followed by ``self``."""
        if other.target != self.source:
            raise StructureError("mappings do not compose")
        return Mapping(other.source, self.target, tuple(self.images[x] for x in other.images))


def _check_same_signature(a: Structure, b: Structure) -> None:
    if a.signature != b.signature:
        raise StructureError(f"signature mismatch: [{a.signature}] vs [{b.signature}]")


def empty_structure(signature: Signature, size: int = 0) -> Structure:
    return Structure(signature, size, tuple(frozenset() for _ in signature.symbols))


def induced_substructure(s: Structure, subset: Iterable[int]) -> Structure:
    """Restriction of ``s`` to ``subset``, relabeled in increasing order."""
    chosen = sorted(set(subset))
    for x in chosen:
        if x < 0 or x >= s.size:
            raise StructureError(f"element {x} is outside the universe 0..{s.size - 1}")
    position = {x: i for i, x in enumerate(chosen)}
    rels = tuple(
        frozenset(tuple(position[x] for x in t) for t in rel if all(x in position for x in t))
        for rel in s.relations
    )
    return Structure(s.signature, len(chosen), rels)


def is_embedding(m: Mapping) -> bool:
    """Injective and preserves every relation in both directions."""
    _check_same_signature(m.source, m.target)
    if len(set(m.images)) != len(m.images):
        return False
    n = m.source.size
    for (_, arity), src, tgt in zip(m.source.signature.symbols, m.source.relations, m.target.relations):
        for t in itertools.product(range(n), repeat=arity):
            if (t in src) != (tuple(m.images[x] for x in t) in tgt):
                return False
    return True


def _new_tuples(k: int, arity: int) -> list[tuple[int, ...]]:
    """All tuples over ``0..k`` of the given arity that mention ``k``."""
    return [t for t in itertools.product(range(k + 1), repeat=arity) if k in t]


def iter_embeddings(a: Structure, b: Structure,
                    fixed: TMapping[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    """Yield image tuples of embeddings ``a -> b`` in lexicographic order.

    ``fixed`` pins some source elements to prescribed targets.
    """
    _check_same_signature(a, b)
    n, m = a.size, b.size
    if n > m:
        return
    fixed = dict(fixed or {})
    symbols = [(arity, src, tgt) for (_, arity), src, tgt
               in zip(a.signature.symbols, a.relations, b.relations)]
    checks = [[(arity, src, tgt, _new_tuples(k, arity)) for arity, src, tgt in symbols]
              for k in range(n)]
    images = [0] * n
    used = [False] * m

    def consistent(k: int) -> bool:
        for arity, src, tgt, tuples in checks[k]:
            for t in tuples:
                if (t in src) != (tuple(images[x] for x in t) in tgt):
                    return False
        return True

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(images)
            return
        candidates = [fixed[k]] if k in fixed else range(m)
        for y in candidates:
            if used[y]:
                continue
            images[k] = y
            if consistent(k):
                used[y] = True
                yield from extend(k + 1)
                used[y] = False

    yield from extend(0)


def enumerate_embeddings(a: Structure, b: Structure) -> list[Mapping]:
    """All embeddings of ``a`` into ``b``, in lexicographic order of images."""
    return [Mapping(a, b, images) for images in iter_embeddings(a, b)]


def embeds(a: Structure, b: Structure) -> bool:
    return next(iter_embeddings(a, b), None) is not None


def find_isomorphism(a: Structure, b: Structure) -> Mapping | None:
    """Some isomorphism ``a -> b``, or ``None``."""
    _check_same_signature(a, b)
    if a.size != b.size:
        return None
    images = next(iter_embeddings(a, b), None)
    return None if images is None else Mapping(a, b, images)


def enumerate_copies(a: Structure, b: Structure) -> list[tuple[int, ...]]:
    """Element subsets of ``b`` (sorted tuples, lexicographic) supporting a copy of ``a``."""
    return sorted({tuple(sorted(images)) for images in iter_embeddings(a, b)})


def automorphism_order(a: Structure) -> int:
    return sum(1 for _ in iter_embeddings(a, a))


def is_rigid(a: Structure) -> bool:
    return automorphism_order(a) == 1


# --- canonical labeling -----------------------------------------------------

def _incidence(s: Structure) -> list[list[tuple[int, tuple[int, ...], tuple[int, ...]]]]:
    inc: list[list] = [[] for _ in range(s.size)]
    for sym, rel in enumerate(s.relations):
        for t in rel:
            for x in set(t):
                inc[x].append((sym, t, tuple(i for i, y in enumerate(t) if y == x)))
    return inc


def _rank(keys: Sequence) -> list[int]:
    order = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [order[key] for key in keys]


def _refine(colors: list[int], inc) -> list[int]:
    """Iterate color refinement to a stable, labeling-invariant partition."""
    ncolors = len(set(colors))
    while True:
        keys = [
            (colors[v], tuple(sorted((sym, tuple(colors[x] for x in t), pos) for sym, t, pos in inc[v])))
            for v in range(len(colors))
        ]
        new = _rank(keys)
        count = len(set(new))
        if count == ncolors:
            return new
        colors, ncolors = new, count


def _twin_classes(s: Structure) -> list[int]:
    """Representative of each element's class under automorphic transpositions."""
    n = s.size
    rep = list(range(n))
    for u in range(n):
        if rep[u] != u:
            continue
        for v in range(u + 1, n):
            if rep[v] != v:
                continue
            perm = list(range(n))
            perm[u], perm[v] = v, u
            if all(frozenset(tuple(perm[x] for x in t) for t in rel) == rel for rel in s.relations):
                rep[v] = u
    return rep


def _encode(s: Structure, order: Sequence[int]) -> tuple:
    position = {v: i for i, v in enumerate(order)}
    return tuple(tuple(sorted(tuple(position[x] for x in t) for t in rel)) for rel in s.relations)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Byte string determined by the isomorphism class (and the signature)."""

    code: bytes

    def __str__(self) -> str:
        return self.code.decode()


@lru_cache(maxsize=200_000)
def canonical_form(a: Structure) -> CanonicalCode:
    """Canonical code by color refinement and individualization search."""
    n = a.size
    inc = _incidence(a)
    twins: list[int] = []
    best: list = [None]

    def search(colors: list[int]) -> None:
        colors = _refine(colors, inc)
        if len(set(colors)) == n:
            order = sorted(range(n), key=colors.__getitem__)
            enc = _encode(a, order)
            if best[0] is None or enc < best[0]:
                best[0] = enc
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        if not twins:
            # only needed once the search branches
            twins.extend(_twin_classes(a))
        seen_twins = set()
        for v in range(n):
            if colors[v] != target or twins[v] in seen_twins:
                continue
            seen_twins.add(twins[v])
            search([2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(colors)])

    search([0] * n)
    enc = best[0] if n else tuple(() for _ in a.relations)
    head = f"{a.signature}|{n}"
    body = "|".join(";".join(",".join(map(str, t)) for t in rel) for rel in enc)
    return CanonicalCode(f"{head}|{body}".encode())


def are_isomorphic(a: Structure, b: Structure) -> bool:
    _check_same_signature(a, b)
    return a.size == b.size and canonical_form(a) == canonical_form(b)


def canonical_representative(a: Structure) -> Structure:
    """The structure obtained by relabeling ``a`` along its canonical order."""
    code = canonical_form(a)
    rels = str(code).split("|", 2)[2].split("|") if a.relations else []
    out = {}
    for (name, arity), text in zip(a.signature.symbols, rels):
        out[name] = [tuple(int(x) for x in t.split(",")) for t in text.split(";") if t]
    return Structure.build(a.signature, a.size, out)


def brute_force_isomorphic(a: Structure, b: Structure) -> bool:
    """Permutation-search isomorphism test; the oracle for :func:`canonical_form`."""
    _check_same_signature(a, b)
    if a.size != b.size:
        return False
    if [len(r) for r in a.relations] != [len(r) for r in b.relations]:
        return False
    return any(a.relabel(perm) == b for perm in itertools.permutations(range(a.size)))


def brute_force_code(a: Structure) -> tuple:
    """Least relation encoding over all relabelings; slow but obviously canonical."""
    return min(tuple(tuple(sorted(r)) for r in a.relabel(perm).relations)
               for perm in itertools.permutations(range(a.size)))
