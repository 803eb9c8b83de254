"""Exact finite fragments of the circular digraphs S(2), S(3) and of Q_n.

Angles are turn fractions in ``[0, 1)``.  The dense point set ``S`` is modeled
by the rationals whose reduced denominator is coprime to 6: such points are
never antipodal and never exactly a third of a turn apart, which is all the
finite fragments can observe.

Combinatorial types
-------------------
Write ``u = x + offset`` and split ``u = r + j * period`` with residue
``r`` in ``[0, period)``.  For S(2) the period is 1/2, for S(3) it is 1/3.
Every arc (and every part, for the starred families) depends only on the
sequence of labels ``j`` read in increasing residue order, so a family's
members of size ``n`` are exactly the structures of the ``m**n`` label words
(``m`` = 2 or 3).  :func:`type_placement` turns a word back into explicit
points.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .classes import ARC, AgeCatalog, ClassSpec, generate_age, parts_signature
from .structures import Mapping, Signature, Structure, StructureError, canonical_form, find_isomorphism

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


def turn(x) -> Fraction:
    """Reduce to ``[0, 1)``."""
    return Fraction(x) % 1


def parse_turn(text: str) -> Fraction:
    try:
        return turn(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse angle {text!r}; expected p/q") from None


def format_turn(x: Fraction) -> str:
    x = turn(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def in_s(x: Fraction) -> bool:
    """Membership in the dense set ``S``: reduced denominator coprime to 6."""
    d = Fraction(x).denominator
    return d % 2 == 1 and d % 3 != 0


def pick_point(lo: Fraction, hi: Fraction) -> Fraction:
    """A point of ``S`` strictly between ``lo`` and ``hi`` (as turns, taken mod 1).

    Prefers the smallest admissible denominator.
    """
    if not lo < hi:
        raise ValueError("empty interval")
    q = 1
    while True:
        if q % 2 and q % 3:
            k = (lo * q).__floor__() + 1
            if Fraction(k, q) < hi:
                return turn(Fraction(k, q))
        q += 1


@dataclass(frozen=True)
class CirclePlacement:
    """Strictly increasing points of ``S`` in ``[0, 1)``."""

    points: tuple[Fraction, ...]

    def __post_init__(self):
        points = tuple(Fraction(p) for p in self.points)
        object.__setattr__(self, "points", points)
        for p in points:
            if not 0 <= p < 1:
                raise StructureError(f"angle {p} is outside [0, 1)")
            if not in_s(p):
                raise StructureError(f"angle {p} has a denominator sharing a factor with 6")
        if any(x >= y for x, y in zip(points, points[1:])):
            raise StructureError("placement points must be strictly increasing")

    @classmethod
    def of(cls, points: Iterable) -> "CirclePlacement":
        """Sort and reduce arbitrary angles (strings like ``"3/5"`` accepted)."""
        pts = sorted({parse_turn(p) if isinstance(p, str) else turn(p) for p in points})
        return cls(tuple(pts))

    def __len__(self) -> int:
        return len(self.points)

    def rotate(self, q: Fraction) -> tuple["CirclePlacement", tuple[int, ...]]:
        """Rotated placement and the index map old position -> new position."""
        moved = [turn(p + q) for p in self.points]
        new = CirclePlacement(tuple(sorted(moved)))
        where = {p: i for i, p in enumerate(new.points)}
        return new, tuple(where[p] for p in moved)

    def __str__(self) -> str:
        return ",".join(format_turn(p) for p in self.points)


# --- arc rules and the four circle structures -------------------------------

def s2_arc(x: Fraction, y: Fraction) -> bool:
    return 0 < turn(y - x) < HALF


def s3_arc(x: Fraction, y: Fraction) -> bool:
    return 0 < turn(y - x) < THIRD


def _arcs(points: Sequence[Fraction], rule) -> list[tuple[int, int]]:
    return [(i, j) for i, x in enumerate(points) for j, y in enumerate(points) if rule(x, y)]


def s2_part(x: Fraction) -> int:
    """0 for the right half plane, 1 for the left one."""
    return 0 if turn(x + Fraction(1, 4)) < HALF else 1


def s3_part(x: Fraction) -> int:
    return int(turn(x + Fraction(1, 12)) * 3)


def _check(p) -> CirclePlacement:
    if not isinstance(p, CirclePlacement):
        p = CirclePlacement.of(p)
    return p


def s2_structure(p: CirclePlacement) -> Structure:
    p = _check(p)
    return Structure.build(ARC, len(p), {"arc": _arcs(p.points, s2_arc)})


def s3_structure(p: CirclePlacement) -> Structure:
    p = _check(p)
    return Structure.build(ARC, len(p), {"arc": _arcs(p.points, s3_arc)})


def _with_parts(base: Structure, parts: Sequence[int], m: int) -> Structure:
    rels = {"arc": base.rel("arc")}
    for j in range(m):
        rels[f"P{j}"] = [(i,) for i, part in enumerate(parts) if part == j]
    return Structure.build(parts_signature(m), base.size, rels)


def s2_star_structure(p: CirclePlacement) -> Structure:
    p = _check(p)
    return _with_parts(s2_structure(p), [s2_part(x) for x in p.points], 2)


def s3_star_structure(p: CirclePlacement) -> Structure:
    p = _check(p)
    return _with_parts(s3_structure(p), [s3_part(x) for x in p.points], 3)


# --- families -----------------------------------------------------------------

class Family(enum.Enum):
    S2 = "s2"
    S2STAR = "s2star"
    S3 = "s3"
    S3STAR = "s3star"

    @property
    def labels(self) -> int:
        return 2 if self in (Family.S2, Family.S2STAR) else 3

    @property
    def period(self) -> Fraction:
        return Fraction(1, self.labels)

    @property
    def offset(self) -> Fraction:
        return {Family.S2: Fraction(0), Family.S3: Fraction(0),
                Family.S2STAR: Fraction(1, 4), Family.S3STAR: Fraction(1, 12)}[self]

    @property
    def signature(self) -> Signature:
        if self is Family.S2STAR:
            return parts_signature(2)
        if self is Family.S3STAR:
            return parts_signature(3)
        return ARC

    @property
    def rotation_invariant(self) -> bool:
        return self in (Family.S2, Family.S3)

    def structure(self, p: CirclePlacement) -> Structure:
        return _BUILDERS[self](p)


_BUILDERS = {
    Family.S2: s2_structure,
    Family.S2STAR: s2_star_structure,
    Family.S3: s3_structure,
    Family.S3STAR: s3_star_structure,
}


def type_placement(family: Family, labels: Sequence[int]) -> CirclePlacement:
    """Explicit points realizing a label word (see the module docstring)."""
    n = len(labels)
    width = family.period / n
    points = []
    for i, j in enumerate(labels):
        if not 0 <= j < family.labels:
            raise ValueError(f"label {j} out of range for {family.value}")
        lo = j * family.period + i * width - family.offset
        points.append(pick_point(lo, lo + width))
    return CirclePlacement(tuple(sorted(points)))


def label_words(family: Family, n: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(family.labels), repeat=n)


def family_members(family: Family, n: int) -> Iterator[Structure]:
    for word in label_words(family, n):
        yield family.structure(type_placement(family, word))


def family_spec(family: Family) -> ClassSpec:
    return ClassSpec(family.value, family.signature, members=lambda n: family_members(family, n))


REALIZE_LIMIT = 7


def realize(family: Family, a: Structure, limit: int = REALIZE_LIMIT) -> CirclePlacement | None:
    """A placement whose family structure is isomorphic to ``a``, or ``None``.

    Decided by running through all label words of length ``|a|``; ``None``
    is therefore a complete refutation.
    """
    if a.signature != family.signature:
        raise StructureError(f"{family.value} structures have signature [{family.signature}]")
    if a.size > limit:
        raise ValueError(f"size {a.size} exceeds the realization limit {limit}")
    if a.size == 0:
        return CirclePlacement(())
    target = canonical_form(a)
    for word in label_words(family, a.size):
        p = type_placement(family, word)
        if canonical_form(family.structure(p)) == target:
            return p
    return None


def realize_mapping(family: Family, a: Structure, p: CirclePlacement) -> Mapping | None:
    """Isomorphism from ``a`` onto the family structure of ``p``."""
    return find_isomorphism(a, family.structure(p))


def grid_points(denominator: int) -> list[Fraction]:
    if denominator % 2 == 0 or denominator % 3 == 0:
        raise ValueError("grid denominator must be coprime to 6")
    return [Fraction(k, denominator) for k in range(denominator)]


def grid_placements(family: Family, n: int, denominator: int) -> Iterator[CirclePlacement]:
    """All ``n``-point placements on the grid ``k/denominator``.

    Rotation-invariant families only need placements through 0.
    """
    grid = grid_points(denominator)
    if family.rotation_invariant and n > 0:
        for rest in itertools.combinations(grid[1:], n - 1):
            yield CirclePlacement((grid[0],) + rest)
    else:
        for combo in itertools.combinations(grid, n):
            yield CirclePlacement(combo)


def grid_codes(family: Family, n: int, denominator: int) -> set:
    """Canonical codes of every grid placement of size ``n``."""
    return {canonical_form(family.structure(p)) for p in grid_placements(family, n, denominator)}


def grid_realize(family: Family, a: Structure, denominator: int) -> CirclePlacement | None:
    target = canonical_form(a)
    for p in grid_placements(family, a.size, denominator):
        if canonical_form(family.structure(p)) == target:
            return p
    return None


# --- Q_n --------------------------------------------------------------------------

def qn_structure(labels: Sequence[int], parts: int | None = None) -> Structure:
    """Linear order ``0 < 1 < ...`` with element ``i`` in part ``labels[i]``."""
    m = parts if parts is not None else max(labels, default=-1) + 1
    n = len(labels)
    rels = {"arc": itertools.combinations(range(n), 2)}
    for j in range(m):
        rels[f"P{j}"] = [(i,) for i, lab in enumerate(labels) if lab == j]
    return Structure.build(parts_signature(m), n, rels)


def qn_spec(n: int) -> ClassSpec:
    if n < 1:
        raise ValueError("Q_n needs n >= 1")
    return ClassSpec(f"qn:{n}", parts_signature(n),
                     members=lambda size: (qn_structure(w, n) for w in itertools.product(range(n), repeat=size)))


def qn_generator(n: int, bound: int) -> AgeCatalog:
    return generate_age(qn_spec(n), bound)


def sorted_parts_spec(n: int = 2) -> ClassSpec:
    """Labeled orders whose parts come in order: all of P0 below all of P1, ..."""
    def members(size: int):
        for cuts in itertools.combinations_with_replacement(range(size + 1), n - 1):
            bounds = (0,) + cuts + (size,)
            word = [j for j in range(n) for _ in range(bounds[j], bounds[j + 1])]
            yield qn_structure(word, n)
    return ClassSpec(f"qn-sorted:{n}", parts_signature(n), members=members)
