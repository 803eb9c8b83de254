"""Doubled circles coding the half-plane and third-plane partitions.

A :class:`FlowPoint` is an angle of the circle, carrying a bit when the angle
belongs to the doubled set of its variant.  Restricted to a finite set ``F``
of points of ``S``, a flow point determines a partition of ``F``
(:class:`PartitionTrace`).

Conventions
-----------
HAT (two parts), coded point ``tau``:
    part 0 is the half circle ending at ``tau``, i.e. ``(tau - x) mod 1`` in
    ``(0, 1/2)``; part 1 is the other open half.  ``x = tau`` goes to part 0
    for label 0 and part 1 for label 1; ``x = tau + 1/2`` goes to part 0 for
    label 1 and part 1 for label 0.
TILDE (three parts), coded point ``tau``:
    part 0 is ``[tau, tau + 1/3)``, part 1 is ``[tau + 1/3, tau + 2/3)``,
    part 2 is ``[tau + 2/3, tau)``.  A boundary angle in ``S`` goes to the part
    starting there for label 0 and to the part ending there for label 1.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .circle import HALF, THIRD, CirclePlacement, format_turn, in_s, parse_turn, turn


class Variant(enum.Enum):
    HAT = "hat"
    TILDE = "tilde"

    @property
    def parts(self) -> int:
        return 2 if self is Variant.HAT else 3

    @property
    def reach(self) -> Fraction:
        return HALF if self is Variant.HAT else THIRD


class FlowError(ValueError):
    pass


def is_doubled(x: Fraction, variant: Variant) -> bool:
    """Membership in ``S + (-S)`` (HAT) or ``S + r(S) + r^{-1}(S)`` (TILDE)."""
    x = turn(x)
    if variant is Variant.HAT:
        return in_s(x) or in_s(turn(x + HALF))
    return in_s(x) or in_s(turn(x + THIRD)) or in_s(turn(x - THIRD))


@dataclass(frozen=True)
class FlowPoint:
    base: Fraction
    label: int | None = None
    variant: Variant = Variant.HAT

    def __post_init__(self):
        object.__setattr__(self, "base", turn(self.base))
        doubled = is_doubled(self.base, self.variant)
        if doubled and self.label not in (0, 1):
            raise FlowError(f"{format_turn(self.base)} is doubled in {self.variant.value}; give label 0 or 1")
        if not doubled and self.label is not None:
            raise FlowError(f"{format_turn(self.base)} is not doubled in {self.variant.value}; no label allowed")

    @classmethod
    def parse(cls, text: str, variant: Variant = Variant.HAT) -> "FlowPoint":
        """Read ``p/q`` or ``p/q:label``."""
        base, sep, label = text.partition(":")
        return cls(parse_turn(base), int(label) if sep else None, variant)

    def __str__(self) -> str:
        s = format_turn(self.base)
        return s if self.label is None else f"{s}:{self.label}"


@dataclass(frozen=True)
class PartitionTrace:
    F: CirclePlacement
    parts: tuple[int, ...]

    def members(self, j: int) -> tuple[Fraction, ...]:
        return tuple(x for x, p in zip(self.F.points, self.parts) if p == j)

    def as_dict(self, variant: Variant) -> dict[str, list[str]]:
        return {f"part{j}": [format_turn(x) for x in self.members(j)] for j in range(variant.parts)}


def _arc(variant: Variant, x: Fraction, y: Fraction) -> bool:
    return 0 < turn(y - x) < variant.reach


@dataclass(frozen=True)
class Interval:
    """``{(alpha, 0)}``, the angles strictly between, and ``{(beta, 1)}``."""

    alpha: Fraction
    beta: Fraction
    variant: Variant = Variant.HAT

    def __post_init__(self):
        object.__setattr__(self, "alpha", turn(self.alpha))
        object.__setattr__(self, "beta", turn(self.beta))
        for end in (self.alpha, self.beta):
            if not is_doubled(end, self.variant):
                raise FlowError(f"endpoint {format_turn(end)} is not a doubled point")
        gap = turn(self.beta - self.alpha)
        # a half turn is allowed for HAT: F = {0} subdivides into two halves
        if gap == 0 or gap > self.variant.reach or (self.variant is Variant.TILDE and gap == THIRD):
            raise FlowError(f"[{format_turn(self.alpha)}, {format_turn(self.beta)}] is not an arc")

    def __str__(self) -> str:
        return f"[{format_turn(self.alpha)}, {format_turn(self.beta)}]"


def interval_membership(iv: Interval, t: FlowPoint) -> bool:
    if iv.variant is not t.variant:
        raise FlowError("interval and point have different variants")
    if t.base == iv.alpha:
        return t.label == 0
    if t.base == iv.beta:
        return t.label == 1
    return 0 < turn(t.base - iv.alpha) < turn(iv.beta - iv.alpha)


def _placement(F) -> CirclePlacement:
    return F if isinstance(F, CirclePlacement) else CirclePlacement.of(F)


def partition_from_flowpoint(t: FlowPoint, F) -> PartitionTrace:
    """Two-part trace of a HAT point on ``F``."""
    if t.variant is not Variant.HAT:
        raise FlowError("partition_from_flowpoint needs a HAT point")
    F = _placement(F)
    tau = t.base
    parts = []
    for x in F.points:
        if x == tau:
            parts.append(0 if t.label == 0 else 1)
        elif x == turn(tau + HALF):
            parts.append(0 if t.label == 1 else 1)
        else:
            parts.append(0 if turn(tau - x) < HALF else 1)
    return PartitionTrace(F, tuple(parts))


def partition_from_flowpoint_s3(t: FlowPoint, F) -> PartitionTrace:
    """Three-part trace of a TILDE point on ``F``."""
    if t.variant is not Variant.TILDE:
        raise FlowError("partition_from_flowpoint_s3 needs a TILDE point")
    F = _placement(F)
    tau = t.base
    parts = []
    for x in F.points:
        d = turn(x - tau)
        j = int(d * 3)
        if d * 3 == j and t.label == 1:
            # boundary point, handed to the part ending there
            j = (j - 1) % 3
        parts.append(j)
    return PartitionTrace(F, tuple(parts))


def trace(t: FlowPoint, F) -> PartitionTrace:
    if t.variant is Variant.HAT:
        return partition_from_flowpoint(t, F)
    return partition_from_flowpoint_s3(t, F)


def subdivision(F, variant: Variant = Variant.HAT) -> list[Fraction]:
    """``F`` together with its antipodes (HAT) or its two third-turn images (TILDE)."""
    F = _placement(F)
    shifts = (0, HALF) if variant is Variant.HAT else (0, THIRD, -THIRD)
    return sorted({turn(x + s) for x in F.points for s in shifts})


def interval_from_basic_open(F, t: FlowPoint) -> Interval:
    """The interval cut out by consecutive points of ``F`` and ``-F`` around ``t``."""
    if t.variant is not Variant.HAT:
        raise FlowError("interval_from_basic_open is defined for HAT points")
    F = _placement(F)
    if len(F) == 0:
        raise FlowError("empty F gives no subdivision")
    cuts = subdivision(F)
    n = len(cuts)
    p = t.base
    if p in cuts:
        i = cuts.index(p)
        if t.label == 0:
            return Interval(p, cuts[(i + 1) % n])
        return Interval(cuts[i - 1], p)
    after = next((i for i, c in enumerate(cuts) if c > p), 0)
    return Interval(cuts[after - 1], cuts[after])


def act_rotation(q, t: FlowPoint) -> FlowPoint:
    """Rotate by ``q`` turns; ``q`` must have a denominator coprime to 6."""
    q = turn(Fraction(q))
    if not in_s(q):
        raise FlowError(f"rotation {format_turn(q)} does not preserve S")
    return FlowPoint(turn(t.base + q), t.label, t.variant)


def shift_trace(tr: PartitionTrace, q) -> PartitionTrace:
    """The trace moved along a rotation of its points."""
    moved, where = tr.F.rotate(Fraction(q))
    parts = [0] * len(tr.parts)
    for old, new in enumerate(where):
        parts[new] = tr.parts[old]
    return PartitionTrace(moved, tuple(parts))


def flow_grid(variant: Variant, max_denominator: int = 12) -> list[FlowPoint]:
    """Every doubled angle with denominator at most ``max_denominator``, with both labels."""
    seen = sorted({Fraction(k, d) for d in range(1, max_denominator + 1) for k in range(d)})
    return [FlowPoint(x, label, variant) for x in seen if is_doubled(x, variant) for label in (0, 1)]


def undoubled_points(variant: Variant, count: int = 20) -> list[FlowPoint]:
    """The first ``count`` undoubled angles by denominator, then numerator."""
    out = []
    d = 1
    while len(out) < count:
        for k in range(d):
            x = Fraction(k, d)
            if x.denominator == d and not is_doubled(x, variant):
                out.append(FlowPoint(x, None, variant))
                if len(out) == count:
                    break
        d += 1
    return out


def expanded_trace_structure(t: FlowPoint, F):
    """The circle structure on ``F`` with the parts of ``t`` as unary relations."""
    from .circle import _with_parts, s2_structure, s3_structure

    F = _placement(F)
    tr = trace(t, F)
    base = s2_structure(F) if t.variant is Variant.HAT else s3_structure(F)
    return _with_parts(base, tr.parts, t.variant.parts)


def part_is_ordered(tr: PartitionTrace, variant: Variant) -> bool:
    """Each part is a tournament, transitive, under the variant's arc rule."""
    for j in range(variant.parts):
        pts: Sequence[Fraction] = tr.members(j)
        for i, x in enumerate(pts):
            for y in pts[i + 1:]:
                if _arc(variant, x, y) == _arc(variant, y, x):
                    return False
        for x, y, z in itertools.permutations(pts, 3):
            if _arc(variant, x, y) and _arc(variant, y, z) and not _arc(variant, x, z):
                return False
    return True
