"""Arrow relations ``C -> (B)^A_{k,l}``, bad-coloring certificates and degree brackets.

The searcher looks for the negation: a coloring of the copies of ``A`` in
``C`` with ``k`` colors such that every copy of ``B`` sees at least ``l + 1``
colors.  The arrow holds exactly when that search is exhausted.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from .classes import AgeCatalog, OutOfRange
from .expansions import ExpansionPair, list_expansions
from .structures import (
    CanonicalCode,
    Structure,
    StructureError,
    brute_force_isomorphic,
    canonical_form,
    enumerate_copies,
    induced_substructure,
)

log = logging.getLogger(__name__)

NODE_LIMIT = 10_000_000
COPY_LIMIT = 40


class ResourceLimit(RuntimeError):
    """A search guard was exceeded; no answer is given."""


@dataclass(frozen=True)
class ArrowQuery:
    c: Structure
    b: Structure
    a: Structure
    k: int
    l: int

    def __post_init__(self):
        if not (self.a.signature == self.b.signature == self.c.signature):
            raise StructureError("arrow query mixes signatures")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if not 1 <= self.l <= self.k:
            raise ValueError("l must satisfy 1 <= l <= k")


@dataclass
class Coloring:
    domain: list[tuple[int, ...]]
    values: tuple[int, ...]
    palette: list | None = None

    def __post_init__(self):
        self.values = tuple(int(v) for v in self.values)
        if len(self.values) != len(self.domain):
            raise ValueError("coloring length does not match its domain")

    def color(self, copy: tuple[int, ...]) -> int:
        return self.values[self.domain.index(tuple(copy))]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(zip(self.domain, self.values))


@dataclass
class ArrowCertificate:
    holds: bool
    bad_coloring: Coloring | None = None
    explored: int = 0
    pruned: int = 0
    vacuous: bool = False


def _covering(a_copies, b_copies) -> list[list[int]]:
    """For each copy of ``b``, the indices of the copies of ``a`` inside it."""
    out = []
    for bc in b_copies:
        support = set(bc)
        out.append([i for i, ac in enumerate(a_copies) if support.issuperset(ac)])
    return out


def check_arrow(q: ArrowQuery, node_limit: int = NODE_LIMIT, copy_limit: int = COPY_LIMIT) -> ArrowCertificate:
    """Decide ``q.c -> (q.b)^{q.a}_{k,l}`` exactly.

    Colors are assigned to the copies of ``a`` in lexicographic order; a new
    color may only be one more than the largest used so far.  A branch dies
    as soon as some copy of ``b`` cannot reach ``l + 1`` colors any more.

    Raises
    ------
    ResourceLimit
        When there are more copies than ``copy_limit`` or the search visits
        more than ``node_limit`` nodes.
    """
    a_copies = enumerate_copies(q.a, q.c)
    b_copies = enumerate_copies(q.b, q.c)
    if not b_copies:
        # every coloring is bad: there is no copy of b to look at
        return ArrowCertificate(False, Coloring(a_copies, [0] * len(a_copies)), vacuous=True)
    if q.l >= q.k:
        return ArrowCertificate(True, vacuous=True)
    if len(a_copies) > copy_limit:
        raise ResourceLimit(f"{len(a_copies)} copies exceed the copy limit {copy_limit}")
    need = q.l + 1
    cover = _covering(a_copies, b_copies)
    if any(len(ids) < need for ids in cover):
        return ArrowCertificate(True)
    m, k = len(a_copies), q.k
    touching = [[] for _ in range(m)]
    for j, ids in enumerate(cover):
        for i in ids:
            touching[i].append(j)
    counts = np.zeros((len(b_copies), k), dtype=np.int32)
    distinct = [0] * len(b_copies)
    uncolored = [len(ids) for ids in cover]
    values = [0] * m
    stats = {"explored": 0, "pruned": 0}

    def feasible(j: int) -> bool:
        return distinct[j] + min(uncolored[j], k - distinct[j]) >= need

    def search(i: int, top: int) -> bool:
        if i == m:
            return True
        for color in range(min(top + 2, k)):
            stats["explored"] += 1
            if stats["explored"] > node_limit:
                raise ResourceLimit(f"search exceeded {node_limit} nodes")
            values[i] = color
            for j in touching[i]:
                if counts[j, color] == 0:
                    distinct[j] += 1
                counts[j, color] += 1
                uncolored[j] -= 1
            if all(feasible(j) for j in touching[i]) and search(i + 1, max(top, color)):
                return True
            stats["pruned"] += 1
            for j in touching[i]:
                counts[j, color] -= 1
                if counts[j, color] == 0:
                    distinct[j] -= 1
                uncolored[j] += 1
        return False

    found = search(0, -1)
    bad = Coloring(a_copies, values) if found else None
    return ArrowCertificate(not found, bad, stats["explored"], stats["pruned"])


def _copies_by_brute_force(a: Structure, c: Structure) -> list[tuple[int, ...]]:
    return [s for s in itertools.combinations(range(c.size), a.size)
            if brute_force_isomorphic(induced_substructure(c, s), a)]


def verify_bad_coloring(q: ArrowQuery, coloring: Coloring) -> bool:
    """Whether every copy of ``b`` sees more than ``l`` colors.

    Copies are recomputed from scratch by subset enumeration and permutation
    isomorphism tests, so the check shares no code with the searcher.
    """
    a_copies = _copies_by_brute_force(q.a, q.c)
    if sorted(coloring.domain) != a_copies or any(not 0 <= v < q.k for v in coloring.values):
        return False
    colors = coloring.as_dict()
    for bc in _copies_by_brute_force(q.b, q.c):
        seen = {colors[ac] for ac in a_copies if set(ac) <= set(bc)}
        if len(seen) <= q.l:
            return False
    return True


BRUTE_LIMIT = 16


def brute_force_arrow(q: ArrowQuery, max_copies: int = BRUTE_LIMIT, chunk: int = 1 << 15) -> ArrowCertificate:
    """Decide the arrow by scanning all ``k**m`` colorings with numpy.

    The first bad coloring in the scan (copy 0 is the most significant digit) is
    returned.
    """
    a_copies = _copies_by_brute_force(q.a, q.c)
    b_copies = _copies_by_brute_force(q.b, q.c)
    m, k = len(a_copies), q.k
    if m > max_copies:
        raise ResourceLimit(f"{m} copies exceed the brute-force limit {max_copies}")
    if not b_copies:
        return ArrowCertificate(False, Coloring(a_copies, [0] * m), vacuous=True)
    cover = _covering(a_copies, b_copies)
    total = k ** m
    powers = k ** np.arange(m - 1, -1, -1, dtype=np.int64)
    explored = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % k
        explored += len(idx)
        bad = np.ones(len(idx), dtype=bool)
        for ids in cover:
            sub = digits[:, ids]
            seen = sum((sub == color).any(axis=1).astype(np.int32) for color in range(k))
            bad &= seen > q.l
            if not bad.any():
                break
        hits = np.flatnonzero(bad)
        if hits.size:
            return ArrowCertificate(False, Coloring(a_copies, digits[hits[0]].tolist()), explored)
    return ArrowCertificate(True, explored=explored)


@dataclass
class WitnessSearch:
    """Outcome of :func:`search_arrow_witness`; ``witness`` is ``None`` for NONE-UP-TO-BOUND."""

    witness: Structure | None
    max_size: int
    checked: list[tuple[Structure, ArrowCertificate]] = field(default_factory=list)
    skipped: list[tuple[Structure, str]] = field(default_factory=list)


def search_arrow_witness(cat: AgeCatalog, b: Structure, a: Structure, k: int, l: int,
                         max_size: int, **guards) -> WitnessSearch:
    """First catalog member ``c`` (size, then code) with ``c -> (b)^a_{k,l}``."""
    if max_size > cat.bound:
        raise OutOfRange(f"max size {max_size} exceeds catalog bound {cat.bound}")
    result = WitnessSearch(None, max_size)
    for c in cat.iter_members(max_size, min_size=b.size):
        try:
            cert = check_arrow(ArrowQuery(c, b, a, k, l), **guards)
        except ResourceLimit as exc:
            log.warning("skipping candidate of size %d: %s", c.size, exc)
            result.skipped.append((c, str(exc)))
            continue
        result.checked.append((c, cert))
        if cert.holds:
            result.witness = c
            break
    return result


def expansion_type_coloring(pair: ExpansionPair, c_star: Structure, a: Structure) -> Coloring:
    """Color each copy of ``a`` in the reduct of ``c_star`` by its expanded type.

    The palette lists canonical codes in order of first appearance.
    """
    from .expansions import reduct

    c = reduct(c_star, pair.base_cat.signature)
    copies = enumerate_copies(a, c)
    palette: list[CanonicalCode] = []
    values = []
    for copy in copies:
        code = canonical_form(induced_substructure(c_star, copy))
        if code not in palette:
            palette.append(code)
        values.append(palette.index(code))
    return Coloring(copies, values, palette)


def min_colors_on_copies(coloring: Coloring, copies_of_b: list[tuple[int, ...]]) -> int:
    """Fewest colors any copy of ``b`` sees."""
    colors = coloring.as_dict()
    best = None
    for bc in copies_of_b:
        support = set(bc)
        seen = len({v for ac, v in colors.items() if support.issuperset(ac)})
        best = seen if best is None else min(best, seen)
    return 0 if best is None else best


@dataclass
class DegreeInstance:
    b: Structure
    c: Structure
    c_star: Structure
    coloring: Coloring
    min_colors: int


@dataclass
class DegreeReport:
    """Bracket ``[lower, upper]`` for the Ramsey degree of ``a``.

    ``lower`` is certified against every ``c`` up to ``c_bound`` only; ``upper``
    is the expansion count ``t(a)``.
    """

    a: Structure
    lower: int
    upper: int
    b: Structure | None
    b_bound: int
    c_bound: int
    instances: list[DegreeInstance] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def verify(self) -> bool:
        """Re-check every recorded coloring as a bad coloring for ``l = lower - 1``."""
        if self.lower > self.upper:
            return False
        if self.lower < 2:
            return True
        for inst in self.instances:
            q = ArrowQuery(inst.c, inst.b, self.a, len(inst.coloring.palette), self.lower - 1)
            if not verify_bad_coloring(q, inst.coloring):
                return False
        return True


def ramsey_degree_report(cat: AgeCatalog, pair: ExpansionPair, a: Structure,
                         b_bound: int, c_bound: int) -> DegreeReport:
    """Bound the Ramsey degree of ``a`` using expansion-type colorings.

    For a candidate ``b``, each ``c`` contributes the best value over its
    expansions ``c*`` of the fewest colors seen by a copy of ``b``; the value
    of ``b`` is the minimum over ``c``.  Members ``c`` without a copy of
    ``b`` are skipped.  The lower bound is the best value over ``b``.
    """
    if cat.signature != pair.base_cat.signature:
        raise StructureError("catalog and pair base differ")
    if c_bound > min(cat.bound, pair.bound) or b_bound > c_bound:
        raise OutOfRange("need b_bound <= c_bound <= catalog bounds")
    upper = list_expansions(pair, a).count
    report = DegreeReport(a, 1, upper, None, b_bound, c_bound)
    for b in cat.iter_members(b_bound, min_size=a.size):
        if not enumerate_copies(a, b):
            continue
        value, instances = None, []
        for c in cat.iter_members(c_bound, min_size=b.size):
            b_copies = enumerate_copies(b, c)
            if not b_copies:
                continue
            best = None
            for c_star in list_expansions(pair, c).representatives:
                coloring = expansion_type_coloring(pair, c_star, a)
                score = min_colors_on_copies(coloring, b_copies)
                if best is None or score > best.min_colors:
                    best = DegreeInstance(b, c, c_star, coloring, score)
            instances.append(best)
            value = best.min_colors if value is None else min(value, best.min_colors)
            if value <= report.lower:
                break
        if value is not None and value > report.lower:
            report.lower, report.b, report.instances = value, b, instances
            if value == upper:
                break
    return report
