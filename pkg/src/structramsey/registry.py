"""Named catalogs and expansion pairs, with optional on-disk caching."""

from __future__ import annotations

from functools import lru_cache

from .circle import Family, family_spec, qn_spec, sorted_parts_spec
from .classes import AgeCatalog, ClassSpec, lo_spec, partitions_spec, tournaments_spec
from .expansions import ExpansionPair
from .io import CatalogCache


def family_names() -> list[str]:
    return ["s2", "s2star", "s3", "s3star", "lo", "tournaments", "q2", "q3", "q2k", "partitions:2", "partitions:3"]


def spec_for(name: str) -> ClassSpec:
    """Class spec for a family name such as ``s2``, ``q3``, ``qn:4`` or ``partitions:2``."""
    for fam in Family:
        if name == fam.value:
            return family_spec(fam)
    if name == "lo":
        return lo_spec()
    if name == "tournaments":
        return tournaments_spec()
    if name == "q2k":
        return sorted_parts_spec(2)
    head, _, tail = name.partition(":")
    if head in ("q2", "q3") and not tail:
        return qn_spec(int(head[1]))
    if head in ("qn", "partitions", "qn-sorted") and tail.isdigit():
        n = int(tail)
        return {"qn": qn_spec, "partitions": partitions_spec, "qn-sorted": sorted_parts_spec}[head](n)
    raise KeyError(f"unknown family {name!r}; known: {', '.join(family_names())}")


@lru_cache(maxsize=None)
def catalog(name: str, bound: int, cache_dir: str | None = None) -> AgeCatalog:
    """Catalog of a named family, read from or written to the cache when configured."""
    spec = spec_for(name)
    cache = CatalogCache(cache_dir)
    members = cache.load(spec.name, bound)
    if members is not None:
        return AgeCatalog(spec, bound, preloaded=members)
    cat = AgeCatalog(spec, bound)
    if cache.directory is not None:
        cache.store(spec.name, bound, cat.iter_members())
    return cat


# base family, expanded family
PAIRS = {
    "s2": ("s2", "s2star"),
    "s3": ("s3", "s3star"),
    "q2": ("partitions:2", "q2"),
    "q2k": ("partitions:2", "q2k"),
    "lo-q2": ("lo", "q2"),
    "lo-q2k": ("lo", "q2k"),
    "lo": ("lo", "lo"),
}


@lru_cache(maxsize=None)
def standard_pair(name: str, bound: int, cache_dir: str | None = None) -> ExpansionPair:
    try:
        base, star = PAIRS[name]
    except KeyError:
        raise KeyError(f"unknown pair {name!r}; known: {', '.join(PAIRS)}") from None
    return ExpansionPair(catalog(base, bound, cache_dir), catalog(star, bound, cache_dir), name=name)
