"""Text and JSON serialization of structures and catalogs.

Structure text documents look like::

    signature: arc/2, P0/1
    size: 3
    arc: (0 1), (1 2), (2 0)
    P0: (0)

Tuples are written in sorted order so that ``dumps(loads(text)) == text`` for
any document produced by :func:`dumps`.
"""

from __future__ import annotations

import json
import os
import re
from pathlib import Path
from typing import Iterable

from .structures import Signature, Structure, StructureError

FORMAT_VERSION = 1
CACHE_ENV = "STRUCTRAMSEY_CACHE"


class ParseError(StructureError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def dumps(s: Structure) -> str:
    lines = [f"signature: {s.signature}".rstrip(), f"size: {s.size}"]
    for (name, _), rel in zip(s.signature.symbols, s.relations):
        tuples = ", ".join("(" + " ".join(map(str, t)) + ")" for t in sorted(rel))
        lines.append(f"{name}: {tuples}".rstrip())
    return "\n".join(lines) + "\n"


_TUPLE = re.compile(r"\(([^()]*)\)")


def _parse_signature(text: str, line: int) -> Signature:
    symbols = []
    for item in filter(None, (p.strip() for p in text.split(","))):
        name, sep, arity = item.partition("/")
        if not sep or not arity.strip().isdigit():
            raise ParseError(f"bad symbol {item!r}, expected name/arity", line)
        symbols.append((name.strip(), int(arity)))
    try:
        return Signature(tuple(symbols))
    except StructureError as exc:
        raise ParseError(str(exc), line) from None


def loads(text: str, first_line: int = 1) -> Structure:
    """Parse a text document or a JSON rendering of a structure."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return from_json(json.loads(stripped))
    lines = [(i + first_line, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if len(lines) < 2:
        raise ParseError("expected 'signature:' and 'size:' lines", first_line)
    (n1, l1), (n2, l2) = lines[0], lines[1]
    key, _, rest = l1.partition(":")
    if key.strip() != "signature":
        raise ParseError("first line must start with 'signature:'", n1)
    signature = _parse_signature(rest, n1)
    key, _, rest = l2.partition(":")
    if key.strip() != "size" or not rest.strip().isdigit():
        raise ParseError("second line must be 'size: <n>'", n2)
    size = int(rest)
    relations: dict[str, list] = {}
    for lineno, ln in lines[2:]:
        name, sep, rest = ln.partition(":")
        name = name.strip()
        if not sep or name not in signature.names:
            raise ParseError(f"unknown symbol line {ln.strip()!r}", lineno)
        if name in relations:
            raise ParseError(f"symbol {name!r} listed twice", lineno)
        leftover = _TUPLE.sub("", rest).replace(",", "").strip()
        if leftover:
            raise ParseError(f"cannot parse tuples near {leftover!r}", lineno)
        try:
            relations[name] = [tuple(int(x) for x in m.split()) for m in _TUPLE.findall(rest)]
        except ValueError:
            raise ParseError("tuple entries must be integers", lineno) from None
    try:
        return Structure.build(signature, size, relations)
    except StructureError as exc:
        raise ParseError(str(exc), first_line) from None


def to_json(s: Structure) -> dict:
    return {
        "signature": [[name, arity] for name, arity in s.signature.symbols],
        "size": s.size,
        "relations": {name: [list(t) for t in sorted(rel)]
                      for (name, _), rel in zip(s.signature.symbols, s.relations)},
    }


def from_json(data: dict) -> Structure:
    try:
        signature = Signature(tuple((name, arity) for name, arity in data["signature"]))
        return Structure.build(signature, int(data["size"]), data.get("relations", {}))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed JSON structure: {exc}") from None


def read_structure(path: str | os.PathLike) -> Structure:
    return loads(Path(path).read_text())


def write_structure(s: Structure, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps(s))


# --- catalog files ------------------------------------------------------------

SEPARATOR = "---"


def dumps_catalog(name: str, bound: int, members: Iterable[Structure]) -> str:
    out = [f"catalog: {name}\nbound: {bound}\nformat: {FORMAT_VERSION}\n"]
    for s in members:
        out.append(f"{SEPARATOR}\n{dumps(s)}")
    return "".join(out)


def loads_catalog(text: str) -> tuple[str, int, list[Structure]]:
    chunks = []
    current: list[str] = []
    start = 1
    starts = [1]
    for i, ln in enumerate(text.splitlines(), start=1):
        if ln.strip() == SEPARATOR:
            chunks.append("\n".join(current))
            current = []
            starts.append(i + 1)
        else:
            current.append(ln)
    chunks.append("\n".join(current))
    header = {}
    for ln in chunks[0].splitlines():
        if ln.strip():
            key, _, value = ln.partition(":")
            header[key.strip()] = value.strip()
    if "catalog" not in header or "bound" not in header:
        raise ParseError("catalog header needs 'catalog:' and 'bound:' lines", start)
    if int(header.get("format", FORMAT_VERSION)) != FORMAT_VERSION:
        raise ParseError(f"unsupported catalog format {header['format']}", start)
    members = [loads(chunk, first_line=line) for chunk, line in zip(chunks[1:], starts[1:])]
    return header["catalog"], int(header["bound"]), members


class CatalogCache:
    """Directory of catalog files keyed by family, bound and format version."""

    def __init__(self, directory: str | os.PathLike | None = None):
        directory = directory or os.environ.get(CACHE_ENV)
        self.directory = Path(directory) if directory else None

    def path(self, family: str, bound: int) -> Path | None:
        if self.directory is None:
            return None
        safe = re.sub(r"[^A-Za-z0-9_.-]", "_", family)
        return self.directory / f"{safe}-b{bound}-v{FORMAT_VERSION}.cat"

    def load(self, family: str, bound: int) -> list[Structure] | None:
        path = self.path(family, bound)
        if path is None or not path.exists():
            return None
        try:
            name, cached_bound, members = loads_catalog(path.read_text())
        except (ParseError, ValueError):
            return None
        if name != family or cached_bound != bound:
            return None
        return members

    def store(self, family: str, bound: int, members: Iterable[Structure]) -> None:
        path = self.path(family, bound)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(dumps_catalog(family, bound, members))
        tmp.replace(path)
