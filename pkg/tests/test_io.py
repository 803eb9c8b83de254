import pytest
from hypothesis import given

from structramsey import io as sio
from structramsey.classes import linear_order

from conftest import PARTS2, PARTS3, structures


@given(structures(signature=PARTS2, max_size=5))
def test_text_roundtrip(s):
    text = sio.dumps(s)
    assert sio.loads(text) == s
    assert sio.dumps(sio.loads(text)) == text


@given(structures(signature=PARTS3, max_size=4))
def test_json_roundtrip(s):
    assert sio.from_json(sio.to_json(s)) == s
    import json
    assert sio.loads(json.dumps(sio.to_json(s))) == s


def test_example_document():
    s = sio.loads("signature: arc/2, P0/1\nsize: 3\narc: (0 1), (1 2), (2 0)\nP0: (0)\n")
    assert s.size == 3 and (2, 0) in s.rel("arc") and s.rel("P0") == {(0,)}


@pytest.mark.parametrize("text, line", [
    ("size: 2\n", 1),
    ("signature: arc/2\nsize: x\n", 2),
    ("signature: arc/2\nsize: 2\nedge: (0 1)\n", 3),
    ("signature: arc/2\nsize: 2\narc: (0 a)\n", 3),
    ("signature: arc\nsize: 2\n", 1),
])
def test_parse_errors_carry_lines(text, line):
    with pytest.raises(sio.ParseError) as info:
        sio.loads(text)
    assert info.value.line == line


def test_catalog_roundtrip(tmp_path):
    members = [linear_order(n) for n in range(1, 4)]
    name, bound, back = sio.loads_catalog(sio.dumps_catalog("lo", 3, members))
    assert (name, bound, back) == ("lo", 3, members)
    cache = sio.CatalogCache(tmp_path)
    assert cache.load("lo", 3) is None
    cache.store("lo", 3, members)
    assert cache.load("lo", 3) == members
    assert cache.load("lo", 4) is None


def test_cache_ignores_stale_format(tmp_path):
    cache = sio.CatalogCache(tmp_path)
    cache.store("lo", 2, [linear_order(1)])
    path = cache.path("lo", 2)
    path.write_text(path.read_text().replace("format: 1", "format: 99"))
    assert cache.load("lo", 2) is None


def test_cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv(sio.CACHE_ENV, str(tmp_path))
    assert sio.CatalogCache().directory == tmp_path
