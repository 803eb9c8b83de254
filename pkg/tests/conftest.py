import itertools

import pytest
from hypothesis import settings, strategies as st

from structramsey.classes import ARC, linear_order, parts_signature
from structramsey.structures import Structure

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def digraph(n, arcs):
    return Structure.build(ARC, n, {"arc": arcs})


@pytest.fixture
def cyclic():
    return digraph(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def transitive():
    return linear_order(3)


@pytest.fixture
def point():
    return Structure.build(ARC, 1)


@st.composite
def structures(draw, signature=ARC, min_size=0, max_size=5, loops=False):
    n = draw(st.integers(min_size, max_size))
    rels = {}
    for name, arity in signature.symbols:
        tuples = [t for t in itertools.product(range(n), repeat=arity)
                  if loops or arity < 2 or len(set(t)) == arity]
        rels[name] = draw(st.lists(st.sampled_from(tuples), unique=True)) if tuples else []
    return Structure.build(signature, n, rels)


@st.composite
def tournaments(draw, min_size=1, max_size=6):
    n = draw(st.integers(min_size, max_size))
    arcs = []
    for x, y in itertools.combinations(range(n), 2):
        arcs.append((x, y) if draw(st.booleans()) else (y, x))
    return digraph(n, arcs)


@st.composite
def relabeled(draw, strategy):
    s = draw(strategy)
    perm = draw(st.permutations(range(s.size)))
    return s, s.relabel(perm)


PARTS2 = parts_signature(2)
PARTS3 = parts_signature(3)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for report in RESULTS.values():
            terminalreporter.write_line(report.line())
