import os
import sys

import pytest
from hypothesis import settings, strategies as st

from heavyham.graph import Graph
from heavyham.heavy import VirtualEdgeSet

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=9, density=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    if density is None:
        keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    else:
        keep = [draw(st.floats(0, 1)) < density for _ in pairs]
    return Graph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


def random_ocycle(g, rnd, tries=30):
    """A random cycle of the virtual-edge graph, grown by a random walk."""
    ve = VirtualEdgeSet(g)
    for _ in range(tries):
        start = rnd.randrange(g.n)
        seq = [start]
        while True:
            nxt = [w for w in range(g.n) if ve.neighbours(seq[-1]) >> w & 1 and w not in seq]
            closers = len(seq) >= 3 and ve.neighbours(seq[-1]) >> start & 1
            if closers and (not nxt or rnd.random() < 0.3):
                return seq
            if not nxt:
                break
            seq.append(rnd.choice(nxt))
    return None


@pytest.fixture(scope="session")
def cache_dir():
    """Directory holding the n = 10 corpus, when one has been built."""
    return os.environ.get("HEAVYHAM_CACHE") or (
        "/root/cache" if os.path.exists("/root/cache/gen-10-two_connected.g6") else None)


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
