import random

import pytest
from hypothesis import given, strategies as st

from conftest import graphs, random_ocycle
from oracles import adj_of, cycle_through
from heavyham.graph import Cycle, Graph, complete_bipartite, cycle_graph
from heavyham.ocycle import (OCycleError, ore_closure_edge_count, realize, realize_traced,
                             validate_ocycle)

K23 = complete_bipartite(2, 3)  # 0, 1 on the small side


def test_validate_examples():
    c4 = cycle_graph(4)
    assert validate_ocycle(c4, [0, 1, 2, 3]).kinds == ("real",) * 4
    assert validate_ocycle(c4, [0, 2, 1, 3]).kinds == ("virtual", "real", "virtual", "real")
    with pytest.raises(OCycleError, match=r"\(0,2\)"):
        validate_ocycle(cycle_graph(5), [0, 2, 4])
    with pytest.raises(OCycleError, match="repeated"):
        validate_ocycle(c4, [0, 1, 0])
    with pytest.raises(OCycleError):
        validate_ocycle(c4, [0, 1])


def test_realize_examples():
    c5 = cycle_graph(5)
    assert realize(c5, validate_ocycle(c5, [0, 1, 2, 3, 4])) == Cycle([0, 1, 2, 3, 4])
    oc = validate_ocycle(K23, [0, 2, 1])
    assert oc.virtual_count == 1
    c = realize(K23, oc)
    assert len(c) == 4 and {0, 1, 2} <= set(c)
    c = realize(cycle_graph(4), validate_ocycle(cycle_graph(4), [0, 2, 1, 3]))
    assert c.mask == 0b1111


def test_closure_counts():
    assert ore_closure_edge_count(cycle_graph(4)) == 6
    assert ore_closure_edge_count(cycle_graph(5)) == 5
    assert ore_closure_edge_count(K23) == 7


@given(graphs(5, 12, density=0.5), st.randoms(use_true_random=False))
def test_realize_random(g, rnd):
    oc_seq = random_ocycle(g, rnd)
    if oc_seq is None:
        return
    oc = validate_ocycle(g, oc_seq)
    r = realize_traced(g, oc)
    r.cycle.validate(g)
    assert set(oc.vertices) <= set(r.cycle)
    assert not r.fallback
    left = [s["virtual_left"] for s in r.steps]
    assert left == sorted(left, reverse=True) and len(set(left)) == len(left)
    if left:
        assert left[-1] == 0 and left[0] < oc.virtual_count
    if g.n <= 8:
        assert cycle_through(adj_of(g), oc.vertices)


def test_realize_many_random_instances_without_fallback():
    rnd = random.Random(7)
    done = 0
    while done < 200:
        n = rnd.randint(5, 14)
        p = rnd.choice((0.3, 0.5, 0.7))
        g = Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j) if rnd.random() < p])
        seq = random_ocycle(g, rnd)
        if seq is None:
            continue
        r = realize_traced(g, validate_ocycle(g, seq))
        assert not r.fallback
        assert set(seq) <= set(r.cycle.validate(g))
        done += 1
