import json
import random

import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from oracles import adj_of, is_good_pair, pair_exists
from heavyham.composed import (UNKNOWN, CanonicalSequence, CompositionError, DisjointPathPair,
                               _pair_candidates, carrier_hamilton_path, check_lemma5,
                               find_good_pair, good_pairs, hamilton_path, is_composed,
                               lemma5_order_ok, spanning_pair, spanning_path_pair)
from heavyham.graph import (Cycle, Graph, GraphError, Path, complete, complete_bipartite,
                            cycle_graph, mask_of, parse_graph6, path_graph)
from heavyham.genlib import canonical_form
from heavyham.hamilton import iter_cycles

K23 = complete_bipartite(2, 3)  # parts {0, 1} and {2, 3, 4}


def random_composed(rnd, k, l, extra=0.2):
    """A host graph built from random extension steps plus random extra edges,
    returned with its ordering and y."""
    n = k + l + 1
    order = list(range(n))
    rnd.shuffle(order)
    v = lambda i: order[k + i]
    edges = {(v(-1), v(0)), (v(0), v(1)), (v(-1), v(1))}
    a = b = 1
    while (a, b) != (k, l):
        ops = [op for op, ok in (("left", a < k), ("right", b < l), ("both", a < k and b < l)) if ok]
        op = rnd.choice(ops)
        inside = [v(i) for i in range(-a, b + 1)]
        if op == "left":
            edges |= {(v(-a - 1), v(-a)), (v(-a - 1), rnd.choice(inside[1:]))}
            a += 1
        elif op == "right":
            edges |= {(v(b + 1), v(b)), (v(b + 1), rnd.choice(inside[:-1]))}
            b += 1
        else:
            edges |= {(v(-a - 1), v(-a)), (v(b + 1), v(b)), (v(-a - 1), v(b + 1))}
            a += 1
            b += 1
    for i in range(n):
        for j in range(i + 1, n):
            if rnd.random() < extra:
                edges.add((i, j))
    g = Graph.from_edges(n, [tuple(sorted(e)) for e in edges])
    return g, order, v(0)


def test_composed_examples():
    cs = is_composed(complete(3), [0, 1, 2], 1)
    assert cs.steps == [] and cs.verify()
    assert list(carrier_hamilton_path(cs)) == [1, 2, 0]
    cs = is_composed(complete(4), [0, 1, 2, 3], 1)
    assert [op for op, _ in cs.steps] == ["right"] and cs.verify()
    p = carrier_hamilton_path(cs)
    assert p.origin == 1 and p.terminus == 0 and len(p) == 4
    assert is_composed(path_graph(4), [0, 1, 2, 3], 1) is None
    with pytest.raises(CompositionError):
        is_composed(complete(4), [0, 1, 2, 3], 0)
    with pytest.raises(CompositionError):
        is_composed(complete(4), [0, 1, 1, 3], 1)


def test_spanning_pair_examples():
    cs = is_composed(complete(3), [0, 1, 2], 1)
    pr = spanning_pair(cs, 2)
    assert {tuple(pr.first), tuple(pr.second)} == {(2,), (1, 0)}
    pr = spanning_pair(cs, 1)
    assert {tuple(pr.first), tuple(pr.second)} == {(1,), (2, 0)}
    with pytest.raises(CompositionError):
        spanning_pair(cs, 0)
    cs = is_composed(complete(4), [0, 1, 2, 3], 1)
    pr = spanning_pair(cs, 2).validate(complete(4))
    assert pr.mask == 0b1111


@given(st.integers(1, 5), st.integers(1, 5), st.randoms(use_true_random=False))
def test_random_composed_graphs(k, l, rnd):
    g, order, y = random_composed(rnd, k, l)
    cs = is_composed(g, order, y)
    assert cs is not None and cs.verify()
    assert is_composed(g, order, y).steps == cs.steps
    carrier = cs.carrier()
    assert all(g.has_edge(u, w) for u, w in carrier.edges())
    p = carrier_hamilton_path(cs)
    assert p.is_valid(carrier) and p.mask == mask_of(order)
    assert p.origin == cs.v(0) and p.terminus == cs.v(-cs.k)
    for s in order:
        if s == cs.v(-cs.k):
            continue
        pr = spanning_pair(cs, s)
        assert pr.is_valid(carrier) and pr.mask == mask_of(order)
        assert set(pr.origins) == {cs.v(0), cs.v(cs.l)} and set(pr.termini) == {s, cs.v(-cs.k)}


@given(st.integers(1, 4), st.integers(1, 4), st.randoms(use_true_random=False))
def test_canonical_sequence_json_replay(k, l, rnd):
    g, order, y = random_composed(rnd, k, l, extra=0.0)
    cs = is_composed(g, order, y)
    back = CanonicalSequence.from_dict(json.loads(cs.to_json()), g)
    assert back.verify() and back.steps == cs.steps
    if cs.steps:
        # drop a required edge from the host: replay must fail
        u, w = cs.carrier_edges()[-1]
        broken = Graph.from_edges(g.n, [e for e in g.edges() if e != tuple(sorted((u, w)))])
        assert not CanonicalSequence.from_dict(cs.to_dict(), broken).verify()


def test_replay_rejects_bad_steps():
    cs = is_composed(complete(4), [0, 1, 2, 3], 1)
    assert not CanonicalSequence(cs.graph, cs.ordering, cs.k, [("left", 2)]).verify()
    assert not CanonicalSequence(cs.graph, cs.ordering, cs.k, []).verify()
    assert not CanonicalSequence(cs.graph, cs.ordering, cs.k, [("up", 2)]).verify()


@given(graphs(3, 8), st.randoms(use_true_random=False))
def test_path_searches_match_oracle(g, rnd):
    a = adj_of(g)
    verts = rnd.sample(range(g.n), rnd.randint(2, g.n))
    within = mask_of(verts)
    s, t = rnd.sample(verts, 2)
    p = hamilton_path(g, within, s, t)
    if p is not None:
        assert Path(p).is_valid(g) and Path(p).mask == within and p[0] == s and p[-1] == t
    if len(verts) >= 4:
        o1, o2, t1, t2 = rnd.sample(verts, 4)
        d = spanning_path_pair(g, within, (o1, o2), (t1, t2))
        assert (d is not None) == pair_exists(a, verts, (o1, o2), (t1, t2))
        if d is not None:
            assert d.is_valid(g) and d.mask == within


def test_degenerate_pair_allowed():
    d = DisjointPathPair(Path([2]), Path([1, 0]), (1, 2), (2, 0))
    assert d.is_valid(complete(3))
    assert not DisjointPathPair(Path([2, 1]), Path([1, 0]), (2, 1), (1, 0)).is_valid(complete(3))


def _oracle_first(g, c, x):
    a = adj_of(g)
    for x1, x2 in _pair_candidates(c, x):
        if is_good_pair(a, c.segment(x2, x1), x, x1, x2):
            return x1, x2
    return None


def test_good_pair_examples():
    # K23 with the 4-cycle 2 0 3 1: x = 0 has degree 3
    c = Cycle([2, 0, 3, 1])
    w = find_good_pair(K23, c, 0)
    want = _oracle_first(K23, c, 0)
    assert (w is None and want is None) or (w.x1, w.x2) == want
    assert find_good_pair(cycle_graph(5), Cycle(range(5)), 0) is None
    with pytest.raises(GraphError):
        find_good_pair(complete(3), Cycle([0, 1, 2]), 0)
    with pytest.raises(GraphError):
        find_good_pair(K23, c, 4)


def test_nonadjacent_heavy_neighbours_form_a_good_pair():
    # 2's cycle neighbours 0 and 1 are nonadjacent with degree sum 6 >= 5
    c = Cycle([2, 0, 3, 1])
    w = find_good_pair(K23, c, 2)
    assert w is not None and {w.x1, w.x2} == {0, 1}
    assert w.verify(K23) and w.degree_sum >= 5


def test_good_pair_limit_gives_unknown():
    g = cycle_graph(8)
    assert find_good_pair(g, Cycle(range(8)), 0, limit=3) is UNKNOWN
    assert not UNKNOWN


@given(graphs(4, 7), st.randoms(use_true_random=False))
def test_good_pairs_match_definition(g, rnd):
    cycles = [c for c in iter_cycles(g, 4)]
    if not cycles:
        return
    c = rnd.choice(cycles)
    x = rnd.choice(list(c))
    w = find_good_pair(g, c, x)
    want = _oracle_first(g, c, x)
    if want is None:
        assert w is None
    else:
        assert w is not None and (w.x1, w.x2) == want and w.verify(g)
    a = adj_of(g)
    for wit in good_pairs(g, c, x):
        assert wit.verify(g)
        assert is_good_pair(a, wit.segment, x, wit.x1, wit.x2)


def test_witness_tamper_detected():
    c = Cycle([2, 0, 3, 1])
    w = find_good_pair(K23, c, 2)
    from dataclasses import replace
    assert not replace(w, x_prime=w.chosen).verify(K23)
    assert not replace(w, path=Path([2])).verify(K23)


# K23 plus an edge inside the three-vertex side (graph6 DNw): 1 and 2 now have degree 3
K23_PLUS = Graph.from_edges(5, K23.edges() + [(2, 3)])


def test_lemma5_instance_in_k23_family():
    g = parse_graph6("DNw")
    assert canonical_form(g) == canonical_form(K23_PLUS)
    c = Cycle([0, 3, 1, 4])
    p = Path([3, 2, 4])
    wx, wy = find_good_pair(g, c, 3), find_good_pair(g, c, 4)
    assert (wx.x1, wx.x2, wy.x2, wy.x1) == (1, 0, 1, 0)
    v = check_lemma5(g, c, p, wx, wy)
    assert v.status == "confirmed"
    cover = Cycle(v.detail["covering_cycle"]).validate(g)
    assert cover.mask == 0b11111


def test_lemma5_skips():
    g = parse_graph6("DNw")
    c = Cycle([0, 3, 1, 4])
    wx, wy = find_good_pair(g, c, 3), find_good_pair(g, c, 4)
    assert check_lemma5(g, c, Path([3, 2, 4]), wy, wx).detail["reason"] == "witness cycle"
    assert check_lemma5(g, c, Path([3, 1, 4]), wx, wy).detail["reason"] == "path meets the cycle"
    assert check_lemma5(g, c, Path([3]), wx, wy).status == "skipped"
    assert check_lemma5(g, c.reversed(), Path([3, 2, 4]), wx, wy).status == "skipped"


def test_lemma5_order():
    c = Cycle(range(8))
    assert lemma5_order_ok(c, 1, 5, 2, 0, 4, 6)
    assert lemma5_order_ok(c, 1, 5, 3, 0, 3, 0)
    assert not lemma5_order_ok(c, 1, 5, 4, 0, 3, 6)
    assert not lemma5_order_ok(c, 5, 1, 2, 0, 4, 6)
