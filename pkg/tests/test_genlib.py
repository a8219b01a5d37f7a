import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from oracles import PUBLISHED, adj_of, is_connected, is_two_connected, orbit_counts
from heavyham.genlib import (CANON_MAX_N, EnumerationCapError, IngestError, canonical_form,
                             canonical_labeling, codes_to_g6_bytes, enumerate_codes,
                             enumerate_graphs, graph_from_code, ingest, read_code_cache,
                             write_graph6)
from heavyham.graph import complete, cycle_graph, disjoint_union, parse_graph6, to_graph6


@pytest.mark.parametrize("n", range(1, 7))
def test_counts_match_orbit_partition(n):
    want = orbit_counts(n)
    for flt in ("all", "connected", "two_connected"):
        assert len(enumerate_codes(n, flt)) == want[flt]


@pytest.mark.parametrize("n", [7, 8])
def test_counts_match_published(n):
    for flt in ("all", "connected", "two_connected"):
        assert len(enumerate_codes(n, flt)) == PUBLISHED[flt][n]


def test_filters_agree_with_reference_connectivity():
    for g in enumerate_graphs(6):
        a = adj_of(g)
        assert g.is_connected() == is_connected(a)
    for g in enumerate_graphs(6, "2conn"):
        assert is_two_connected(adj_of(g))


def test_codes_are_canonical_and_sorted():
    codes = enumerate_codes(6, "connected")
    assert np.all(codes[1:] > codes[:-1])
    for c in codes[::7]:
        g = graph_from_code(int(c), 6)
        assert canonical_form(g).code == int(c)


@given(graphs(1, 10), st.randoms(use_true_random=False))
def test_canonical_form_invariant_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


@given(graphs(1, 9))
def test_canonical_labeling_is_an_isomorphism(g):
    cg, perm = canonical_labeling(g)
    assert sorted(perm) == list(range(g.n))
    assert g.relabel(perm) == cg


def test_canonical_form_separates_non_isomorphic():
    assert canonical_form(cycle_graph(6)) != canonical_form(
        disjoint_union(cycle_graph(3), cycle_graph(3)))


def test_canonical_cap():
    with pytest.raises(EnumerationCapError):
        canonical_form(cycle_graph(CANON_MAX_N + 1))


@pytest.mark.parametrize("n, flt", [(0, "all"), (10, "all"), (10, "connected"), (11, "2conn")])
def test_enumeration_caps(n, flt):
    with pytest.raises(EnumerationCapError):
        enumerate_codes(n, flt)


def test_unknown_filter():
    with pytest.raises(ValueError):
        enumerate_codes(4, "planar")


def test_stream_count_and_provenance():
    s = enumerate_graphs(5, "two_connected")
    assert len(s) == 10
    got = list(s)
    assert s.count == 10 and "generated" in s.provenance
    assert all(g.n == 5 for g in got)


def test_cache_round_trip(tmp_path):
    fresh = enumerate_codes(7, "connected", cache_dir=tmp_path)
    path = tmp_path / "gen-7-connected.g6"
    assert path.exists()
    assert np.array_equal(read_code_cache(path, 7), fresh)
    assert np.array_equal(enumerate_codes(7, "connected", cache_dir=tmp_path), fresh)
    lines = path.read_text().split()
    assert [parse_graph6(l) for l in lines[:5]] == [graph_from_code(int(c), 7) for c in fresh[:5]]


def test_corrupt_cache_rejected(tmp_path):
    (tmp_path / "gen-5-all.g6").write_bytes(b"D??\nD?")
    with pytest.raises(IngestError):
        enumerate_codes(5, "all", cache_dir=tmp_path)


def test_code_bytes_match_graph6_encoder():
    codes = enumerate_codes(8, "two_connected")[:200]
    lines = codes_to_g6_bytes(codes, 8).decode().split()
    assert lines == [to_graph6(graph_from_code(int(c), 8)) for c in codes]


def test_ingest_preserves_order_and_duplicates(tmp_path):
    f = tmp_path / "in.g6"
    f.write_text("C~\n\nDhc\nC~\n")
    s = ingest(f)
    got = list(s)
    assert got == [complete(4), cycle_graph(5), complete(4)]
    assert s.count == 3


def test_ingest_error_names_line(tmp_path):
    f = tmp_path / "bad.g6"
    f.write_text("C~\nC~~\n")
    with pytest.raises(IngestError, match=r"bad\.g6:2"):
        list(ingest(f))
    with pytest.raises(IngestError):
        ingest(tmp_path / "missing.g6")


def test_write_graph6_round_trip(tmp_path):
    gs = list(enumerate_graphs(5, "connected"))
    f = tmp_path / "out.g6"
    assert write_graph6(gs, f) == 21
    assert list(ingest(f)) == gs
