import json

import pytest

from oracles import adj_of, hamiltonian_by_permutations
from heavyham import cli, harness
from heavyham.genlib import EnumerationCapError, enumerate_graphs, ingest
from heavyham.graph import complete_bipartite, parse_graph6
from heavyham.hamilton import kernel_cycle_search
from heavyham.heavy import ConditionProfile, is_f_heavy, is_o_heavy, profile


def test_suite_registry():
    core = harness.get_suite("all")
    ids = {s.id.split(":")[0] for s in core}
    assert ids == set(harness.CORE)
    assert harness.get_suite("t10")[0].describe() == "k13.f & z2.f"
    assert harness.get_suite("t16")[0].n_floor == 10
    assert not harness.get_suite("problem4")[0].expected
    with pytest.raises(KeyError):
        harness.get_suite("t99")


def test_t10_clean_at_8():
    rec = harness.verify_theorem(harness.get_suite("t10")[0], 8)
    assert rec.counterexamples == [] and rec.hits > 0
    assert rec.scanned == sum(len(enumerate_graphs(n, "2conn")) for n in range(3, 9))


def test_t13_p6_clean_at_8():
    spec = next(s for s in harness.get_suite("t13") if s.id == "t13:p6")
    rec = harness.verify_theorem(spec, 8)
    assert rec.clean and rec.counterexamples == []


def test_corpus_table_agrees_with_profiles():
    tab = harness.corpus_table(6)
    for i, g in enumerate(enumerate_graphs(6, "2conn")):
        pr = profile(g)
        assert bool(tab.hamiltonian()[i]) == pr.hamiltonian
        for name in ("k13", "z2", "w"):
            for kind in ("free", "o", "f"):
                assert bool(tab.atom(name, kind)[i]) == pr.holds(name, kind)


def test_file_source_matches_generated(tmp_path):
    f = tmp_path / "c7.g6"
    cli.main(["enumerate", "--n", "7", "--filter", "2conn", "--out", str(f)])
    spec = harness.get_suite("fan")[0]
    from_file = harness.verify_theorem(spec, 7, ingest(f), n_min=7)
    generated = harness.verify_theorem(spec, 7, n_min=7)
    assert from_file.hits == generated.hits and from_file.scanned == generated.scanned == 468


def test_counterexample_must_reverify():
    # Petersen is 2-connected and non-Hamiltonian; claw-free fails, so nothing is filed
    g = parse_graph6("IheA@GUAo")
    assert not harness.reverify_counterexample(harness.get_suite("t1")[0], g)
    spec = harness.TheoremSpec("cubic", (("c3", "free"),))
    assert harness.reverify_counterexample(spec, g)


def test_below_floor_is_not_a_counterexample():
    rec = harness.VerificationRecord("t16", "k13.f & z3.f", 3, 9, "generated")
    harness._file(rec, harness.get_suite("t16")[0], [parse_graph6("H@HIkYR")])
    assert rec.below_floor == ["H@HIkYR"] and rec.counterexamples == []


def test_cap_without_source():
    with pytest.raises(EnumerationCapError):
        harness.verify_theorem(harness.get_suite("t10")[0], 11)


def test_report_payload_deterministic():
    spec = harness.get_suite("t7")[0]
    a = harness.verify_theorem(spec, 7)
    b = harness.verify_theorem(spec, 7)
    assert a.payload() == b.payload()
    assert json.loads(a.to_json())["record"] == a.payload()


def test_separation_examples():
    assert harness.search_separation("c3", "o_not_f", 8).status == "exhausted"
    k33 = complete_bipartite(3, 3)
    assert is_o_heavy(k33, "k13") and is_f_heavy(k33, "k13")  # so never a witness
    res = harness.search_separation("k13", "o_not_f", 6)
    if res.status == "witness":
        g = parse_graph6(res.g6)
        assert is_o_heavy(g, "k13") and not is_f_heavy(g, "k13")
    res = harness.search_separation("z2", "f_not_o", 7)
    assert res.status == "witness" and res.reverified
    g = parse_graph6(res.g6)
    assert is_f_heavy(g, "z2") and not is_o_heavy(g, "z2")
    with pytest.raises(ValueError):
        harness.search_separation("z2", "sideways", 7)


def test_reverse_witness_from_file(tmp_path):
    f = tmp_path / "w.g6"
    f.write_text("H@HIcYQ\n")
    out = harness.reverse_witnesses(8, f, families=["t1"])
    assert out[0]["pattern"] == "k13" and out[0]["status"] == "verified_from_file"
    assert out[1]["status"] == "open"


def test_classify_examples(tmp_path):
    out = tmp_path / "p.jsonl"
    assert harness.classify_stream(enumerate_graphs(4, "2conn"), out) == 3
    lines = out.read_text().splitlines()
    profs = [ConditionProfile.from_json(l) for l in lines]
    assert [p.to_json() for p in profs] == lines
    assert all(p.hamiltonian and p.two_connected for p in profs)
    empty = tmp_path / "e.g6"
    empty.write_text("")
    assert harness.classify_stream(ingest(empty), tmp_path / "e.jsonl") == 0


def test_batch_profiles_match_single_graph_profiles(tmp_path):
    f = tmp_path / "c.g6"
    cli.main(["enumerate", "--n", "6", "--filter", "connected", "--out", str(f)])
    batch = list(harness.profiles_of(enumerate_graphs(6, "connected")))
    single = list(harness.profiles_of(ingest(f)))
    assert [p.to_dict() for p in batch] == [p.to_dict() for p in single]
    for p in batch:
        assert p.hamiltonian == hamiltonian_by_permutations(adj_of(p.graph()))


def test_classify_unwritable(tmp_path):
    with pytest.raises(OSError, match="nope"):
        harness.classify_stream(enumerate_graphs(4, "2conn"), tmp_path / "nope" / "x.jsonl")


def test_sweep_n5_clean():
    rep = harness.sweep_lemmas(5)
    assert rep.violations == []
    assert all(rep.checked[k] > 0 for k in ("lemma2", "lemma3", "lemma5"))


def test_sweep_precondition():
    with pytest.raises(harness.PreconditionError):
        harness.sweep_lemmas(9)


def test_sweep_detects_corrupted_solver():
    def ignores_allowed(g, required, min_len, allowed):
        return kernel_cycle_search(g, required, min_len, g.full)

    rep = harness.sweep_lemmas(5, lemmas=(2,), solver=ignores_allowed)
    assert rep.count(2) > 0
    assert not any(v["confirmed_by_reference"] for v in rep.violations)

    def never_finds(g, required, min_len, allowed):
        return None if required else kernel_cycle_search(g, required, min_len, allowed)

    rep = harness.sweep_lemmas(5, lemmas=(5,), solver=never_finds)
    assert rep.count(5) > 0


# -- command line -----------------------------------------------------------------------

def test_cli_enumerate_and_classify(tmp_path, capsys):
    out = tmp_path / "g.g6"
    assert cli.main(["enumerate", "--n", "5", "--filter", "2conn", "--out", str(out)]) == 0
    assert len(out.read_text().split()) == 10
    prof = tmp_path / "p.jsonl"
    assert cli.main(["classify", "--in", str(out), "--out", str(prof)]) == 0
    assert len(prof.read_text().splitlines()) == 10
    assert cli.main(["classify", "--gen", "4", "--out", str(prof)]) == 0
    assert len(prof.read_text().splitlines()) == 3


def test_cli_verify_exit_codes(tmp_path, capsys):
    rep = tmp_path / "r.jsonl"
    assert cli.main(["verify", "--theorem", "t10", "--n-max", "7", "--report", str(rep)]) == 0
    assert json.loads(rep.read_text())["record"]["counterexamples"] == []
    assert cli.main(["verify", "--theorem", "t10", "--n-max", "11", "--report", str(rep)]) == 3
    bad = tmp_path / "bad.g6"
    bad.write_text("IheA@GUAo\n")  # Petersen: cubic, triangle-free, non-Hamiltonian
    # Petersen contains claws, so no claw-free hypothesis applies to it
    assert cli.main(["verify", "--theorem", "t1", "--n-max", "10", "--in", str(bad),
                     "--report", str(rep)]) == 0
    assert cli.main(["verify", "--theorem", "nope", "--n-max", "5", "--report", str(rep)]) == 3


def test_cli_found_exit_code(tmp_path, monkeypatch):
    # a hypothesis every graph meets: Petersen then counts as a counterexample
    monkeypatch.setitem(harness.SUITES, "anything",
                        [harness.TheoremSpec("anything", (("c3", "f"),))])
    f = tmp_path / "p.g6"
    f.write_text("IheA@GUAo\n")
    rep = tmp_path / "r.jsonl"
    assert cli.main(["verify", "--theorem", "anything", "--n-max", "10", "--in", str(f),
                     "--report", str(rep)]) == 2
    assert json.loads(rep.read_text())["record"]["counterexamples"] == ["IheA@GUAo"]


def test_cli_separate_monotone_reverse(tmp_path, capsys):
    assert cli.main(["separate", "--pattern", "c3", "--direction", "o-not-f", "--n-max", "6"]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "exhausted"
    assert cli.main(["monotone", "--smaller", "z2", "--larger", "w", "--n-max", "6"]) == 0
    capsys.readouterr()
    assert cli.main(["reverse", "--n-max", "6", "--report", str(tmp_path / "r.jsonl")]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == sum(len(f[2]) for f in harness.REVERSE_FAMILIES.values())


def test_cli_lemmas_and_realize(tmp_path, capsys):
    rep = tmp_path / "l.jsonl"
    assert cli.main(["lemmas", "--n-max", "5", "--report", str(rep)]) == 0
    assert json.loads(rep.read_text())["record"]["violations"] == []
    assert cli.main(["lemmas", "--n-max", "9", "--report", str(rep)]) == 3
    capsys.readouterr()
    assert cli.main(["realize-ocycle", "--g6", "D]o", "--seq", "0,2,1"]) == 0
    out = capsys.readouterr().out
    assert "cycle:" in out and "step 1" in out
    assert cli.main(["realize-ocycle", "--g6", "Dhc", "--seq", "0,2,4"]) == 3
    assert cli.main(["realize-ocycle", "--g6", "D~~", "--seq", "0,1,2"]) == 3
