import io

import pytest

from treeauto import datasets, textio
from treeauto.construct import build_r
from treeauto.games import ADAM, EVE
from treeauto.shell import main, play

from oracles import constant_tree

AB = ("a", "b")
INF, EB, ALLB = (datasets.path(f"{n}.nta") for n in ("INF", "EB", "ALLB"))


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    d = tmp_path_factory.mktemp("pipe")
    assert run("family", INF, datasets.path("INF.pairs"), "-o", d / "fam")[0] == 0
    code, text = run("build-r", INF, d / "fam" / "INF_family.family", "-o", d / "R.ata",
                     "--check-band", "--format", "lines")
    assert code == 0 and "COMP 1" in text
    assert run("gen-corpus", "--alphabet", "a", "b", "--count", "30", "--seed", "4",
               "-o", d / "corpus")[0] == 0
    textio.write_text(d / "a.tree", textio.format_tree(constant_tree("a", AB)))
    textio.write_text(d / "b.tree", textio.format_tree(constant_tree("b", AB)))
    return d


def test_exit_codes_for_predicates(pipeline):
    assert run("empty", INF)[0] == 1
    assert run("empty", datasets.path("H.nta"))[0] in (0, 1)
    assert run("disjoint", EB, ALLB)[0] == 0
    assert run("disjoint", INF, INF)[0] == 1
    assert run("ambiguous", EB)[0] == 0
    assert run("ambiguous", INF)[0] == 1
    assert run("comp-check", pipeline / "R.ata", "--band", 0, 0)[0] == 0
    assert run("member", pipeline / "a.tree", INF)[0] == 0
    assert run("member", pipeline / "b.tree", pipeline / "R.ata")[0] == 1


def test_verify_verb(pipeline):
    code, text = run("verify", "--nta", INF, "--ata", pipeline / "R.ata",
                     "--family", pipeline / "fam" / "INF_family.family",
                     "--corpus", pipeline / "corpus")
    assert code == 0 and text.strip().endswith("RESULT agree=30 mismatch=0 blamed=0")


def test_lines_format(pipeline):
    code, text = run("productive", INF, "--format", "lines")
    assert code == 0 and all(len(line.split(" ", 1)) == 2 for line in text.splitlines())
    code, text = run("count-runs", pipeline / "a.tree", EB, "--format", "lines")
    assert text.strip() == "RUNS MANY"


def test_writers_produce_parseable_files(tmp_path):
    leftA = datasets.path("leftA2.ata")
    for verb, args in (("complement", [leftA]), ("union", [leftA, leftA]),
                       ("intersect", [leftA, leftA]), ("normalize", [leftA, "--band", 0, 1])):
        target = tmp_path / f"{verb}.ata"
        assert run(verb, *args, "-o", target)[0] == 0
        textio.read_ata(target)
    assert run("prune", INF, "-o", tmp_path / "p.nta")[0] == 0
    assert textio.read_nta(tmp_path / "p.nta").states == ("s1", "s2")
    assert run("delta-rooted", INF, 0, "-o", tmp_path / "d.nta")[0] == 0


def test_usage_and_parse_errors(tmp_path, capsys):
    assert run("frobnicate")[0] == 2
    assert run("empty", INF, "--bogus")[0] == 2
    assert run("family", INF, datasets.path("INF.pairs"))[0] == 2
    broken = tmp_path / "broken.nta"
    broken.write_text("nta X\nalphabet a\nstates q\n")
    assert run("empty", broken)[0] == 2
    assert "broken.nta:3" in capsys.readouterr().err
    assert run("empty", tmp_path / "missing.nta")[0] == 2


@pytest.fixture(scope="module")
def r_inf(family):
    return build_r(datasets.nta("INF"), family("INF"))


def scripted(answers):
    it = iter(answers)
    return lambda prompt: next(it)


def test_play_machine_eve_wins_on_accepted_tree(r_inf):
    lines = play(constant_tree("a", AB), r_inf, ADAM, read=scripted(["0"] * 50),
                 out=io.StringIO())
    assert lines[0] == f"PREDICTION {EVE}"
    assert lines[-1].startswith(f"OUTCOME {EVE}")


def test_play_prediction_on_rejected_tree(r_inf):
    lines = play(constant_tree("b", AB), r_inf, EVE, read=scripted(["0"] * 50),
                 out=io.StringIO())
    assert lines[0] == f"PREDICTION {ADAM}"
    assert lines[-1].startswith(f"OUTCOME {ADAM}")


def test_play_quit_and_illegal_moves(r_inf, pipeline, monkeypatch):
    lines = play(constant_tree("a", AB), r_inf, ADAM, read=scripted(["99", "x", "quit"]),
                 out=io.StringIO())
    assert lines.count("illegal move") == 2 and lines[-1] == "QUIT"
    monkeypatch.setattr("sys.stdin", io.StringIO("quit\n"))
    out = io.StringIO()
    assert main(["play", str(pipeline / "a.tree"), str(pipeline / "R.ata")], out) == 0
    assert out.getvalue().splitlines()[-1] == "QUIT"
