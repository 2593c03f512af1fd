import json

import pytest

from depth2kit.cli import main


@pytest.fixture()
def f2_file(tmp_path):
    path = tmp_path / "f2.json"
    path.write_text(json.dumps({"worlds": 2, "edges": [[0, 0], [0, 1], [1, 1]]}))
    return str(path)


@pytest.fixture()
def chain_alg_file(tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(json.dumps({"atoms": 2, "f_on_atoms": [1, 3]}))
    return str(path)


def test_parse_ok(capsys):
    assert main(["parse", "p -> <>p"]) == 0
    assert capsys.readouterr().out.strip() == "p -> <>p"


def test_parse_error(capsys):
    assert main(["parse", "(<p"]) == 2
    err = capsys.readouterr().err
    assert "column 2" in err


def test_frame_check_condition(f2_file, capsys):
    assert main(["frame", "check", f2_file, "--condition", "reflexive"]) == 0
    assert main(["frame", "check", f2_file, "--condition", "symmetric"]) == 1
    out = capsys.readouterr().out
    assert "witness" in out


def test_frame_check_axiom(f2_file, capsys):
    assert main(["frame", "check", f2_file, "--axiom", "B"]) == 1
    out = capsys.readouterr().out
    assert '"p": [0]' in out
    assert main(["frame", "check", f2_file, "--axiom", "T"]) == 0


def test_frame_check_unknown_condition(f2_file, capsys):
    assert main(["frame", "check", f2_file, "--condition", "bogus"]) == 2


def test_frame_classify(f2_file, capsys):
    assert main(["frame", "classify", f2_file]) == 0
    out = capsys.readouterr().out
    assert "depth: 2" in out
    assert "level 1: {0}" in out
    assert "extremal:" in out


def test_alg_classify(chain_alg_file, capsys):
    assert main(["alg", "classify", chain_alg_file]) == 0
    out = capsys.readouterr().out
    assert "closed elements: [0, 1, 3]" in out
    assert "FMA_proper(1)" in out
    assert "subdirectly_irreducible" in out


def test_dual_round_trip(f2_file, tmp_path, capsys):
    alg_path = str(tmp_path / "alg.json")
    assert main(["dual", "cm", f2_file, "--out", alg_path]) == 0
    data = json.loads(open(alg_path).read())
    assert data == {"atoms": 2, "f_on_atoms": [1, 3]}

    assert main(["dual", "ult", alg_path]) == 0
    frame = json.loads(capsys.readouterr().out)
    assert frame["worlds"] == 2
    assert sorted(map(tuple, frame["edges"])) == [(0, 0), (0, 1), (1, 1)]


def test_enum(capsys):
    assert main(["enum", "--worlds", "2", "--quasiorder"]) == 0
    out = capsys.readouterr().out
    assert "total: 3" in out
    assert main(["enum", "--worlds", "3", "--quasiorder", "--max-depth", "2",
                 "--format", "json"]) == 0
    frames = json.loads(capsys.readouterr().out)
    assert len(frames) == 8
    assert main(["enum", "--worlds", "9", "--quasiorder"]) == 3


def test_eval(f2_file, capsys):
    assert main(["eval", "--frame", f2_file, "--formula", "<>p",
                 "--valuation", '{"p": [0]}']) == 0
    out = capsys.readouterr().out
    assert "worlds: [0]" in out

    assert main(["eval", "--frame", f2_file, "--formula", "p -> <>p"]) == 0
    assert main(["eval", "--frame", f2_file, "--formula", "p -> []p"]) == 1


def test_eval_budget(f2_file, monkeypatch, capsys):
    monkeypatch.setenv("D2_BUDGET", "2")
    assert main(["eval", "--frame", f2_file, "--formula", "p -> <>p"]) == 3
    assert "budget" in capsys.readouterr().err


def test_verify_single_suite(capsys):
    assert main(["verify", "--suite", "meets", "--atoms", "2"]) == 0
    out = capsys.readouterr().out
    assert "meets" in out and "PASS" in out


def test_verify_json(capsys):
    assert main(["verify", "--suite", "sum_and_union", "--atoms", "3",
                 "--format", "json"]) == 0
    reports = json.loads(capsys.readouterr().out)
    assert reports[0]["suite"] == "sum_and_union"
    assert reports[0]["failures"] == []


def test_meet_axiom(capsys):
    assert main(["meet-axiom", "p -> <>p", "<><>p -> <>p"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "[](v0 -> <>v0) | [](<><>v1 -> <>v1)"


def test_missing_file(capsys):
    assert main(["frame", "classify", "/nonexistent/frame.json"]) == 2


def test_size_error_exit_code(tmp_path, capsys):
    path = tmp_path / "big.json"
    path.write_text(json.dumps({"worlds": 13, "edges": []}))
    assert main(["frame", "classify", str(path)]) == 3
