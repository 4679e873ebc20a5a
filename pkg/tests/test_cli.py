import json

import pytest

from toricdual.cli import main
from toricdual.exactla import parse_matrix

A4567 = r"1 4\n4 5 6 7"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_graver_text(capsys):
    code, out, _ = run(capsys, "graver", A4567)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 29 and "1 3 -2 -1" in lines


def test_graver_json_and_oracle(capsys, data_dir):
    code, out, _ = run(capsys, "graver", str(data_dir / "a4567.mat"), "--format", "json", "--oracle", "--box", "4")
    assert code == 0
    d = json.loads(out)
    assert d["count"] == "29" and [1, 3, -2, -1] in d["graver"]


def test_analyze_example_glm(capsys, data_dir):
    code, out, _ = run(capsys, "analyze", str(data_dir / "ex35.mat"), "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["selfdual"] and d["robustness"] == "strongly_robust"
    assert d["counts"]["graver"] == "29" and d["counts"]["markov_bases"] == "1"
    assert len(d["bases"]["indispensables"]) == 29


def test_analyze_text(capsys, data_dir):
    code, out, _ = run(capsys, "analyze", str(data_dir / "a223.mat"))
    assert code == 0
    assert "robustness: weakly_robust_only" in out and "markov_bases: 4" in out


def test_repeated_columns_are_folded(capsys, data_dir):
    code, out, err = run(capsys, "markov", str(data_dir / "a223.mat"))
    assert code == 0 and "fold" in err
    assert len(out.strip().splitlines()) == 2


def test_markov_indispensable_universal(capsys):
    assert run(capsys, "markov", A4567, "--oracle")[0] == 0
    code, out, _ = run(capsys, "indispensable", A4567, "--oracle")
    assert code == 0 and "1 3 -2 -1" not in out
    code, out, _ = run(capsys, "universal-markov", A4567)
    assert code == 0 and len(out.splitlines()) == 8


def test_counts_E2(capsys, data_dir):
    spec = str(data_dir / "spec36_e2.json")
    code, out, _ = run(capsys, "count", "ugb", spec)
    assert (code, out.strip()) == (0, "123")
    code, out, _ = run(capsys, "count", "markov-bases", spec, "--format", "json")
    assert code == 0 and int(json.loads(out)["markov_bases"]) > 10**100
    code, out, _ = run(capsys, "count", "graver", spec)
    assert code == 0 and out.strip() == "3190871732551685"
    code, out, _ = run(capsys, "markov", spec)
    assert code == 0 and len(out.strip().splitlines()) == 33


def test_selfdual_and_robust(capsys, data_dir):
    code, out, _ = run(capsys, "selfdual", str(data_dir / "spec36_e2.json"), "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["selfdual"] and d["pyramidality"] == 4
    code, out, _ = run(capsys, "robust", str(data_dir / "spec36_e1.json"), "--verify")
    assert code == 0 and out.startswith("strongly_robust")
    code, out, _ = run(capsys, "robust", str(data_dir / "ex35.mat"), "--format", "json")
    assert json.loads(out)["robustness"] == "strongly_robust"


def test_gale_bouquets_circuits(capsys, data_dir):
    code, out, _ = run(capsys, "gale", A4567)
    assert code == 0 and len(out.strip().splitlines()) == 4
    code, out, _ = run(capsys, "bouquets", str(data_dir / "ex35.mat"), "--format", "json")
    assert code == 0 and len(json.loads(out)["bouquets"]) >= 1
    code, out, _ = run(capsys, "circuits", str(data_dir / "ex35.mat"))
    assert code == 0 and len(out.strip().splitlines()) == 6


def test_glm_build_and_decompose(capsys, data_dir, tmp_path):
    code, out, _ = run(capsys, "glm", "build", str(data_dir / "spec35.json"), "--verify")
    assert code == 0
    assert parse_matrix(out) == parse_matrix((data_dir / "ex35.mat").read_text())
    target = tmp_path / "c1.mat"
    code, _, _ = run(capsys, "glm", "build", str(data_dir / "spec36_e1.json"), "--out", str(target))
    assert code == 0 and parse_matrix(target.read_text()) == parse_matrix((data_dir / "c1.mat").read_text())
    code, out, _ = run(capsys, "glm", "decompose", str(data_dir / "ex35.mat"), "--verify")
    assert code == 0 and "permutation" in json.loads(out)


def test_exit_codes(capsys, data_dir, tmp_path):
    # hypothesis failure: non-projective input
    code, _, err = run(capsys, "selfdual", str(data_dir / "a223.mat"))
    assert code == 2 and "projective" in err
    # malformed matrix
    bad = tmp_path / "bad.mat"
    bad.write_text("2 2\n1 x\n0 1\n")
    code, _, err = run(capsys, "graver", str(bad))
    assert code == 1 and "input error" in err
    # refuses to enumerate a huge Graver basis
    code, _, err = run(capsys, "graver", str(data_dir / "spec36_e2.json"))
    assert code == 1 and "error" in err
    with pytest.raises(SystemExit):
        main(["no-such-command"])
