import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from nilherm.cli import load_schema, main
from nilherm.dsl import parse_file

ROOT = Path(__file__).resolve().parents[1]
CORPUS = sorted((ROOT / "tests" / "corpus").glob("*.nil"))
HEIS4 = str(ROOT / "tests" / "corpus" / "heisenberg4.nil")
SCHEMA = load_schema()


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--output", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_check_astheno_holds(capsys):
    code, doc = run_json(capsys, "check", HEIS4, "--metric", "Fast", "--condition", "astheno")
    assert code == 0
    assert doc["conditions"][0]["holds"] is True


def test_constants_table(capsys):
    code, doc = run_json(capsys, "constants", HEIS4, "--metric", "Ftilde")
    assert code == 0
    table = doc["constants"]
    assert table["1"] == {"numerator": "1", "denominator": "2"}
    assert table["2"] == {"numerator": "1", "denominator": "2"}
    assert table["3"]["numerator"] == "0"
    code, out = run(capsys, "constants", HEIS4, "--metric", "Ftilde")
    assert "k=1: 1/2" in out and "k=3: 0" in out


def test_remark_guard_exit_two(capsys):
    code, doc = run_json(capsys, "family", "remark", "--A", "1+i", "--alpha", "1", "--beta", "1")
    assert code == 2
    assert "sqrt(2)" in doc["error"]


def test_family_commands(capsys):
    code, doc = run_json(capsys, "family", "heisenberg", "--n", "5", "--a", "1,2,3")
    assert code == 0
    assert doc["family"]["metric_diagonal"][3] == "6"
    code, doc = run_json(capsys, "family", "remark", "--A", "1", "--alpha", "1", "--beta", "1")
    assert code == 0
    assert doc["family"]["gamma"] == "8"
    code, _ = run_json(capsys, "family", "heisenberg", "--n", "3", "--a", "1")
    assert code == 2


def test_failing_check_exit_one(capsys):
    code, doc = run_json(capsys, "check", HEIS4, "--metric", "Ftilde", "--condition", "astheno,skt")
    assert code == 1
    assert [c["holds"] for c in doc["conditions"]] == [False, False]


def test_kgauduchon_condition(capsys):
    code, doc = run_json(capsys, "check", HEIS4, "--metric", "Fast", "--condition", "kgauduchon=2")
    assert code == 0 and doc["conditions"][0]["k"] == 2
    code, doc = run_json(capsys, "check", HEIS4, "--metric", "Fast", "--condition", "kgauduchon", "--k", "1")
    assert code == 0 and doc["conditions"][0]["k"] == 1


def test_all_condition_runs_identities(capsys):
    code, doc = run_json(capsys, "check", HEIS4, "--metric", "Fast", "--condition", "all")
    assert code == 1  # SKT fails on this family
    assert doc["identities"]["constant_relation"] is True
    assert all(doc["identities"][f"kgauduchon_identity_k{k}"] for k in (1, 2, 3))


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "missing.nil", "--metric", "F"],
        ["check", HEIS4, "--metric", "nope"],
        ["check", HEIS4, "--metric", "Fast", "--condition", "bogus"],
        ["check", HEIS4, "--metric", "Fast", "--condition", "kgauduchon=9"],
        ["family", "remark", "--A", "1+", "--alpha", "1", "--beta", "1"],
        ["family", "remark", "--alpha", "-1", "--beta", "1"],
        ["validate", str(ROOT / "tests" / "test_cli.py")],
    ],
)
def test_input_errors_exit_two(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == 2
    assert doc["ok"] is False


def test_malformed_flags_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check", HEIS4, "--k", "x"])
    assert info.value.code == 2


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_corpus_exit_codes(capsys, path):
    m = parse_file(path)
    valid = m.structure().validate().ok
    code, doc = run_json(capsys, "validate", str(path))
    assert code == (0 if valid else 1)
    for name in m.metrics:
        code, doc = run_json(capsys, "check", str(path), "--metric", name, "--condition", "balanced,gauduchon")
        if not valid:
            assert code == 2
            continue
        assert code in (0, 1)
        gauduchon = doc["conditions"][1]
        assert gauduchon["holds"] is True  # every invariant metric is Gauduchon


def test_json_is_deterministic(capsys):
    argv = ["check", str(ROOT / "tests" / "corpus" / "abc_symbolic.nil"), "--metric", "Fabg", "--output", "json"]
    outs = []
    for _ in range(2):
        main(argv)
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    proc = subprocess.run([sys.executable, "-m", "nilherm", *argv], capture_output=True, text=True)
    assert proc.stdout == outs[0]


def test_symbolic_constraint_reported(capsys):
    path = str(ROOT / "tests" / "corpus" / "abc_symbolic.nil")
    code, doc = run_json(capsys, "check", path, "--metric", "Fabg", "--condition", "astheno")
    (cond,) = doc["conditions"]
    assert cond["holds"] is None
    assert cond["constraints"] == ["A*conj(A)*gamma + B*conj(B)*beta + C*conj(C)*alpha + 4*alpha + 4*beta - 2*gamma"]
    assert code == 1
