import json
import shutil
import subprocess
from pathlib import Path

import pytest

from helpers import E
from linrel.cli import main
from linrel.relation import graph_of, multivalued_rel
from linrel.relfile import dumps, load_relation, relation_to_dict
from linrel.subspace import Subspace

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, T in {
        "nil": graph_of(E([[0, 1], [0, 0]])),
        "diag": graph_of(E([[1, 0], [0, 2]])),
        "mv": multivalued_rel(Subspace.full(2)),
        "d3": graph_of(E([[1, 0, 0], [0, 1, 0], [0, 0, 1]])),
    }.items():
        p = tmp_path / f"{name}.json"
        p.write_text(dumps(relation_to_dict(T)), encoding="utf-8")
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_adjoint_of_hermitian_graph(files, tmp_path, capsys):
    out = tmp_path / "adj.json"
    code, _, _ = run(capsys, "adjoint", files["diag"], "--out", str(out))
    assert code == 0 and load_relation(out) == load_relation(files["diag"])
    code, text, _ = run(capsys, "adjoint", files["diag"], "--backend", "float", "--tol", "1e-8")
    assert code == 0 and json.loads(text)["scalars"] == "float"


def test_classify_multivalued(files, capsys):
    code, text, _ = run(capsys, "classify", files["mv"])
    c = json.loads(text)
    assert code == 0
    assert (c["self_adjoint"], c["positive"], c["single_valued"], c["densely_defined"]) == (True, True, False, False)
    assert (c["dom_dim"], c["ran_dim"], c["ker_dim"], c["mul_dim"]) == (0, 2, 0, 2)


@pytest.mark.parametrize("op", ["sum", "compose", "intersect"])
def test_binary_dimension_mismatch(files, capsys, op):
    code, out, err = run(capsys, op, files["nil"], files["d3"])
    assert code == 2 and out == ""
    reason = json.loads(err)
    assert reason["error"] == "dimension" and len(err.strip().splitlines()) == 1


def test_binary_ops(files, capsys):
    code, text, _ = run(capsys, "compose", files["nil"], files["nil"])
    assert code == 0 and json.loads(text)["generators"][0]["fp"] == ["0", "0"]
    for op in ("sum", "intersect"):
        assert run(capsys, op, files["nil"], files["diag"])[0] == 0


@pytest.mark.parametrize("op", ["dom", "ran", "ker", "mul"])
def test_subspace_outputs(files, capsys, op):
    code, text, _ = run(capsys, op, files["nil"])
    s = json.loads(text)
    assert code == 0 and s["ambient_dim"] == 2
    assert s["dim"] == {"dom": 2, "ran": 1, "ker": 1, "mul": 0}[op] == len(s["basis"])


def test_inverse(files, capsys):
    code, text, _ = run(capsys, "inverse", files["nil"])
    assert code == 0 and json.loads(text)["ambient_dim"] == 2


def test_flag_and_parse_errors(files, tmp_path, capsys):
    assert run(capsys, "adjoint", files["nil"], "--tol", "1e-8")[0] == 2
    assert run(capsys, "adjoint", files["nil"], "--backend", "exact", "--tol", "1e-8")[0] == 2
    assert run(capsys, "adjoint", files["nil"], "--backend", "float", "--tol", "-1")[0] == 2
    assert run(capsys, "adjoint", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"ambient_dim": 2, "field": "complex", "scalars": "exact", "generators": [], "x": 1}')
    code, _, err = run(capsys, "classify", str(bad))
    assert code == 2 and json.loads(err)["error"] == "parse"
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "check", "--theorem", "NOT_A_THEOREM")[0] == 2
    assert run(capsys, "check", "--theorem", "all", "--dims", "2,x")[0] == 2
    assert run(capsys, "check", "--theorem", "all", "--dims", "0")[0] == 2
    assert run(capsys, "check", "--theorem", "all", "--cases", "0")[0] == 2
    assert run(capsys, "check", "--theorem", "EXT_EQ", "--input", files["nil"])[0] == 2
    assert run(capsys, "check", "--theorem", "all", "--tol", "1e-6")[0] == 2
    assert run(capsys, "corpus")[0] == 2


def test_check_on_corpus_witness(files, tmp_path, capsys):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "check", "--theorem", "STONE_GEN_REL", "--cases", "1", "--input", files["nil"],
                        "--out", str(out))
    assert code == 0
    report = json.loads(out.read_text())
    assert report["results"][0]["verdict"] == "vacuous"
    assert report["summary"]["STONE_GEN_REL"]["vacuous"] == 1
    assert "STONE_GEN_REL" in text


def test_check_binary_inputs(files, capsys):
    code, text, _ = run(capsys, "check", "--theorem", "all", "--input", files["nil"], "--input", files["diag"])
    assert code == 0 and "EXT_EQ" in text and "ARENS_09" in text and "STONE_OP" not in text


def test_check_reports_byte_identical(tmp_path, capsys):
    argv = ["check", "--theorem", "all", "--dims", "2,3", "--cases", "8", "--seed", "5"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, *argv, "--out", str(a))[0] == 0
    assert run(capsys, *argv, "--out", str(b), "--jobs", "2")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert set(doc) == {"version", "config", "notes", "results", "summary"}


def test_check_float_backend(capsys):
    code, text, _ = run(capsys, "check", "--theorem", "ARENS_07", "--cases", "5", "--backend", "float", "--tol", "1e-9")
    assert code == 0 and "falsified: 0" in text


def test_check_exit_1_on_falsification(monkeypatch, capsys):
    import dataclasses

    from linrel.theorems import THEOREMS, TheoremId

    th = THEOREMS[TheoremId.ARENS_01]
    monkeypatch.setitem(THEOREMS, TheoremId.ARENS_01, dataclasses.replace(th, conclusion=lambda F: False))
    code, text, _ = run(capsys, "check", "--theorem", "ARENS_01", "--cases", "3")
    assert code == 1 and "falsified: 3" in text


def test_require_nonvacuous(capsys):
    # this single draw misses the hypothesis (frozen by seed)
    argv = ["check", "--theorem", "ARENS_06", "--dims", "2", "--cases", "1", "--seed", "1"]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and "LOW hypothesis rate" in out
    code, out, _ = run(capsys, *argv, "--require-nonvacuous")
    assert code == 1 and "non-vacuity gate failed: ARENS_06" in out
    seeded_ok = ["check", "--theorem", "ARENS_06", "--dims", "2", "--cases", "1", "--seed", "0"]
    assert run(capsys, *seeded_ok, "--require-nonvacuous")[0] == 0


def test_corpus_replay(capsys):
    code, a, _ = run(capsys, "corpus", "--replay")
    assert code == 0 and "mismatches: 0" in a and " float " in a and " exact " in a
    _, b, _ = run(capsys, "corpus", "--replay")
    assert a == b


def test_corpus_corrupted_fixture(capsys):
    code, out, _ = run(capsys, "corpus", "--replay", "--file", str(FIXTURES / "corrupted_corpus.json"))
    assert code == 1 and "MISMATCH" in out


def test_corpus_dump_replay(tmp_path, capsys):
    p = tmp_path / "c.json"
    assert run(capsys, "corpus", "--dump", str(p))[0] == 0
    assert run(capsys, "corpus", "--replay", "--file", str(p), "--backend", "float")[0] == 0


@pytest.mark.skipif(shutil.which("linrel") is None, reason="console script not installed")
def test_console_script(files):
    p = subprocess.run(["linrel", "classify", files["diag"]], capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["self_adjoint"] is True
    p = subprocess.run(["linrel", "sum", files["diag"], files["d3"]], capture_output=True, text=True)
    assert p.returncode == 2
