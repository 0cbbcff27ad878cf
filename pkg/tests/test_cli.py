import json
import subprocess
import sys

import pytest

from lpforge.cli import RunConfig, UsageError, dispatch, main

SPACE = {"atoms": ["a", "b", "c"], "weights": [1, {"num": 1, "den": 2}, 2]}
FUNCS = [["1/2", "-1/4", 0], ["1/5", 0, "1/3"]]


@pytest.fixture
def files(tmp_path):
    (tmp_path / "space.json").write_text(json.dumps(SPACE))
    (tmp_path / "f.json").write_text(json.dumps(FUNCS))
    return tmp_path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def approximate(files, capsys, *extra):
    return run(["approximate", "--space", files / "space.json", "--functions", files / "f.json",
                "--N", 3, "--p", 2, "--no-timestamp", *extra], capsys)


def test_approximate_and_certify(files, capsys):
    code, out, _ = approximate(files, capsys, "--out", files / "w.json")
    assert code == 0
    doc = json.loads((files / "w.json").read_text())
    assert doc["schema"] == 1 and doc["kind"] == "approximation-witness"
    assert doc["verdict"]["ok"]
    code, out, _ = run(["certify", "--witness", files / "w.json", "--exact", "--exhaustive"], capsys)
    assert code == 0
    assert json.loads(out)["ok"]


def test_identical_seed_gives_identical_bytes(files, capsys):
    _, a, _ = approximate(files, capsys, "--seed", 3)
    _, b, _ = approximate(files, capsys, "--seed", 3)
    assert a == b


def test_timestamp_field(files, capsys):
    _, out, _ = run(["approximate", "--space", files / "space.json", "--functions", files / "f.json",
                     "--N", 2, "--p", 2], capsys)
    assert "generated" in json.loads(out)


def test_corrupted_witness_fails_with_clause(files, capsys):
    approximate(files, capsys, "--out", files / "w.json")
    doc = json.loads((files / "w.json").read_text())
    doc["outputs"][0][0] = {"num": 9, "den": 10}
    (files / "bad.json").write_text(json.dumps(doc))
    code, _, err = run(["certify", "--witness", files / "bad.json"], capsys)
    assert code == 1
    assert "clause 'span'" in err


def test_missing_file_and_bad_schema(files, capsys):
    code, _, err = run(["certify", "--witness", files / "nope.json"], capsys)
    assert code == 2 and "no such file" in err
    (files / "old.json").write_text(json.dumps({"schema": 99}))
    code, _, _ = run(["certify", "--witness", files / "old.json"], capsys)
    assert code == 2


def test_usage_errors(capsys):
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["modulus", "--p", 2], capsys)[0] == 2
    assert run(["approximate", "--space", "x"], capsys)[0] == 2
    with pytest.raises(UsageError):
        RunConfig("modulus", tol=0)


def test_precondition_is_exit_2(files, capsys):
    (files / "big.json").write_text(json.dumps([[2, 0, 0]]))
    code, _, err = run(["approximate", "--space", files / "space.json", "--functions", files / "big.json",
                        "--N", 2, "--p", 2], capsys)
    assert code == 2 and err


def test_modulus(capsys):
    code, out, _ = run(["modulus", "--p", 2, "--eps", 1, "--no-timestamp"], capsys)
    assert code == 0
    assert json.loads(out)["eta"] == pytest.approx(0.1339746, abs=1e-7)
    code, out, _ = run(["modulus", "--p", 3, "--eps", 0.5, "--oracle", "--samples", 5000, "--no-timestamp"], capsys)
    assert code == 0 and json.loads(out)["oracle"] >= json.loads(out)["eta"] - 1e-6


def test_modulus_sweep_csv(capsys):
    code, out, _ = run(["modulus", "--p", 2, "--sweep"], capsys)
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "p,eps,eta" and len(lines) == 11


def test_env_seed_overrides(files, capsys, monkeypatch):
    monkeypatch.setenv("LPFORGE_SEED", "17")
    code, out, _ = run(["modulus", "--p", 2, "--eps", 1, "--oracle", "--samples", 2000, "--no-timestamp"], capsys)
    monkeypatch.delenv("LPFORGE_SEED")
    _, out17, _ = run(["modulus", "--p", 2, "--eps", 1, "--oracle", "--samples", 2000, "--seed", 17,
                       "--no-timestamp"], capsys)
    assert out == out17
    monkeypatch.setenv("LPFORGE_SEED", "nope")
    assert run(["modulus", "--p", 2, "--eps", 1], capsys)[0] == 2


def test_axiom_check(files, capsys):
    (files / "g.json").write_text(json.dumps([[3, 1, 0], ["1/5", 0, "1/3"]]))
    code, out, _ = run(["axiom-check", "--space", files / "space.json", "--functions", files / "g.json",
                        "--N", 2, "--p", 2, "--no-timestamp"], capsys)
    assert code == 0 and json.loads(out)["mode"] == "axiom"


def test_convexity_certify(files, capsys):
    space = json.dumps({"atoms": [0, 1], "weights": [1, 1]})
    code, out, _ = run(["convexity-certify", "--space", space, "--x1", "[1, 0]", "--x2", "[0, 1]",
                        "--eps", 1.4, "--c", 0.01, "--p", 2, "--no-timestamp"], capsys)
    assert code == 0, out
    assert json.loads(out)["ok"]


def test_bm_bound(files, capsys):
    (files / "m.json").write_text(json.dumps([[2, 0], [0, "1/2"]]))
    code, out, _ = run(["bm-bound", "--matrix", files / "m.json", "--p", 2, "--no-timestamp"], capsys)
    assert code == 0 and json.loads(out)["value"] == pytest.approx(4.0)
    code, _, err = run(["bm-bound", "--matrix", "[[1, 2], [2, 4]]", "--p", 2], capsys)
    assert code == 2 and "singular" in err


def test_logic_commands(capsys):
    code, out, _ = run(["classify", "--formula", "forall a:0. exists b:0 <~ a. forall c:X. b <=_0 a",
                        "--no-timestamp"], capsys)
    assert code == 0 and json.loads(out)["class"] == "delta-sentence"
    code, out, _ = run(["classify", "--formula", "b <=_0 a", "--free", "a:0", "--free", "b:0",
                        "--no-timestamp"], capsys)
    assert json.loads(out)["class"] == "forall-formula"
    code, out, _ = run(["skolemize", "--formula", "forall a:0. exists b:0 <~ a. forall c:X. b <=_0 a",
                        "--no-timestamp"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["class"] == "skolem-form" and doc["matrix_check"]
    code, out, _ = run(["type", "--check", "X(0)(X)", "--no-timestamp"], capsys)
    doc = json.loads(out)
    assert doc == {"schema": 1, "kind": "type", "type": "X(0)(X)", "small": False, "admissible": True,
                   "hat": "0(0)(0)"}
    code, _, err = run(["type", "--check", "X(("], capsys)
    assert code == 2 and "position" in err
    code, _, _ = run(["skolemize", "--formula", "forall a:0. exists b:0. b <=_0 a"], capsys)
    assert code == 2


def test_cauchyfy_and_majorant(files, capsys):
    (files / "pts.json").write_text(json.dumps([0, 0, 0, 1, 2, 3]))
    code, out, _ = run(["cauchyfy", "--points", files / "pts.json", "--horizon", 5, "--no-timestamp"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["points"] == [0, 0, 0, 0, 0, 0] and doc["rate_ok"]
    code, out, _ = run(["majorant", "--b", 3, "--n", 64, "--p", 2.5, "--no-timestamp"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["monotone"] and doc["majorizes_p"]
    assert doc["values"][0] == (3 * 4 + 1) * (3 * 4 + 2) // 2 + 1


def test_dispatch_directly():
    assert dispatch(RunConfig("type", {"check": "0"}, timestamp=False)) == 0


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lpforge", "modulus", "--p", "2", "--eps", "1", "--no-timestamp"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and '"eta"' in r.stdout
