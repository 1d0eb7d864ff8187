import json
import subprocess
import sys

import jsonschema
import pytest

from ckhopf import Presentation
from ckhopf.cli import main, schema
from ckhopf.ncalg import Element, TensorElement


def run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = main(list(argv) + ["-o", str(out)])
    return code, (out.read_text() if out.exists() else None)


def test_verify_n3_split2(tmp_path, capsys):
    code, text = run(tmp_path, "verify", "--n", "3", "--omega", "0,1", "--basis", "new", "--split", "2",
                     "--suites", "confluence,hopf,bicross")
    assert code == 0
    doc = json.loads(text)
    jsonschema.validate(doc, schema())
    assert doc["presentation"]["split"] == 2
    assert "checks pass" in capsys.readouterr().out


def test_verify_auto_split(tmp_path):
    code, text = run(tmp_path, "verify", "--n", "4", "--omega", "0,0,1", "--split", "auto")
    assert code == 0
    doc = json.loads(text)
    jsonschema.validate(doc, schema())
    assert [r["presentation"]["split"] for r in doc["reports"]] == [1, 2, 3]


def test_invalid_config_exit_2(tmp_path, capsys):
    assert main(["verify", "--n", "1", "--omega", "1"]) == 2
    assert main(["verify", "--n", "3", "--omega", "1,1", "--split", "2"]) == 2
    assert main(["verify", "--n", "3", "--omega", "1,1", "--suites", "nope"]) == 2
    assert main(["hw", "--n", "3", "--omega", "1,1"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--n", "3", "--omega", "a,b"])
    assert exc.value.code == 2


def test_negative_controls_keep_exit_0(tmp_path):
    # old basis at a = 2 fails only its declared negative controls
    code, text = run(tmp_path, "verify", "--n", "3", "--omega", "0,1", "--basis", "old", "--split", "2")
    doc = json.loads(text)
    assert code == 0
    assert any(c.get("role") == "negative_control" and c["status"] == "FAIL" for c in doc["checks"])


def test_console_script_exit_codes():
    r = subprocess.run([sys.executable, "-m", "ckhopf.cli", "verify", "--n", "1", "--omega", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 2 and "error" in r.stderr


def test_tables_latex(tmp_path):
    code, text = run(tmp_path, "tables", "--n", "3", "--omega", "0,1", "--basis", "new", "--split", "2",
                     "--format", "latex", name="t.tex")
    assert code == 0
    assert "[J_{23},J_{01}] &= 0" in text
    assert "e^{-\\lambda" in text


def test_tables_n2(tmp_path):
    code, text = run(tmp_path, "tables", "--n", "2", "--omega", "1", "--split", "1", "--basis", "old")
    doc = json.loads(text)
    gens = [l for l in doc["letters"] if l["sector"] != "EXPONENTIAL"]
    assert len(gens) == 3


def test_tables_roundtrip(tmp_path):
    code, text = run(tmp_path, "tables", "--n", "3", "--omega", "0,-1", "--split", "2")
    doc = json.loads(text)
    p = Presentation(3, (0, -1), "new", 2)
    names = [l.name for l in p.alphabet.letters]
    for row in doc["commutators"]:
        g, h = (names.index(n) for n in row["pair"])
        el = Element.deserialize(p, row["value"])
        assert el == p.comm_element(g, h)
        assert el.serialize() == row["value"]
    for row in doc["coproduct"]:
        t = TensorElement.deserialize(p, row["value"])
        assert t.serialize() == row["value"]


def test_byte_identical(tmp_path):
    args = ["verify", "--n", "4", "--omega", "0,0,1", "--split", "auto"]
    _, a = run(tmp_path, *args, name="a.json")
    _, b = run(tmp_path, *args, "--jobs", "3", name="b.json")
    _, c = run(tmp_path, *args, name="c.json")
    assert a == b == c


def test_hw_subcommand(tmp_path):
    code, text = run(tmp_path, "hw", "--n", "3")
    assert code == 0
    jsonschema.validate(json.loads(text), schema())


def test_trunc_mode(tmp_path):
    code, text = run(tmp_path, "verify", "--n", "3", "--omega", "1,1", "--split", "1", "--basis", "old",
                     "--mode", "trunc", "--trunc-order", "3")
    assert code == 0
    assert json.loads(text)["presentation"]["mode"] == "trunc(3)"


def test_failing_checks_exit_1(tmp_path, monkeypatch):
    from ckhopf import cli
    from ckhopf.report import Report, verdict

    monkeypatch.setattr(cli, "check_confluence", lambda p: Report(p.describe(), [verdict("fake", False)]))
    code, text = run(tmp_path, "verify", "--n", "3", "--omega", "1,1", "--split", "1", "--suites", "confluence")
    assert code == 1
    assert json.loads(text)["checks"][0]["status"] == "FAIL"
