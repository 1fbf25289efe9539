"""The command-line interface and its exit codes."""

import json
import subprocess
import sys

import pytest

from complicial.cli import main
from complicial.exchange import parse


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_admissible(capsys):
    code, out, _ = run(capsys, "gen", "admissible", "--n", "2", "--k", "1")
    assert code == 0
    doc = parse(out)
    assert doc.kind == "complex" and doc.payload.marking == {"012"}


def test_check_strict_complicial(capsys):
    code, out, _ = run(capsys, "check", "strict-complicial", "fixture:poset2", "--bound", "4")
    assert code == 0 and parse(out).payload.verdict == "pass"


def test_check_saturated_fails_with_witness(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "saturated", "fixture:iso", "--bound", "3")
    assert code == 1
    assert json.loads(out)["witness"]["reason"] == "no-extension"
    path = tmp_path / "report.json"
    path.write_text(out)
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 0 and out.strip() == "ok"


def test_check_reads_documents(capsys, tmp_path):
    path = tmp_path / "nerve.json"
    code, _, _ = run(capsys, "nerve", "fixture:iso", "--bound", "3", "--stratification", "saturated1",
                     "--output", str(path))
    assert code == 0
    code, _, _ = run(capsys, "check", "saturated", str(path))
    assert code == 0
    code, _, _ = run(capsys, "check", "n-trivial", str(path), "--n", "1")
    assert code == 0


def test_coskeletal_and_quasicategory(capsys):
    assert run(capsys, "check", "coskeletal", "fixture:two-cell", "--bound", "4")[0] == 0
    assert run(capsys, "check", "quasicategory", "fixture:chain3", "--bound", "3")[0] == 0


def test_validate_flags_a_broken_complex(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "standard", "--n", "2")
    data = json.loads(out)
    data["simplices"][-1]["faces"].reverse()
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 1 and "simplicial identity" in out


def test_budget_exhaustion(capsys):
    code, _, err = run(capsys, "check", "complicial", "fixture:z3", "--bound", "3", "--budget", "10")
    assert code == 3 and "budget" in err


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "check", "complicial", str(tmp_path / "missing.json"))
    assert code == 2
    code, _, err = run(capsys, "check", "complicial", "fixture:nope")
    assert code == 2 and "unknown fixture" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "line 1" in err


def test_usage_errors():
    with pytest.raises(SystemExit) as e:
        main(["check", "bogus-property", "fixture:iso"])
    assert e.value.code == 2


def test_oriental_commands(capsys):
    code, out, _ = run(capsys, "oriental", "2")
    assert code == 0 and len(parse(out).payload) == 8
    code, out, _ = run(capsys, "oriental", "3", "--search")
    assert code == 0 and len(parse(out).payload) == 24
    code, out, _ = run(capsys, "oriental", "2", "--table")
    assert code == 0 and parse(out).kind == "omega-cat"
    code, _, _ = run(capsys, "oriental", "5")
    assert code == 2


def test_hocat(capsys):
    code, out, _ = run(capsys, "hocat", "fixture:z3", "--bound", "3", "--variant", "left-gf")
    assert code == 0 and len(parse(out).payload.elements) == 3
    code, _, err = run(capsys, "hocat", "fixture:two-cell", "--bound", "3")
    assert code == 1 and "not a quasi-category" in err


def test_decompose_and_equivs(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "admissible_horn", "--n", "2", "--k", "1")
    path = tmp_path / "horn.json"
    path.write_text(out)
    code, out, _ = run(capsys, "decompose", str(path))
    assert code == 0
    assert json.loads(out)["details"]["steps"] == [
        "attach 1-simplex 02", "attach 2-simplex 012", "mark 2-simplex 012"]
    code, out, _ = run(capsys, "equivs", "fixture:iso", "--bound", "3")
    assert code == 0 and {"f", "g"} <= set(json.loads(out)["details"]["equivalences"])


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "complicial.cli", "gen", "sharp", "--n", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and parse(proc.stdout).payload.marking == {"01"}
