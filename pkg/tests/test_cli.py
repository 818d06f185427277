import json
import subprocess
import sys
from pathlib import Path

import pytest

from rhtc.cli import default_cap, main
from rhtc import catalog

MODELS = Path(__file__).resolve().parent.parent / "models"


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "rhtc.cli", *args], capture_output=True, cwd=MODELS.parent
    )
    return proc.returncode, proc.stdout, proc.stderr.decode()


def test_e0_s2():
    code, out, _ = run_cli("e0", "models/s2.model", "--cap", "8")
    assert code == 0
    assert out.decode().splitlines()[0] == "e0 = 1"


def test_verify_theorem_s3():
    code, out, _ = run_cli("verify-theorem", "models/s3.model", "--cap", "12")
    assert code == 0
    assert out.decode().splitlines()[0] == "htc = mtc★ = 1: VERIFIED"


def test_pd_check_refusal():
    code, out, _ = run_cli("pd-check", "models/nonpd.model", "--cap", "8")
    assert code == 2
    assert out.decode().startswith("refused:")


def test_htc_json_s2():
    code, out, _ = run_cli("htc", "models/s2.model", "--cap", "8", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["value"] == 2 and data["complete"] is True
    assert set(data) >= {"command", "model", "cap", "complete", "value", "witnesses", "timing_ms"}
    assert data["timing_ms"] is None


def test_timing_flag():
    code, out, _ = run_cli("cohomology", "models/s2.model", "--cap", "6", "--json", "--timing")
    assert isinstance(json.loads(out)["timing_ms"], int)


def test_undetermined_json(capsys, tmp_path):
    # the budget stops the sweep before a retraction is found
    code = main(["mtc", str(MODELS / "cp2.model"), "--cap", "14", "--budget", "1", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == 3
    assert data["value"] is None and data["status"] == "lower_bound"


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.model"
    bad.write_text("generator x 0\n")
    code, _, err = run_cli("cohomology", str(bad))
    assert code == 1 and "line 1" in err
    code, _, err = run_cli("cohomology", str(tmp_path / "missing.model"))
    assert code == 1


def test_retract_command():
    code, out, _ = run_cli("retract", "models/s2.model", "--cap", "8", "--n", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["value"] is True
    assert all(data["details"]["checks"].values())
    code, out, _ = run_cli("retract", "models/s2.model", "--cap", "8", "--n", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["value"] is False and data["status"] == "no_retraction_at_cap"


def test_retract_needs_n():
    code, _, err = run_cli("retract", "models/s2.model", "--cap", "8")
    assert code == 1 and "--n" in err


def test_stdin_model():
    proc = subprocess.run(
        [sys.executable, "-m", "rhtc.cli", "cohomology", "-", "--cap", "6"],
        input=catalog.MODEL_TEXT["s3"].encode(), capture_output=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.decode().splitlines()[0] == "betti: 1 0 0 1 0 0 0"


def test_cup_length_and_default_cap(capsys):
    assert default_cap(catalog.model("s3")) == 18
    assert main(["cup-length", str(MODELS / "s3.model")]) == 0
    assert capsys.readouterr().out.startswith("nil ker ∪ = 1")


def test_degree_one_flag(tmp_path):
    f = tmp_path / "circle.model"
    f.write_text("generator t 1\n")
    assert run_cli("cohomology", str(f), "--cap", "3")[0] == 1
    code, out, _ = run_cli("cohomology", str(f), "--cap", "3", "--flag-degree-one")
    assert code == 0 and out.decode().startswith("betti: 1 1 0 0")


@pytest.mark.parametrize("cmd", ["cohomology", "pd-check", "cup-length", "e0", "htc", "mtc", "verify-theorem"])
def test_json_parses(cmd):
    code, out, _ = run_cli(cmd, "models/s3.model", "--cap", "10", "--json")
    assert code == 0
    json.loads(out)
