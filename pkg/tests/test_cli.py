"""CLI surface: exit codes, flags, determinism, golden regression."""

import json
import pathlib

import pytest

from shiftlab.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info_exit_and_shape(capsys):
    code, out, _ = run(capsys, "info", "--algebra", "B2")
    assert code == 0
    data = json.loads(out)
    assert data["type"] == "B2"
    assert data["theta_s"] == ["1/1", "1/1"]


def test_info_skips_enumeration_for_e8(capsys):
    code, out, _ = run(capsys, "info", "--algebra", "E8")
    assert code == 0
    data = json.loads(out)
    assert data["enumerated"] is False
    assert data["weyl_order"] == 696729600


def test_usage_errors(capsys):
    code, _, err = run(capsys, "info", "--algebra", "Z9")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "char", "--algebra", "A2", "--variant", "super",
                       "--m", "2", "--lambda", "0,1,1")
    assert code == 2
    code, _, err = run(capsys, "char", "--algebra", "A1", "--m", "2",
                       "--lambda", "0,1,7")
    assert code == 2
    code, _, err = run(capsys, "char", "--algebra", "A1", "--m", "2",
                       "--lambda", "0,1", "--kind", "ramond")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bogus-command"])
    assert exc.value.code == 2


def test_check_axioms_pass(capsys):
    code, out, _ = run(capsys, "check", "axioms", "--algebra", "G2",
                       "--variant", "nonsuper", "--m", "1")
    assert code == 0
    assert json.loads(out)["failures"] == []


def test_check_weak_strong(capsys):
    code, out, _ = run(capsys, "check", "weak-strong", "--algebra", "B2",
                       "--variant", "nonsuper", "--m", "2")
    assert code == 0
    data = json.loads(out)
    strong = {row["lambda"]: row["ok"] for row in data["strong"]}
    alc = {row["lambda"]: row["ok"] for row in data["alcove"]}
    assert strong == alc


def test_check_alcove_independence(capsys):
    code, out, _ = run(capsys, "check", "alcove-independence", "--algebra", "B2",
                       "--variant", "super", "--m", "3")
    assert code == 0


def test_lambda_csv(capsys):
    code, out, _ = run(capsys, "lambda", "--algebra", "A1", "--m", "2",
                       "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "lambda,weak,strong,alcove,w0_shift"
    assert len(lines) == 5


def test_verify_wchar(capsys):
    code, out, _ = run(capsys, "verify", "wchar", "--algebra", "A1",
                       "--m", "2", "--order", "50")
    assert code == 0
    assert json.loads(out)["failures"] == []


def test_verify_verma(capsys):
    code, out, _ = run(capsys, "verify", "verma", "--algebra", "B1",
                       "--variant", "super", "--m", "2", "--order", "20")
    assert code == 0


def test_verify_walls(capsys):
    code, out, _ = run(capsys, "verify", "walls", "--algebra", "A2",
                       "--m", "2", "--order", "8")
    assert code == 0
    assert json.loads(out)["checks"] > 0


def test_char_sch_kind(capsys):
    code, out, _ = run(capsys, "char", "--algebra", "B1", "--variant", "super",
                       "--m", "2", "--lambda", "0,1", "--kind", "sch",
                       "--order", "8")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "sch"
    assert data["strong"] is True


def test_caps_env_override(capsys, monkeypatch):
    monkeypatch.setenv("SHIFTLAB_CAPS", "words=1")
    code, _, err = run(capsys, "check", "weak-strong", "--algebra", "A2",
                       "--m", "2")
    assert code == 2 and "reduced words" in err
    monkeypatch.setenv("SHIFTLAB_CAPS", "bogus=3")
    code, _, err = run(capsys, "info", "--algebra", "A1")
    assert code == 2


def test_deterministic_output(capsys):
    one = run(capsys, "char", "--algebra", "B2", "--m", "2",
              "--lambda", "0,1,1", "--order", "12")
    two = run(capsys, "char", "--algebra", "B2", "--m", "2",
              "--lambda", "0,1,1", "--order", "12")
    assert one == two


@pytest.mark.parametrize("name,argv", [
    ("info_B2.json",
     ["info", "--algebra", "B2"]),
    ("char_A1_m2_triplet.json",
     ["char", "--algebra", "A1", "--variant", "nonsuper", "--m", "2",
      "--alpha", "0", "--lambda", "0,1", "--order", "30"]),
    ("lambda_B2_super_m3.csv",
     ["lambda", "--algebra", "B2", "--variant", "super", "--m", "3",
      "--format", "csv"]),
    ("ftchar_A1_m2.json",
     ["ftchar", "--algebra", "A1", "--variant", "nonsuper", "--m", "2",
      "--lambda", "0,1", "--order", "8"]),
    ("alcove_B1_super_m2.json",
     ["alcove", "--algebra", "B1", "--variant", "super", "--m", "2",
      "--alpha", "0", "--lambda", "0,1"]),
])
def test_golden_files(capsys, name, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    want = (GOLDEN / name).read_text(encoding="utf-8")
    assert out == want
