import io
import json
import subprocess
import sys

import pytest

from majorcert.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_pn_prints_certified_digits():
    code, text = run("pn", "--n", "2", "--r", "3")
    assert code == 0 and text.startswith("P_2(3) = 7.2112478515")


def test_pn_json_is_deterministic():
    first = run("pn", "--n", "2", "--r", "1/3", "--format", "json")[1]
    assert first == run("pn", "--n", "2", "--r", "1/3", "--format", "json")[1]
    doc = json.loads(first)
    assert doc["value"]["bits"] == 64 and doc["r"] == "1/3"


def test_precision_flag_and_environment(monkeypatch):
    doc = json.loads(run("pn", "--n", "2", "--r", "1/2", "--format", "json", "--precision-bits", "256")[1])
    assert doc["value"]["bits"] == 256
    monkeypatch.setenv("MAJORCERT_PRECISION_BITS", "128")
    doc = json.loads(run("pn", "--n", "2", "--r", "1/2", "--format", "json")[1])
    assert doc["value"]["bits"] == 128


def test_ratio_with_sequence_file(tmp_path):
    seq = tmp_path / "seq.json"
    seq.write_text(json.dumps({"kind": "explicit", "terms": ["2", "4", "6"]}))
    code, text = run("ratio", "--n", "2", "--r", "1", "--seq", str(seq), "--format", "json")
    assert code == 0 and json.loads(text)["value"] == "3/4"


def test_check_ls_high():
    code, text = run("check", "--id", "LS_HIGH", "--n", "2", "--r", "2")
    assert code == 0
    assert "lhs 5, rhs 24/5" in text and "ConfirmsPaper" in text


def test_check_negative_value_and_csv():
    code, text = run("check", "--id", "ALZER_NEG", "--n", "3", "--r", "-1/2", "--format", "csv")
    assert code == 0 and text.splitlines()[1].endswith("ConfirmsPaper")


def test_sweep_csv_and_json():
    code, text = run("sweep", "--id", "GAO_MONO", "--n", "1:3", "--grid", "-2:1:1/2", "--r2", "2", "--format", "csv")
    assert code == 0 and len(text.splitlines()) == 1 + 3 * 7
    code, text = run("sweep", "--id", "BEN_CONVEX", "--n", "1:5", "--r", "1", "--format", "json")
    assert json.loads(text)["summary"]["ConfirmsPaper"] == 5


def test_majorize_counterexample_exit_code():
    code, text = run("majorize", "--n", "2", "--r", "3")
    assert code == 1 and "prefix 3: 8/9 vs 31/36" in text and "5/9 > 19/36" in text
    code, _ = run("majorize", "--n", "2", "--r", "1")
    assert code == 0


def test_power_majorize_inline_and_file(tmp_path):
    x = "1/27,1/27,1/27,8/27,8/27,8/27"
    path = tmp_path / "y.json"
    path.write_text(json.dumps(["1/72", "1/72", "1/9", "1/9", "3/8", "3/8"]))
    code, text = run("power-majorize", "--x", x, "--y", str(path))
    assert code == 0 and "ConsistentWithPowerMajorization" in text
    code, _ = run("power-majorize", "--x", "3/4,1/4", "--y", "1/2,1/2", "--p-grid", "2:3:1")
    assert code == 1


def test_counterexample_round_trip(tmp_path):
    out = tmp_path / "cert.json"
    code, _ = run("counterexample", "--n", "2", "--r", "3", "--out", str(out))
    assert code == 0
    assert json.loads(out.read_text())["majorization_failure"]["prefix_index"] == 3
    assert run("verify-cert", str(out))[0] == 0
    doc = json.loads(out.read_text())
    doc["n"] = 3
    out.write_text(json.dumps(doc))
    code, text = run("verify-cert", str(out))
    assert code == 1 and "FAILED" in text


def test_counterexample_not_found():
    assert run("counterexample", "--n", "2", "--r", "1")[0] == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["pn", "--n", "2"],
        ["pn", "--n", "2", "--r", "abc"],
        ["check", "--id", "NOPE", "--n", "2", "--r", "1"],
        ["check", "--id", "LS_LOW", "--n", "2"],
        ["verify-cert", "/nonexistent/cert.json"],
        ["pn", "--n", "2", "--r", "1", "--format", "xml"],
        ["frobnicate"],
        ["majorize", "--x", "1,2"],
        ["pn", "--n", "1", "--r", "1", "--format", "csv"],
    ],
)
def test_usage_errors_exit_3(argv):
    assert run(*argv)[0] == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "majorcert", "check", "--id", "THM2_STEP", "--n", "1", "--alpha", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "ExactlyEqual" in proc.stdout
