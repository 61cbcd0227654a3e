import json
import re
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def run_cli(*args, **kw):
    return subprocess.run([sys.executable, "-m", "versalkit.cli", *args],
                          cwd=ROOT, capture_output=True, text=True, **kw)


def normalize(text):
    """Blank out the timing value; everything else must match exactly."""
    return re.sub(r'"total_s": [0-9.eE+-]+', '"total_s": 0', text)


def test_invariants_stdout_and_exit():
    res = run_cli("invariants", "tests/data/a2.vk")
    assert res.returncode == 0
    assert "tjurina = 2" in res.stdout
    assert "milnor = 2" in res.stdout
    assert "dim T2 = 0" in res.stdout


def test_invariants_golden(tmp_path):
    out = tmp_path / "inv.json"
    res = run_cli("invariants", "tests/data/a2.vk", "--json", str(out))
    assert res.returncode == 0
    got = normalize(out.read_text())
    want = normalize((ROOT / "tests/golden/invariants_a2.json").read_text())
    assert got == want


def test_miniversal_golden(tmp_path):
    out = tmp_path / "mini.json"
    res = run_cli("miniversal", "tests/data/a2.vk", "--json", str(out))
    assert res.returncode == 0
    assert "miniversal family: t1 + t2*x + y^2 + x^3" in res.stdout
    got = normalize(out.read_text())
    want = normalize((ROOT / "tests/golden/miniversal_a2.json").read_text())
    assert got == want


def test_ks_command(tmp_path):
    out = tmp_path / "ks.json"
    res = run_cli("ks", "tests/data/a2_trial.vk", "--json", str(out))
    assert res.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["ks_matrix"] == [["2"], ["3"]]
    assert doc["family"]["parameters"] == ["s"]


def test_lift_command(tmp_path):
    out = tmp_path / "lift.json"
    res = run_cli("lift", "tests/data/a2_trial.vk", "--json", str(out))
    assert res.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["family"]["order"] == 3
    assert all(c["ok"] for c in doc["certificates"]["flatness"])


def test_verify_command(tmp_path):
    out = tmp_path / "verify.json"
    res = run_cli("verify", "tests/data/a2_trial.vk", "--json", str(out))
    assert res.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["verify"]["ok"] is True
    assert doc["verify"]["substitution"] == {"t1": "2*s", "t2": "3*s"}
    assert "t1 -> 2*s" in res.stdout


def test_ext_command(tmp_path):
    out = tmp_path / "ext.json"
    res = run_cli("ext", "tests/data/a2.vk", "--json", str(out))
    assert res.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["invariants"]["t0"]["dimension"] == "infinite"
    assert doc["invariants"]["t1"]["dimension"] == 2
    assert doc["invariants"]["t2"]["dimension"] == 0


def test_rejection_exit_code():
    res = run_cli("invariants", "tests/data/nonisolated.vk")
    assert res.returncode == 1
    assert "non-isolated singular locus" in res.stderr


def test_parse_error_exit_code():
    res = run_cli("invariants", "tests/data/bad.vk")
    assert res.returncode == 2
    assert "input error" in res.stderr


def test_missing_file_exit_code():
    res = run_cli("invariants", "tests/data/never_written.vk")
    assert res.returncode == 2


def test_missing_base_block_is_input_error():
    res = run_cli("verify", "tests/data/a2.vk")
    assert res.returncode == 2
    assert "base" in res.stderr


def test_field_override(tmp_path):
    out = tmp_path / "f5.json"
    res = run_cli("invariants", "tests/data/a2.vk", "--field", "Fp:5",
                  "--json", str(out))
    assert res.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["input"]["field"] == "Fp:5"
    assert doc["invariants"]["tjurina"] == 2


def test_field_override_can_reject():
    # mod 3 the x-partial vanishes, so the singular locus is a whole curve
    res = run_cli("invariants", "tests/data/a2.vk", "--field", "Fp:3")
    assert res.returncode == 1
    assert "non-isolated" in res.stderr


def test_bad_field_override():
    res = run_cli("invariants", "tests/data/a2.vk", "--field", "Fp:6")
    assert res.returncode == 2
