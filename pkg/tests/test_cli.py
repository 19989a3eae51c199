import json

import pytest

from borwein_pi.cli import main

JSON_FIELDS = {"scheme", "identity", "digits_requested", "digits_verified", "iterations", "pi", "per_iteration", "oracle"}


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_quartic_json(capsys, pi_reference):
    code, out, _ = run_cli(capsys, "--mode", "compute", "--scheme", "borwein4", "--identity", "1", "--digits", "1000", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert set(data) == JSON_FIELDS
    assert data["digits_verified"] == 1000 and data["iterations"] <= 7
    assert data["pi"] == pi_reference[:1002]
    assert data["oracle"] == "machin"
    assert all(set(row) == {"n", "est_digits", "ms"} for row in data["per_iteration"])


def test_compute_text_layout(capsys):
    code, out, _ = run_cli(capsys, "--scheme", "borwein2", "--identity", "4", "--digits", "100")
    assert code == 0
    assert "100 digits verified against machin (ok)" in out
    assert "1415926535 8979323846 2643383279 5028841971 6939937510" in out


def test_compute_against_digits_file(capsys, tmp_path, pi_reference):
    ref = tmp_path / "pi.txt"
    ref.write_text(pi_reference)
    code, out, _ = run_cli(capsys, "--scheme", "full", "--identity", "2", "--digits", "300", "--digits-file", str(ref), "--format", "json")
    assert code == 0
    assert json.loads(out)["oracle"] == "digits-file"


def test_wrong_reference_exits_2(capsys, tmp_path):
    ref = tmp_path / "pi.txt"
    ref.write_text("3.1415926536")
    code, out, _ = run_cli(capsys, "--scheme", "full", "--identity", "2", "--digits", "20", "--digits-file", str(ref), "--format", "json")
    assert code == 2
    assert json.loads(out)["digits_verified"] == 9


@pytest.mark.parametrize(
    "argv, message",
    [
        (["--mode", "compute", "--scheme", "borwein2", "--identity", "9"], "identity must be 1..5"),
        (["--bogus"], "unrecognized"),
        (["--scheme", "cubic", "--identity", "1", "--digits", "10"], "invalid choice"),
        (["--scheme", "borwein2", "--digits", "10"], "needs --identity"),
        (["--scheme", "borwein2", "--identity", "1", "--digits", "10", "--digits-file", "/nonexistent/pi.txt"], "cannot read"),
        (["--scheme", "borwein2", "--identity", "5", "--digits", "1000", "--max-iters", "3"], "did not reach"),
        (["--scheme", "borwein2", "--identity", "1", "--digits", "0"], "positive"),
    ],
)
def test_usage_errors_exit_1(capsys, argv, message):
    code, _, err = run_cli(capsys, *argv)
    assert code == 1
    assert message in err


def test_empty_digits_file_exit_1(capsys, tmp_path):
    ref = tmp_path / "pi.txt"
    ref.write_text("")
    code, _, err = run_cli(capsys, "--scheme", "borwein2", "--identity", "1", "--digits", "10", "--digits-file", str(ref))
    assert code == 1 and "empty" in err


def test_verify_identities(capsys):
    code, out, _ = run_cli(capsys, "--mode", "verify-identities", "--digits", "50")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5 and all(line.endswith("PASS") for line in lines)


def test_verify_identities_json(capsys):
    code, out, _ = run_cli(capsys, "--mode", "verify-identities", "--digits", "40", "--format", "json")
    assert code == 0
    assert [row["pass"] for row in json.loads(out)] == [True] * 5


def test_verify_identities_failure_exits_2(capsys):
    # a term cap too small for identity 5 surfaces as an error, not a silent pass
    code, _, err = run_cli(capsys, "--mode", "verify-identities", "--digits", "50", "--max-terms", "100")
    assert code == 1 and "not converged" in err


def test_verify_wz(capsys):
    code, out, _ = run_cli(capsys, "--mode", "verify-wz", "--digits", "50", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [d["identity"] for d in data] == [1, 2, 3, 4, 5]
    assert all(d["pass"] for d in data)


def test_verify_wz_single_identity_with_tight_cap_exits_2(capsys):
    code, out, _ = run_cli(capsys, "--mode", "verify-wz", "--identity", "5", "--k", "0", "3", "--max-terms", "720")
    assert code == 2
    assert "k=3" in out


def test_verify_transforms(capsys):
    code, out, _ = run_cli(capsys, "--mode", "verify-transforms", "--digits", "50")
    assert code == 0
    assert out.count("PASS") == 16


def test_bench_does_not_change_results(capsys):
    code, out, _ = run_cli(capsys, "--mode", "bench", "--identity", "3", "--digits", "300", "--format", "json")
    assert code == 0
    runs = {r["scheme"]: r for r in json.loads(out)["runs"]}
    assert set(runs) == {"full", "simplified", "borwein2", "borwein4"}
    for scheme, row in runs.items():
        code, out, _ = run_cli(capsys, "--scheme", scheme, "--identity", "3", "--digits", "300", "--format", "json")
        computed = json.loads(out)
        assert row["iterations"] == computed["iterations"]
        assert row["digits_verified"] == computed["digits_verified"] == 300


def test_compute_with_user_set(capsys, tmp_path):
    sets = tmp_path / "sets.ini"
    sets.write_text("[chain]\nd0 = sqrt(2) - 1\nb0 = 8 - 4*sqrt(2)\na0 = 3 - 2*sqrt(2)\nc0 = 2*sqrt(2)\nr0 = sqrt(2) - 1\n")
    code, out, _ = run_cli(capsys, "--scheme", "borwein4", "--sets-file", str(sets), "--set", "chain", "--digits", "200", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["identity"] is None and data["digits_verified"] == 200


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "borwein_pi", "--scheme", "borwein4", "--identity", "2", "--digits", "30"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "30 digits verified" in proc.stdout
