import json
import subprocess
import sys

import pytest

from conftest import EX_KERNEL
from elkies.cli import EXIT_ATKIN, EXIT_DATABASE, EXIT_DEGENERATE, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kernel_text(capsys):
    code, out, _ = run(capsys, "kernel", "--p", "5", "--n", "1", "--a4", "1", "--a6", "4", "--ell", "11")
    assert code == 0
    assert "x^5 + x^4 + x^2 + 3*x + 1" in out
    assert "[1, 3, 1, 0, 1, 1]" in out
    assert "mu = 6" in out


def test_kernel_json_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "kernel", "--p", "5", "--a4", "1", "--a6", "4", "--ell", "11", "--format", "json")
    assert code == 0
    data = json.loads(out)
    for key in ("ell", "p", "n", "mu", "kernel_poly", "isogenous_curve", "verified", "root"):
        assert key in data
    assert data["kernel_poly"] == EX_KERNEL
    assert data["isogenous_curve"] == {"a4": -7329, "a6": -3934}
    assert data["verified"] is True and data["mu"] == 6
    path = tmp_path / "k.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", "--json", str(path))
    assert code == 0 and "verified" in out


def test_kernel_extension_roundtrip(capsys, tmp_path):
    code, out, _ = run(
        capsys, "kernel", "--p", "7", "--n", "2", "--a4", "1,2", "--a6", "3,1", "--ell", "5",
        "--root", "both", "--format", "json", "--modulus", "1,0,1",
    )
    assert code == 0
    data = json.loads(out)
    assert data and data[0]["modulus"] == [1, 0, 1]
    path = tmp_path / "k.json"
    path.write_text(out)
    assert run(capsys, "verify", "--json", str(path))[0] == 0


def test_kernel_atkin_exit(capsys):
    code, _, err = run(capsys, "kernel", "--p", "5", "--a4", "1", "--a6", "4", "--ell", "7")
    assert code == EXIT_ATKIN
    assert "7" in err and "Traceback" not in err


def test_kernel_degenerate_exit(capsys):
    assert run(capsys, "kernel", "--p", "13", "--a4", "0", "--a6", "1", "--ell", "5")[0] == EXIT_DEGENERATE
    assert run(capsys, "kernel", "--p", "11", "--a4", "2", "--a6", "3", "--ell", "5")[0] == EXIT_DEGENERATE


def test_kernel_missing_db(capsys, tmp_path):
    code, _, err = run(capsys, "--modpoly-dir", str(tmp_path), "kernel", "--p", "5", "--a4", "1", "--a6", "4", "--ell", "11")
    assert code == EXIT_DATABASE and "MissingEll" in err


def test_env_var_database(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ELKIES_MODPOLY_DIR", str(tmp_path))
    assert run(capsys, "kernel", "--p", "5", "--a4", "1", "--a6", "4", "--ell", "11")[0] == EXIT_DATABASE


@pytest.mark.parametrize(
    "argv",
    [
        ["kernel", "--p", "5", "--a4", "1", "--a6", "4", "--ell", "9"],
        ["kernel", "--p", "4", "--a4", "1", "--a6", "4", "--ell", "11"],
        ["kernel", "--p", "5", "--a4", "1,2", "--a6", "4", "--ell", "11"],
        ["precision", "--p", "5", "--ell", "4"],
        ["precision", "--p", "5"],
        ["kernel", "--p", "5"],
        ["nonsense"],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == EXIT_USAGE


def test_precision(capsys):
    assert run(capsys, "precision", "--p", "5", "--ell", "11")[1].strip() == "6"
    assert run(capsys, "precision", "--p", "7", "--ell", "97")[1].strip() == "13"
    code, out, _ = run(capsys, "precision", "--p", "5", "--ell-range", "3:13", "--format", "csv")
    assert out.splitlines() == ["ell,required_mu", "3,3", "5,3", "7,5", "11,6", "13,7"]
    code, out, _ = run(capsys, "precision", "--figure1", "--format", "csv")
    assert out.splitlines()[0] == "p,ell,mu" and "5,257,22" in out
    code, out, _ = run(capsys, "precision", "--p", "5", "--ell", "11", "--detail")
    assert "per_level=[0, 1, 1, 2, 1]" in out


def test_verify_command(capsys):
    base = ["verify", "--p", "5", "--a4", "1", "--a6", "4", "--ell", "11"]
    assert run(capsys, *base, "--g", "1,3,1,0,1,1")[0] == 0
    assert run(capsys, *base, "--g", "1,3,1,0,2,1")[0] == 5
    code, out, _ = run(capsys, *base, "--g", "2,1", "--format", "json")
    assert code == 5 and json.loads(out)["checks"]["degree"] is False


def test_divpoly(capsys):
    assert run(capsys, "divpoly", "--p", "5", "--a4", "1", "--a6", "4", "--ell", "3", "--degree-only")[1].strip() == "4"
    code, out, _ = run(capsys, "divpoly", "--p", "13", "--a4", "1", "--a6", "4", "--ell", "5", "--format", "json")
    assert json.loads(out)["degree"] == 12


def test_modpoly_check(capsys, tmp_path, db):
    good = db.directory / "phi_7.txt"
    assert run(capsys, "modpoly-check", str(good))[0] == 0
    bad = tmp_path / "phi_7.txt"
    bad.write_text("\n".join(good.read_text().splitlines()[:10]) + "\n")
    code, _, err = run(capsys, "modpoly-check", str(bad))
    assert code != 0 and "ValidationError" in err
    assert run(capsys, "modpoly-check", str(tmp_path / "nope.txt"))[0] != 0


def test_modpoly_list(capsys):
    code, out, _ = run(capsys, "modpoly-list")
    assert code == 0 and " 11 " in out


def test_batch(capsys, tmp_path):
    jobs = tmp_path / "jobs.jsonl"
    jobs.write_text(
        "\n".join(
            [
                json.dumps({"p": 5, "a4": 1, "a6": 4, "ell": 11}),
                json.dumps({"p": 5, "a4": 1, "a6": 4, "ell": 7}),
                json.dumps({"p": 101, "a4": 3, "a6": 7, "ell": 7, "root": "both"}),
            ]
        )
    )
    code, out, _ = run(capsys, "batch", str(jobs), "--jobs", "2")
    records = [json.loads(line) for line in out.splitlines()]
    assert [r["exit"] for r in records] == [0, EXIT_ATKIN, 0]
    assert records[0]["result"]["kernel_poly"] == EX_KERNEL
    assert len(records[2]["result"]) == 2
    assert code == EXIT_ATKIN


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "elkies", "kernel", "--p", "5", "--a4", "1", "--a6", "4", "--ell", "7"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == EXIT_ATKIN
    assert "Traceback" not in proc.stderr
