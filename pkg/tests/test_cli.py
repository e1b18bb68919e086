import json
import os
import subprocess
import sys

import pytest

from fibtools.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fib_value(capsys):
    code, out, _ = run(capsys, "fib", "value", "--n", "10")
    data = json.loads(out)
    assert code == 0
    assert data["value"] == 55
    assert data["tool"] == "fibtools"
    assert data["subcommand"] == "fib value"
    assert data["convention"] == "classic"
    code, out, _ = run(capsys, "fib", "value", "--n", "10", "--convention", "shifted")
    assert json.loads(out)["value"] == 89


def test_zeckendorf(capsys):
    code, out, _ = run(capsys, "zeckendorf", "encode", "--value", "100")
    assert json.loads(out)["digits"] == "1000010100"
    code, out, _ = run(capsys, "zeckendorf", "decode", "--digits", "1000010100", "--format", "plain")
    assert out.split()[0] == "100"
    code, _, err = run(capsys, "zeckendorf", "decode", "--digits", "110")
    assert code == 2 and "adjacent" in err


def test_realrep(capsys):
    code, out, _ = run(capsys, "realrep", "--base", "3/2", "--value", "1/2", "--digits", "4")
    assert json.loads(out)["digits"] == [0, 1, 0, 0]
    code, out, _ = run(capsys, "realrep", "--base", "phi", "--value", "phi-1", "--digits", "3", "--format", "plain")
    assert out.strip() == "1 0 0"
    code, out, _ = run(capsys, "realrep", "--base", "fib", "--value", "7/3", "--digits", "5")
    assert json.loads(out)["integer_part"] == 2
    code, _, _ = run(capsys, "realrep", "--base", "1", "--value", "1/2")
    assert code == 2


def test_randomfib(capsys):
    code, out, _ = run(capsys, "randomfib", "exact", "--n", "4")
    assert json.loads(out)["expected_abs"]["exact"] == "3/2"
    code, _, err = run(capsys, "randomfib", "exact", "--n", "40")
    assert code == 2 and "cap" in err
    code, out, _ = run(capsys, "randomfib", "root", "--tol", "1e-9")
    data = json.loads(out)
    assert data["root"].startswith("2.205569430")
    assert data["root_minus_one"][:10] == "1.20556943"
    code, out, _ = run(capsys, "randomfib", "mc", "--n", "100", "--trials", "200", "--seed", "3")
    data = json.loads(out)
    assert data["randomness"] == {"generator": "splitmix64", "master_seed": 3}
    code, _, _ = run(capsys, "randomfib", "mc", "--n", "5", "--trials", "10")
    assert code == 2


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FIBTOOLS_SEED", "17")
    _, out, _ = run(capsys, "randomfib", "mc", "--n", "50", "--trials", "20")
    assert json.loads(out)["master_seed"] == 17


def test_density(capsys, tmp_path):
    code, out, _ = run(capsys, "density", "profile", "--set", "fib", "--points", "100,1000", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "x,count,ratio,ratio_decimal,tail_min,tail_max"
    assert lines[1].startswith("100,10,1/10,")
    path = tmp_path / "s.txt"
    path.write_text("2\n3\n5\n")
    code, out, _ = run(capsys, "density", "profile", "--set", f"file:{path}", "--points", "4")
    assert json.loads(out)["rows"][0]["count"] == 2
    code, out, _ = run(capsys, "density", "fibmod", "--p", "2", "--lambda", "4")
    assert json.loads(out)["density"]["exact"] == "11/16"
    code, _, _ = run(capsys, "density", "fibmod", "--p", "4", "--lambda", "1")
    assert code == 2
    code, _, _ = run(capsys, "density", "profile", "--set", "primes", "--points", "4")
    assert code == 2


def test_words(capsys):
    _, out, _ = run(capsys, "words", "generate", "--preset", "thue-morse", "--length", "8", "--format", "plain")
    assert out.strip() == "01101001"
    _, out, _ = run(capsys, "words", "generate", "--preset", "kfib:2", "--length", "5", "--format", "plain")
    assert out.strip() == "01010"
    _, out, _ = run(capsys, "words", "balanced", "--word", "1100")
    assert json.loads(out)["witness"] == ["11", "00"]
    _, out, _ = run(capsys, "words", "count", "--n", "4", "--method", "brute", "--format", "plain")
    assert out.strip() == "14"
    _, out, _ = run(capsys, "words", "count", "--n", "5")
    assert json.loads(out)["count"] == 24


def test_identities_exit_codes(capsys):
    code, out, _ = run(capsys, "identities", "check", "--id", "symmetry", "--a", "3", "--b", "2")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "ExactEqual"
    assert data["lhs"]["exact"] == "-4/15"
    code, out, _ = run(capsys, "identities", "check", "--id", "dflemma", "--k", "2", "--n", "2")
    assert code == 3 and json.loads(out)["verdict"] == "Refuted"
    code, _, err = run(capsys, "identities", "check", "--id", "reciprocal", "--k", "1")
    assert code == 2 and "--terms" in err


def test_csv_only_for_profile(capsys):
    code, _, _ = run(capsys, "fib", "value", "--n", "3", "--format", "csv")
    assert code == 2


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["fib", "value"])
    assert exc.value.code == 2


def _subprocess(args, **env):
    return subprocess.run(
        [sys.executable, "-m", "fibtools", *args],
        capture_output=True,
        env={**os.environ, **env},
        check=False,
    )


def test_entry_point_and_determinism():
    args = ["randomfib", "mc", "--n", "120", "--trials", "500", "--seed", "9"]
    a = _subprocess(args)
    b = _subprocess(args + ["--workers", "1"])
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    refuted = _subprocess(["identities", "check", "--id", "dflemma", "--k", "2", "--n", "2", "--convention", "shifted"])
    assert refuted.returncode == 3
