"""Command-line front end: output shapes, determinism, and exit codes."""

import json
import shutil
import subprocess
from fractions import Fraction

import pytest

from shuffle_lab.analysis import tv_distance
from shuffle_lab.cli import format_fixed, main
from shuffle_lab.models import ShuffleSpec


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_format_fixed():
    assert format_fixed(Fraction(1, 16)) == "0.0625"
    assert format_fixed(Fraction(1)) == "1.0000"
    assert format_fixed(Fraction(-1, 16)) == "-0.0625"
    assert format_fixed(Fraction(1, 3), 6) == "0.333333"
    # ties round half to even at the last kept digit
    assert format_fixed(Fraction(1, 20000)) == "0.0000"
    assert format_fixed(Fraction(3, 20000)) == "0.0002"


def test_simulate_is_deterministic(capsys):
    argv = ["simulate", "--model", "shelf-lazy", "--n", "9", "--m", "2",
            "--seed", "7", "--count", "5"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    assert len(out1.splitlines()) == 5


def test_simulate_formats(capsys):
    code, out, _ = run(capsys, "simulate", "--model", "riffle-classic", "--n", "5",
                       "--m", "2", "--seed", "1", "--count", "3", "--stats",
                       "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "index,permutation,des,pk,lpk"
    assert len(lines) == 4

    code, out, _ = run(capsys, "simulate", "--model", "shelf-strict", "--n", "6",
                       "--m", "3", "--seed", "2", "--count", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["model"] == "shelf-strict" and payload["seed"] == 2
    assert len(payload["samples"]) == 2
    assert set(payload["samples"][0]) == {"index", "permutation"}

    code, out, _ = run(capsys, "simulate", "--model", "shelf-lazy", "--n", "4",
                       "--m", "1", "--count", "0")
    assert code == 0 and out == ""


def test_simulate_writes_output_file(tmp_path, capsys):
    target = tmp_path / "samples.txt"
    code, out, _ = run(capsys, "simulate", "--model", "shelf-lazy", "--n", "5",
                       "--m", "2", "--seed", "3", "--count", "4",
                       "--output", str(target))
    assert code == 0 and out == ""
    assert len(target.read_text().splitlines()) == 4


def test_tv_table_matches_library(capsys):
    code, out, _ = run(capsys, "tv-table", "--n", "8", "--m", "2,3",
                       "--model", "shelf-lazy", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "model,2,3"
    want = [format_fixed(tv_distance(ShuffleSpec(8, m, "shelf-lazy"))) for m in (2, 3)]
    assert lines[1] == "Lazy," + ",".join(want)


def test_tv_table_exact_and_default_rows(capsys):
    code, out, _ = run(capsys, "tv-table", "--n", "2", "--m", "1",
                       "--model", "shelf-lazy", "--exact")
    assert code == 0 and "1/18" in out

    code, out, _ = run(capsys, "tv-table", "--n", "6", "--m", "1,2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert list(payload["rows"]) == ["Lazy", "Standard", "Strict"]
    assert payload["m"] == [1, 2]

    code, out, _ = run(capsys, "tv-table", "--n", "6", "--m", "2",
                       "--distance", "sep", "--model", "shelf-strict", "--format", "csv")
    assert code == 0
    from shuffle_lab.analysis import sep_distance

    assert out.splitlines()[1].endswith(format_fixed(sep_distance(ShuffleSpec(6, 2, "shelf-strict"))))


def test_tv_table_rejects_empty_m(capsys):
    code, _, err = run(capsys, "tv-table", "--n", "4", "--m", " ")
    assert code == 2 and "error" in err


def test_verify_single_checks(capsys):
    code, out, _ = run(capsys, "verify", "--only", "convention")
    assert code == 0 and out.startswith("PASS convention")
    code, out, _ = run(capsys, "verify", "--only", "monotonicity", "--n", "8")
    assert code == 0 and out.startswith("PASS monotonicity")
    code, out, _ = run(capsys, "verify", "--only", "oracle", "--n", "3",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload[0]["check"] == "oracle" and payload[0]["ok"] is True


def test_verify_rejects_large_n(capsys):
    code, _, err = run(capsys, "verify", "--only", "decomposition", "--n", "9")
    assert code == 2 and "refuses" in err


def test_verify_corrupt_self_test_fails(capsys):
    code, out, _ = run(capsys, "verify", "--self-test-corrupt")
    assert code == 1
    assert out.startswith("FAIL decomposition[corrupted]")


def test_cycles_probabilities_sum_to_one(capsys):
    code, out, _ = run(capsys, "cycles", "--n", "5", "--m", "2", "--format", "csv")
    assert code == 0
    rows = out.splitlines()[1:]
    total = sum(Fraction(int(r.split(",")[1]), int(r.split(",")[2])) for r in rows)
    assert total == 1
    types = {r.split(",")[0] for r in rows}
    assert {"1+1+1+1+1", "5"} <= types

    code, out, _ = run(capsys, "cycles", "--n", "3", "--m", "1", "--format", "json")
    payload = json.loads(out)
    assert payload["n"] == 3 and payload["types"][0]["type"] == [1, 1, 1]


def test_fixed_points_formats(capsys):
    code, out, _ = run(capsys, "fixed-points", "--n", "2", "--m", "1")
    assert code == 0 and "10/9" in out
    code, out, _ = run(capsys, "fixed-points", "--n", "52", "--m", "10",
                       "--format", "json")
    payload = json.loads(out)
    assert payload["expected_den"] == str(21**52)
    assert payload["expected"] == pytest.approx(1 + 2 / (21**2 - 1), rel=1e-6)


def test_unknown_model_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--model", "overhand", "--n", "3", "--m", "1"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_console_script_wiring():
    exe = shutil.which("shuffle-lab")
    assert exe is not None
    proc = subprocess.run(
        [exe, "fixed-points", "--n", "2", "--m", "1"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert "10/9" in proc.stdout
