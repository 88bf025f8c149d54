from __future__ import annotations

import json
import subprocess
import sys

import pytest

from dfact.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_stirling_two(capsys):
    code, out, _ = run(capsys, "enumerate", "stirling", "2")
    assert code == 0
    assert out.splitlines() == ["1122", "1221", "2211", "count=3"]


def test_enumerate_small_trailers(capsys):
    code, out, _ = run(capsys, "enumerate", "trapezoidal", "1")
    assert code == 0 and out.splitlines() == ["1", "count=1"]
    code, out, _ = run(capsys, "enumerate", "perfect-matching", "--n", "3")
    assert code == 0 and out.splitlines()[-1] == "count=15"


def test_enumerate_json_lines(capsys):
    code, out, _ = run(capsys, "enumerate", "stirling", "2", "--format", "json")
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "count=3"
    assert all(isinstance(json.loads(line), (dict, list)) for line in lines[:-1])


def test_enumerate_above_bound_is_usage_error(capsys):
    code, _, err = run(capsys, "enumerate", "stirling", "7")
    assert code == 2 and "bound" in err
    code, _, _ = run(capsys, "enumerate", "tree", "9", "--bound", "9")
    assert code == 2


def test_bound_flag_raises_the_limit(capsys):
    code, out, _ = run(capsys, "enumerate", "perfect-matching", "7", "--bound", "7")
    assert code == 0 and out.splitlines()[-1] == "count=135135"


def test_bound_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("DFACT_BOUND", "2")
    code, _, _ = run(capsys, "enumerate", "stirling", "3")
    assert code == 2


def test_verify_single_and_all(capsys):
    code, out, _ = run(capsys, "verify", "I16", "12")
    assert code == 0 and out.splitlines()[-1] == "seed=20240611 result=PASS"
    code, out, _ = run(capsys, "verify", "all", "6")
    assert code == 0 and out.endswith("result=PASS\n")


def test_verify_usage_errors(capsys):
    assert run(capsys, "verify", "I1", "0")[0] == 2
    assert run(capsys, "verify", "I99", "4")[0] == 2


def test_verify_json_records_seed(capsys):
    code, out, _ = run(capsys, "verify", "I3", "5", "--format", "json", "--seed", "7")
    data = json.loads(out)
    assert code == 0 and data["seed"] == 7 and data["ok"]


def test_table_first_entry_csv(capsys):
    code, out, _ = run(capsys, "table", "first-entry", "4", "--format", "csv")
    assert code == 0 and out == "1,48\n2,24\n3,18\n4,15\n"


def test_table_text_and_joint(capsys):
    code, out, _ = run(capsys, "table", "descent-count", "4")
    assert code == 0 and out.splitlines()[0] == "1: 1"
    code, out, _ = run(capsys, "table", "first-ascent-length,first-descent-length", "3", "--format", "json")
    assert code == 0 and json.loads(out)["total"] == 15


def test_bijection_examples(capsys):
    code, out, _ = run(capsys, "bijection", "stirling-to-trapezoidal", "fwd", "5512234431")
    assert code == 0 and out == "11442\n"
    code, out, _ = run(capsys, "bijection", "stirling-to-trapezoidal", "inv", "11442")
    assert code == 0 and out == "5512234431\n"


def test_bijection_needs_k(capsys):
    code, _, err = run(capsys, "bijection", "rightpath-split", "fwd", "[[1],[]]")
    assert code == 2 and "--k" in err


def test_hafnian_modes(capsys):
    assert run(capsys, "hafnian", "constant-rows", "[1,1,1]")[1] == "3\n"
    code, out, _ = run(capsys, "hafnian", "pfaffian-constant-rows", "[1,2,3]")
    assert code == 0 and int(out) == 3
    code, out, _ = run(capsys, "hafnian", "check", "3", "--trials", "10")
    assert code == 0 and json.loads(out)["ok"]


def test_hafnian_bad_input(capsys):
    assert run(capsys, "hafnian", "constant-rows", "[1,1]")[0] == 2
    assert run(capsys, "hafnian", "constant-rows")[0] == 2


def test_series_output_and_check(capsys):
    code, out, _ = run(capsys, "series", "G1", "4")
    rows = [line.split(",") for line in out.splitlines() if line.startswith("4,")]
    assert code == 0 and [int(r[2]) for r in rows] == [60, 18, 12, 15]
    code, out, _ = run(capsys, "series", "all", "8", "--check")
    assert code == 0 and out.endswith("result=PASS\n")


def test_series_usage_errors(capsys):
    assert run(capsys, "series", "G8", "4")[0] == 2
    assert run(capsys, "series", "all", "4")[0] == 2
    assert run(capsys, "series", "G1", "8", "--check", "--orders", "2,2")[0] == 2


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["bijection", "phi", "sideways", "1122"])
    assert info.value.code == 2


def test_output_is_byte_stable(capsys):
    first = run(capsys, "table", "leaf-count", "5", "--format", "json")
    second = run(capsys, "table", "leaf-count", "5", "--format", "json")
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dfact", "enumerate", "stirling", "1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == "11\ncount=1\n"
