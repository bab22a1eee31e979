from __future__ import annotations

import json
import subprocess
import sys

import pytest

from fusionkit import ising_ring
from fusionkit.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from fusionkit.io import RingFile, dumps, to_dict


@pytest.fixture
def ising_file(tmp_path):
    path = tmp_path / "ising.json"
    assert main(["construct", "ising", "-o", str(path)]) == EXIT_OK
    return path


def test_construct_and_validate(ising_file, capsys):
    assert main(["validate", str(ising_file)]) == EXIT_OK
    assert "valid" in capsys.readouterr().out


def test_validate_json(ising_file, capsys):
    assert main(["validate", "--json", str(ising_file)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"name": "Ising", "valid": True, "violations": []}


def test_broken_ring_exits_one(tmp_path, capsys):
    data = to_dict(RingFile(ising_ring()))
    data["ring"]["coefficients"] = [c for c in data["ring"]["coefficients"] if c[:3] != [2, 2, 1]]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    assert main(["validate", str(path)]) == EXIT_FAIL
    assert "violation" in capsys.readouterr().out


@pytest.mark.parametrize("content", ["{", '{"format": "fusionkit-ring", "version": 9}', "[]"])
def test_malformed_input_exits_two(tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    assert main(["validate", str(path)]) == EXIT_INPUT


def test_missing_file_exits_two(tmp_path):
    assert main(["analyze", str(tmp_path / "nope.json")]) == EXIT_INPUT


def test_analyze_json(ising_file, capsys):
    assert main(["analyze", "--json", str(ising_file)]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["type"] == "(1,2; √2,1)"
    assert out["fpdim"] == "4"
    assert out["universal_grading"]["group"] == "Z2"
    assert out["nilpotency"]["class"] == 2
    assert out["generalized_TY"]["index"] == 1
    assert out["pointed_extensions"] == {"2": ["1", "g"]}


def test_analyze_fibonacci(tmp_path, capsys):
    path = tmp_path / "fib.json"
    main(["construct", "fibonacci", "-o", str(path)])
    assert main(["analyze", "--json", str(path)]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["integrality"] == "non_weakly_integral"
    assert out["nilpotency"]["nilpotent"] is False


def test_grade_and_factor(tmp_path, capsys):
    z2 = tmp_path / "z2.json"
    ising = tmp_path / "ising.json"
    prod = tmp_path / "prod.json"
    main(["construct", "group", "--group", "Z2", "-o", str(z2)])
    main(["construct", "ising", "-o", str(ising)])
    assert main(["construct", "product", str(z2), str(ising), "-o", str(prod)]) == EXIT_OK
    capsys.readouterr()
    assert main(["grade", str(prod)]) == EXIT_OK
    assert "order 4" in capsys.readouterr().out
    assert main(["grade", "--group", "Z2", str(prod)]) == EXIT_OK
    assert "3 faithful grading(s)" in capsys.readouterr().out
    assert main(["factor", str(prod)]) == EXIT_OK
    assert "4 factorization(s)" in capsys.readouterr().out


def test_construct_modular(tmp_path, capsys):
    path = tmp_path / "m.json"
    assert main(["construct", "metric", "--factors", "2", "2", "--q", "0", "0", "--b", "0:1:1/2", "-o", str(path)]) == EXIT_OK
    assert main(["validate", str(path)]) == EXIT_OK
    assert main(["construct", "ising", "--zeta", "5", "-o", str(path)]) == EXIT_OK
    assert main(["validate", str(path)]) == EXIT_OK


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "metric", "--factors", "3", "--q", "1/6"],
        ["construct", "ising", "--zeta", "2"],
        ["construct", "ty", "--group", "S3"],
        ["construct", "group", "--group", "Q9"],
        ["classify", "--q", "11"],
        ["enumerate", "1,8"],
        ["bogus"],
        ["--jobs", "0", "enumerate", "1,2"],
    ],
)
def test_input_errors(argv, tmp_path):
    assert main(argv + (["-o", str(tmp_path / "x.json")] if argv[0] == "construct" else [])) == EXIT_INPUT


def test_enumerate_deterministic_across_jobs(tmp_path, capsys):
    outs = []
    for jobs in ("1", "3"):
        assert main(["--jobs", jobs, "enumerate", "(1,4; √2,2)"]) == EXIT_OK
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert outs[0].startswith("(1,4; √2,2): 4 ring(s)")


def test_enumerate_writes_files(tmp_path, capsys):
    assert main(["enumerate", "1,2; √2,1", "--out-dir", str(tmp_path)]) == EXIT_OK
    files = sorted(tmp_path.iterdir())
    assert len(files) == 1
    assert main(["validate", str(files[0])]) == EXIT_OK


def test_classify_q2(tmp_path, capsys):
    assert main(["classify", "--q", "2", "--out", str(tmp_path)]) == EXIT_OK
    names = {p.name for p in tmp_path.iterdir()}
    assert "modular_q2.counts.json" in names
    counts = json.loads((tmp_path / "modular_q2.counts.json").read_text())
    assert counts["counts"]["non_pointed"]["constructed"] == 16
    assert not any(n.startswith(".") for n in names)


def test_construct_is_deterministic(capsys):
    main(["construct", "ty", "--group", "Z2xZ2"])
    first = capsys.readouterr().out
    main(["construct", "ty", "--group", "Z2xZ2"])
    assert capsys.readouterr().out == first


def test_installed_entry_point(tmp_path):
    path = tmp_path / "i.json"
    path.write_text(dumps(RingFile(ising_ring())))
    proc = subprocess.run(
        [sys.executable, "-m", "fusionkit.cli", "validate", str(path)], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0, proc.stderr
