"""Command-line front end: schemas, exit codes, determinism."""

import json
import math
import os

import pytest

from splithopf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tables_schema(capsys):
    code, out, _ = run(capsys, "tables", "--algebra", "split-octonion")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert len(data["basis"]) == 8
    assert data["table"][1][3] == [{"coeff": -1, "basis_index": 2}]


def test_project_pole(capsys):
    code, out, _ = run(capsys, "project", "--level", "1", "--realization", "I",
                       "--spinor", "[[1,0],[0,0]]")
    assert code == 0
    data = json.loads(out)
    assert data["coords"] == [0, 0, 1]
    assert data["patch"] == "upper"


def test_project_level0(capsys):
    code, out, _ = run(capsys, "project", "--level", "0", "--spinor", "[0.75, 1.25]")
    assert code == 0
    assert json.loads(out)["coords"] == [1.875, 2.125]


def test_invert_roundtrip_through_json(capsys):
    code, out, _ = run(capsys, "invert", "--level", "2", "--realization", "II",
                       "--patch", "upper", "--point", "[0.3, 0.1, 0.2, 0.4, %r]"
                       % math.sqrt(1 + 0.09 + 0.01 - 0.04 - 0.16))
    assert code == 0
    data = json.loads(out)
    assert len(data["comps"]) == 4
    code, out, _ = run(capsys, "project", "--level", "2", "--realization", "II",
                       "--spinor", json.dumps(data["comps"]))
    assert code == 0
    back = json.loads(out)["coords"]
    assert abs(back[0] - 0.3) < 1e-12 and abs(back[3] - 0.4) < 1e-12


def test_invert_level3_returns_section(capsys):
    code, out, _ = run(capsys, "invert", "--level", "3", "--realization", "I",
                       "--point", json.dumps([0.0] * 8 + [1.0]))
    assert code == 0
    data = json.loads(out)
    assert len(data["section"]) == 16 and len(data["section"][0]) == 8


def test_usage_errors_exit_2(capsys):
    code, _, err = run(capsys, "project", "--level", "1", "--realization", "I",
                       "--spinor", "notjson")
    assert code == 2
    assert "usage error" in err
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nosuch"])
    assert exc.value.code == 2


def test_domain_errors_exit_1(capsys):
    code, _, err = run(capsys, "invert", "--level", "1", "--realization", "I",
                       "--patch", "lower", "--point", "[0,0,1]")
    assert code == 1
    assert "patch" in err


def test_verify_algebra_pass_and_fault(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "algebra", "--seed", "7",
                       "--no-timestamp")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "pass"
    assert data["seed"] == 7
    assert all(c["identity"] is not None for c in data["suites"][0]["checks"])
    code, out, _ = run(capsys, "verify", "--suite", "gamma", "--inject-fault",
                       "--no-timestamp")
    assert code == 1
    data = json.loads(out)
    failing = [c["id"] for s in data["suites"] for c in s["checks"]
               if c["status"] == "fail"]
    assert any("so32_I" in f for f in failing)


def test_verify_deterministic_bytes(capsys, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["verify", "--suite", "algebra", "--seed", "3", "--no-timestamp",
                 "--out", str(a)]) == 0
    assert main(["verify", "--suite", "algebra", "--seed", "3", "--no-timestamp",
                 "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("HOPFCTL_SEED", "21")
    code, out, _ = run(capsys, "verify", "--suite", "algebra", "--no-timestamp")
    assert code == 0
    assert json.loads(out)["seed"] == 21


def test_sample_field_csv(capsys, tmp_path):
    out_file = tmp_path / "grid.csv"
    code = main(["sample-field", "--level", "1", "--realization", "I",
                 "--patch", "upper", "--grid", "x1=-0.5:0.5:3,x2=-0.4:0.4:3",
                 "--format", "csv", "--out", str(out_file)])
    assert code == 0
    lines = out_file.read_text().strip().splitlines()
    header = lines[0].split(",")
    assert header[:3] == ["x1", "x2", "x3"]
    assert "A_1" in header and "F_12" in header
    assert lines[-1].startswith("# skipped=")
    for line in lines[1:-1]:
        assert "nan" not in line.lower()
    # values round-trip losslessly through the 17-digit format
    first = lines[1].split(",")
    assert float(first[2]) == math.sqrt(1 - 0.25 + 0.16)


def test_sample_field_json_skips_counted(capsys):
    # a grid reaching past the hyperboloid domain must count skipped points
    code, out, _ = run(capsys, "sample-field", "--level", "1", "--realization", "II",
                       "--patch", "upper", "--grid", "x1=0:0.5:2,x2=0:0.5:2",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert data["skipped"] == 0  # two-leaf case never lacks a solution
    code, out, _ = run(capsys, "sample-field", "--level", "1", "--realization", "I",
                       "--patch", "upper", "--grid", "x1=0:3:2,x2=0:0.1:1",
                       "--format", "json")
    data = json.loads(out)
    assert data["skipped"] >= 1  # x1 = 3, x2 = 0.1 has no real x3


def test_grid_spec_errors(capsys):
    code, _, err = run(capsys, "sample-field", "--level", "1", "--realization", "I",
                       "--grid", "bogus")
    assert code == 2
    code, _, err = run(capsys, "sample-field", "--level", "1", "--realization", "I",
                       "--grid", "x3=0:1:2")
    assert code == 2  # the last coordinate is solved, not gridded


def test_tolerance_override(capsys):
    # an absurdly tight override flips residual-carrying checks to failure
    code, out, _ = run(capsys, "verify", "--suite", "hopf", "--no-timestamp",
                       "--tolerance", "constraint-=1e-30")
    assert code == 1
    data = json.loads(out)
    failing = [c for s in data["suites"] for c in s["checks"]
               if c["status"] == "fail"]
    assert failing and all(c["tolerance"] == 1e-30 for c in failing)
    code, _, err = run(capsys, "verify", "--suite", "algebra", "--tolerance", "bogus")
    assert code == 2
