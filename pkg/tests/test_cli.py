import json
import subprocess
import sys

import pytest

from subcirc.cli import main, parse_coefficient, parse_preset
from subcirc.errors import InputError
from subcirc.sage import ExpRational

A012 = "[[0],[1],[2]]"
PLANAR = "[[0,0],[1,0],[0,1]]"
PLANAR_CONE = '{"vertices": [[0,0]], "rays": [[-1,1],[2,-1]]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def without_timing(report):
    report = dict(report)
    report["report"] = {k: v for k, v in report["report"].items() if k != "seconds"}
    return report


def test_enumerate_grid_cube(capsys):
    d = run_json(capsys, "enumerate", "--support", "grid:3", "--set", "cube:2")
    assert d["family"]["count"] == 132
    assert d["family"]["count_by_beta"] == [[8, 17, 8], [17, 32, 17], [8, 17, 8]]
    r = d["report"]
    assert r["counts"]["total"] == 132 and sum(map(sum, r["counts"]["per_beta"])) == 132
    assert len(r["checksum"]) == 64


def test_enumerate_grid_orthant_and_rn(capsys):
    assert run_json(capsys, "enumerate", "--support", "grid:3", "--set", "orthant:2")["family"]["count"] == 65
    assert run_json(capsys, "enumerate", "--support", "grid:3", "--set", "rn:2")["family"]["count"] == 16


def test_enumerate_rationals_serialized_as_strings(capsys):
    d = run_json(capsys, "enumerate", "--support", "[[0],[1],[3]]", "--set", "interval")
    for c in d["family"]["circuits"]:
        assert all(isinstance(v, str) for v in c["nu"] + c["normalized_nu"])
        assert isinstance(c["sigma"], str)
    assert any("/" in v for c in d["family"]["circuits"] for v in c["normalized_nu"])


def test_enumerate_determinism(capsys):
    args = ["enumerate", "--support", "grid:3", "--set", "orthant:2"]
    a = run_json(capsys, *args, "--parallel", "1")
    b = run_json(capsys, *args, "--parallel", "2")
    assert a["report"]["checksum"] == b["report"]["checksum"]
    assert without_timing(a) == without_timing(b)


@pytest.mark.parametrize("support,preset", [("grid:3", "orthant:2"), (A012, "interval"),
                                            (A012, "line"), ("grid:2", "rn:2")])
def test_enumerate_verify_routes(capsys, support, preset):
    d = run_json(capsys, "enumerate", "--support", support, "--set", preset, "--verify")
    assert d["verify"]["agrees_with"] and all(d["verify"]["agrees_with"].values())


@pytest.mark.parametrize("route", ["general", "cone", "orthant"])
def test_enumerate_explicit_routes_agree(capsys, route):
    d = run_json(capsys, "enumerate", "--support", "grid:3", "--set", "orthant:2",
                 "--route", route)
    assert d["family"]["count"] == 65


def test_enumerate_vrep_cone(capsys):
    d = run_json(capsys, "enumerate", "--support", PLANAR, "--vrep", PLANAR_CONE)
    rays = {tuple(int(v) for v in c["nu"]) for c in d["family"]["circuits"] if c["beta"] == 0}
    assert rays == {(-2, 1, 1), (-3, 1, 2)}


def test_enumerate_hrep_interval(capsys):
    h = '{"ineqs": [{"a": [1], "b": 1}, {"a": [-1], "b": 1}]}'
    d = run_json(capsys, "enumerate", "--support", A012, "--hrep", h)
    assert d["family"]["count"] == 7


def test_csv_and_table_formats(capsys):
    code, out, _ = run(capsys, "enumerate", "--support", "grid:3", "--set", "cube:2",
                       "--format", "csv")
    assert code == 0
    rows = [r for r in out.strip().splitlines()]
    assert "8,17,8" in rows and "17,32,17" in rows
    code, out, _ = run(capsys, "enumerate", "--support", "grid:3", "--set", "cube:2",
                       "--format", "table")
    assert code == 0 and "132" in out and "32" in out


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "enumerate", "--support", A012, "--set", "halfline",
                       "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["family"]["count"] == 4


def test_support_from_file(capsys, tmp_path):
    p = tmp_path / "a.json"
    p.write_text(json.dumps({"support": [[0], [1], [2]]}))
    assert run_json(capsys, "enumerate", "--support", str(p), "--set", "line")["family"]["count"] == 1


def test_reduce_examples(capsys):
    d = run_json(capsys, "reduce", "--support", "grid:3", "--set", "cube:2")
    assert d["family"]["count"] == 24
    decided = {a["decided_by"] for a in d["attribution"]}
    assert decided <= {"convex-hull", "combinatorial", "extreme-ray"}
    for a in d["attribution"]:
        if a["decided_by"] == "combinatorial":
            assert a["reduced"] is False and set(a["witness"]) == {"beta_prime", "lambda_prime", "gamma"}
        if a["reduced"]:
            assert a["witness"] is None
    d = run_json(capsys, "reduce", "--support", A012, "--set", "interval", "--verify")
    assert d["family"]["count"] == 3 and all(d["verify"].values())


def test_reduce_no_filters_same_result(capsys):
    a = run_json(capsys, "reduce", "--support", "grid:3", "--set", "rn:2")
    b = run_json(capsys, "reduce", "--support", "grid:3", "--set", "rn:2", "--no-filters",
                 "--method", "exact")
    assert a["family"] == b["family"] and a["family"]["count"] == 12


def test_check_examples(capsys):
    d = run_json(capsys, "check", "--support", PLANAR, "--vrep", PLANAR_CONE, "--vector=-3,1,2")
    assert d["circuit"] is True
    d = run_json(capsys, "check", "--support", A012, "--set", "interval", "--vector", "1,-3,2")
    assert d["circuit"] is False


def test_age_check_examples(capsys):
    d = run_json(capsys, "age-check", "--support", A012, "--set", "interval",
                 "--coefficients", "1,-2,1", "--witness", "1/2,-1,1/2", "--samples", "1024")
    assert d["age"]["status"] == "boundary"
    assert d["extremal"]["status"] == "extremal"
    assert d["sampled_minimum"]["value"] >= -1e-9
    d = run_json(capsys, "age-check", "--support", "[[0],[1]]", "--set", "interval",
                 "--coefficients=-e^(-1),1", "--witness=-1,1")
    assert d["age"]["status"] == "boundary" and d["extremal"]["status"] == "extremal"


def test_parse_coefficient():
    assert parse_coefficient("-e^(-1)") == ExpRational.exp(-1, -1)
    assert parse_coefficient("3/2*e^2") == ExpRational.exp(2, "3/2")
    assert parse_coefficient("1/3") == ExpRational.lift("1/3")
    assert parse_coefficient("0.5") == 0.5
    with pytest.raises(InputError):
        parse_coefficient("abc")


def test_parse_preset():
    assert parse_preset("interval") == ("cube", 1)
    assert parse_preset("orthant:3") == ("orthant", 3)
    with pytest.raises(InputError):
        parse_preset("ball:2")


@pytest.mark.parametrize("argv,code", [
    (["enumerate", "--support", "[[0],[1]", "--set", "line"], 2),
    (["enumerate", "--support", "[[0],[1]]", "--set", "ball:1"], 2),
    (["enumerate", "--support", "[[0,0],[1,0]]", "--set", "line"], 2),
    (["enumerate", "--support", "[[0],[1]]", "--hrep",
      '{"ineqs": [{"a": [1], "b": -1}, {"a": [-1], "b": -1}]}'], 3),
    (["reduce", "--support", "[[1],[2],[3]]", "--vrep", '{"vertices": [[1]]}'], 5),
    (["enumerate", "--support", "grid:2", "--set", "cube:2", "--route", "orthant"], 4),
    (["age-check", "--support", "[[0],[1]]", "--set", "interval", "--coefficients", "1",
      "--witness=-1,1"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("subcirc: error:")


def test_reference_suite_quick(capsys):
    code, out, _ = run(capsys, "verify-paper", "--quick")
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("checks pass")
    assert "FAIL" not in out
    d = run_json(capsys, "verify-paper", "--quick", "--format", "json")
    assert d["all_pass"] and len(d["checks"]) >= 20


def _subprocess(*argv, stdin=None, env=None):
    return subprocess.run([sys.executable, "-m", "subcirc", *argv], input=stdin,
                          capture_output=True, text=True, env=env, timeout=300)


def test_module_entry_point_and_stdin():
    p = _subprocess("enumerate", "--support", "-", "--set", "halfline", stdin=A012)
    assert p.returncode == 0
    assert json.loads(p.stdout)["family"]["count"] == 4
    p = _subprocess("--version")
    assert p.returncode == 0 and p.stdout.startswith("subcirc ")


def test_subprocess_byte_identical_modulo_timing():
    outs = []
    for _ in range(2):
        p = _subprocess("reduce", "--support", "grid:3", "--set", "orthant:2")
        assert p.returncode == 0
        outs.append(without_timing(json.loads(p.stdout)))
    assert json.dumps(outs[0], sort_keys=True) == json.dumps(outs[1], sort_keys=True)


def test_subprocess_parse_error_exit_code():
    p = _subprocess("enumerate", "--support", "{bad", "--set", "line")
    assert p.returncode == 2
    p = _subprocess("enumerate")
    assert p.returncode == 2
