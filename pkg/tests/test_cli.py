import json
import subprocess
import sys
from importlib import resources

import jsonschema
import numpy as np
import pytest

from alexmod.cli import run
from alexmod.io import read_curve_csv


def schema(name):
    return json.loads(resources.files("alexmod").joinpath(f"schemas/{name}.schema.json").read_text())


@pytest.fixture
def bodies(tmp_path):
    specs = {
        "disk": {"type": "ellipsoid", "semi_axes": [1, 1]},
        "square": {"type": "hpolytope", "normals": [[1, 0], [-1, 0], [0, 1], [0, -1]], "offsets": [1, 1, 1, 1]},
        "cross": {"type": "vpolytope", "vertices": [[1, 0], [-1, 0], [0, 1], [0, -1]]},
        "quartic": {"type": "graph2d", "h": "power", "p": 4, "R": 1, "D": 2},
        "flat": {"type": "graph2d", "h": "exp_flat"},
        "power": {"type": "power_domain", "eta": 1, "exponents": [4], "height": 1, "box": []},
    }
    paths = {}
    for name, spec in specs.items():
        jsonschema.validate(spec, schema("body_spec"))
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(spec))
        paths[name] = str(p)
    return paths


def call(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_f_disk_center(bodies, capsys):
    code, out, _ = call(["f", "--body", bodies["disk"], "--point", "0", "0"], capsys)
    assert code == 0
    assert json.loads(out)["f"] == pytest.approx(3.14159265, abs=1e-8)


@pytest.mark.parametrize("name", ["square", "cross", "quartic", "flat", "power"])
def test_f_every_body_kind(bodies, capsys, name):
    code, out, _ = call(["f", "--body", bodies[name], "--point", "0", "0.5"], capsys)
    assert code == 0
    assert json.loads(out)["f"] > 0


def test_polar_and_volume(bodies, capsys):
    code, out, _ = call(["polar", "--body", bodies["square"], "--point", "0", "-0.5"], capsys)
    assert code == 0
    assert json.loads(out)["volume"] == pytest.approx(8 / 3)
    code, out, _ = call(["volume", "--body", bodies["cross"]], capsys)
    assert json.loads(out)["volume"] == pytest.approx(2.0)
    code, out, _ = call(["volume", "--body", bodies["quartic"], "--samples", "100000"], capsys)
    res = json.loads(out)
    # area between x^4 and 2 - x^4 on [-1, 1] is 4 - 4/5
    assert res["volume"] == pytest.approx(3.2, abs=4 * res["error"])


def test_omega(bodies, capsys):
    code, out, _ = call(["omega", "--body", bodies["square"], "--delta", "0.5"], capsys)
    res = json.loads(out)
    assert code == 0
    assert res["omega"] == pytest.approx((8 / 3) ** -0.5)
    assert res["lower_bound"] <= res["omega"] <= res["upper_bound"]


def test_oracle(capsys):
    code, out, _ = call(["oracle", "ball-f", "--n", "2", "--d", "0.5"], capsys)
    res = json.loads(out)
    jsonschema.validate(res, schema("oracle_result"))
    assert res == {"value": pytest.approx(4.8368, abs=1e-4), "formula_id": "ball_f"}
    code, out, _ = call(["oracle", "ellipsoid-f", "--semi-axes", "2", "1", "--d", "0.05"], capsys)
    assert code == 0


def test_sweep_csv_and_json(bodies, capsys, tmp_path):
    out_dir = tmp_path / "run"
    argv = ["sweep", "--body", bodies["square"], "--min", "1e-3", "--max", "1e-1", "--points", "20",
            "--spacing", "log", "--output-dir", str(out_dir), "--seed", "5"]
    code, out, _ = call(argv, capsys)
    assert code == 0
    text = (out_dir / "curve.csv").read_text()
    lines = text.splitlines()
    assert lines[0] == "# seed=5"
    assert lines[1] == ("delta,omega,lower_bound,upper_bound,argmax_0,argmax_1,samples_used,sampling_tol,"
                        "quad_err")
    assert len(lines) == 22
    curve = read_curve_csv(out_dir / "curve.csv")
    assert np.all(np.diff(curve.omega) >= 0)
    assert np.all(curve.lower_bound <= curve.omega) and np.all(curve.omega <= curve.upper_bound)
    data = json.loads((out_dir / "curve.json").read_text())
    jsonschema.validate(data, schema("modulus_curve"))
    assert data["seed"] == 5


def test_sweep_is_byte_identical(bodies, capsys, tmp_path):
    blobs = []
    for k in range(2):
        d = tmp_path / f"r{k}"
        call(["sweep", "--body", bodies["cross"], "--min", "1e-2", "--max", "0.5", "--points", "4",
              "--output-dir", str(d), "--boundary-samples", "16"], capsys)
        blobs.append(((d / "curve.csv").read_bytes(), (d / "curve.json").read_bytes()))
    assert blobs[0] == blobs[1]


def test_sweep_from_config(bodies, capsys, tmp_path):
    cfg = {"body": json.loads(open(bodies["disk"]).read()),
           "delta_grid": {"min": 0.01, "max": 0.5, "points": 3, "spacing": "linear"},
           "opts": {"boundary_samples": 8, "seed": 2},
           "outputs": {"csv_path": "disk.csv", "json_path": "disk.json"}}
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    code, out, _ = call(["sweep", "--config", str(p), "--output-dir", str(tmp_path), "--tail-report"], capsys)
    assert code == 0
    res = json.loads(out)
    assert res["seed"] == 2
    assert "tail_report" in res
    assert read_curve_csv(tmp_path / "disk.csv").deltas == pytest.approx([0.01, 0.255, 0.5])


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--min", "1e-3", "--max", "1e-1"],
        ["sweep", "--body", "BODY", "--min", "0.1", "--max", "0.01"],
        ["sweep", "--body", "BODY", "--min", "0.01", "--max", "0.1", "--points", "1"],
        ["f", "--body", "missing.json", "--point", "0", "0"],
        ["f", "--body", "BODY", "--point", "2", "0"],
        ["f", "--body", "BODY", "--point", "0", "0", "0"],
        ["omega", "--body", "BODY", "--delta", "3"],
        ["oracle", "ball-f", "--n", "2"],
        ["frobnicate"],
        ["verify", "nonsense"],
    ],
)
def test_input_errors_exit_2(bodies, capsys, argv):
    argv = [bodies["square"] if a == "BODY" else a for a in argv]
    code, out, err = call(argv, capsys)
    assert code == 2
    assert out == ""
    payload = json.loads(err.strip().splitlines()[-1])
    assert {"error", "message"} <= set(payload)


def test_malformed_body_spec(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"type": "hpolytope", "normals": [[1, 0]]}))
    code, _, err = call(["f", "--body", str(p), "--point", "0", "0"], capsys)
    assert code == 2
    assert json.loads(err)["error"] == "InputError"


def test_ma_subcommands(bodies, capsys, tmp_path):
    code, out, _ = call(["ma", "cone-check", "--body", bodies["square"], "--point", "0.2", "0.1"], capsys)
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = call(["ma", "equality", "--body", bodies["square"], "--point", "0", "-0.5"], capsys)
    assert json.loads(out)["ratio"] == pytest.approx(1.0, abs=1e-9)
    code, out, _ = call(["ma", "seminorm", "--body", bodies["disk"], "--point", "0", "0", "--holder", "1"], capsys)
    assert json.loads(out)["seminorm"] == pytest.approx(1.0, abs=1e-9)
    # the grid contains the apex distance 0.8; between grid points the interpolated curve is only an estimate
    call(["sweep", "--body", bodies["square"], "--min", "0.2", "--max", "1", "--points", "5", "--spacing", "linear",
          "--output-dir", str(tmp_path), "--boundary-samples", "16"], capsys)
    code, out, _ = call(["ma", "seminorm", "--body", bodies["square"], "--point", "0.2", "0.1", "--curve",
                         str(tmp_path / "curve.csv")], capsys)
    res = json.loads(out)
    assert code == 0
    assert res["seminorm"] <= res["image_volume_root"] * 1.01


def test_verify_writes_schema_valid_report(capsys, tmp_path):
    code, out, err = call(["verify", "slice", "--trials", "10", "--output-dir", str(tmp_path)], capsys)
    assert code == 0
    summary = json.loads(out)
    report = json.loads(open(summary["report"]).read())
    jsonschema.validate(report, schema("verify_report"))
    assert report["passed"] and report["suite"] == "slice"
    assert "PASS" in err


def test_verify_reports_are_append_only(capsys, tmp_path):
    call(["verify", "mahler", "--output-dir", str(tmp_path)], capsys)
    first = (tmp_path / "verify_mahler.json").read_bytes()
    call(["verify", "mahler", "--output-dir", str(tmp_path)], capsys)
    assert (tmp_path / "verify_mahler.json").read_bytes() == first
    assert (tmp_path / "verify_mahler.1.json").read_bytes() == first


def test_verify_workhorse_seed(capsys, tmp_path):
    code, out, _ = call(["verify", "workhorse", "--trials", "100", "--seed", "7", "--output-dir", str(tmp_path)],
                        capsys)
    assert code == 0
    report = json.loads(open(json.loads(out)["report"]).read())
    assert report["seed"] == 7
    assert report["checks"][0]["actual"] == 0


def test_verify_failure_exit_code(monkeypatch, capsys, tmp_path):
    from alexmod import verify

    def failing(seed=0, **_):
        return [verify.Check("always fails", 0, 1, 0, False)]

    monkeypatch.setattr(verify, "criterion_14", failing)
    code, out, _ = call(["verify", "mahler", "--output-dir", str(tmp_path)], capsys)
    assert code == 1
    assert json.loads(out)["failed"] == 1


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "alexmod", "oracle", "t1-constant", "--n", "3", "--kappa0", "1"],
                         capture_output=True, text=True, cwd=tmp_path)
    assert res.returncode == 0
    assert json.loads(res.stdout)["value"] == pytest.approx(0.98475, abs=1e-5)
