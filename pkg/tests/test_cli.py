import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from bistar.cli import AUDIT_COLUMNS, Config, UsageError, parse_alphas, read_config, run
from bistar.schemas import SCHEMAS


def call(capsys, *argv):
    status = run(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_norm_koebe(capsys):
    status, out, _ = call(capsys, "norm", "--function", "koebe")
    assert status == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["norm"])
    assert 5.99 <= doc["value"] <= 6 + 1e-9


def test_norm_profile_and_csv(capsys, tmp_path):
    prof = tmp_path / "p.csv"
    status, out, _ = call(capsys, "norm", "--function", "gen_koebe", "--alpha", "0.25",
                          "--rmax", "0.999999", "--profile", str(prof), "--format", "csv")
    assert status == 0
    (row,) = csv_rows(out)
    assert abs(float(row["value"]) - 5) < 0.01
    rows = csv_rows(prof.read_text())
    assert list(rows[0]) == ["r", "max_theta_value"]
    assert max(float(r["max_theta_value"]) for r in rows) <= float(row["value"])


def test_series_revert(capsys):
    status, out, _ = call(capsys, "series", "revert", "--coeffs", "0,1,2,3,4")
    assert status == 0 and out == "0,1,-2,5,-14\n"
    status, out, _ = call(capsys, "series", "revert", "--coeffs", "0,1,2,3,4", "--format", "json")
    jsonschema.validate(json.loads(out), SCHEMAS["series revert"])


def test_bounds_row(capsys):
    status, out, _ = call(capsys, "bounds", "--alphas", "0.75")
    (row,) = csv_rows(out)
    assert float(row["theorem1"]) == 2 and float(row["rahmatan_B"]) == 0
    status, out, _ = call(capsys, "bounds", "--alphas", "0:1:0.25", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["bounds"])
    assert [r["alpha"] for r in doc["rows"]] == [0, 0.25, 0.5, 0.75]
    assert doc["rows"][0]["derivation_phi"] == "inf"
    assert doc["rows"][0]["derivation_case2"] is None


def test_member(capsys):
    status, out, _ = call(capsys, "member", "--function", "f1", "--alpha", "0.49", "--kind",
                          "starlike", "--bi")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["member"])
    assert [r["verdict"] for r in doc["reports"]] == ["member", "member"]
    status, out, _ = call(capsys, "member", "--function", "f1", "--alpha", "0.51", "--kind",
                          "starlike", "--format", "csv")
    (row,) = csv_rows(out)
    assert row["verdict"] == "non_member"


def test_generate_then_member(capsys, tmp_path):
    path = tmp_path / "gen.json"
    status, _, _ = call(capsys, "generate", "--class", "starlike", "--alpha", "0.3", "--phi",
                        "blaschke:0.2,-0.3j:0.8", "--out", str(path))
    assert status == 0
    doc = json.loads(path.read_text())
    jsonschema.validate(doc, SCHEMAS["generate"])
    v = doc["validity"]
    assert v["verdict"] == "member" and v["starlike_min_re"] > 0.3
    assert v["pre_schwarzian_identity_residual"] < 1e-8
    assert len(doc["coefficients"]) == 33
    status, out, _ = call(capsys, "member", "--function", str(path), "--alpha", "0.3",
                          "--kind", "starlike")
    assert json.loads(out)["reports"][0]["verdict"] == "member"


def test_generate_v_reports_both_forms(capsys):
    status, out, _ = call(capsys, "generate", "--class", "v", "--alpha", "0.6", "--phi",
                          "z^2*blaschke:0.3:0.5")
    v = json.loads(out)["validity"]
    assert v["pole_count"] == 0 and v["verdict"] == "member"
    assert v["pre_schwarzian_identity_residual"] < 1e-8
    # the substituted form keeps -1 where -1/f belongs and so does not reproduce f''/f'
    assert v["substituted_form_residual"] > 1e-3


def test_generate_v_with_poles_is_rejected(capsys):
    status, out, _ = call(capsys, "generate", "--class", "v", "--alpha", "0", "--phi", "z^2")
    v = json.loads(out)["validity"]
    assert status == 0 and v["pole_count"] == 2 and v["verdict"] == "rejected"


def test_generate_random_phi_uses_seed(capsys):
    a = call(capsys, "generate", "--class", "v", "--alpha", "0.5", "--phi", "random", "--seed", "4")
    b = call(capsys, "generate", "--class", "v", "--alpha", "0.5", "--phi", "random", "--seed", "4")
    c = call(capsys, "generate", "--class", "v", "--alpha", "0.5", "--phi", "random", "--seed", "5")
    assert a == b and a[1] != c[1]


def test_audit_csv(capsys, tmp_path):
    out = tmp_path / "report.csv"
    status, _, _ = call(capsys, "audit", "--functions", "f1,identity", "--alphas", "0.45,0.5,0.8",
                        "--out", str(out))
    assert status == 0
    text = out.read_text()
    assert text.splitlines()[0] == ",".join(AUDIT_COLUMNS)
    rows = {(r["function"], r["alpha"], r["class"]): r for r in csv_rows(text)}
    assert "rahmatan_B" in rows["f1", "0.5", "V"]["violations"].split(";")
    assert "info:derivation_case2" in rows["f1", "0.45", "starlike"]["violations"].split(";")
    assert "theorem1_stated" not in rows["f1", "0.45", "starlike"]["violations"]
    assert all(r["violations"] == "" for k, r in rows.items() if k[0] == "identity")


def test_audit_json_and_fail_on_violation(capsys):
    status, out, _ = call(capsys, "audit", "--functions", "f1", "--alphas", "0.5", "--format", "json",
                          "--fail-on-violation")
    assert status == 1
    jsonschema.validate(json.loads(out), SCHEMAS["audit"])
    status, _, _ = call(capsys, "audit", "--functions", "identity", "--alphas", "0.5",
                        "--fail-on-violation")
    assert status == 0


def test_byte_identical_reruns(capsys):
    argv = ["audit", "--functions", "f2,gen_koebe:0.25", "--alphas", "0:0.9:0.3"]
    assert call(capsys, *argv) == call(capsys, *argv)


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["norm"],
    ["norm", "--function", "nope"],
    ["norm", "--function", "koebe", "--rmax", "1.5"],
    ["norm", "--function", "koebe", "--order", "4"],
    ["member", "--function", "f1", "--alpha", "0.5", "--kind", "convex"],
    ["generate", "--class", "v", "--alpha", "0.2", "--phi", "z"],
    ["bounds", "--alphas", "0:1:-1"],
    ["audit", "--functions", "f1", "--alphas", "1.5"],
    ["series", "revert", "--coeffs", "1,1,2"],
    ["series", "revert", "--coeffs", "0,x"],
])
def test_usage_errors_exit_2(capsys, argv):
    status, _, err = call(capsys, *argv)
    assert status == 2 and err


def test_numeric_failure_exit_1(capsys, monkeypatch):
    from bistar import cli
    from bistar.errors import NumericError

    def boom(*a, **k):
        raise NumericError("quadrature did not converge", endpoint=0.5, error_estimate=1e-3)

    monkeypatch.setattr(cli, "norm_estimate", boom)
    status, _, err = call(capsys, "norm", "--function", "koebe")
    assert status == 1
    doc = json.loads(err)
    assert doc["error"] == "NumericError" and doc["diagnostics"]["error_estimate"] == 1e-3


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# grid\nn_r = 8\nn_theta = 32\nformat = csv\n")
    assert read_config(str(cfg)) == {"n_r": 8, "n_theta": 32, "format": "csv"}
    status, out, _ = call(capsys, "norm", "--function", "f2", "--config", str(cfg))
    (row,) = csv_rows(out)
    assert (row["n_r"], row["n_theta"]) == ("24", "32")  # 8 boundary + 16 interior radii
    status, out, _ = call(capsys, "norm", "--function", "f2", "--config", str(cfg), "--format", "json")
    assert json.loads(out)["grid"] == [24, 32]
    cfg.write_text("bogus = 1\n")
    assert call(capsys, "norm", "--function", "f2", "--config", str(cfg))[0] == 2


def test_config_validation():
    with pytest.raises(UsageError):
        Config(r_max=1.0)
    with pytest.raises(UsageError):
        Config(order=7)
    with pytest.raises(UsageError):
        Config(quad_tol=0)
    Config(r_max=0.5, order=8, quad_tol=1e-9)


def test_parse_alphas():
    assert parse_alphas("0:0.95:0.05") == [round(0.05 * k, 12) for k in range(19)]
    assert parse_alphas("0.25,0.5") == [0.25, 0.5]
    assert parse_alphas("0.3") == [0.3]
    assert parse_alphas("0:1:0.25") == [0, 0.25, 0.5, 0.75]
    with pytest.raises(UsageError):
        parse_alphas("0:1")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bistar", "series", "revert", "--coeffs",
                           "0,1,1,1,1"], capture_output=True, text=True, check=True)
    assert proc.stdout == "0,1,-1,1,-1\n"
