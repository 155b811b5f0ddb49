import json

from main import _cli_flag_present, main


def test_moments_writes_json(capsys):
    assert main(["moments", "--quiet"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["schema"] == "spectra/1"
    assert [row["tau"] for row in data["rows"]] == ["1/4", "7/64", "29/512"]


def test_csv_output(capsys):
    assert main(["moments", "--format", "csv", "--quiet"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "# schema: spectra/1"
    assert "n,tau,root,ratio" in out


def test_non_symmetric_set_is_a_validation_error(capsys):
    assert main(["moments", "--set", "a,b", "--quiet"]) == 3
    assert "Error: set not symmetric: missing A" in capsys.readouterr().err


def test_odd_walk_length(capsys):
    assert main(["walk", "--steps", "3", "--trials", "10", "--quiet"]) == 3
    assert "steps must be even" in capsys.readouterr().err


def test_usage_errors():
    assert main(["moments", "--no-such-flag"]) == 3
    assert main(["extract", "--k", "2", "--ks", "3"]) == 3
    assert main(["extract", "--k-range", "1:5:0"]) == 3
    assert main(["--help"]) == 0


def test_config_reuse(tmp_path, capsys):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["moments", "--nmax", "2", "--out", str(first), "--quiet"]) == 0
    assert main(["moments", "--config", str(first), "--out", str(second), "--quiet"]) == 0
    a, b = json.loads(first.read_text()), json.loads(second.read_text())
    assert a["rows"] == b["rows"] and a["summary"] == b["summary"]
    assert b["config"]["nmax"] == 2
    assert a["config"]["out"] == str(first)
    assert b["config"]["out"] == str(second)
    assert {k: v for k, v in a["config"].items() if k != "out"} == {
        k: v for k, v in b["config"].items() if k != "out"
    }


def test_config_reuse_rejects_conflicting_flags(tmp_path, capsys):
    path = tmp_path / "a.json"
    assert main(["moments", "--nmax", "2", "--out", str(path), "--quiet"]) == 0
    assert main(["moments", "--config", str(path), "--nmax", "3", "--quiet"]) == 3
    assert "Passed arguments do not match config" in capsys.readouterr().err


def test_missing_config_file(tmp_path, capsys):
    assert main(["moments", "--config", str(tmp_path / "absent.json"), "--quiet"]) == 3
    assert capsys.readouterr().err.startswith("Error:")


def test_extract_dense(capsys):
    assert main(["extract", "--k", "2", "--engine", "dense", "--quiet"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["rows"][0]["sk_size"] == "13"
    assert data["detail"]["certificates"][0]["b_l1"] == "13/16"


def test_certificate_fields(capsys):
    assert main(["extract", "--k", "60", "--engine", "radial", "--quiet"]) == 0
    cert = json.loads(capsys.readouterr().out)["detail"]["certificates"][0]
    assert set(cert) == {
        "k", "sigma", "group", "engine", "S_k", "b_value", "b_l1", "mk_l1", "size_mk",
        "corollary3_ok", "threshold", "rho_sigma", "theorem1_rhs", "theorem1_rhs_low",
        "rhs_certified", "rho_Sk_lower", "rho_Sk_upper", "consistency_ok", "augmented",
    }
    assert cert["corollary3_ok"] is True
    assert cert["consistency_ok"] is True
    assert cert["mk_l1"] == "1/1"
    assert 0.059 < cert["theorem1_rhs"] < 0.060
    assert cert["rho_Sk_upper"]["method"] == "theorem1-bound"
    assert cert["rho_Sk_upper"]["direction"] == "upper"
    assert cert["rho_Sk_lower"]["direction"] == "lower"
    assert isinstance(cert["S_k"]["size"], str) and int(cert["S_k"]["size"]) > 0
    assert isinstance(cert["size_mk"], str)


def test_walk_records_generator(capsys):
    assert main(["walk", "--steps", "2", "--trials", "100", "--seed", "5", "--quiet"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["rows"][0]["generator"] == "PCG64"
    assert data["rows"][0]["seed"] == 5
    assert data["config"]["seed"] == 5


def test_empty_k_range(capsys):
    assert main(["reproduce", "--k-range", "5:1", "--quiet"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["rows"] == []
    assert data["config"]["ks"] == []


def test_progress_goes_to_stderr(capsys):
    assert main(["walk", "--steps", "2", "--trials", "100"]) == 0
    captured = capsys.readouterr()
    assert "[walk]" in captured.err
    assert "[walk]" not in captured.out


def test_flag_presence():
    assert _cli_flag_present("--seed", ["walk", "--seed=3"])
    assert _cli_flag_present("--ks", ["extract", "--k-range", "1:3"])
    assert not _cli_flag_present("--seed", ["walk", "--steps", "2"])
