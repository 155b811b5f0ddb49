import json
from fractions import Fraction

import pytest

from group import NotSymmetric
from experiments import (
    SCHEMA,
    Report,
    RunConfig,
    load_run_bundle,
    merge_config,
    parse_csv,
    parse_int_list,
    parse_range,
    render,
    render_csv,
    render_json,
    run,
    to_jsonable,
)


def _never(flag):
    return False


def _always(flag):
    return True


# ---- serialization -------------------------------------------------------------


def test_to_jsonable():
    assert to_jsonable(Fraction(13, 16)) == "13/16"
    assert to_jsonable(2**60) == str(2**60)
    assert to_jsonable(2**52) == 2**52
    assert to_jsonable({"a": (1, Fraction(1, 2)), "b": None}) == {"a": [1, "1/2"], "b": None}
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_render_json_round_trip():
    report = Report("moments", {"command": "moments"}, ["n"], [{"n": 1}], {"x": Fraction(1, 3)})
    text = render_json(report)
    assert text.endswith("}\n")
    data = json.loads(text)
    assert data["schema"] == SCHEMA
    assert data["summary"] == {"x": "1/3"}
    assert "detail" not in data
    assert data["ok"] is True


def test_render_csv_layout():
    report = Report("walk", {"seed": 1}, ["a", "b"], [{"a": True, "b": None}], {"n": 2}, ok=False)
    lines = render_csv(report).splitlines()
    assert lines[0] == f"# schema: {SCHEMA}"
    assert lines[1] == "# command: walk"
    assert lines[3] == "a,b"
    assert lines[4] == "true,"
    assert lines[-1] == "# ok: false"


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError, match="unknown format"):
        render(Report("x", {}, []), "xml")


# ---- argument helpers ----------------------------------------------------------


def test_parse_int_list():
    assert parse_int_list("20,40,60") == [20, 40, 60]
    assert parse_int_list("") == []
    with pytest.raises(ValueError):
        parse_int_list("1,x")


def test_parse_range():
    assert parse_range("20:120:20") == [20, 40, 60, 80, 100, 120]
    assert parse_range("3:5") == [3, 4, 5]
    assert parse_range("5:1") == []
    with pytest.raises(ValueError):
        parse_range("1:5:0")
    with pytest.raises(ValueError):
        parse_range("1")


# ---- configuration -------------------------------------------------------------


def test_run_config_round_trip():
    config = RunConfig(command="extract", group="free:3", seed=5, options={"ks": [2, 4]})
    assert RunConfig.from_dict(config.to_dict()) == config


def test_from_dict_needs_command():
    with pytest.raises(ValueError, match="command"):
        RunConfig.from_dict({"group": "free:2"})


def test_merge_config_rejects_conflicting_flags():
    loaded = {"command": "walk", "seed": 3, "steps": 4}
    with pytest.raises(ValueError, match="do not match config"):
        merge_config("walk", {"seed": 9}, loaded, _always)
    merged = merge_config("walk", {"seed": 9}, loaded, _never)
    assert merged.seed == 3
    assert merged.option("steps") == 4


def test_merge_config_rejects_other_command():
    with pytest.raises(ValueError, match="written by 'walk'"):
        merge_config("moments", {}, {"command": "walk"}, _never)


def test_merge_config_never_takes_output_from_bundle():
    loaded = {"command": "walk", "out": "old.json", "format": "csv"}
    merged = merge_config("walk", {"format": "json"}, loaded, _never)
    assert merged.out is None
    assert merged.format == "json"


def test_load_run_bundle(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"schema": "other/1", "config": {}}))
    with pytest.raises(ValueError, match="Unsupported run bundle schema"):
        load_run_bundle(str(path))
    path.write_text("[]")
    with pytest.raises(ValueError, match="JSON object"):
        load_run_bundle(str(path))
    path.write_text(json.dumps({"schema": SCHEMA, "config": {"seed": "x"}}))
    with pytest.raises(ValueError, match="config.seed"):
        load_run_bundle(str(path))


# ---- commands ------------------------------------------------------------------


def test_moments_command():
    report = run(RunConfig(command="moments"))
    assert report.ok
    assert [row["tau"] for row in report.rows] == [Fraction(1, 4), Fraction(7, 64), Fraction(29, 512)]
    assert report.summary["engine"] == "radial"
    assert report.summary["exact_radius"] == pytest.approx(0.8660254, abs=1e-7)


def test_json_and_csv_agree():
    report = run(RunConfig(command="moments"))
    data = json.loads(render(report, "json"))
    table = parse_csv(render(report, "csv"))
    assert table["config"] == data["config"]
    assert table["columns"] == data["columns"]
    assert [row["tau"] for row in table["rows"]] == ["1/4", "7/64", "29/512"]
    assert [row["tau"] for row in data["rows"]] == ["1/4", "7/64", "29/512"]
    assert table["summary"] == data["summary"]
    assert data["config"]["format"] == "json"
    assert data["config"]["out"] is None


def test_moments_on_abelian_group():
    report = run(RunConfig(command="moments", group="zd:2", options={"nmax": 2}))
    assert report.summary["engine"] == "dense"
    assert [row["tau"] for row in report.rows] == [Fraction(1, 4), Fraction(9, 64)]
    assert report.summary["exact_radius"] is None


def test_non_symmetric_set():
    with pytest.raises(NotSymmetric, match="missing A"):
        run(RunConfig(command="moments", set="a,b,B"))


def test_radius_command():
    report = run(RunConfig(command="radius", options={"nmax": 20, "radius": 12}))
    methods = [row["method"] for row in report.rows]
    assert methods[-1] == "closed-form"
    assert all(row["value"] <= report.rows[-1]["high"] for row in report.rows)
    assert report.summary["tree_refined_bound"] == pytest.approx(0.8660254, abs=1e-7)


def test_extract_command_dense():
    report = run(RunConfig(command="extract", engine="dense", options={"ks": [2]}))
    assert report.ok
    row = report.rows[0]
    assert row["sk_size"] == "13"
    assert row["augmented_size"] == "17"
    assert row["corollary3_ok"] is True
    assert row["theorem1_rhs"] == pytest.approx(8 * 1.3862943611198906 * 0.75)
    detail = to_jsonable(report.detail)
    assert detail["certificates"][0]["b_l1"] == "13/16"
    assert detail["rho_sigma"]["direction"] == "exact"


def test_reproduce_with_no_k():
    report = run(RunConfig(command="reproduce", options={"ks": []}))
    assert report.rows == []
    assert report.ok
    assert report.summary["epsilon"] == pytest.approx(0.051879, abs=1e-4)


def test_epsilon_command():
    report = run(RunConfig(command="epsilon", options={"ks": list(range(80, 91))}))
    assert report.summary["smallest_k"] == 86
    assert [row["chain_ok"] for row in report.rows] == [False] * 6 + [True] * 5


def test_sharpness_command():
    report = run(RunConfig(command="sharpness", options={"ns": [10, 100], "grid": 1000}))
    assert [row["n"] for row in report.rows] == [10, 100]
    assert "discrete_objective" in report.columns
    assert report.rows[1]["ratio"] == pytest.approx(0.178407, abs=1e-6)


def test_gamma_command():
    report = run(RunConfig(command="gamma", options={"ns": [2, 31, 32]}))
    assert report.summary["source"] == "free"
    assert report.summary["first_size_below_one"] == 64


def test_walk_command_is_deterministic():
    config = RunConfig(command="walk", seed=11, options={"steps": 4, "trials": 20_000})
    first, second = run(config), run(config)
    assert first.rows == second.rows
    row = first.rows[0]
    assert row["exact"] == Fraction(7, 64)
    assert abs(row["z"]) < 5
    assert row["generator"] == "PCG64"
    assert row["seed"] == 11


def test_unknown_command():
    with pytest.raises(ValueError, match="unknown command"):
        run(RunConfig(command="plot"))
