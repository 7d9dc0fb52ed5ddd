import json

import pytest
from click.testing import CliRunner

from cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def run_to_file(runner, tmp_path, args, name="out.json"):
    out = tmp_path / name
    result = runner.invoke(cli, args + ["--out", str(out), "--log-level", "ERROR"])
    payload = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
    return result, payload


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "0.4.0" in result.output


def test_plane_of_non_prime_power_is_error(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["plane", "gen", "--q", "6"])
    assert result.exit_code == 2
    assert payload["error"] == "FieldTooLarge"


def test_plane_check_with_comparison(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["plane", "check", "--q", "3", "--compare"])
    assert result.exit_code == 0
    assert payload["status"] == "pass"


def test_plane_gen_writes_dot(runner, tmp_path):
    dot = tmp_path / "fano.dot"
    result, _ = run_to_file(runner, tmp_path, ["plane", "gen", "--q", "2", "--dot", str(dot)])
    assert result.exit_code == 0
    assert "graph" in dot.read_text(encoding="utf-8")


def test_diffset_check_failure(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["diffset", "check", "--n", "7", "--set", "0,1,2"])
    assert result.exit_code == 1
    assert payload["verified"] is False


def test_diffset_check_success(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["diffset", "check", "--n", "7", "--set", "0,1,3"])
    assert result.exit_code == 0
    assert payload["D"] == [0, 1, 3]


def test_diffset_plane_needs_input(runner):
    result = runner.invoke(cli, ["diffset", "plane", "--log-level", "ERROR"])
    assert result.exit_code == 2


def test_bad_shape_is_usage_error(runner):
    result = runner.invoke(cli, ["building", "sphere", "--r", "2", "--lam", "1,-1"])
    assert result.exit_code == 2


def test_lattice_exotic(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["lattice", "exotic", "--q", "4"])
    assert result.exit_code == 0
    assert payload["status"] == "pass"
    manifest = json.loads((tmp_path / "out.json.manifest.json").read_text(encoding="utf-8"))
    assert manifest["command"] == "lattice exotic"
    assert manifest["parameters"]["q"] == 4
    assert manifest["tool_version"] == "0.4.0"


def test_lattice_exotic_rejects_power_of_eight(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["lattice", "exotic", "--q", "8"])
    assert result.exit_code == 2
    assert payload["error"] == "HypothesisViolated"


def test_repeat_runs_are_identical(runner, tmp_path):
    args = ["lattice", "perfect", "--lattice", "gamma0"]
    run_to_file(runner, tmp_path, args, "first.json")
    run_to_file(runner, tmp_path, args, "second.json")
    first = (tmp_path / "first.json").read_bytes()
    assert first == (tmp_path / "second.json").read_bytes()
    assert json.loads(first)["data"]["index"] == 7


def test_lattice_perfect_whole_group_fails(runner, tmp_path):
    gap = tmp_path / "z7.g"
    gap.write_text('F := FreeGroup("a");\na := F.1;;\nG := F / [ a^7 ];\n', encoding="utf-8")
    result, payload = run_to_file(runner, tmp_path, ["lattice", "perfect", "--gap-file", str(gap), "--subgroup", "whole"])
    assert result.exit_code == 1
    assert payload["data"]["invariant_factors"] == [7]


def test_lattice_torsion_census(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["lattice", "torsion", "--d", "1"])
    assert result.exit_code == 0
    assert payload["data"]["census"] == {"finite": 2, "infinite": 5}


def test_building_counts(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["building", "counts", "--r", "2", "--lam", "1,1"])
    assert result.exit_code == 0, payload
    assert payload["data"]["expected"]["w0"] == "16/1"
    assert payload["data"]["constants"]["K_w"]["s1s2"] == "1/1"


def test_measure_disint(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["measure", "disint", "--r", "2", "--lam", "1,1"])
    assert result.exit_code == 0
    assert payload["data"]["K_prime"] == "6/7"


def test_measure_needs_regular_shape(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["measure", "table", "--r", "2", "--lam", "1,0"])
    assert result.exit_code == 2
    assert payload["error"] == "NotRegular"


def test_proj_classify(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["proj", "classify", "--q", "3", "--threads", "1"])
    assert result.exit_code == 0
    assert payload["data"]["order"] == 24


def test_proj_nontriv_is_exhaustive(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["proj", "nontriv", "--q", "2"])
    assert result.exit_code == 0
    assert payload["data"]["configurations"] == 168
    assert payload["data"]["exhaustive"] is True


def test_building_ball_report(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["building", "ball", "--r", "1", "--crosscheck", "5"])
    assert result.exit_code == 0
    assert payload["vertices"] == 15
    assert payload["chambers"] == 21
    assert payload["crosscheck"]["status"] == "pass"


def test_diffset_embed(runner, tmp_path):
    result, payload = run_to_file(runner, tmp_path, ["diffset", "embed", "--q0", "2", "--e", "2"])
    assert result.exit_code == 0
    assert payload["pair"]["scale"] == 3
