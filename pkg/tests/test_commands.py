# tests/test_commands.py
import json

import pytest
from click.testing import CliRunner

from main import cli

ORTHOCENTER_CONFIG = {
    "field": "rationals",
    "dim": 2,
    "points": [["0", "0", "1"], ["4", "0", "1"], ["1", "3", "1"], ["1", "1", "1"]],
    "form": [["1", "0", "-1"], ["0", "1", "-1"], ["-1", "-1", "1"]],
}


@pytest.fixture
def runner():
    return CliRunner()


def run_json(runner, args):
    result = runner.invoke(cli, [*args, "--format", "json"])
    return result, json.loads(result.stdout) if result.exit_code in (0, 2) else None


class TestCheck:
    def test_orthocenter_config(self, runner, write_json):
        result, document = run_json(runner, ["check", str(write_json("config.json", ORTHOCENTER_CONFIG))])
        assert result.exit_code == 0
        assert document["body"]["outcome"] == "hesse-confirmed"

    def test_duplicate_points(self, runner, write_json):
        payload = dict(ORTHOCENTER_CONFIG, points=[["0", "0", "1"], ["0", "0", "2"], ["1", "3", "1"], ["1", "1", "1"]])
        result = runner.invoke(cli, ["check", str(write_json("config.json", payload))])
        assert result.exit_code == 1
        assert "DuplicatePointError" in result.output

    def test_characteristic_two(self, runner, write_json):
        payload = dict(ORTHOCENTER_CONFIG, field="gf:2")
        result = runner.invoke(cli, ["check", str(write_json("config.json", payload))])
        assert result.exit_code == 1
        assert "CharacteristicTwoError" in result.output

    def test_malformed_file(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{\n  \"field\": \"rationals\"\n  \"dim\": 2\n}", encoding="utf-8")
        result = runner.invoke(cli, ["check", str(path)])
        assert result.exit_code == 1
        assert "broken.json:3:" in result.output

    def test_human_format(self, runner, write_json):
        result = runner.invoke(cli, ["check", str(write_json("config.json", ORTHOCENTER_CONFIG)), "--format", "human"])
        assert result.exit_code == 0
        assert "✅ PASS: hesse-confirmed" in result.stdout


class TestFuzz:
    def test_confirmed_and_deterministic(self, runner):
        args = ["fuzz", "--field", "gf:7", "--dim", "2", "--trials", "50", "--seed", "1"]
        first, document = run_json(runner, args)
        second, again = run_json(runner, args)
        assert first.exit_code == 0
        assert document["body"]["outcome"] == "50/50 confirmed"
        assert json.dumps(document["body"], sort_keys=True) == json.dumps(again["body"], sort_keys=True)

    def test_rationals(self, runner):
        result, document = run_json(runner, ["fuzz", "--field", "rationals", "--dim", "3", "--trials", "20"])
        assert result.exit_code == 0
        assert document["body"]["counts"]["hesse-confirmed"] == 20

    def test_dimension_one_is_an_input_error(self, runner):
        result = runner.invoke(cli, ["fuzz", "--field", "gf:7", "--dim", "1", "--trials", "5"])
        assert result.exit_code == 1

    def test_unknown_field_is_an_input_error(self, runner):
        result = runner.invoke(cli, ["fuzz", "--field", "gf:9", "--dim", "2"])
        assert result.exit_code == 1
        assert "NotPrimeError" in result.output
        result = runner.invoke(cli, ["fuzz", "--field", "reals", "--dim", "2"])
        assert result.exit_code == 1

    def test_missing_option_is_an_input_error(self, runner):
        result = runner.invoke(cli, ["fuzz", "--dim", "2"])
        assert result.exit_code == 1


class TestScan:
    def test_gf3_with_three_forms(self, runner):
        result, document = run_json(runner, ["scan", "--field", "gf:3", "--dim", "2", "--forms", "zero,identity,random:seed=9"])
        assert result.exit_code == 0
        assert document["body"]["counts"]["mismatches"] == 0
        assert document["body"]["counts"]["tuples_scanned"] == 3 * 17160

    def test_too_large(self, runner):
        result = runner.invoke(cli, ["scan", "--field", "gf:13", "--dim", "3"])
        assert result.exit_code == 1
        assert "ScanTooLargeError" in result.output

    def test_unknown_form(self, runner):
        result = runner.invoke(cli, ["scan", "--field", "gf:3", "--dim", "2", "--forms", "hyperbolic"])
        assert result.exit_code == 1


class TestDegeneracy:
    def test_exhaustive_gf3(self, runner):
        result, document = run_json(runner, ["degeneracy", "--exhaustive", "gf:3"])
        assert result.exit_code == 0
        assert document["body"]["counts"]["forms"] == 27
        assert document["body"]["counts"]["agreements"] == 27

    def test_form_file(self, runner, write_json):
        path = write_json("form.json", {"field": "rationals", "form": [["1", "0"], ["0", "0"]]})
        result, document = run_json(runner, ["degeneracy", "--form-file", str(path)])
        assert result.exit_code == 0
        assert document["body"]["outcome"].startswith("degenerate")

    def test_needs_exactly_one_source(self, runner):
        assert runner.invoke(cli, ["degeneracy"]).exit_code == 1


class TestCrossRatio:
    def test_points(self, runner, write_json):
        path = write_json("points.json", {"field": "rationals", "points": [["1", "0"], ["0", "1"], ["1", "1"], ["1", "2"]]})
        result, document = run_json(runner, ["cross-ratio", "--points", str(path)])
        assert result.exit_code == 0
        assert document["body"]["outcome"] == "1/2"

    def test_exhaustive_gf5(self, runner):
        result, document = run_json(runner, ["cross-ratio", "--exhaustive", "gf:5"])
        assert result.exit_code == 0
        assert document["body"]["counts"] == {"quadruples": 360, "forbidden_values": 0, "distinct_values": 3}

    def test_repeated_point_is_rejected(self, runner, write_json):
        path = write_json("points.json", {"field": "rationals", "points": [["1", "0"], ["0", "1"], ["1", "1"], ["2", "2"]]})
        result = runner.invoke(cli, ["cross-ratio", "--points", str(path)])
        assert result.exit_code == 1
        assert "DuplicatePointError" in result.output


class TestDemo:
    def test_orthocenter(self, runner):
        args = ["demo", "--triangle", "0,0;4,0;1,3", "--radius-sq", "1", "--radius-sq", "4", "--radius-sq", "1/4"]
        result, document = run_json(runner, args)
        assert result.exit_code == 0
        assert document["body"]["counts"] == {"circles": 3, "confirmed": 3, "not_applicable": 0}

    def test_point_circle_needs_a_flag(self, runner):
        args = ["demo", "--triangle", "0,0;2,0;1,2", "--radius-sq", "0"]
        assert runner.invoke(cli, args).exit_code == 1
        assert runner.invoke(cli, [*args, "--allow-degenerate"]).exit_code == 0

    def test_right_triangle_is_not_applicable(self, runner):
        result, document = run_json(runner, ["demo", "--triangle", "0,0;3,0;0,4"])
        assert result.exit_code == 0
        assert document["body"]["counts"] == {"circles": 1, "confirmed": 1, "not_applicable": 1}
        detail = document["body"]["details"][0]
        assert detail["verdict"] == "not-applicable"
        assert "vertex A" in detail["reason"]

    def test_malformed_triangle(self, runner):
        assert runner.invoke(cli, ["demo", "--triangle", "0,0;1,1"]).exit_code == 1


class TestIdentities:
    def test_passes(self, runner):
        result, document = run_json(runner, ["identities", "--field", "gf:5", "--dim", "2", "--trials", "20"])
        assert result.exit_code == 0
        assert document["body"]["counts"]["failed_trials"] == 0
