# tests/test_verification.py
import json

import pytest

from config.settings import HesseSettings
from models.hesse import Verdict
from services.exceptions import ConfigFileError, HesseError, ShapeError
from services.fields import RATIONALS
from services.serialization import load_quadrangle, point_to_strings, quadrangle_to_file, render_human, render_json
from services.verification import EXIT_OK, VerificationService, build_form, derive_seed
from tests.strategies import GF3, GF5, GF7, GF13, point

ORTHOCENTER_CONFIG = {
    "field": "rationals",
    "dim": 2,
    "points": [["0", "0", "1"], ["4", "0", "1"], ["1", "3", "1"], ["1", "1", "1"]],
    "form": [["1", "0", "-1"], ["0", "1", "-1"], ["-1", "-1", "1"]],
}


@pytest.fixture
def service():
    return VerificationService(HesseSettings(workers=1, output_format="json"))


class TestSeeds:
    def test_derived_seeds_are_distinct_and_stable(self):
        seeds = [derive_seed(1, i) for i in range(1000)]
        assert len(set(seeds)) == 1000
        assert seeds == [derive_seed(1, i) for i in range(1000)]
        assert derive_seed(1, 0) != derive_seed(2, 0)


class TestBuildForm:
    def test_named_forms(self):
        assert build_form("identity", GF3, 2, 100).determinant() == 1
        assert build_form("zero", GF3, 2, 100).rank() == 0
        assert build_form("degenerate:seed=4", GF7, 2, 100).is_degenerate()
        assert not build_form("nondegenerate:seed=4", GF7, 2, 100).is_degenerate()
        assert build_form("random:seed=9", GF3, 2, 100) == build_form("random:seed=9", GF3, 2, 100)

    @pytest.mark.parametrize("name", ["hyperbolic", "random:size=3", "random:seed=x"])
    def test_unknown(self, name):
        with pytest.raises(HesseError):
            build_form(name, GF3, 2, 100)


class TestCheck:
    def test_orthocenter_file(self, service, write_json):
        body = service.check(write_json("config.json", ORTHOCENTER_CONFIG))
        assert body.outcome == Verdict.HESSE_CONFIRMED.value
        assert body.exit_code == EXIT_OK
        assert body.details[0]["conjugate"] == [True, True, True]

    def test_integer_coordinates_are_accepted(self, write_json):
        payload = dict(ORTHOCENTER_CONFIG, points=[[0, 0, 1], [4, 0, 1], [1, 3, 1], [1, 1, 1]])
        config = load_quadrangle(write_json("config.json", payload))
        assert [str(x) for x in config.points[1].coords] == ["4", "0", "1"]

    def test_syntax_error_reports_the_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"field": "rationals",\n "dim": 2,,\n}', encoding="utf-8")
        with pytest.raises(ConfigFileError) as excinfo:
            load_quadrangle(path)
        assert excinfo.value.line == 2

    def test_validation_error_names_the_field(self, write_json):
        payload = dict(ORTHOCENTER_CONFIG, points=ORTHOCENTER_CONFIG["points"][:3])
        with pytest.raises(ConfigFileError, match="points"):
            load_quadrangle(write_json("config.json", payload))

    def test_bad_scalar_names_its_position(self, write_json):
        points = [list(p) for p in ORTHOCENTER_CONFIG["points"]]
        points[2][1] = "three"
        with pytest.raises(ConfigFileError, match=r"points\[2\]\[1\]"):
            load_quadrangle(write_json("config.json", dict(ORTHOCENTER_CONFIG, points=points)))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigFileError):
            load_quadrangle(tmp_path / "absent.json")


class TestFuzz:
    @pytest.mark.parametrize("field,dim", [(GF7, 2), (GF3, 3), (RATIONALS, 3), (GF13, 4)])
    def test_all_confirmed(self, service, field, dim):
        body = service.fuzz(field, dim, 40, 1)
        assert body.counts[Verdict.HESSE_CONFIRMED.value] == 40
        assert body.counts[Verdict.VIOLATION.value] == 0
        assert body.exit_code == EXIT_OK
        assert body.outcome == "40/40 confirmed"

    def test_body_is_deterministic(self, service):
        first = service.fuzz(GF5, 2, 30, 17)
        second = service.fuzz(GF5, 2, 30, 17)
        assert first.model_dump_json() == second.model_dump_json()

    def test_workers_do_not_change_the_body(self):
        inline = VerificationService(HesseSettings(workers=1)).fuzz(GF7, 2, 24, 3)
        pooled = VerificationService(HesseSettings(workers=3)).fuzz(GF7, 2, 24, 3)
        assert inline.model_dump_json() == pooled.model_dump_json()

    def test_preconditions(self, service):
        with pytest.raises(ShapeError):
            service.fuzz(GF7, 1, 10, 1)
        with pytest.raises(HesseError):
            service.fuzz(GF7, 2, 0, 1)


class TestIdentities:
    @pytest.mark.parametrize("field,dim", [(RATIONALS, 2), (GF3, 1), (GF5, 3)])
    def test_all_pass(self, service, field, dim):
        body = service.identities(field, dim, 20, 1)
        assert body.counts["failed_trials"] == 0
        assert body.exit_code == EXIT_OK


class TestScan:
    def test_three_named_forms_over_gf3(self, service):
        body = service.scan(GF3, 2, ["zero", "identity", "random:seed=9"])
        assert body.counts["tuples_scanned"] == 3 * 17160
        assert body.counts["mismatches"] == 0
        assert body.exit_code == EXIT_OK
        assert [entry["name"] for entry in body.summary["forms"]] == ["zero", "identity", "random:seed=9"]


class TestDegeneracy:
    @pytest.mark.parametrize("field,count", [(GF3, 27), (GF5, 125)])
    def test_exhaustive(self, service, field, count):
        body = service.degeneracy_exhaustive(field)
        assert body.counts["forms"] == count
        assert body.counts["agreements"] == count
        assert body.outcome == f"{count}/{count} agreements"

    def test_single_degenerate_form(self, service, write_json):
        body = service.degeneracy_form(write_json("form.json", {"field": "rationals", "form": [[1, 0], [0, 0]]}), 1)
        detail = body.details[0]
        assert detail["degenerate_by_determinant"] and detail["degenerate_by_quadruples"]
        assert detail["mode"] == "sampled"
        assert body.exit_code == EXIT_OK

    def test_single_nondegenerate_form_has_a_witness(self, service, write_json):
        body = service.degeneracy_form(write_json("form.json", {"field": "gf:3", "form": [[1, 0], [0, 1]]}), 1)
        assert body.details[0]["degenerate_by_quadruples"] is False
        assert len(body.details[0]["witness"]) == 4
        for coords in body.details[0]["witness"]:
            assert next(x for x in coords if x != "0") == "1"

    def test_needs_a_two_by_two_form(self, service, write_json):
        path = write_json("form.json", {"field": "gf:3", "form": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
        with pytest.raises(ShapeError):
            service.degeneracy_form(path, 1)


class TestCrossRatio:
    def test_points_file(self, service, write_json):
        path = write_json("points.json", {"field": "rationals", "points": [[1, 0], [0, 1], [1, 1], [1, 2]]})
        body = service.cross_ratio_points(path)
        assert body.summary["cross_ratio"] == "1/2"

    @pytest.mark.parametrize("field,quadruples", [(GF5, 360), (GF13, 24024)])
    def test_exhaustive(self, service, field, quadruples):
        body = service.cross_ratio_exhaustive(field)
        assert body.counts["quadruples"] == quadruples
        assert body.counts["forbidden_values"] == 0
        assert body.counts["distinct_values"] == field.order - 2
        assert body.summary["every_admissible_value_attained"] is True


class TestDemo:
    def test_both_triangles(self, service):
        radii = [RATIONALS(1), RATIONALS(4), RATIONALS.parse("1/4")]
        for vertices, h in [("0,0;4,0;1,3", ["1", "1"]), ("0,0;2,0;1,2", ["1", "1/2"])]:
            triangle = [tuple(RATIONALS.parse(x) for x in v.split(",")) for v in vertices.split(";")]
            body = service.demo(triangle, radii)
            assert body.counts == {"circles": 3, "confirmed": 3, "not_applicable": 0}
            assert all(detail["orthocenter"] == h for detail in body.details)


    def test_right_triangle_reports_the_affine_check_only(self, service):
        triangle = [tuple(RATIONALS(x) for x in v) for v in [(0, 0), (3, 0), (0, 4)]]
        body = service.demo(triangle, [RATIONALS(1), RATIONALS(4)])
        assert body.exit_code == EXIT_OK
        assert body.counts == {"circles": 2, "confirmed": 2, "not_applicable": 2}
        assert all(detail["report"] is None for detail in body.details)


class TestRendering:
    def test_json_envelope_keeps_timing_in_the_header(self, service, write_json):
        body = service.check(write_json("config.json", ORTHOCENTER_CONFIG))
        document = json.loads(render_json(VerificationService.envelope(body, 0.0)))
        assert set(document) == {"header", "body"}
        assert "wall_time_secs" in document["header"]
        assert "wall_time_secs" not in document["body"]

    def test_human_output_marks_pass_and_fail(self, service, write_json):
        body = service.check(write_json("config.json", ORTHOCENTER_CONFIG))
        text = render_human(VerificationService.envelope(body, 0.0))
        assert "✅ PASS: hesse-confirmed" in text
        failed = body.model_copy(update={"exit_code": 2})
        assert "❌ FAIL" in render_human(VerificationService.envelope(failed, 0.0))

    def test_reports_use_the_canonical_representative(self):
        p = point(RATIONALS, 2, 4, 6)
        assert point_to_strings(p) == ["1", "2", "3"]
        assert point_to_strings(p, canonical=False) == ["2", "4", "6"]
        assert point_to_strings(point(GF5, 0, 3, 1)) == ["0", "1", "2"]

    def test_replay_file_keeps_the_stored_representatives(self, write_json):
        payload = dict(ORTHOCENTER_CONFIG, points=[["0", "0", "2"], ["4", "0", "1"], ["1", "3", "1"], ["1", "1", "1"]])
        config = load_quadrangle(write_json("config.json", payload))
        assert quadrangle_to_file(config).points[0] == ["0", "0", "2"]
