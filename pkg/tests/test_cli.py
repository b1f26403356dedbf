import json

import pytest

from bottfano.cli import main, parse_document
from bottfano.tower import TowerError
from bottfano.cli import UsageError

from conftest import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_machine(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "machine")
    return code, json.loads(out) if out else None, err


class TestParseDocument:
    def test_fixture_parses(self):
        t = parse_document((FIXTURES / "fano_4stage.json").read_text())
        assert t.stage_dims == (3, 2, 2, 2)
        assert t.a(4, 1) == (0, 2)

    def test_invalid_json_is_usage_error(self):
        with pytest.raises(UsageError):
            parse_document("{not json")

    def test_shape_error_cites_path(self):
        doc = {"stages": [1, 2], "coefficients": [[[1]]]}
        with pytest.raises(TowerError, match=r"j=2.*l=1.*n_2=2"):
            parse_document(json.dumps(doc))

    def test_non_integer_entry_cites_path(self):
        doc = {"stages": [1, 1], "coefficients": [[[1.5]]]}
        with pytest.raises(TowerError, match=r"j=2.*l=1.*k=1"):
            parse_document(json.dumps(doc))


class TestCheck:
    def test_fano_fixture(self, capsys):
        code, report, _ = run_machine(
            capsys, "check", "--input", str(FIXTURES / "fano_4stage.json")
        )
        assert code == 0
        assert report["verdict"] == "fano"
        assert report["nu_sums"] == [3, 2, 1]
        assert report["b_vectors"]["1,1"] == [-1, -1]

    def test_not_weak_fano_fixture(self, capsys):
        code, report, _ = run_machine(
            capsys, "check", "--input", str(FIXTURES / "not_weak_fano_3stage.json")
        )
        assert code == 0
        assert report["verdict"] == "not_weak_fano"

    def test_projective_plane(self, capsys):
        code, report, _ = run_machine(
            capsys, "check", "--input", str(FIXTURES / "projective_plane.json")
        )
        assert code == 0
        assert report["verdict"] == "fano"
        assert report["nu_sums"] == []

    def test_verify_agrees(self, capsys):
        code, report, _ = run_machine(
            capsys, "check", "--verify", "--input", str(FIXTURES / "hirzebruch_a1.json")
        )
        assert code == 0
        assert report["verified"] is True

    def test_machine_output_round_trips(self, capsys):
        _, report, _ = run_machine(
            capsys, "check", "--input", str(FIXTURES / "fano_4stage.json")
        )
        assert json.loads(json.dumps(report)) == report

    def test_validation_error_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"stages": [1, 1], "coefficients": [[[1, 2]]]}')
        code, _, err = run(capsys, "check", "--input", str(bad))
        assert code == 2
        assert "j=2" in err

    def test_parse_error_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        code, _, err = run(capsys, "check", "--input", str(bad))
        assert code == 1

    def test_usage_error_exit_code(self, capsys):
        assert main(["check", "--no-such-flag"]) == 1


class TestFan:
    def test_hirzebruch_rays(self, capsys):
        code, report, _ = run_machine(
            capsys, "fan", "--input", str(FIXTURES / "hirzebruch_a1.json")
        )
        assert code == 0
        rays = {tuple(tuple(x) for x in entry) for entry in
                ((tuple(lab), tuple(vec)) for lab, vec in report["rays"])}
        assert ((1, 0), (-1, 1)) in rays
        assert len(report["rays"]) == 4
        assert len(report["max_cones"]) == 4

    def test_product_of_lines(self, capsys, tmp_path):
        doc = tmp_path / "p1cubed.json"
        doc.write_text(json.dumps({
            "stages": [1, 1, 1],
            "coefficients": [[[0]], [[0], [0]]],
        }))
        code, report, _ = run_machine(capsys, "fan", "--input", str(doc))
        assert code == 0
        assert len(report["rays"]) == 6
        assert len(report["max_cones"]) == 8
        assert [r["degree"] for r in report["relations"]] == [2, 2, 2]

    def test_worked_example_degrees(self, capsys):
        code, report, _ = run_machine(
            capsys, "fan", "--input", str(FIXTURES / "fano_4stage.json")
        )
        assert code == 0
        assert [r["degree"] for r in report["relations"]] == [1, 1, 2, 3]

    def test_relations_alias(self, capsys):
        code, report, _ = run_machine(
            capsys, "relations", "--input", str(FIXTURES / "hirzebruch_a1.json")
        )
        assert code == 0
        assert "rays" not in report
        assert len(report["relations"]) == 2


class TestEnumerate:
    def test_expect_table1(self, capsys):
        code, report, _ = run_machine(
            capsys, "enumerate", "--stages", "1,1,1", "--range=-1:1",
            "--mode", "fano", "--expect-table1",
        )
        assert code == 0
        assert len(report["hits"]) == 15

    def test_expect_table1_wrong_stages(self, capsys):
        code, _, err = run(
            capsys, "enumerate", "--stages", "1,1", "--range=-1:1",
            "--mode", "fano", "--expect-table1",
        )
        assert code == 1

    def test_census(self, capsys):
        code, report, _ = run_machine(
            capsys, "enumerate", "--stages", "1,1", "--range=-2:2", "--mode", "census"
        )
        assert code == 0
        assert report["counts"] == {
            "fano": 3, "weak_fano_not_fano": 2, "not_weak_fano": 0
        }

    def test_cap_exceeded(self, capsys):
        code, _, err = run(
            capsys, "enumerate", "--stages", "2,2,2", "--range=-2:2",
            "--cap", "10",
        )
        assert code == 2
        assert "exceed cap" in err


class TestCharyCompare:
    def test_r3(self, capsys):
        code, report, _ = run_machine(capsys, "chary-compare", "--r", "3", "--range=-1:1")
        assert code == 0
        assert report["chary_not_fano"] == []
        assert [1, 1, 1] in report["fano_not_chary"]
