"""Command-line surface: parsing, reports, formats, exit codes."""

import io
import json

import pytest

from lodayhom.cli import RunConfig, main, parse_args, run
from lodayhom.algebra import dump_algebra, truncated_poly

TORUS = "prod(S1,S1)"
WEDGE = "wedge(wedge(S1,S1),sphere(2))"

COMPARE_ARGS = [
    "compare", "--space-a", TORUS, "--space-b", WEDGE,
    "--algebra", "truncpoly(2)", "--field", "F3", "--coeff", "unit",
    "--max-degree", "2",
]


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    cfg = parse_args(argv)
    code = run(cfg, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestParseArgs:
    def test_compute(self):
        cfg = parse_args(["compute", "--space", "S1", "--algebra",
                          "truncpoly(2)", "--field", "F3", "--coeff", "unit",
                          "--max-degree", "3"])
        assert cfg == RunConfig(command="compute", space="S1",
                                algebra="truncpoly(2)", field="F3",
                                coeff="unit", max_degree=3)

    def test_compare(self):
        cfg = parse_args(COMPARE_ARGS)
        assert cfg.command == "compare"
        assert cfg.space == TORUS and cfg.space_b == WEDGE

    def test_poly_needs_weight_bound(self):
        with pytest.raises(SystemExit) as err:
            parse_args(["compute", "--space", "S1", "--algebra", "poly",
                        "--field", "Q", "--coeff", "unit", "--max-degree", "2"])
        assert err.value.code == 2

    def test_bad_field_is_usage_error(self):
        with pytest.raises(SystemExit) as err:
            parse_args(["compute", "--space", "S1", "--algebra",
                        "truncpoly(2)", "--field", "F4", "--coeff", "unit",
                        "--max-degree", "2"])
        assert err.value.code == 2

    def test_max_basis_env(self, monkeypatch):
        monkeypatch.setenv("LODAY_MAX_BASIS", "123")
        cfg = parse_args(["compute", "--space", "S1", "--algebra",
                          "truncpoly(2)", "--field", "F3", "--max-degree", "1"])
        assert cfg.max_basis == 123

    def test_flag_overrides_env(self, monkeypatch):
        monkeypatch.setenv("LODAY_MAX_BASIS", "123")
        cfg = parse_args(["compute", "--space", "S1", "--algebra",
                          "truncpoly(2)", "--field", "F3", "--max-degree", "1",
                          "--max-basis", "77"])
        assert cfg.max_basis == 77


class TestComputeCommand:
    def test_point(self):
        code, out, _ = run_cli(["compute", "--space", "pt", "--algebra",
                                "truncpoly(2)", "--field", "F5", "--coeff",
                                "unit", "--max-degree", "2"])
        assert code == 0
        assert "totals by degree: [1, 0, 0]" in out

    def test_csv(self):
        code, out, _ = run_cli(["compute", "--space", "S1", "--algebra",
                                "truncpoly(2)", "--field", "F3",
                                "--max-degree", "2", "--format", "csv"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "degree,weight,dimension"
        assert lines[1:] == ["0,0,1", "1,1,1", "2,2,1"]

    def test_json_totals_shape(self):
        code, out, _ = run_cli(["compute", "--space", "S1", "--algebra",
                                "truncpoly(2)", "--field", "F3",
                                "--max-degree", "2", "--format", "json"])
        payload = json.loads(out)
        assert payload["dims"] == {"0": 1, "1": 1, "2": 1}
        assert payload["verdict"] is None

    def test_json_weight_resolved_shape(self):
        code, out, _ = run_cli(["compute", "--space", "S1", "--algebra",
                                "poly", "--field", "F3", "--max-degree", "2",
                                "--max-weight", "2", "--format", "json"])
        payload = json.loads(out)
        assert payload["dims"] == {"0": {"0": 1}, "1": {"1": 1}, "2": {}}

    def test_unnormalized_flag(self):
        code, out, _ = run_cli(["compute", "--space", "S1", "--algebra",
                                "truncpoly(2)", "--field", "F3",
                                "--max-degree", "2", "--no-normalize"])
        assert code == 0 and "[1, 1, 1]" in out

    def test_basis_ceiling_is_internal_error(self):
        code, out, err = run_cli(["compute", "--space", TORUS, "--algebra",
                                  "truncpoly(2)", "--field", "F3",
                                  "--max-degree", "2", "--max-basis", "10"])
        assert code == 1
        assert out == ""
        assert "error" in err


class TestCompareCommand:
    def test_discrepancy_exit_code(self):
        code, out, _ = run_cli(COMPARE_ARGS)
        assert code == 10
        assert "verdict: first-discrepancy(degree=2,weight=2,left=2,right=3)" in out

    def test_agreement_exit_code(self):
        args = list(COMPARE_ARGS)
        args[args.index("F3")] = "F2"
        code, out, _ = run_cli(args)
        assert code == 0
        assert "agree-through-degree-2" in out

    def test_exit_ten_iff_discrepancy_in_report(self):
        for field, expected in (("F3", 10), ("F2", 0)):
            args = list(COMPARE_ARGS) + ["--format", "json"]
            args[args.index("F3")] = field
            code, out, _ = run_cli(args)
            assert code == expected
            payload = json.loads(out)
            assert ("first-discrepancy" in payload["verdict"]) == (code == 10)

    def test_json_round_trip_bytes(self):
        args = list(COMPARE_ARGS) + ["--format", "json"]
        _, out, _ = run_cli(args)
        payload = json.loads(out)
        again = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
        assert again == out

    def test_byte_identical_reruns(self):
        args = list(COMPARE_ARGS) + ["--format", "json"]
        first = run_cli(args)
        second = run_cli(args)
        assert first == second

    def test_csv_schema(self):
        args = list(COMPARE_ARGS) + ["--format", "csv"]
        _, out, _ = run_cli(args)
        lines = out.strip().splitlines()
        assert lines[0] == "degree,weight,left,right"
        assert "2,2,2,3" in lines


class TestOtherCommands:
    def test_check_product(self):
        code, out, _ = run_cli(["check-product", "--space-a", "S1",
                                "--space-b", "S1", "--algebra", "truncpoly(2)",
                                "--field", "F3", "--max-degree", "2"])
        assert code == 10
        assert "wedge(wedge(S1,S1),smash(S1,S1))" in out

    def test_oracle_bicomplex(self):
        code, out, _ = run_cli(["oracle-bicomplex", "--algebra", "truncpoly(2)",
                                "--field", "F3", "--max-degree", "2"])
        assert code == 0
        assert "totals by degree: [1, 2, 3]" in out

    def test_validate(self):
        code, out, _ = run_cli(["validate", "--space", "smash(S1,sphere(2))",
                                "--top-level", "3"])
        assert code == 0
        assert "result: pass" in out

    def test_validate_malformed_expression(self):
        code, out, err = run_cli(["validate", "--space", "wedge(S1)"])
        assert code == 1
        assert "error" in err

    def test_algebra_file(self, tmp_path):
        doc = dump_algebra(truncated_poly(3, 2))
        path = tmp_path / "square_zero.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run_cli(["compute", "--space", "S1", "--algebra",
                                f"file({path})", "--field", "F3",
                                "--max-degree", "2"])
        assert code == 0
        assert "totals by degree: [1, 1, 1]" in out

    def test_coefficient_file_acts_through_augmentation(self, tmp_path):
        doc = dump_algebra(truncated_poly(3, 2))
        path = tmp_path / "coeffs.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run_cli(["compute", "--space", "S1", "--algebra",
                                "truncpoly(2)", "--field", "F3", "--coeff",
                                f"file({path})", "--max-degree", "2"])
        assert code == 0
        # H(S^1; k) tensored with the two-dimensional coefficient algebra
        assert "totals by degree: [2, 2, 2]" in out

    def test_seed_suite_subset(self):
        code, out, err = run_cli(["seed-suite", "--only", "3,4,10"])
        assert code == 0
        lines = [l for l in out.splitlines() if l.startswith("criterion")]
        assert len(lines) == 3
        assert all("PASS" in l for l in lines)


def test_main_returns_exit_code():
    assert main(["compute", "--space", "pt", "--algebra", "truncpoly(2)",
                 "--field", "F3", "--max-degree", "1"]) == 0
