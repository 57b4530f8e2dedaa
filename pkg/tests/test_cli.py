import json

import pytest
from typer.testing import CliRunner

from main import app
from src.schemas import (
    AsmTableResponse,
    BetheRootsResponse,
    ChiResponse,
    EsymResponse,
    GroundStateResponse,
    LaurentResponse,
    OracleResponse,
    SumsResponse,
    VerifyResponse,
)

runner = CliRunner()


def _json(args):
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


class TestPositionalArguments:
    @pytest.mark.parametrize(
        "args",
        [
            ["phi", "1"],
            ["chi", "1"],
            ["esym", "1"],
            ["groundstate", "3"],
            ["sums", "3"],
            ["bethe-roots", "1"],
            ["oracle", "3"],
            ["verify", "3", "--skip-bethe"],
        ],
    )
    def test_command_runs(self, args):
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output

    @pytest.mark.parametrize("command,metavar", [("phi", "M"), ("bethe-roots", "M"), ("groundstate", "N"), ("verify", "N")])
    def test_help_names_the_argument(self, command, metavar):
        result = runner.invoke(app, [command, "--help"])
        assert result.exit_code == 0
        assert metavar in result.stdout


class TestSchemas:
    @pytest.mark.parametrize(
        "args,model",
        [
            (["asm-table", "5", "--brute-force"], AsmTableResponse),
            (["phi", "2"], LaurentResponse),
            (["chi", "3", "--field"], ChiResponse),
            (["esym", "4", "--timings"], EsymResponse),
            (["groundstate", "7", "--companion"], GroundStateResponse),
            (["sums", "9"], SumsResponse),
            (["bethe-roots", "3"], BetheRootsResponse),
            (["oracle", "5", "--amplitudes", "2,4"], OracleResponse),
            (["verify", "5"], VerifyResponse),
        ],
    )
    def test_json_validates(self, args, model):
        result = runner.invoke(app, args + ["--json"])
        assert result.exit_code == 0, result.output
        parsed = model.model_validate_json(result.stdout)
        assert parsed.model_dump_json(indent=2, exclude_none=True) == result.stdout.strip()


class TestAsmTable:
    def test_triangle(self):
        result = runner.invoke(app, ["asm-table", "7"])
        assert result.exit_code == 0
        assert "56784" in result.stdout
        assert result.stdout.splitlines()[0].strip() == "1"

    def test_json(self, reference_values):
        data = _json(["asm-table", "7", "--json"])
        assert [row["counts"] for row in data["rows"]] == [
            [str(c) for c in row] for row in reference_values["asm_refined_rows"]
        ]
        assert data["rows"][4]["total"] == "429"

    def test_brute_force(self):
        data = _json(["asm-table", "4", "--brute-force", "--json"])
        assert data["brute_force"]["4"] == ["7", "14", "14", "7"]


class TestExactCommands:
    def test_phi(self):
        data = _json(["phi", "1", "--json"])
        assert data["phi"] == [[4, "1"], [2, "-2"], [-2, "2"], [-4, "-1"]]
        assert data["xi"] == [[1, "1"], [-1, "1"]]
        assert data["degree"] == 8
        assert all(check["status"] == "pass" for check in data["checks"])

    def test_chi_through_field(self):
        data = _json(["chi", "2", "--field", "--json"])
        assert data["coefficients"] == ["1", "-3/2", "1"]
        assert data["via_field"] == data["coefficients"]

    def test_esym(self):
        data = _json(["esym", "5", "--json"])
        assert data["values"] == ["1", "3", "14/3", "14/3", "3", "1"]
        assert data["asm_ratios"] == data["values"]

    def test_no_timings_by_default(self):
        data = _json(["esym", "3", "--json"])
        assert all("wall_time_ms" not in check for check in data["checks"])

    def test_timings_flag(self):
        data = _json(["esym", "3", "--json", "--timings"])
        assert all("wall_time_ms" in check for check in data["checks"])


class TestGroundState:
    def test_json(self):
        data = _json(["groundstate", "11", "--json"])
        assert data["orbit_count"] == 26
        assert data["max_component"] == "429"
        assert data["eigenvalue"] == "-33/4"
        assert data["integral"] and data["positive"]

    def test_table_mode(self):
        result = runner.invoke(app, ["groundstate", "11", "--table"])
        assert result.exit_code == 0
        assert "Psi^{1,3,5,7,9} = 429" in result.stdout

    @pytest.mark.parametrize("N", ["1", "4"])
    def test_bad_length_is_a_usage_error(self, N):
        assert runner.invoke(app, ["groundstate", N]).exit_code == 2

    def test_sums(self, reference_values):
        data = _json(["sums", "11", "--json"])
        assert data["increment"] == [str(s) for s in reference_values["increment_sums_n11"]]
        assert data["decrement"] == data["increment"]
        assert data["ratios"] == ["1", "3", "14/3", "14/3", "3", "1"]

    def test_json_is_reproducible(self):
        first = runner.invoke(app, ["sums", "11", "--json"])
        second = runner.invoke(app, ["sums", "11", "--json"])
        assert first.stdout == second.stdout

    def test_output_file(self, tmp_path):
        target = tmp_path / "sums.json"
        result = runner.invoke(app, ["sums", "7", "--output", str(target)])
        assert result.exit_code == 0
        assert json.loads(target.read_text())["N"] == 7


class TestNumericCommands:
    def test_bethe_roots(self):
        data = _json(["bethe-roots", "2", "--json"])
        assert len(data["roots"]) == 2
        assert data["energy"][0].startswith("-3.75")
        assert all(check["status"] == "pass" for check in data["checks"])

    def test_oracle(self):
        data = _json(["oracle", "7", "--json"])
        assert data["checks"][0]["status"] == "pass"

    def test_oracle_amplitudes(self):
        data = _json(["oracle", "5", "--amplitudes", "1,3", "--json"])
        assert len(data["amplitudes"]) == 2

    def test_oracle_size_limit(self):
        assert runner.invoke(app, ["oracle", "15"]).exit_code == 2

    def test_oracle_bad_positions(self):
        assert runner.invoke(app, ["oracle", "5", "--amplitudes", "1,x"]).exit_code == 2

    @pytest.mark.parametrize("positions", ["1,2,3", "1", "1,1", "0,2", "2,6"])
    def test_oracle_amplitude_positions_are_validated(self, positions):
        result = runner.invoke(app, ["oracle", "5", "--amplitudes", positions])
        assert result.exit_code == 2
        assert "--amplitudes" in result.output

    def test_bethe_roots_reports_both_transfer_residuals(self):
        data = _json(["bethe-roots", "3", "--json"])
        assert float(data["transfer_relative_residual"]) <= float(data["transfer_residual"])
        transfer = next(check for check in data["checks"] if check["name"] == "bethe.transfer")
        assert transfer["details"]["relative_residual"] == data["transfer_relative_residual"]


class TestVerify:
    def test_skip_bethe(self):
        result = runner.invoke(app, ["verify", "11", "--skip-bethe"])
        assert result.exit_code == 0, result.output
        assert "1287" in result.stdout
        assert "2002" in result.stdout
        assert "all checks passed" in result.stdout

    def test_json_report(self):
        data = _json(["verify", "7", "--json"])
        assert data["passed"]
        names = {report["name"] for report in data["reports"]}
        assert {"asm.rows", "tq.identity", "spin.sums", "bethe.equations", "bethe.oracle"} <= names
        assert "execution_time_ms" not in data
