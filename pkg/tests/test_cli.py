"""Command-line client: subcommands, output, exit codes."""

import json

import pytest

from loccalc.cli import main
from loccalc.model import build_projective_space, save_model


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBott:
    def test_p2_c1_squared_prints_nine(self, capsys):
        code, out, _ = run_cli(capsys, "bott", "--pn", "2", "--phi", "c1^2")
        assert code == 0
        assert out.strip() == "9"

    def test_explicit_weights(self, capsys):
        code, out, _ = run_cli(capsys, "bott", "--pn", "2",
                               "--weights", "0,1,3", "--phi", "c2")
        assert code == 0
        assert out.strip() == "3"

    def test_product_model(self, capsys):
        code, out, _ = run_cli(capsys, "bott", "--product", "1,1", "--phi", "c2")
        assert code == 0
        assert out.strip() == "4"

    def test_model_file_source(self, capsys, tmp_path):
        path = tmp_path / "p2.json"
        save_model(build_projective_space(2, [0, 1, 3]), path)
        code, out, _ = run_cli(capsys, "bott", "--model", str(path), "--phi", "c1^2")
        assert code == 0
        assert out.strip() == "9"

    def test_json_output(self, capsys):
        code, out, _ = run_cli(capsys, "bott", "--pn", "2", "--phi", "c1^2", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["value"] == "9"
        assert data["tau_exponent"] == 0 and data["t_exponent"] == 0
        assert len(data["per_point"]) == 3

    def test_bad_integrand_is_computation_error(self, capsys):
        code, _, err = run_cli(capsys, "bott", "--pn", "2", "--phi", "c1")
        assert code == 1
        assert "homogeneous" in err

    def test_parse_error_position(self, capsys):
        code, _, err = run_cli(capsys, "bott", "--pn", "2", "--phi", "c1 ** 2")
        assert code == 1
        assert "position" in err

    def test_usage_error_exit_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["bott", "--pn", "2"])  # missing --phi
        assert exc.value.code == 2


class TestCarrellLiebermann:
    def test_degree_one_normalization(self, capsys):
        code, out, _ = run_cli(capsys, "cl", "--pn", "3", "--p", "c1^3")
        assert code == 0
        assert out.strip() == "1"

    def test_twist_scales_value(self, capsys):
        code, out, _ = run_cli(capsys, "cl", "--pn", "2", "--p", "c1^2",
                               "--twist", "3")
        assert code == 0
        assert out.strip() == "9"


class TestBaumBott:
    def test_factored_line_field(self, capsys):
        code, out, _ = run_cli(capsys, "baumbott", "--p1-roots", "0,1,2,-1",
                               "--phi", "c1")
        assert code == 0
        assert out.strip() == "4"

    def test_plane_family(self, capsys):
        code, out, _ = run_cli(capsys, "baumbott", "--p2-twist", "1", "--phi", "c1^2")
        assert code == 0
        assert out.strip() == "16"

    def test_conflicting_sources_rejected(self, capsys):
        code, _, err = run_cli(capsys, "baumbott", "--p1-roots", "0,1",
                               "--p2-twist", "1", "--phi", "c1")
        assert code == 1
        assert "exactly one" in err

    def test_model_file_with_twist_weights(self, capsys, tmp_path):
        from loccalc.model import build_p1_meromorphic_field
        path = tmp_path / "mero.json"
        save_model(build_p1_meromorphic_field([0, 1, 2]), path)
        code, out, _ = run_cli(capsys, "baumbott", "--model", str(path),
                               "--phi", "c1")
        assert code == 0
        assert out.strip() == "3"

    def test_model_file_without_twist_weights_rejected(self, capsys, tmp_path):
        path = tmp_path / "plain.json"
        save_model(build_projective_space(1, [0, 1]), path)
        code, _, err = run_cli(capsys, "baumbott", "--model", str(path),
                               "--phi", "c1")
        assert code == 1
        assert "twist weight" in err


class TestResidue:
    def test_laurent_case(self, capsys):
        code, out, _ = run_cli(capsys, "residue", "--dim", "1", "--a", "z1^2",
                               "--s", "z1", "--radius", "0.5")
        assert code == 0
        assert out.strip() == "1.000000000"

    def test_two_components(self, capsys):
        code, out, _ = run_cli(capsys, "residue", "--dim", "2", "--a", "z1^2",
                               "--a", "z2^3", "--s", "z1*z2^2")
        assert code == 0
        assert out.strip() == "1.000000000"

    def test_samples_env_override(self, capsys, monkeypatch):
        monkeypatch.setenv("LOC_CALC_SAMPLES", "128")
        code, out, _ = run_cli(capsys, "residue", "--dim", "1", "--a", "z1", "--s", "1")
        assert code == 0 and out.strip() == "1.000000000"

    def test_bad_samples_env_is_usage_error(self, capsys, monkeypatch):
        monkeypatch.setenv("LOC_CALC_SAMPLES", "100")
        with pytest.raises(SystemExit) as exc:
            main(["residue", "--dim", "1", "--a", "z1", "--s", "1"])
        assert exc.value.code == 2

    def test_near_zero_denominator_reported(self, capsys):
        code, _, err = run_cli(capsys, "residue", "--dim", "1",
                               "--a", "z1^2 - z1/2", "--s", "1")
        assert code == 1
        assert "radius" in err


class TestVerifyAndDh:
    def test_single_scenario(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--only", "euler-characteristic-count")
        assert code == 0
        assert "[ PASS]" in out or "[PASS]" in out.replace(" ", "")
        assert "all scenarios passed" in out

    def test_json_lines(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--only",
                               "euler-characteristic-count", "--json")
        assert code == 0
        record = json.loads(out.strip().splitlines()[0])
        assert record["status"] == "pass"

    def test_dh(self, capsys):
        code, out, _ = run_cli(capsys, "dh")
        assert code == 0
        assert "dh-quadrature-vs-residues" in out


class TestModelCommands:
    def test_validate(self, capsys, tmp_path):
        path = tmp_path / "p2.json"
        save_model(build_projective_space(2), path)
        code, out, _ = run_cli(capsys, "model", "validate", str(path))
        assert code == 0
        assert "valid" in out

    def test_validate_json_round_trip(self, capsys, tmp_path):
        path = tmp_path / "p1.json"
        save_model(build_projective_space(1, [0, 1]), path)
        code, out, _ = run_cli(capsys, "model", "validate", str(path), "--json")
        assert code == 0
        data = json.loads(out)
        assert data["valid"] and data["points"] == 2
        # the canonical document reloads to the same model
        from loccalc.model import model_from_dict
        assert model_from_dict(data["canonical"]) == build_projective_space(1, [0, 1])

    def test_convert_writes_canonical_file(self, capsys, tmp_path):
        source = tmp_path / "raw.json"
        out_path = tmp_path / "canonical.json"
        source.write_text(json.dumps({
            "dim": 1, "rank": 0, "symbolic": False,
            "points": [{"name": "q", "tangent": [["2/4"]]}],
        }))
        code, out, _ = run_cli(capsys, "model", "convert", str(source),
                               "--out", str(out_path))
        assert code == 0
        written = json.loads(out_path.read_text())
        assert written["points"][0]["tangent"] == [["1/2"]]

    def test_missing_file_is_computation_error(self, capsys):
        code, _, err = run_cli(capsys, "model", "validate", "/nonexistent.json")
        assert code == 1
        assert "error" in err
