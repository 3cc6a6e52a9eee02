"""Command-line contract: schema round-trips, determinism, exit codes."""

import json
import math
import os

import pytest

from levycm.cli import main
from levycm.rogers import validate_spec
from levycm.specio import SHOWCASE, load_spec, save_spec, spec_from_dict, spec_to_dict


def run_cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, out


class TestSpecIo:
    @pytest.mark.parametrize("name", sorted(SHOWCASE))
    def test_round_trip(self, name, tmp_path):
        spec = SHOWCASE[name]
        path = tmp_path / f"{name}.json"
        save_spec(spec, path)
        back = load_spec(path)
        assert validate_spec(back) == validate_spec(spec)
        assert spec_from_dict(spec_to_dict(back)) == back

    def test_preset_loading(self):
        assert load_spec("preset:bm_drift") == SHOWCASE["bm_drift"]

    def test_phi_table_round_trip(self, tmp_path):
        from levycm import PhiRep, PhiTable

        spec = PhiRep(
            1.5,
            PhiTable((-2.0, 0.0, 1.0, 4.0), (0.3, 1.9, 0.7), "piecewise-constant"),
        )
        path = tmp_path / "phi.json"
        save_spec(spec, path)
        assert load_spec(path) == spec
        linear = PhiRep(
            0.8, PhiTable((-1.0, 2.0, 5.0), (0.1, 2.2, 1.0), "piecewise-linear")
        )
        save_spec(linear, path)
        assert load_spec(path) == linear


class TestCommands:
    def test_eval(self, capsys):
        code, out = run_cli(capsys, "eval", "preset:bm_drift", "--xi", "1,0")
        assert code == 0
        doc = json.loads(out)
        assert doc["value"] == {"re": 0.5, "im": -1.0}

    def test_eval_malformed_point(self, capsys):
        code, out = run_cli(capsys, "eval", "preset:bm_drift", "--xi", "1;0")
        assert code == 2
        assert json.loads(out)["field"] == "xi"

    def test_invalid_spec_names_field(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"type": "levy_atomic", "atoms": [{"s": 1.0, "w": -1.0}]}')
        code, out = run_cli(capsys, "eval", str(path), "--xi", "1,0")
        assert code == 2
        doc = json.loads(out)
        assert doc["field"] == "atoms[0].w"

    def test_missing_file(self, capsys):
        code, out = run_cli(capsys, "eval", "/nonexistent.json", "--xi", "1,0")
        assert code == 2

    def test_spine_csv_contract(self, capsys, tmp_path):
        csv_path = tmp_path / "spine.csv"
        code, out = run_cli(
            capsys,
            "spine",
            "preset:bm_drift",
            "--rmin",
            "0.1",
            "--rmax",
            "10",
            "--n",
            "200",
            "--out",
            str(csv_path),
        )
        assert code == 0
        doc = json.loads(out)
        lo, hi = doc["z_intervals"][0]
        assert lo == pytest.approx(1.0, abs=1e-6)
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "r,theta,re_zeta,im_zeta,lambda,in_Z"
        assert len(lines) == 201
        for line in lines[1:]:
            r, theta, re_z, im_z, lam, in_z = line.split(",")
            if float(r) > 1.0 + 1e-6 and in_z == "1":
                assert abs(float(im_z) - 1.0) < 1e-6

    def test_factor_oracle(self, capsys):
        code, out = run_cli(
            capsys,
            "factor",
            "preset:bm_drift",
            "--method",
            "bd",
            "--side",
            "plus",
            "--xi1",
            "1",
            "--xi2",
            "2",
            "--tau",
            "1",
        )
        assert code == 0
        want = math.sqrt(3.0) / (1.0 + math.sqrt(3.0))
        assert json.loads(out)["value"] == pytest.approx(want, rel=1e-8)

    def test_fluct_pr(self, capsys, tmp_path):
        spec = tmp_path / "bm.json"
        spec.write_text('{"type": "levy_atomic", "a": 0.5}')
        code, out = run_cli(
            capsys, "fluct", str(spec), "pr", "--sigma", "0.5", "--tau", "0", "--xi", "1"
        )
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(0.5, rel=1e-8)

    def test_fluct_kappa_ratio_both_directions(self, capsys, tmp_path):
        spec = tmp_path / "bm.json"
        spec.write_text('{"type": "levy_atomic", "a": 0.5}')
        code, out = run_cli(
            capsys, "fluct", str(spec), "kappa-ratio",
            "--tau", "1", "--xi1", "1", "--xi2", "2",
        )
        assert code == 0
        want = (1.0 + math.sqrt(2.0)) / (2.0 + math.sqrt(2.0))
        assert json.loads(out)["value"] == pytest.approx(want, rel=1e-8)
        code, out = run_cli(
            capsys, "fluct", str(spec), "kappa-ratio",
            "--xi", "0", "--tau1", "2", "--tau2", "1",
        )
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(math.sqrt(2.0), rel=1e-8)

    def test_mc_deterministic_artifact(self, capsys, tmp_path):
        args = (
            "mc",
            "preset:bm_drift",
            "--sigma",
            "0.5",
            "--n",
            "5000",
            "--seed",
            "5",
            "--laplace",
            "1.0",
        )
        code1, out1 = run_cli(capsys, *args)
        code2, out2 = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2  # byte-identical artifacts

    def test_mc_dump(self, capsys, tmp_path):
        dump = tmp_path / "samples.csv"
        code, _ = run_cli(
            capsys,
            "mc",
            "preset:bm_drift",
            "--sigma",
            "0.5",
            "--n",
            "100",
            "--seed",
            "1",
            "--dump",
            str(dump),
        )
        assert code == 0
        lines = dump.read_text().splitlines()
        assert lines[0] == "sup_value,argmax_time,horizon,killed"
        assert len(lines) == 101

    def test_verify_core_passes(self, capsys):
        code, out = run_cli(capsys, "verify", "preset:bm_drift", "--suite", "core")
        assert code == 0
        doc = json.loads(out)
        assert doc["n_failures"] == 0
        assert doc["suite"] == "core"

    def test_verify_reports_failures(self, capsys, tmp_path):
        # a valid spec checked against an absurd tolerance still writes a report
        code, out = run_cli(
            capsys, "verify", "preset:bm_drift", "--suite", "core", "--tol", "1e-30"
        )
        doc = json.loads(out)
        assert code in (0, 1)
        assert doc["n_checks"] > 0

    def test_unknown_preset(self, capsys):
        code, out = run_cli(capsys, "eval", "preset:nope", "--xi", "1,0")
        assert code == 2
        assert json.loads(out)["field"] == "preset"
