"""End-to-end tests for the command-line interface."""

import json

import pytest

from hypgas.cli import (
    EXIT_FAILED,
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_PARSE,
    ParseError,
    load_potential,
    main,
)
from hypgas.scattering import HARDCORE, PIECEWISE


@pytest.fixture
def hardcore_file(tmp_path):
    path = tmp_path / "hc.json"
    path.write_text(json.dumps({"kind": "hardcore", "r0": 0.5, "pieces": []}))
    return str(path)


@pytest.fixture
def piecewise_file(tmp_path):
    path = tmp_path / "pw.json"
    path.write_text(json.dumps({"kind": "piecewise", "r0": 1.0, "pieces": [[1.0, 4.0]]}))
    return str(path)


@pytest.fixture
def golden_file(tmp_path):
    path = tmp_path / "golden.json"
    path.write_text(json.dumps({"kind": "hardcore", "r0": 0.01, "pieces": []}))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestLoadPotential:
    def test_hardcore(self, hardcore_file):
        V = load_potential(hardcore_file)
        assert V.kind == HARDCORE
        assert V.r0 == 0.5

    def test_piecewise(self, piecewise_file):
        V = load_potential(piecewise_file)
        assert V.kind == PIECEWISE
        assert V.pieces == ((1.0, 4.0),)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_potential(str(tmp_path / "nope.json"))

    def test_malformed(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"kind": "gaussian", "r0": 1.0}')
        with pytest.raises(ParseError):
            load_potential(str(path))


class TestScatter:
    def test_hardcore_round_trip(self, hardcore_file, capsys):
        code, out, _ = run(["scatter", "--potential", hardcore_file, "--d", "2"], capsys)
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["derived"]["a"] == pytest.approx(0.5, abs=1e-8)
        assert doc["derived"]["c_d"] == 1.0
        assert doc["inputs"]["R"] == pytest.approx(1.5)
        prof = doc["derived"]["profile"]
        assert len(prof["grid"]) == len(prof["values"])
        assert prof["values"][-1] == 1.0

    def test_byte_identical_reruns(self, piecewise_file, capsys):
        argv = ["scatter", "--potential", piecewise_file, "--d", "3"]
        _, first, _ = run(argv, capsys)
        _, second, _ = run(argv, capsys)
        assert first == second

    def test_out_file(self, hardcore_file, tmp_path, capsys):
        dest = tmp_path / "report.json"
        code, out, _ = run(
            ["scatter", "--potential", hardcore_file, "--out", str(dest)], capsys
        )
        assert code == EXIT_OK
        assert out == ""
        assert json.loads(dest.read_text())["derived"]["a"] == pytest.approx(0.5, abs=1e-8)


class TestBound:
    def test_dilute_report(self, hardcore_file, capsys):
        code, out, _ = run(
            ["bound", "--potential", hardcore_file, "--d", "2", "--rho", "1e-4",
             "--gap", "0.25"],
            capsys,
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["derived"]["Y"] > 0
        assert doc["derived"]["energy_upper_per_particle"] is not None
        assert 0 < doc["derived"]["fraction_lower"] <= 1
        assert doc["warnings"] == []

    def test_dense_regime_warns_without_failing(self, hardcore_file, capsys):
        code, out, _ = run(
            ["bound", "--potential", hardcore_file, "--d", "2", "--rho", "10"], capsys
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["derived"]["energy_upper_per_particle"] is None
        assert any("cap" in w for w in doc["warnings"])


class TestCertify:
    def test_golden_case_certifies(self, golden_file, capsys):
        code, out, _ = run(
            ["certify", "--potential", golden_file, "--model", "modular", "--L", "50",
             "--N", "100", "--eps", "0.1"],
            capsys,
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["certified"] is True
        assert doc["fraction_lower"] >= 0.9

    def test_crowded_case_exits_one(self, golden_file, capsys):
        code, out, _ = run(
            ["certify", "--potential", golden_file, "--model", "modular", "--L", "50",
             "--N", "100000", "--eps", "0.1"],
            capsys,
        )
        assert code == EXIT_FAILED
        assert json.loads(out)["certified"] is False

    def test_missing_model_flag_is_parse_error(self, golden_file, capsys):
        code, _, err = run(
            ["certify", "--potential", golden_file, "--model", "modular", "--N", "10"],
            capsys,
        )
        assert code == EXIT_PARSE
        assert "requires --L" in err

    def test_custom_model(self, golden_file, capsys):
        code, out, _ = run(
            ["certify", "--potential", golden_file, "--model", "custom",
             "--volume", "5000", "--gap", "0.238", "--N", "10"],
            capsys,
        )
        assert code == EXIT_OK
        assert json.loads(out)["gap"] == 0.238


class TestSweep:
    def test_single_axis_csv_rows(self, hardcore_file, capsys):
        code, out, _ = run(
            ["sweep", "--potential", hardcore_file, "--d", "2", "--gap", "0.25",
             "--axis", "rho:1e-5:1e-3:5:log", "--format", "csv"],
            capsys,
        )
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert len(lines) == 6  # header + 5 rows
        assert lines[0].startswith("rho,")

    def test_two_axes_lexicographic(self, hardcore_file, capsys):
        code, out, _ = run(
            ["sweep", "--potential", hardcore_file, "--gap", "0.25",
             "--axis", "rho:1e-4:1e-3:2:linear", "--axis", "mu:1:2:3:linear"],
            capsys,
        )
        assert code == EXIT_OK
        rows = json.loads(out)["rows"]
        assert len(rows) == 6
        rhos = [r["rho"] for r in rows]
        mus = [r["mu"] for r in rows]
        assert rhos == sorted(rhos)  # first axis outermost
        assert mus[:3] == [1.0, 1.5, 2.0]

    def test_duplicate_axis_rejected(self, hardcore_file, capsys):
        code, _, err = run(
            ["sweep", "--potential", hardcore_file,
             "--axis", "rho:1:2:2:linear", "--axis", "rho:1:2:2:linear"],
            capsys,
        )
        assert code == EXIT_PARSE
        assert "distinct" in err

    def test_bad_axis_spec(self, hardcore_file, capsys):
        code, _, _ = run(
            ["sweep", "--potential", hardcore_file, "--axis", "rho:1:2:linear"], capsys
        )
        assert code == EXIT_PARSE


class TestVerify:
    def test_verify_passes(self, capsys):
        code, out, _ = run(["verify"], capsys)
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["passed"] is True
        assert doc["inequalities"]["n_cases"] == 18
        assert doc["inequalities"]["min_i_slack"] > 0
        assert all(chk["passed"] for chk in doc["energy_oracle"])


class TestExitCodes:
    def test_unknown_flag(self, capsys):
        assert main(["scatter", "--bogus"]) == EXIT_PARSE
        capsys.readouterr()

    def test_numeric_failure(self, tmp_path, capsys):
        path = tmp_path / "neg.json"
        path.write_text(json.dumps({"kind": "hardcore", "r0": -1.0, "pieces": []}))
        code, _, err = run(["scatter", "--potential", str(path)], capsys)
        assert code == EXIT_PARSE or code == EXIT_NUMERIC
