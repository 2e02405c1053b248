import json
import math

import pytest

from trinomax.cli import main

PI_HALF = "1.5707963267948966"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestAnalyze:
    def test_extremal_function_json(self, capsys):
        code, out = run(
            capsys, "analyze", "-l", "-1", "0", "1", "-r", "1", "2", "1",
            "-p", "0", PI_HALF, "0", "--json",
        )
        assert code == 0
        body = json.loads(out)
        assert body["schemaVersion"] == 1
        assert body["command"] == "analyze"
        res = body["results"]
        assert res["spectrum"]["tau"] == pytest.approx(math.pi)
        points = res["max"]["points"]
        assert len(points) == 2
        assert points[0]["x"] == pytest.approx(0.0)
        assert points[1]["x"] == pytest.approx(math.pi)
        assert points[0]["value"] == pytest.approx(2 * math.sqrt(2))

    def test_aligned_phases(self, capsys):
        code, out = run(
            capsys, "analyze", "-l", "2", "5", "11", "-r", "1", "1", "1", "--json"
        )
        assert code == 0
        body = json.loads(out)
        assert body["results"]["spectrum"]["tau"] == pytest.approx(0.0)
        assert len(body["results"]["max"]["points"]) == 1

    def test_verify_flag_agrees(self, capsys):
        code, out = run(
            capsys, "analyze", "-l", "-2", "0", "1", "-r", "4", "1", "1",
            "-p", "0", "1.0471975511965976", "0", "--json", "--verify",
        )
        assert code == 0
        body = json.loads(out)
        assert body["results"]["oracle"]["agreement"] is True

    def test_degrees_flag(self, capsys):
        code, out = run(
            capsys, "analyze", "-l", "-1", "0", "1", "-r", "1", "2", "1",
            "-p", "0", "90", "0", "--degrees", "--json",
        )
        assert code == 0
        body = json.loads(out)
        assert body["results"]["spectrum"]["tau"] == pytest.approx(math.pi)

    def test_csv_output(self, capsys):
        code, out = run(
            capsys, "analyze", "-l", "-1", "0", "1", "-r", "1", "2", "1",
            "-p", "0", PI_HALF, "0", "--csv",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "x,value,multiplicity,classification"
        assert len(lines) == 3

    def test_json_round_trip_is_byte_identical(self, capsys):
        args = ("analyze", "-l", "-3", "1", "4", "-r", "0.5", "2", "1.5",
                "-p", "0.3", "1.1", "2.9", "--json")
        _, first = run(capsys, *args)
        echo = json.loads(first)["input"]
        rebuilt = (
            "analyze",
            "-l", *(str(v) for v in echo["frequencies"]),
            "-r", *(repr(v) for v in echo["moduli"]),
            "-p", *(repr(v) for v in echo["phases"]),
            "--json",
        )
        _, second = run(capsys, *rebuilt)
        assert json.loads(first)["results"] == json.loads(second)["results"]

    def test_invalid_spectrum_exits_2(self, capsys):
        code = main(["analyze", "-l", "1", "1", "2", "-r", "1", "1", "1"])
        capsys.readouterr()
        assert code == 2

    def test_invalid_spectrum_json_error_body(self, capsys):
        code, out = run(
            capsys, "analyze", "-l", "1", "1", "2", "-r", "1", "1", "1", "--json"
        )
        assert code == 2
        assert "error" in json.loads(out)


class TestSidon:
    def test_symmetric_spectrum(self, capsys):
        code, out = run(capsys, "sidon", "-l", "-1", "0", "1", "--json")
        assert code == 0
        body = json.loads(out)
        assert body["results"]["constant"] == pytest.approx(math.sqrt(2), rel=1e-15)
        assert body["results"]["witness"]["moduli"] == [1.0, 2.0, 1.0]

    def test_human_output(self, capsys):
        code, out = run(capsys, "sidon", "-l", "-1", "0", "1")
        assert code == 0
        assert "1.41421356" in out


class TestMultiplier:
    def test_quarter_turn(self, capsys):
        code, out = run(
            capsys, "multiplier", "-l", "-1", "0", "1", "-p", "0", PI_HALF, "0", "--json"
        )
        assert code == 0
        body = json.loads(out)
        res = body["results"]
        assert res["norm"] == pytest.approx(math.sqrt(2), rel=1e-14)
        assert res["measureLift"]["atom0"]["abs"] == pytest.approx(1 / math.sqrt(2))
        assert res["measureLift"]["atom1"]["abs"] == pytest.approx(1 / math.sqrt(2))
        assert res["measureLift"]["totalVariation"] == pytest.approx(math.sqrt(2))


class TestSweep:
    def test_csv_header_and_monotone_rows(self, capsys):
        code, out = run(capsys, "sweep", "-l", "-1", "0", "2", "-r", "1", "1", "1", "--n", "16")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "tau,t,fstar,ratio,bound"
        assert len(lines) == 17
        values = [float(line.split(",")[2]) for line in lines[1:]]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_json_mode(self, capsys):
        code, out = run(
            capsys, "sweep", "-l", "-1", "0", "2", "-r", "1", "1", "1",
            "--n", "8", "--json",
        )
        assert code == 0
        rows = json.loads(out)["results"]["rows"]
        assert len(rows) == 8
        assert rows[0]["tau"] == 0.0


class TestHypotrochoid:
    def test_csv_points(self, capsys):
        code, out = run(
            capsys, "hypotrochoid", "-l", "-2", "0", "1", "-r", "4", "1", "1", "--n", "32"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "x,re,im"
        assert len(lines) == 33

    def test_json_includes_cusps_and_farthest(self, capsys):
        code, out = run(
            capsys, "hypotrochoid", "-l", "-2", "0", "1",
            "-r", "0.3333333333333333", "1", "0.6666666666666666",
            "--n", "32", "--json",
        )
        assert code == 0
        body = json.loads(out)["results"]
        assert body["cuspCount"] == 3
        assert len(body["samples"]) == 32
        assert len(body["farthest"]) in (1, 2)


class TestVerify:
    def test_small_run_passes(self, capsys):
        code, out = run(capsys, "verify", "--seed", "7", "--count", "60", "--json")
        assert code == 0
        body = json.loads(out)
        assert body["seed"] == 7
        assert body["results"]["failures"] == 0

    def test_human_table(self, capsys):
        code, out = run(capsys, "verify", "--seed", "7", "--count", "50")
        assert code == 0
        assert "total failures: 0" in out
