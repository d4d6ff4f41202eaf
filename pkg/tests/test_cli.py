import io
import json
import subprocess
import sys

import pytest

from billiard_caustics.cli import RunConfig, ConfigError, main, parse_config


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestConfig:
    def test_defaults(self):
        cfg = parse_config(["caustic", "--source", "0.1,0.2", "--n", "1"])
        assert cfg.samples == 4096 and cfg.tol == 1e-6 and cfg.b == cfg.a == 1.0

    def test_bad_table(self):
        with pytest.raises(ConfigError):
            RunConfig(command="caustic", a=1.0, b=2.0)

    def test_bad_viewport(self):
        with pytest.raises(ConfigError):
            RunConfig(command="caustic", viewport=(1, 0, 0, 1))


class TestExitCodes:
    def test_missing_source(self):
        code, _, err = run("caustic", "--n", "1")
        assert code == 2
        assert err.startswith("error=ConfigError exit=2 reason=")
        assert err.count("\n") == 1

    def test_unparseable_flag(self):
        assert run("caustic", "--source", "1,2,3", "--n", "1")[0] == 2

    def test_focus(self):
        code, _, err = run("caustic", "--a", "2", "--b", "1", "--source", "1.7320508075688772,0", "--n", "1")
        assert code == 3 and "DegenerateSource" in err

    def test_complexity_zero(self):
        assert run("complexity", "--a", "2", "--b", "1", "--source", "0.8,0.3", "--n", "0")[0] == 2

    def test_failed_claim(self):
        # an absurdly tight match tolerance makes the claim fail, not the run
        code, out, _ = run("verify", "ellipse", "--a", "2", "--b", "1", "--source", "0.8,0.3", "--n", "2",
                           "--match-tol", "1e-30")
        assert code == 1 and json.loads(out)["passed"] is False


class TestCaustic:
    def test_svg_markers(self, tmp_path):
        svg = tmp_path / "out.svg"
        code, _, _ = run("caustic", "--source", "0.4,0", "--n", "1", "--svg", str(svg))
        assert code == 0
        assert svg.read_text().count('class="cusp"') == 4

    def test_ellipse_predictions_tagged(self):
        code, out, _ = run("caustic", "--a", "2", "--b", "1", "--source", "0.8,0.3", "--n", "2")
        doc = json.loads(out)
        assert code == 0
        assert sum(1 for k in doc["cusps"] if k["predicted"]) == 4
        assert set(doc["cusps"][0]) == {"s", "x", "y", "order", "lambda", "predicted", "match_distance"}

    def test_csv_columns(self, tmp_path):
        csv = tmp_path / "c.csv"
        run("caustic", "--source", "0.4,0", "--n", "1", "--csv", str(csv), "--json", str(tmp_path / "c.json"))
        lines = csv.read_text().splitlines()
        assert lines[0].startswith("# config ")
        assert lines[1] == "s,alpha,p,x,y,H,at_infinity"
        assert len(lines) == 2 + 4096

    def test_seventeen_digits(self, tmp_path):
        csv = tmp_path / "c.csv"
        run("caustic", "--source", "0.4,0", "--n", "1", "--csv", str(csv), "--json", str(tmp_path / "c.json"))
        row = csv.read_text().splitlines()[10].split(",")
        assert len(row[1].replace(".", "").replace("-", "").lstrip("0").split("e")[0]) <= 17

    def test_degrees(self):
        _, out, _ = run("caustic", "--source", "0.4,0", "--n", "1", "--degrees")
        s = sorted(k["s"] for k in json.loads(out)["cusps"])
        assert s[-1] == pytest.approx(270.0)

    def test_external_source(self):
        code, out, _ = run("caustic", "--source", "2,0", "--n", "1")
        assert code == 0 and len(json.loads(out)["cusps"]) == 2

    def test_deterministic(self, tmp_path):
        outputs = []
        for k in range(2):
            d = tmp_path / str(k)
            d.mkdir()
            run("caustic", "--a", "2", "--b", "1", "--source", "0.8,0.3", "--n", "3", "--csv", str(d / "c.csv"),
                "--json", str(d / "c.json"), "--svg", str(d / "c.svg"))
            outputs.append([(d / f).read_bytes() for f in ("c.csv", "c.json", "c.svg")])
        assert outputs[0] == outputs[1]


class TestVerify:
    def test_circle(self):
        code, out, _ = run("verify", "circle", "--source", "0.4,0", "--n-max", "8")
        assert code == 0 and json.loads(out)["passed"]

    def test_axis(self):
        assert run("verify", "axis", "--a", "2", "--b", "1", "--x0", "0.2", "--n-max", "6")[0] == 0

    def test_refraction(self):
        code, out, _ = run("verify", "refraction", "--mu", "2")
        claims = json.loads(out)["claims"]
        assert code == 0
        assert claims[0]["radii"] == pytest.approx([0.5] * 4, abs=1e-5)

    def test_external(self):
        assert run("verify", "external", "--a", "2", "--b", "1", "--source", "3,0.5", "--n", "1")[0] == 0

    def test_circle_needs_circle(self):
        assert run("verify", "circle", "--a", "2", "--b", "1", "--source", "0.4,0")[0] == 2


class TestComplexity:
    def test_three_rows(self):
        code, out, _ = run("complexity", "--a", "2", "--b", "1", "--source", "0.8,0.3", "--n", "2,5,8")
        rows = out.splitlines()[2:]
        assert code == 0 and len(rows) == 3
        assert [r.split(",")[0] for r in rows] == ["2", "5", "8"]

    def test_circle_constant_cusps(self):
        _, out, _ = run("complexity", "--source", "0.4,0", "--n-max", "8")
        assert {r.split(",")[2] for r in out.splitlines()[2:]} == {"4"}


def test_axis_command():
    code, out, _ = run("axis", "--a", "2", "--b", "1", "--x0", "0.2", "--n-max", "3", "--json", "-")
    assert code == 0
    assert out.splitlines()[1] == "n,forward,backward"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "billiard_caustics", "caustic", "--n", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
