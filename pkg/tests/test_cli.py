import json

import pytest

from artin_series import scenario as scenario_mod
from artin_series.cli import main
from artin_series.errors import NoSolution, ParseError
from artin_series.report import build_report, render_text, strip_timings, to_json_text
from artin_series.scenario import load_scenario, run_scenario

SMALL = """
seed = 4

[family]
stream = "example-ring"
window = [0, 1]

[family.chain]
generators = ["z0", "z1", "z2", "z3"]

[[task]]
kind = "flat"
seeds = 5
trunc = 3

[[task]]
kind = "non-noetherian"
t = 3

[[task]]
kind = "replace"
family = "qxq"
vars = ["X1"]
gens = ["e0*X1", "e1*X1"]

[[task]]
kind = "unmixed"
family = "qxq"
vars = ["X1", "X2"]
gens = ["X1^2", "X1*X2"]
expect = "NotHeightGenerated"
"""


def write(tmp_path, text, name="s.toml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestScenario:
    def test_runs(self):
        outcomes = run_scenario(load_scenario(SMALL))
        assert [o.verdict for o in outcomes] == ["pass"] * 4
        assert outcomes[3].certificate["raised"] == "NotHeightGenerated"

    def test_unknown_kind(self):
        with pytest.raises(ParseError):
            load_scenario('[[task]]\nkind = "bogus"\n')

    def test_unknown_family(self):
        with pytest.raises(ParseError):
            load_scenario('[[task]]\nkind = "flat"\nfamily = "nope"\n')

    def test_bad_toml(self):
        with pytest.raises(ParseError):
            load_scenario("seed = [")

    def test_ring_section(self):
        sc = load_scenario('[ring]\nvars = ["Y"]\nrelations = ["Y^2"]\n[[task]]\nkind = "survival"\n')
        (o,) = run_scenario(sc)
        assert o.verdict == "pass"

    def test_failure_names_its_tag(self):
        sc = load_scenario('[[task]]\nkind = "sft"\nideal = "1"\n')
        (o,) = run_scenario(sc)
        assert o.verdict == "fail" and o.reason.startswith("[non-sft-witness]")

    def test_expected_error_not_raised(self):
        sc = load_scenario('[[task]]\nkind = "replace"\nfamily = "qxq"\nvars = ["X1"]\ngens = ["X1"]\n'
                           'expect = "SearchExhausted"\n')
        (o,) = run_scenario(sc)
        assert o.verdict == "fail"


class TestReport:
    def test_json_shape(self):
        sc = load_scenario(SMALL)
        rep = build_report(sc.name, sc.seed, run_scenario(sc))
        data = json.loads(to_json_text(rep))
        assert data["schema"] == 1
        assert set(data["summary"]) == {"Dimension", "Flatness", "CM"}
        assert all("seconds" not in t for t in data["tasks"])
        assert "timings" in data and "timings" not in strip_timings(data)

    def test_deterministic(self):
        sc = load_scenario(SMALL)
        a = build_report(sc.name, sc.seed, run_scenario(sc))
        b = build_report(sc.name, sc.seed, run_scenario(load_scenario(SMALL)))
        assert to_json_text(strip_timings(a)) == to_json_text(strip_timings(b))

    def test_text_table(self):
        sc = load_scenario(SMALL)
        text = render_text(build_report(sc.name, sc.seed, run_scenario(sc)))
        assert "verified on instances" in text
        for row in ("Dimension", "Flatness", "CM"):
            assert row in text


class TestCli:
    def test_run_ok(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        assert main(["run", write(tmp_path, SMALL), "--out", str(out)]) == 0
        assert json.loads(out.read_text())["passed"]
        assert "all tasks passed" in capsys.readouterr().out

    def test_empty(self, tmp_path):
        assert main(["run", write(tmp_path, "")]) == 0

    def test_failure_exit(self, tmp_path):
        assert main(["run", write(tmp_path, '[[task]]\nkind = "sft"\nideal = "1"\n')]) == 1

    def test_parse_exit(self, tmp_path):
        assert main(["run", write(tmp_path, "x = [")]) == 2
        assert main(["run", str(tmp_path / "missing.toml")]) == 2

    def test_internal_exit(self, tmp_path, monkeypatch):
        def broken(tc):
            raise NoSolution("simulated")

        monkeypatch.setitem(scenario_mod.RUNNERS, "flat", broken)
        assert main(["run", write(tmp_path, '[[task]]\nkind = "flat"\n')]) == 3

    def test_seed_override(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        path = write(tmp_path, SMALL)
        main(["run", path, "--seed", "1", "--out", str(a)])
        main(["run", path, "--seed", "2", "--out", str(b)])
        ja, jb = json.loads(a.read_text()), json.loads(b.read_text())
        assert ja["seed"] == 1 and jb["seed"] == 2
        assert ja["tasks"][0] != jb["tasks"][0]

    def test_trunc_override(self, tmp_path):
        out = tmp_path / "r.json"
        main(["run", write(tmp_path, '[[task]]\nkind = "wb"\nsamples = 3\n'), "--trunc", "3", "--out", str(out)])
        assert json.loads(out.read_text())["tasks"][0]["certificate"]["trunc"] == 3

    def test_list(self, capsys):
        assert main(["list"]) == 0
        out = capsys.readouterr().out
        for name in ("example-ring", "quadratic-tower", "paper-suite"):
            assert name in out

    def test_example_sft(self, capsys):
        assert main(["example", "sft", "--k-max", "3", "--ideal", "z0,z1"]) == 0
        assert "6*z2*z3*z4" in capsys.readouterr().out

    def test_example_sft_unit(self):
        assert main(["example", "sft", "--ideal", "1"]) == 1

    def test_example_wb(self, capsys):
        assert main(["example", "wb", "--trunc", "4", "--samples", "5"]) == 0
        assert json.loads(capsys.readouterr().out)["annihilator_equals_P[[X]]"]
