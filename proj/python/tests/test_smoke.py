import json
import os
import pathlib

import pytest

import microwrap as mw

SCENARIOS = pathlib.Path(__file__).resolve().parents[2] / "scenarios"

LINE = {
    "space": {"kind": "line", "vertices": ["0", "1"]},
    "stops": [{"at": "0", "codirection": "-"}, {"at": "1", "codirection": "+"}],
    "objects": [
        {"name": "U", "generators": [{"interval": "(1/3,2/3)"}]},
        {"name": "V", "generators": [{"interval": "[1/4,1/2]"}]},
    ],
    "queries": [{"op": "homw", "source": "U", "target": "U"}],
}


@pytest.fixture
def line():
    return mw.Scenario.from_json(LINE)


def test_version_and_conventions():
    assert mw.__version__.count(".") == 2
    assert len(mw.conventions_hash()) == 16
    assert mw.conventions()


def test_wrap_reaches_the_stops(line):
    r = line.wrap_plus("U", trace=True)
    assert r["result"] == "(0,1)"
    assert r["trace"]["events"]["rest"] == 2


def test_closed_interval_crosses(line):
    r = line.wrap_plus("V", trace=True)
    assert r["trace"]["events"]["crossing"] == 1
    assert r["result"].startswith("(0,1)")


def test_hom_and_comparison_agree(line):
    for src in line.objects:
        for tgt in line.objects:
            expected = line.comparison(src, tgt)["profile"]
            assert line.hom_wrapped(src, tgt)["profile"] == expected


def test_self_hom_of_the_open_interval(line):
    assert line.hom_wrapped("U", "U")["profile"] == {"0": {"free": 1, "torsion": []}}


def test_equivalence_and_stops(line):
    assert line.verify_equivalence()["agree"]
    assert line.corepresentability(1, "+")["agree"]
    with pytest.raises(mw.MicrowrapError):
        line.corepresentability("1/2", "+")


def test_report_matches_files():
    for path in sorted(SCENARIOS.glob("*.json")):
        report = mw.Scenario.load(path).run(check=True)
        assert report["summary"]["errors"] == 0, path
        assert report["summary"]["agree"], path


def test_round_trip(line):
    again = mw.Scenario.from_json(line.to_json())
    assert again == line
    assert json.loads(line.to_json())["objects"][0]["name"] == "U"


def test_run_scenario_text():
    report = mw.run_scenario(json.dumps(LINE))
    assert report["summary"] == {"queries": 1, "errors": 0, "agree": True}


def test_errors():
    with pytest.raises(mw.ScenarioError, match="line 1"):
        mw.Scenario.from_json('{"space": ')
    bad = dict(LINE, stops=[{"at": "1/3", "codirection": "+"}])
    with pytest.raises(mw.ScenarioError, match="not a vertex"):
        mw.Scenario.from_json(bad)
    with pytest.raises(mw.ScenarioError):
        mw.parse_interval("(1,0)")
    assert issubclass(mw.ScenarioError, mw.MicrowrapError)


def test_parse_interval():
    assert mw.parse_interval("[0,+inf)") == "[0,+inf)"
    assert mw.parse_interval("(2/4,1]") == "(1/2,1]"


def test_imports_the_intended_build():
    staged = os.environ.get("MICROWRAP_STAGED")
    if staged:
        assert pathlib.Path(mw._core.__file__).resolve().parent == pathlib.Path(staged, "microwrap").resolve()
