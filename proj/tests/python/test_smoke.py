import filecmp
import json
from pathlib import Path

import pytest

import vaxsent


def test_version_and_labels():
    assert vaxsent.__version__ == "0.1.0"
    assert vaxsent.label_names()[8] == "OfficialReport"
    assert len(vaxsent.label_names()) == 11


def test_normalize_and_tokenize():
    assert vaxsent.normalize("omg the covid19vax \U0001F60A") == "oh my god the covid 19 vaccine smile"
    assert vaxsent.tokenize("RT @user check https://t.co/x tbh") == ["retweet", "check", "to", "be", "honest"]
    assert vaxsent.normalize("") == ""


def test_scores():
    assert vaxsent.weight_sum(["Annoyed", "Denial"]) == -6
    assert vaxsent.vaccine_score(["Annoyed", "Denial"]) == pytest.approx(-6 / 11)
    assert vaxsent.stance(vaxsent.vaccine_score(["Annoyed", "Denial"])) == "anti"
    assert vaxsent.stance(0.0) == "neutral"
    assert vaxsent.polarity_group(-0.2) == "negative"
    assert vaxsent.polarity_group(0.2) == "neutral"
    assert vaxsent.threshold([0.5] + [0.0] * 9 + [0.7], tau=0.6) == ["Joking"]


def test_errors():
    with pytest.raises(vaxsent.VaxsentError):
        vaxsent.vaccine_score(["Grumpy"])
    with pytest.raises(vaxsent.VaxsentError):
        vaxsent.threshold([0.5] * 11, tau=1.0)
    with pytest.raises(vaxsent.StageError) as err:
        vaxsent.run("/nonexistent/config.json")
    assert err.value.stage == "config"
    assert err.value.exit_code == 2


def test_run_matches_golden(tmp_path, data_dir):
    files = vaxsent.run(data_dir / "fixture" / "config.json", "report", tmp_path)
    assert files[-1] == "manifest.json"
    golden = Path(__file__).resolve().parents[1] / "golden" / "fixture"
    for name in files:
        assert filecmp.cmp(tmp_path / name, golden / name, shallow=False), name
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["ingest"]["scored"] == 200


def test_inspect(data_dir):
    text = vaxsent.inspect(data_dir / "precomputed" / "config.json", "p1")
    assert "Anxious;Annoyed" in text
    assert "-0.272727 (-3/11)" in text
