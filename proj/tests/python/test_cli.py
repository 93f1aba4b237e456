import filecmp
import subprocess
from pathlib import Path

GOLDEN = Path(__file__).resolve().parents[1] / "golden" / "fixture"


def run(cli, *args):
    return subprocess.run([cli, *map(str, args)], capture_output=True, text=True)


def test_report_matches_golden_twice(cli, data_dir, tmp_path):
    for out in (tmp_path / "a", tmp_path / "b"):
        r = run(cli, "report", "--config", data_dir / "fixture" / "config.json", "--out", out)
        assert r.returncode == 0, r.stderr
        files = r.stdout.split()
        assert len(files) == 16
        for name in files:
            assert filecmp.cmp(out / name, GOLDEN / name, shallow=False), name


def test_validate_and_version(cli, data_dir):
    r = run(cli, "validate", "--config", data_dir / "fixture" / "config.json")
    assert r.returncode == 0, r.stderr
    assert r.stdout.startswith("config ok")
    assert run(cli, "--version").stdout.strip() == "0.1.0"


def test_inspect(cli, data_dir):
    r = run(cli, "inspect", "p3", "--config", data_dir / "precomputed" / "config.json")
    assert r.returncode == 0, r.stderr
    assert "-0.545455 (-6/11)" in r.stdout
    assert "stance:         anti" in r.stdout


def test_config_errors_exit_2(cli, data_dir, tmp_path):
    assert run(cli, "score", "--corpus", tmp_path / "missing.jsonl", "--out", tmp_path).returncode == 2
    assert run(cli, "score", "--config", data_dir / "fixture" / "config.json", "--tau", "1.5",
               "--out", tmp_path).returncode == 2
    assert run(cli, "score", "--config", data_dir / "fixture" / "config.json", "--from", "2021-05",
               "--to", "2021-01", "--out", tmp_path).returncode == 2
    assert run(cli, "score", "--config", tmp_path / "nope.json").returncode == 2
    assert run(cli, "frobnicate").returncode == 2


def test_ingest_errors_exit_3(cli, data_dir, tmp_path):
    junk = tmp_path / "junk.jsonl"
    junk.write_text("not json\n")
    assert run(cli, "score", "--corpus", junk, "--out", tmp_path / "o").returncode == 3
    r = run(cli, "score", "--config", data_dir / "fixture" / "config.json", "--country", "ZZ",
            "--out", tmp_path / "o")
    assert r.returncode == 3
    assert "ingest" in r.stderr


def test_classify_errors_exit_4(cli, data_dir, tmp_path):
    preds = tmp_path / "preds.csv"
    preds.write_text("id,labels\nsomeone-else,Sad\n")
    r = run(cli, "score", "--config", data_dir / "fixture" / "config.json", "--backend", "precomputed",
            "--backend-path", preds, "--out", tmp_path / "o")
    assert r.returncode == 4
    empty_model = tmp_path / "model"
    empty_model.mkdir()
    r = run(cli, "score", "--config", data_dir / "fixture" / "config.json", "--backend", "exported-model",
            "--backend-path", empty_model, "--out", tmp_path / "o")
    assert r.returncode == 4


def test_output_errors_exit_5(cli, data_dir, tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    r = run(cli, "score", "--config", data_dir / "fixture" / "config.json", "--out", blocker / "out")
    assert r.returncode == 5


def test_exported_model_backend(cli, data_dir, tmp_path):
    r = run(cli, "score", "--config", data_dir / "fixture" / "config.json", "--backend", "exported-model",
            "--backend-path", data_dir / "tiny_model", "--out", tmp_path)
    import vaxsent
    if vaxsent.exported_model_supported():
        assert r.returncode == 0, r.stderr
        assert (tmp_path / "predictions.csv").read_text().count("\n") == 201
    else:
        assert r.returncode == 4
