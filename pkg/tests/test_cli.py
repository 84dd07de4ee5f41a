"""Tests for the command-line entrypoint: exit codes and the JSON status line."""

import json

import pytest

from kgc_study_kit.cli import run
from kgc_study_kit.output_json import load_json
from kgc_study_kit.pipeline import grade_study, score_study
from kgc_study_kit.study import load_study


def status(capsys) -> dict:
    lines = capsys.readouterr().out.strip().splitlines()
    return json.loads(lines[-1])


@pytest.fixture(autouse=True)
def _no_gcs(monkeypatch):
    monkeypatch.delenv("KGC_GCS_BUCKET", raising=False)


def test_synth_then_full_pipeline(tmp_path, capsys):
    study = tmp_path / "study"
    assert run(["synth", "--groups", "2", "--n", "5", "--effect", "tlx=1.5", "--seed", "3", "--out", str(study)]) == 0
    assert status(capsys)["studyId"] == "synthetic-3"

    assert run(["validate", str(study)]) == 0
    assert status(capsys)["warnings"] == []

    assert run(["grade", str(study), "--out", str(tmp_path / "grades.json")]) == 0
    assert run(["score", str(study), "--out", str(tmp_path / "scores.json")]) == 0
    capsys.readouterr()
    ds = load_study(study)
    assert load_json(tmp_path / "grades.json") == json.loads(json.dumps(grade_study(ds)))
    assert load_json(tmp_path / "scores.json") == json.loads(json.dumps(score_study(ds)))

    code = run([
        "analyze", str(study),
        "--out", str(tmp_path / "report.json"),
        "--md", str(tmp_path / "report.md"),
        "--csv", str(tmp_path / "report.csv"),
    ])
    assert code == 0
    outputs = status(capsys)["outputs"]
    assert [o["path"] for o in outputs] == [
        str((tmp_path / name).resolve()) for name in ("report.json", "report.md", "report.csv")
    ]
    assert all(o["digest"].startswith("sha256:") for o in outputs)


def test_analyze_from_documents_matches_study(tmp_path, capsys):
    study = tmp_path / "study"
    run(["synth", "--n", "4", "--seed", "1", "--out", str(study)])
    run(["grade", str(study), "--out", str(tmp_path / "grades.json")])
    run(["score", str(study), "--out", str(tmp_path / "scores.json")])
    run(["analyze", str(study), "--out", str(tmp_path / "a.json")])
    code = run([
        "analyze",
        "--grades", str(tmp_path / "grades.json"),
        "--scores", str(tmp_path / "scores.json"),
        "--out", str(tmp_path / "b.json"),
    ])
    assert code == 0
    capsys.readouterr()
    assert (tmp_path / "a.json").read_text(encoding="utf-8") == (tmp_path / "b.json").read_text(encoding="utf-8")


def test_fixtures_command(tmp_path, capsys):
    assert run(["fixtures", str(tmp_path / "bundle")]) == 0
    assert status(capsys)["tasks"] == ["T1", "T2", "T3", "T4", "T5"]
    assert (tmp_path / "bundle" / "fixtures.json").exists()


def test_validation_failure_exits_1(minimal_study_dir, capsys):
    (minimal_study_dir / "study.json").write_text("{}", encoding="utf-8")
    assert run(["validate", str(minimal_study_dir)]) == 1
    out = status(capsys)
    assert out["status"] == "failed"
    assert out["error"] == "SchemaError"


def test_strict_anonymity_exits_1(minimal_study_dir, capsys):
    path = minimal_study_dir / "responses.csv"
    path.write_text(path.read_text(encoding="utf-8").replace("\nP01,", "\njane.doe@uni.edu,"), encoding="utf-8")
    assert run(["validate", str(minimal_study_dir)]) == 0
    assert status(capsys)["warnings"][0]["kind"] == "email"
    assert run(["validate", str(minimal_study_dir), "--strict"]) == 1
    assert status(capsys)["error"] == "AnonymityViolation"


@pytest.mark.parametrize("argv", [
    ["synth", "--groups", "x", "--out", "s"],
    ["grade", "study"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_1(argv, capsys):
    assert run(argv) == 1
    out = status(capsys)
    assert out["status"] == "failed"
    assert out["error"] == "ConfigError"


def test_bad_effect_exits_1(tmp_path, capsys):
    assert run(["synth", "--effect", "tlx=99", "--out", str(tmp_path / "s")]) == 1
    assert status(capsys)["error"] == "InvalidEffectSize"


def test_bad_config_exits_1(minimal_study_dir, tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"alpha": 2}), encoding="utf-8")
    assert run(["analyze", str(minimal_study_dir), "--config", str(cfg), "--out", str(tmp_path / "r.json")]) == 1
    assert status(capsys)["error"] == "ConfigError"


def test_analyze_needs_one_input_kind(minimal_study_dir, tmp_path, capsys):
    assert run(["analyze", "--grades", "g.json", "--out", str(tmp_path / "r.json")]) == 1
    assert status(capsys)["error"] == "ConfigError"
    assert run(["analyze", "--out", str(tmp_path / "r.json")]) == 1


def test_empty_study_exits_2(synth_dataset, tmp_path, capsys):
    grades = {**grade_study(synth_dataset), "grades": [], "global": []}
    scores = {**score_study(synth_dataset), "participants": []}
    (tmp_path / "g.json").write_text(json.dumps(grades), encoding="utf-8")
    (tmp_path / "s.json").write_text(json.dumps(scores), encoding="utf-8")
    code = run([
        "analyze", "--grades", str(tmp_path / "g.json"), "--scores", str(tmp_path / "s.json"),
        "--out", str(tmp_path / "r.json"),
    ])
    assert code == 2
    assert status(capsys)["error"] == "EmptyInput"


def test_missing_study_exits_3(tmp_path, capsys):
    assert run(["grade", str(tmp_path / "nowhere"), "--out", str(tmp_path / "g.json")]) == 3
    assert status(capsys)["error"] == "StudyIOError"


def test_unreadable_documents_exit_3(tmp_path, capsys):
    code = run([
        "analyze", "--grades", str(tmp_path / "g.json"), "--scores", str(tmp_path / "s.json"),
        "--out", str(tmp_path / "r.json"),
    ])
    assert code == 3
