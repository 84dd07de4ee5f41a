"""
Command-line entrypoint for kgc-study-kit.

Usage:
    python -m kgc_study_kit.cli validate <studyDir> [--strict]
    python -m kgc_study_kit.cli grade <studyDir> --out grades.json
    python -m kgc_study_kit.cli score <studyDir> --out scores.json
    python -m kgc_study_kit.cli analyze <studyDir> [--config cfg.json] --out report.json
                                        [--md report.md] [--csv report.csv]
    python -m kgc_study_kit.cli analyze --grades grades.json --scores scores.json --out report.json
    python -m kgc_study_kit.cli fixtures <outDir>
    python -m kgc_study_kit.cli synth --groups 2 --n 10 --effect tlx=2.0 --seed 7 --out <studyDir>

Every command prints one JSON status object on stdout (logs go to stderr).

Exit codes:
    0  success
    1  validation failure (bad study files, answers or configuration)
    2  analysis impossible (degenerate or insufficient data)
    3  I/O failure
"""

import argparse
import json
import os
import sys
from pathlib import Path

from dotenv import load_dotenv

from kgc_study_kit.errors import ConfigError, StudyIOError, StudyKitError
from kgc_study_kit.output_json import dumps_canonical, load_json, text_digest
from kgc_study_kit.pipeline.analysis import analyze_documents, grade_study, run_analysis, score_study
from kgc_study_kit.pipeline.config import load_config
from kgc_study_kit.pipeline.report import render_report
from kgc_study_kit.pipeline.synth import parse_effects, synth_study
from kgc_study_kit.storage.storage import ArtifactStore
from kgc_study_kit.study.anonymity import validate_anonymity
from kgc_study_kit.study.fixtures import build_fixture_bundle
from kgc_study_kit.study.loader import load_study, write_study
from kgc_study_kit.utils.logger import setup_logger

logger = setup_logger()


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors are validation failures (exit 1), not argparse's exit 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(f"{self.prog}: {message}")


def _parse_args(argv=None) -> argparse.Namespace:
    parser = _ArgumentParser(
        prog="kgc_study_kit.cli",
        description="Grade, score and analyse knowledge-graph construction user studies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="Load a study directory and run the anonymity checks.")
    p.add_argument("study_dir")
    p.add_argument("--strict", action="store_true", help="Treat anonymity warnings as errors.")

    p = sub.add_parser("grade", help="Grade every submission against its expected graph.")
    p.add_argument("study_dir")
    p.add_argument("--out", required=True, help="Path of the grades.json to write.")

    p = sub.add_parser("score", help="Score the SUS, PSSUQ, NASA-TLX and WP questionnaires.")
    p.add_argument("study_dir")
    p.add_argument("--out", required=True, help="Path of the scores.json to write.")

    p = sub.add_parser("analyze", help="Run the statistical battery and write the report.")
    p.add_argument("study_dir", nargs="?", default=None)
    p.add_argument("--grades", default=None, help="Analyse an existing grades.json instead of a study.")
    p.add_argument("--scores", default=None, help="Scores document to pair with --grades.")
    p.add_argument("--config", default=None, help="Analysis configuration JSON (defaults: config/analysis.json).")
    p.add_argument("--out", required=True, help="Path of the JSON report.")
    p.add_argument("--md", default=None, help="Also render the report as Markdown.")
    p.add_argument("--csv", default=None, help="Also export descriptive statistics as CSV.")

    p = sub.add_parser("fixtures", help="Write the sample data, expected graphs and fixtures.json.")
    p.add_argument("out_dir")

    p = sub.add_parser("synth", help="Write a seeded synthetic study directory.")
    p.add_argument("--groups", type=int, default=2)
    p.add_argument("--n", type=int, default=10, help="Participants per group (>= 2).")
    p.add_argument("--effect", default="", help="Effect sizes as metric=d[,metric=d...] (Cohen's d).")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="Study directory to create.")
    return parser.parse_args(argv)


def _publish(outputs: list[tuple[str, str]]) -> list[dict]:
    """Write (path, text) pairs through one ArtifactStore and mirror them to GCS when configured."""
    paths = [Path(p).resolve() for p, _ in outputs]
    base = Path(os.path.commonpath([str(p.parent) for p in paths]))
    store = ArtifactStore(base)
    written = []
    for path, (_, text) in zip(paths, outputs):
        store.save_text(path.relative_to(base), text)
        written.append({"path": str(path), "digest": text_digest(text)})
    store.upload_artifacts()
    return written


def _validate(args) -> dict:
    ds = load_study(args.study_dir)
    warnings = validate_anonymity(ds, strict=args.strict)
    return {
        "studyId": ds.study_id,
        "participants": len(ds.participants),
        "groups": ds.group_labels(),
        "warnings": [w.as_dict() for w in warnings],
    }


def _grade(args) -> dict:
    doc = grade_study(load_study(args.study_dir))
    return {"outputs": _publish([(args.out, dumps_canonical(doc))])}


def _score(args) -> dict:
    doc = score_study(load_study(args.study_dir))
    return {"outputs": _publish([(args.out, dumps_canonical(doc))])}


def _analyze(args) -> dict:
    cfg = load_config(args.config)
    if args.grades or args.scores:
        if not (args.grades and args.scores) or args.study_dir:
            raise ConfigError("analyze takes either a study directory or both --grades and --scores")
        try:
            report = analyze_documents(load_json(args.grades), load_json(args.scores), cfg)
        except (OSError, json.JSONDecodeError) as e:
            raise StudyIOError(f"cannot read grades/scores: {e}") from e
    elif args.study_dir:
        report = run_analysis(load_study(args.study_dir), cfg)
    else:
        raise ConfigError("analyze needs a study directory or --grades and --scores")

    outputs = [(args.out, render_report(report, "json"))]
    if args.md:
        outputs.append((args.md, render_report(report, "markdown")))
    if args.csv:
        outputs.append((args.csv, render_report(report, "csv")))
    return {"studyId": report["studyId"], "outputs": _publish(outputs)}


def _fixtures(args) -> dict:
    store = ArtifactStore(args.out_dir)
    fixtures = build_fixture_bundle(args.out_dir, store=store)
    store.upload_artifacts()
    return {"tasks": [f.task_id for f in fixtures], "outDir": str(Path(args.out_dir))}


def _synth(args) -> dict:
    ds = synth_study(args.groups, args.n, parse_effects(args.effect), args.seed)
    store = write_study(ds, args.out)
    store.upload_artifacts()
    return {"studyId": ds.study_id, "participants": len(ds.participants), "outDir": str(Path(args.out))}


COMMANDS = {
    "validate": _validate,
    "grade": _grade,
    "score": _score,
    "analyze": _analyze,
    "fixtures": _fixtures,
    "synth": _synth,
}


def _failed(command, e: Exception) -> str:
    return json.dumps({
        "status": "failed",
        "command": command,
        "error": type(e).__name__,
        "message": str(e),
    }, ensure_ascii=False)


def run(argv=None) -> int:
    load_dotenv()
    try:
        args = _parse_args(argv)
    except ConfigError as e:
        logger.error(f"Invalid arguments: {e}")
        print(_failed(None, e))
        return e.exit_code

    try:
        summary = COMMANDS[args.command](args)
        print(json.dumps({"status": "ok", "command": args.command, **summary}, ensure_ascii=False))
        return 0

    except StudyKitError as e:
        logger.error(f"{args.command} failed: {e}")
        print(_failed(args.command, e))
        return e.exit_code

    except Exception as e:
        logger.error(f"{args.command} failed unexpectedly: {e}", exc_info=True)
        print(_failed(args.command, e))
        return 1


if __name__ == "__main__":
    sys.exit(run())
