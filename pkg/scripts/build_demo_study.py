#!/usr/bin/env python
"""
Maintenance: (re)write the demo study shipped with the repository.

The demo is two groups of ten synthetic participants drawn with a fixed
seed, plus the fixture bundle (sample data, expected graphs, fixtures.json)
under <out>/fixtures. Rerunning with the same seed reproduces the files
byte for byte.

Usage
-----
  python scripts/build_demo_study.py
  python scripts/build_demo_study.py --out /tmp/demo --seed 7
  python scripts/build_demo_study.py --report     # also grade, score and analyse
"""
import argparse
import sys
from pathlib import Path

from dotenv import load_dotenv

_REPO_ROOT = Path(__file__).resolve().parents[1]
load_dotenv(_REPO_ROOT / ".env")
sys.path.insert(0, str(_REPO_ROOT))

from kgc_study_kit.cli import run as cli_run  # noqa: E402
from kgc_study_kit.study.demo import DEMO_SEED, build_demo_study  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description="Write the demo study directory.")
    parser.add_argument("--out", default=str(_REPO_ROOT / "demo_study"), help="Target directory.")
    parser.add_argument("--seed", type=int, default=DEMO_SEED)
    parser.add_argument("--report", action="store_true", help="Run the analysis into <out>/results.")
    args = parser.parse_args()

    out = Path(args.out)
    ds = build_demo_study(out, seed=args.seed)
    print(f"Wrote {len(ds.participants)} participants in groups {', '.join(ds.group_labels())} to {out}")

    if args.report:
        results = out / "results"
        for command in (
            ["grade", str(out), "--out", str(results / "grades.json")],
            ["score", str(out), "--out", str(results / "scores.json")],
            ["analyze", str(out), "--out", str(results / "report.json"),
             "--md", str(results / "report.md"), "--csv", str(results / "report.csv")],
        ):
            code = cli_run(command)
            if code != 0:
                return code
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
