"""
The shipped demo study: two groups of ten synthetic participants plus the
fixture bundle they worked from.
"""

from pathlib import Path

from kgc_study_kit.pipeline.synth import synth_study
from kgc_study_kit.study.dataset import StudyDataset
from kgc_study_kit.study.fixtures import build_fixture_bundle
from kgc_study_kit.study.loader import write_study
from kgc_study_kit.utils.logger import setup_logger

logger = setup_logger()

DEMO_SEED = 20240517
DEMO_GROUPS = 2
DEMO_PARTICIPANTS = 10
# group B is noticeably slower and less satisfied
DEMO_EFFECTS = {"executionTime": 1.0, "sus": -0.8}


def demo_dataset(seed: int = DEMO_SEED) -> StudyDataset:
    return synth_study(DEMO_GROUPS, DEMO_PARTICIPANTS, DEMO_EFFECTS, seed)


def build_demo_study(root, seed: int = DEMO_SEED) -> StudyDataset:
    """Write the demo study under `root` and its fixture bundle under `root/fixtures`."""
    root = Path(root)
    ds = demo_dataset(seed)
    write_study(ds, root)
    build_fixture_bundle(root / "fixtures", ds.naming_policy)
    logger.info(f"Demo study written to {root}")
    return ds
