"""Grading, questionnaire scoring and statistics for KGC user studies."""

from kgc_study_kit.output_json import KIT_VERSION as __version__

__all__ = ["__version__"]
