"""Grade -> score -> analyse orchestration, reports and synthetic studies."""
from .analysis import analyze_documents, grade_study, participant_metrics, run_analysis, score_study
from .config import METRICS, AnalysisConfig, default_config, load_config
from .decision import CorrelationChoice, TestChoice, select_comparison_test, select_correlation_method
from .report import render_csv, render_markdown, render_report
from .synth import parse_effects, synth_study

__all__ = [
    "AnalysisConfig",
    "CorrelationChoice",
    "METRICS",
    "TestChoice",
    "analyze_documents",
    "default_config",
    "grade_study",
    "load_config",
    "parse_effects",
    "participant_metrics",
    "render_csv",
    "render_markdown",
    "render_report",
    "run_analysis",
    "score_study",
    "select_comparison_test",
    "select_correlation_method",
    "synth_study",
]
