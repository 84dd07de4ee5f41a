# Graph isomorphism and triple-level accuracy
from .accuracy import (
    Accuracy,
    GraphDiff,
    TaskGrade,
    TaskStatus,
    diff_graphs,
    f_measure,
    global_grade,
    grade_task,
    macro_grade,
    overlap_counts,
    precision_recall,
)
from .canonical import (
    BlankNodeMapping,
    canonical_labeling,
    canonicalize_blank_nodes,
    find_blank_node_mapping,
    graph_isomorphic,
)

__all__ = [
    "Accuracy",
    "BlankNodeMapping",
    "GraphDiff",
    "TaskGrade",
    "TaskStatus",
    "canonical_labeling",
    "canonicalize_blank_nodes",
    "diff_graphs",
    "f_measure",
    "find_blank_node_mapping",
    "global_grade",
    "grade_task",
    "macro_grade",
    "overlap_counts",
    "precision_recall",
]
