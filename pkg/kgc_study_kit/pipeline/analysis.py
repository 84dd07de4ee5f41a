"""
Grade, score and analyse a study.

The analysis only ever reads the two intermediate documents (grades.json
and scores.json), so a published report can be recomputed from those files
alone. Degenerate statistics are recorded as notes on their entry; the whole
report is refused only when there is nothing to analyse.
"""

from typing import Optional

from kgc_study_kit.errors import AnalysisError, EmptyInput, SchemaError
from kgc_study_kit.grading.accuracy import TaskStatus, global_grade, grade_task, macro_grade
from kgc_study_kit.instruments.scores import score_participant
from kgc_study_kit.instruments.usability import PSSUQ_SUBSCALES, sus_item_contributions
from kgc_study_kit.output_json import (
    GRADES_FORMAT_VERSION,
    KIT_VERSION,
    REPORT_FORMAT_VERSION,
    SCORES_FORMAT_VERSION,
    dumps_canonical,
    round_floats,
    text_digest,
)
from kgc_study_kit.pipeline.config import AnalysisConfig
from kgc_study_kit.pipeline.decision import select_comparison_test, select_correlation_method
from kgc_study_kit.stats.comparisons import (
    anova_oneway,
    cohens_d,
    kruskal_wallis,
    levene,
    welch_t,
    wilcoxon_ranksum,
)
from kgc_study_kit.stats.reliability import alpha_acceptable, cronbach_alpha
from kgc_study_kit.stats.samples import describe
from kgc_study_kit.study.dataset import CORE_TASKS, StudyDataset
from kgc_study_kit.utils.logger import setup_logger

logger = setup_logger()

_PSSUQ_METRICS = {
    "pssuqOverall": "overall",
    "pssuqSysuse": "sysuse",
    "pssuqInfoqual": "infoqual",
    "pssuqInterqual": "interqual",
}

_TESTS = {
    "welch_t": lambda samples: welch_t(*samples),
    "anova_oneway": anova_oneway,
    "wilcoxon_ranksum": lambda samples: wilcoxon_ranksum(*samples),
    "kruskal_wallis": kruskal_wallis,
}


# ---------- grades and scores ----------

def _grade_dict(grade) -> dict:
    return {
        "taskId": grade.task_id,
        "status": grade.status.value,
        "isomorphic": grade.isomorphic,
        "precision": grade.precision,
        "recall": grade.recall,
        "fMeasure": grade.f_measure,
        "executionTimeSeconds": grade.execution_time_seconds,
        "matchedCount": grade.matched_count,
        "generatedCount": grade.generated_count,
        "expectedCount": grade.expected_count,
    }


def _accuracy_dict(acc) -> dict:
    return {"precision": acc.precision, "recall": acc.recall, "fMeasure": acc.f_measure}


def grade_study(ds: StudyDataset) -> dict:
    """Grade every (participant, task) pair against the group's expected graph."""
    grades_out, global_out = [], []
    for p in ds.participants:
        grades = []
        for task_id in CORE_TASKS:
            result = ds.task_results[(p.participant_id, task_id)]
            expected = ds.task_declaration(p.group_label, task_id).expected_graph
            grades.append(grade_task(
                task_id,
                result.submission,
                expected,
                result.status,
                result.execution_time_seconds,
            ))
        who = {"participantId": p.participant_id, "groupLabel": p.group_label}
        grades_out += [{**who, **_grade_dict(g)} for g in grades]
        global_out.append({
            **who,
            "global": _accuracy_dict(global_grade(grades)),
            "macro": _accuracy_dict(macro_grade(grades)),
        })
    logger.info(f"Graded {len(grades_out)} tasks for {len(global_out)} participants")
    return {
        "formatVersion": GRADES_FORMAT_VERSION,
        "kitVersion": KIT_VERSION,
        "studyId": ds.study_id,
        "groups": [
            {
                "groupLabel": g.group_label,
                "toolOrLanguageName": g.tool_or_language_name,
                "variantTasks": sorted(g.variant_tasks),
            }
            for g in ds.groups
        ],
        "timingMethod": ds.timing_method,
        "timeLimitSeconds": ds.time_limit_seconds,
        "variantNote": ds.variant_note,
        "grades": grades_out,
        "global": global_out,
    }


def score_study(ds: StudyDataset) -> dict:
    """Score the questionnaires of every participant, keeping item-level answers for reliability."""
    participants = []
    for p in ds.participants:
        response = ds.responses_for(p.participant_id)
        scores = score_participant(response)
        participants.append({
            "participantId": p.participant_id,
            "groupLabel": p.group_label,
            "currentRole": p.current_role.value,
            "participationMode": p.participation_mode.value,
            "helpCount": p.help_count,
            "scores": scores.as_dict(),
            "items": {
                "susContributions": sus_item_contributions(response.sus),
                "pssuq": list(response.pssuq.items),
            },
        })
    logger.info(f"Scored questionnaires for {len(participants)} participants")
    return {
        "formatVersion": SCORES_FORMAT_VERSION,
        "kitVersion": KIT_VERSION,
        "studyId": ds.study_id,
        "participants": participants,
    }


# ---------- metric extraction ----------

def _participant_grades(grades_doc: dict) -> list:
    """Per-participant view of grades.json: global entry plus that participant's task grades."""
    tasks = {}
    for g in grades_doc["grades"]:
        tasks.setdefault(g["participantId"], []).append(g)
    return [{**entry, "tasks": tasks.get(entry["participantId"], [])} for entry in grades_doc["global"]]


def _check_documents(grades_doc: dict, scores_doc: dict):
    if grades_doc.get("formatVersion") != GRADES_FORMAT_VERSION:
        raise SchemaError("grades.json", "formatVersion", f"expected {GRADES_FORMAT_VERSION}")
    if scores_doc.get("formatVersion") != SCORES_FORMAT_VERSION:
        raise SchemaError("scores.json", "formatVersion", f"expected {SCORES_FORMAT_VERSION}")
    for name, doc, keys in (("grades.json", grades_doc, ("groups", "grades", "global")),
                            ("scores.json", scores_doc, ("participants",))):
        for key in keys:
            if not isinstance(doc.get(key), list):
                raise SchemaError(name, key, "missing or not an array")
    if grades_doc.get("studyId") != scores_doc.get("studyId"):
        raise SchemaError("scores.json", "studyId", "grades and scores belong to different studies")
    graded = [p["participantId"] for p in grades_doc["global"]]
    scored = [p["participantId"] for p in scores_doc["participants"]]
    if graded != scored:
        raise SchemaError("scores.json", "participants", "participants differ from grades.json")


def _execution_time(tasks: list, censor_dnf: bool) -> Optional[float]:
    """Sum of task times; DNF times are left out when censoring."""
    counted = {TaskStatus.COMPLETED.value} if censor_dnf else {
        TaskStatus.COMPLETED.value, TaskStatus.DID_NOT_FINISH.value
    }
    times = [t["executionTimeSeconds"] for t in tasks if t["status"] in counted]
    times = [t for t in times if t is not None]
    return float(sum(times)) if times else None


def participant_metrics(grades: dict, scores: dict, censor_dnf: bool) -> dict:
    metrics = {
        "precision": grades["global"]["precision"],
        "recall": grades["global"]["recall"],
        "fMeasure": grades["global"]["fMeasure"],
        "executionTime": _execution_time(grades["tasks"], censor_dnf),
    }
    s = scores["scores"]
    metrics["sus"] = s["sus"]
    for metric, key in _PSSUQ_METRICS.items():
        metrics[metric] = s["pssuq"][key]
    metrics["tlx"] = s["tlx"]
    metrics["rawTlx"] = s["rawTlx"]
    metrics["wp"] = s["wp"]
    return metrics


def _samples(rows: list, group: Optional[str], metric: str) -> list:
    return [r["metrics"][metric] for r in rows
            if (group is None or r["groupLabel"] == group) and r["metrics"][metric] is not None]


# ---------- report sections ----------

def _descriptives(rows, labels, cfg) -> list:
    out = []
    for label in labels:
        members = [r for r in rows if r["groupLabel"] == label]
        dnf = sum(r["dnfCount"] for r in members)
        dns = sum(r["dnsCount"] for r in members)
        for metric in cfg.metrics:
            values = _samples(rows, label, metric)
            entry = {"groupLabel": label, "metric": metric}
            if values:
                entry.update(describe(values))
            else:
                entry.update({"n": 0, "note": "no values"})
            entry["missing"] = len(members) - len(values)
            entry["dnfCount"] = dnf
            entry["dnsCount"] = dns
            out.append(entry)
    return out


def _mean(values: list) -> Optional[float]:
    return sum(values) / len(values) if values else None


def _task_figures(graded, labels) -> list:
    out = []
    for label in labels:
        members = [p for p in graded if p["groupLabel"] == label]
        for task_id in CORE_TASKS:
            tasks = [t for p in members for t in p["tasks"] if t["taskId"] == task_id]
            timed = [t["executionTimeSeconds"] for t in tasks if t["executionTimeSeconds"] is not None]
            out.append({
                "groupLabel": label,
                "taskId": task_id,
                "completed": sum(1 for t in tasks if t["status"] == TaskStatus.COMPLETED.value),
                "dnf": sum(1 for t in tasks if t["status"] == TaskStatus.DID_NOT_FINISH.value),
                "dns": sum(1 for t in tasks if t["status"] == TaskStatus.DID_NOT_START.value),
                "isomorphic": sum(1 for t in tasks if t["isomorphic"]),
                "meanPrecision": _mean([t["precision"] for t in tasks]),
                "meanRecall": _mean([t["recall"] for t in tasks]),
                "meanFMeasure": _mean([t["fMeasure"] for t in tasks]),
                "meanExecutionTime": _mean(timed),
            })
    return out


def _time_aggregates(graded, labels) -> list:
    out = []
    for label in labels:
        members = [p for p in graded if p["groupLabel"] == label]
        entry = {"groupLabel": label}
        for key, censor in (("inclusive", False), ("censored", True)):
            totals = [_execution_time(p["tasks"], censor) for p in members]
            totals = [t for t in totals if t is not None]
            entry[key] = describe(totals) if totals else None
        out.append(entry)
    return out


def _participation(scores_doc, labels) -> list:
    out = []
    for label in labels:
        members = [p for p in scores_doc["participants"] if p["groupLabel"] == label]
        reported = [p["helpCount"] for p in members if p["helpCount"] is not None]
        out.append({
            "groupLabel": label,
            "voluntary": sum(1 for p in members if p["participationMode"] == "voluntary"),
            "mandatory": sum(1 for p in members if p["participationMode"] == "mandatory"),
            "helpCountTotal": sum(reported),
            "helpCountReported": len(reported),
        })
    return out


def _alpha_entry(scale: str, matrix: list, n_items: int) -> dict:
    entry = {"scale": scale, "items": n_items, "n": len(matrix)}
    if not matrix:
        entry.update({"alpha": None, "acceptable": None, "note": "no complete responses"})
        return entry
    try:
        alpha = cronbach_alpha(matrix)
        entry["alpha"] = alpha
        entry["acceptable"] = alpha_acceptable(alpha)
    except AnalysisError as e:
        entry["alpha"] = None
        entry["acceptable"] = None
        entry["note"] = str(e)
    return entry


def _reliability(scores_doc) -> list:
    people = scores_doc["participants"]
    out = [_alpha_entry("sus", [p["items"]["susContributions"] for p in people], 10)]
    for metric, subscale in _PSSUQ_METRICS.items():
        low, high = PSSUQ_SUBSCALES[subscale]
        rows = [p["items"]["pssuq"][low - 1:high] for p in people]
        # listwise: participants with a not-applicable item in the subscale are left out
        complete = [r for r in rows if all(v is not None for v in r)]
        entry = _alpha_entry(metric, complete, high - low + 1)
        entry["excludedNotApplicable"] = len(rows) - len(complete)
        out.append(entry)
    return out


def _normality_entries(metric: str, by_group: dict, choice, alpha: float) -> list:
    out = []
    for label, result in choice.normality.items():
        entry = {"metric": metric, "groupLabel": label, "n": len(by_group[label])}
        if result is None:
            entry["result"] = None
            entry["note"] = next((w for w in choice.warnings if f"group {label}:" in w), "not testable")
        else:
            entry["result"] = result.as_dict()
            entry["normal"] = bool(result.p_value > alpha)
        out.append(entry)
    return out


def _compare_metric(metric: str, by_group: dict, alpha: float) -> tuple[dict, list, dict]:
    """Comparison entry, normality entries and homogeneity entry for one metric."""
    choice = select_comparison_test(by_group, alpha)
    normality = _normality_entries(metric, by_group, choice, alpha)

    samples = list(by_group.values())
    homogeneity = {"metric": metric}
    try:
        homogeneity["result"] = levene(samples).as_dict()
    except AnalysisError as e:
        homogeneity["result"] = None
        homogeneity["note"] = str(e)

    comparison = {
        "metric": metric,
        "branch": choice.branch,
        "test": choice.test_name,
        "reason": choice.reason,
        "warnings": list(choice.warnings),
    }
    try:
        result = _TESTS[choice.test_name](samples)
        comparison["result"] = result.as_dict()
        comparison["significant"] = bool(result.p_value <= alpha)
    except AnalysisError as e:
        comparison["result"] = None
        comparison["note"] = str(e)
    if len(samples) == 2:
        effect = {"beyondProtocol": True}
        try:
            effect["cohensD"] = cohens_d(*samples)
        except AnalysisError as e:
            effect["cohensD"] = None
            effect["note"] = str(e)
        comparison["effectSize"] = effect
    return comparison, normality, homogeneity


def _correlation_entry(scope: str, x_metric: str, y_metric: str, rows: list, alpha: float) -> dict:
    pairs = [(r["metrics"][x_metric], r["metrics"][y_metric]) for r in rows]
    pairs = [(x, y) for x, y in pairs if x is not None and y is not None]
    entry = {"scope": scope, "x": x_metric, "y": y_metric, "n": len(pairs)}
    try:
        xs = [x for x, _ in pairs]
        ys = [y for _, y in pairs]
        choice = select_correlation_method(xs, ys, alpha)
        entry["method"] = choice.method
        entry["reason"] = choice.reason
        if choice.warnings:
            entry["warnings"] = choice.warnings
        entry["result"] = choice.compute(xs, ys).as_dict()
    except AnalysisError as e:
        entry.setdefault("method", None)
        entry["result"] = None
        entry["note"] = str(e)
    return entry


def analyze_documents(grades_doc: dict, scores_doc: dict, cfg: Optional[AnalysisConfig] = None) -> dict:
    """Build the full report from a grades and a scores document."""
    cfg = cfg or AnalysisConfig()
    _check_documents(grades_doc, scores_doc)
    graded = _participant_grades(grades_doc)
    if not graded:
        raise EmptyInput("study has no participants")

    labels = [g["groupLabel"] for g in grades_doc["groups"]]
    rows = []
    for g, s in zip(graded, scores_doc["participants"]):
        statuses = [t["status"] for t in g["tasks"]]
        rows.append({
            "participantId": g["participantId"],
            "groupLabel": g["groupLabel"],
            "metrics": participant_metrics(g, s, cfg.censor_dnf_times),
            "dnfCount": statuses.count(TaskStatus.DID_NOT_FINISH.value),
            "dnsCount": statuses.count(TaskStatus.DID_NOT_START.value),
        })
    if not any(_samples(rows, None, m) for m in cfg.metrics):
        raise EmptyInput("no metric has any value to analyse")

    populated = [label for label in labels if any(r["groupLabel"] == label for r in rows)]
    normality, homogeneity = [], []
    if len(populated) < 2:
        comparisons = {"applicable": False, "reason": "single group: descriptives only", "results": []}
        for metric in cfg.metrics:
            by_group = {label: _samples(rows, label, metric) for label in populated}
            choice = select_comparison_test(by_group, cfg.alpha)
            normality.extend(_normality_entries(metric, by_group, choice, cfg.alpha))
    else:
        results = []
        for metric in cfg.metrics:
            by_group = {label: _samples(rows, label, metric) for label in populated}
            comparison, norm, homo = _compare_metric(metric, by_group, cfg.alpha)
            results.append(comparison)
            normality.extend(norm)
            homogeneity.append(homo)
        comparisons = {"applicable": True, "results": results}

    correlations = []
    for x_metric, y_metric in cfg.correlation_pairs:
        for label in populated:
            members = [r for r in rows if r["groupLabel"] == label]
            correlations.append(_correlation_entry(label, x_metric, y_metric, members, cfg.alpha))
        if len(populated) > 1:
            correlations.append(_correlation_entry("pooled", x_metric, y_metric, rows, cfg.alpha))

    group_info = {g["groupLabel"]: g for g in grades_doc["groups"]}
    report = {
        "formatVersion": REPORT_FORMAT_VERSION,
        "kitVersion": KIT_VERSION,
        "studyId": grades_doc["studyId"],
        "alpha": cfg.alpha,
        "timingMethod": grades_doc.get("timingMethod"),
        "timeLimitSeconds": grades_doc.get("timeLimitSeconds"),
        "variantNote": grades_doc.get("variantNote"),
        "groups": [
            {
                "groupLabel": label,
                "toolOrLanguageName": group_info[label]["toolOrLanguageName"],
                "variantTasks": group_info[label].get("variantTasks", []),
                "n": sum(1 for r in rows if r["groupLabel"] == label),
            }
            for label in labels
        ],
        "descriptives": _descriptives(rows, labels, cfg),
        "tasks": _task_figures(graded, labels),
        "executionTime": _time_aggregates(graded, labels),
        "participation": _participation(scores_doc, labels),
        "reliability": _reliability(scores_doc),
        "normality": normality,
        "homogeneity": homogeneity,
        "comparisons": comparisons,
        "correlations": correlations,
        "provenance": {
            "kitVersion": KIT_VERSION,
            "gradesDigest": text_digest(dumps_canonical(grades_doc)),
            "scoresDigest": text_digest(dumps_canonical(scores_doc)),
            "config": cfg.as_dict(),
        },
    }
    logger.info(
        f"Analysed {len(rows)} participants in {len(labels)} group(s): "
        f"{len(cfg.metrics)} metrics, {len(correlations)} correlations"
    )
    return round_floats(report)


def run_analysis(ds: StudyDataset, cfg: Optional[AnalysisConfig] = None) -> dict:
    return analyze_documents(grade_study(ds), score_study(ds), cfg)
