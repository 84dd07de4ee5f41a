"""
Render an analysis report as JSON, Markdown or CSV.

JSON is authoritative. The other two formats are views on the same
in-memory report: numbers are printed with repr(), so every figure in the
Markdown and CSV output also appears verbatim in the JSON.
"""

import csv
import io

from kgc_study_kit.errors import UnknownFormat
from kgc_study_kit.output_json import dumps_canonical

FORMATS = ("json", "markdown", "csv")

CSV_COLUMNS = [
    "groupLabel", "metric", "n", "mean", "sd", "median", "q1", "q3", "iqr",
    "min", "max", "missing", "dnfCount", "dnsCount",
]

_DESCRIPTIVE_STATS = ["n", "mean", "sd", "median", "q1", "q3", "iqr", "min", "max", "missing"]


def _fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _table(header: list, rows: list) -> list[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for row in rows:
        lines.append("| " + " | ".join(_fmt(v).replace("|", "\\|") for v in row) + " |")
    return lines


def _result_cells(result) -> list:
    if result is None:
        return [None, None, None]
    df = result.get("df")
    if isinstance(df, list):
        df = ", ".join(_fmt(v) for v in df)
    return [result["statistic"], result["pValue"], df]


def render_markdown(report: dict) -> str:
    lines = [f"# Study report: {report['studyId']}", ""]
    lines.append(f"- alpha: {_fmt(report['alpha'])}")
    lines.append(f"- timing method: {report.get('timingMethod') or 'NA'}")
    lines.append(f"- time limit (s): {_fmt(report.get('timeLimitSeconds'))}")
    if report.get("variantNote"):
        lines.append(f"- variant: {report['variantNote']}")
    lines.append(f"- toolkit version: {report['kitVersion']}")
    lines.append("")

    lines += ["## Groups", ""]
    lines += _table(
        ["group", "tool or language", "n"],
        [[g["groupLabel"], g["toolOrLanguageName"], g["n"]] for g in report["groups"]],
    )
    lines.append("")

    lines += ["## Descriptive statistics", ""]
    metrics = list(dict.fromkeys(d["metric"] for d in report["descriptives"]))
    for metric in metrics:
        lines += [f"### {metric}", ""]
        entries = [d for d in report["descriptives"] if d["metric"] == metric]
        lines += _table(
            ["group"] + _DESCRIPTIVE_STATS + ["DNF", "DNS"],
            [[d["groupLabel"]] + [d.get(k) for k in _DESCRIPTIVE_STATS] + [d["dnfCount"], d["dnsCount"]]
             for d in entries],
        )
        lines.append("")

    lines += ["## Tasks", ""]
    lines += _table(
        ["group", "task", "C", "DNF", "DNS", "isomorphic", "precision", "recall", "F", "time (s)"],
        [[t["groupLabel"], t["taskId"], t["completed"], t["dnf"], t["dns"], t["isomorphic"],
          t["meanPrecision"], t["meanRecall"], t["meanFMeasure"], t["meanExecutionTime"]]
         for t in report["tasks"]],
    )
    lines.append("")

    lines += ["## Execution time", ""]
    rows = []
    for e in report["executionTime"]:
        for kind in ("inclusive", "censored"):
            d = e[kind] or {}
            rows.append([e["groupLabel"], kind, d.get("n"), d.get("mean"), d.get("sd"), d.get("median")])
    lines += _table(["group", "DNF times", "n", "mean", "sd", "median"], rows)
    lines.append("")

    lines += ["## Reliability (Cronbach's alpha)", ""]
    lines += _table(
        ["scale", "items", "n", "alpha", "acceptable", "note"],
        [[r["scale"], r["items"], r["n"], r["alpha"], r["acceptable"], r.get("note")]
         for r in report["reliability"]],
    )
    lines.append("")

    lines += ["## Normality (Shapiro-Wilk)", ""]
    lines += _table(
        ["metric", "group", "n", "W", "p", "normal", "note"],
        [[e["metric"], e["groupLabel"], e["n"],
          e["result"]["statistic"] if e["result"] else None,
          e["result"]["pValue"] if e["result"] else None,
          e.get("normal"), e.get("note")]
         for e in report["normality"]],
    )
    lines.append("")

    lines += ["## Comparisons", ""]
    comparisons = report["comparisons"]
    if not comparisons["applicable"]:
        lines += [f"Not applicable: {comparisons['reason']}.", ""]
    else:
        levene_by_metric = {h["metric"]: h for h in report["homogeneity"]}
        rows = []
        for c in comparisons["results"]:
            homo = levene_by_metric.get(c["metric"], {}).get("result")
            effect = c.get("effectSize", {})
            rows.append(
                [c["metric"], c["branch"], c["test"]]
                + _result_cells(c["result"])
                + [homo["pValue"] if homo else None, effect.get("cohensD"), c.get("note")]
            )
        lines += _table(
            ["metric", "branch", "test", "statistic", "p", "df", "Levene p", "Cohen's d*", "note"],
            rows,
        )
        lines += ["", "\\* effect size reported beyond the protocol.", ""]

    lines += ["## Correlations", ""]
    lines += _table(
        ["scope", "x", "y", "n", "method", "r", "p", "note"],
        [[c["scope"], c["x"], c["y"], c["n"], c.get("method"),
          c["result"]["statistic"] if c["result"] else None,
          c["result"]["pValue"] if c["result"] else None,
          c.get("note")]
         for c in report["correlations"]],
    )
    lines.append("")

    prov = report["provenance"]
    lines += ["## Provenance", ""]
    lines.append(f"- grades: `{prov['gradesDigest']}`")
    lines.append(f"- scores: `{prov['scoresDigest']}`")
    return "\n".join(lines) + "\n"


def render_csv(report: dict) -> str:
    """One row per group x metric with the descriptive statistics."""
    out = io.StringIO(newline="")
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for d in report["descriptives"]:
        row = {}
        for column in CSV_COLUMNS:
            value = d.get(column)
            row[column] = "" if value is None else (repr(value) if isinstance(value, float) else value)
        writer.writerow(row)
    return out.getvalue()


def render_report(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return dumps_canonical(report)
    if fmt in ("markdown", "md"):
        return render_markdown(report)
    if fmt == "csv":
        return render_csv(report)
    raise UnknownFormat(f"unknown report format {fmt!r}; expected one of {', '.join(FORMATS)}")
