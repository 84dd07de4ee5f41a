"""
Canonical JSON output writer for kgc-study-kit artifacts.

Every artifact carries a `formatVersion` and the toolkit version. No
timestamps are written, so identical inputs give byte-identical files.
"""

import hashlib
import json
import math
from pathlib import Path

# Toolkit version - update on releases
KIT_VERSION = "0.1.0"

GRADES_FORMAT_VERSION = "kgc-grades.v1"
SCORES_FORMAT_VERSION = "kgc-scores.v1"
REPORT_FORMAT_VERSION = "kgc-report.v1"
FIXTURES_FORMAT_VERSION = "kgc-fixtures.v1"

SIGNIFICANT_DIGITS = 10


def _sha256(data: str) -> str:
    """Compute SHA256 hash of string data."""
    return hashlib.sha256(data.encode("utf-8")).hexdigest()


def text_digest(text: str) -> str:
    return f"sha256:{_sha256(text)}"


def file_digest(path) -> str:
    """Digest of a file's bytes, for provenance blocks."""
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return f"sha256:{h.hexdigest()}"


def round_sig(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    """Round once to `digits` significant digits."""
    if value == 0 or not math.isfinite(value):
        return value
    return float(f"{value:.{digits}g}")


def round_floats(obj, digits: int = SIGNIFICANT_DIGITS):
    """Recursively round every float in a JSON-like structure."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return round_sig(obj, digits)
    if isinstance(obj, dict):
        return {k: round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, digits) for v in obj]
    return obj


def dumps_canonical(document: dict) -> str:
    """UTF-8 friendly, indented, newline-terminated JSON text."""
    return json.dumps(document, ensure_ascii=False, indent=2, allow_nan=False) + "\n"


def write_canonical_json(document: dict, output_path) -> dict:
    """
    Write a JSON artifact and return a summary for CLI output.

    Returns:
        Dict with keys: output_path, format_version, digest
    """
    text = dumps_canonical(document)
    path = Path(output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    return {
        "output_path": str(path),
        "format_version": document.get("formatVersion"),
        "digest": text_digest(text),
    }


def load_json(path) -> dict:
    with open(path, encoding="utf-8") as f:
        return json.load(f)
