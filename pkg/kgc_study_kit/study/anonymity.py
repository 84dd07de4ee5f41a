"""
Anonymity heuristics run before a study is published.

Flags participant identifiers that look like e-mail addresses or names,
personal data in free-text slots (training, PSSUQ comments, notes), and user
names leaking through file paths, either in submission paths or inside the
submitted graphs (mapping engines like to record source file locations).
"""

from dataclasses import dataclass

from kgc_study_kit.errors import AnonymityViolation
from kgc_study_kit.rdf.terms import Iri, Literal
from kgc_study_kit.study.dataset import StudyDataset
from kgc_study_kit.utils.logger import setup_logger
from kgc_study_kit.utils.patterns import (
    extract_emails,
    extract_phone_numbers,
    extract_user_names_from_paths,
    looks_like_name,
)

logger = setup_logger()


@dataclass(frozen=True, order=True)
class AnonymityWarning:
    kind: str  # email | name | pii | path
    subject: str
    message: str

    def as_dict(self) -> dict:
        return {"kind": self.kind, "subject": self.subject, "message": self.message}


def _free_text(subject: str, text: str) -> list[AnonymityWarning]:
    out = []
    for email in extract_emails(text):
        out.append(AnonymityWarning("pii", subject, f"e-mail address in free text: {email}"))
    for phone in extract_phone_numbers(text):
        out.append(AnonymityWarning("pii", subject, f"phone number in free text: {phone}"))
    for user in extract_user_names_from_paths(text):
        out.append(AnonymityWarning("path", subject, f"path reveals user name {user!r}"))
    return out


def _graph_texts(graph):
    for t in graph:
        for term in (t.subject, t.object):
            if isinstance(term, Iri):
                yield term.value
            elif isinstance(term, Literal):
                yield term.lexical


def validate_anonymity(ds: StudyDataset, strict: bool = False) -> list[AnonymityWarning]:
    """Return sorted warnings; with `strict`, raise AnonymityViolation instead."""
    warnings = set()

    for p in ds.participants:
        pid = p.participant_id
        if extract_emails(pid):
            warnings.add(AnonymityWarning("email", pid, "participant id looks like an e-mail address"))
        elif looks_like_name(pid):
            warnings.add(AnonymityWarning("name", pid, "participant id looks like a personal name"))
        for entry in p.formal_training:
            warnings.update(_free_text(f"{pid}/training", entry))
        responses = ds.instrument_responses.get(pid)
        if responses is not None:
            for i, comment in enumerate(responses.pssuq.comments, start=1):
                if comment:
                    warnings.update(_free_text(f"{pid}/pssuq_c{i}", comment))

    for text_subject, text in (("study/variantNote", ds.variant_note), ("study/timingMethod", ds.timing_method)):
        if text:
            warnings.update(_free_text(text_subject, text))

    for (pid, task_id), result in sorted(ds.task_results.items()):
        subject = f"{pid}/{task_id}"
        if result.submission_path:
            paths = [result.submission_path]
            if ds.root is not None:
                # a relative path can still sit under a home directory
                paths.append(str((ds.root / result.submission_path).resolve()))
            for path in paths:
                for user in extract_user_names_from_paths(path):
                    warnings.add(AnonymityWarning("path", subject, f"submission path reveals user name {user!r}"))
        if result.submission is not None:
            for text in _graph_texts(result.submission):
                warnings.update(_free_text(subject, text))

    found = sorted(warnings)
    for w in found:
        logger.warning(f"Anonymity: [{w.kind}] {w.subject}: {w.message}")
    if strict and found:
        raise AnonymityViolation(f"{len(found)} anonymity issue(s), first: {found[0].subject}: {found[0].message}")
    return found
