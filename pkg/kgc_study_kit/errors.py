"""
Exception hierarchy for kgc-study-kit.

Every error raised on purpose by the toolkit derives from StudyKitError and
carries the process exit code the CLI returns for it:

  1  validation failure (bad input files, bad answers, bad config)
  2  analysis impossible (degenerate or insufficient data)
  3  I/O failure
"""


class StudyKitError(Exception):
    """Base class for all toolkit errors."""
    exit_code = 1


# ---------- validation (exit 1) ----------

class ValidationError(StudyKitError, ValueError):
    exit_code = 1


class TermError(ValidationError):
    """An RDF term violates the abstract syntax (e.g. relative IRI)."""
    pass


class RdfSyntaxError(ValidationError):
    """Malformed N-Triples / Turtle input."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class UnsupportedConstruct(ValidationError):
    """A Turtle construct outside the supported subset."""

    def __init__(self, line: int, construct: str):
        self.line = line
        self.construct = construct
        super().__init__(f"line {line}: unsupported Turtle construct '{construct}'")


class SchemaError(ValidationError):
    def __init__(self, path: str, field: str, message: str = ""):
        self.path = path
        self.field = field
        detail = f": {message}" if message else ""
        super().__init__(f"{path} [{field}]{detail}")


class MissingSubmission(ValidationError):
    def __init__(self, participant: str, task: str):
        self.participant = participant
        self.task = task
        super().__init__(f"no submission file for participant {participant}, task {task}")


class InconsistentStatus(ValidationError):
    pass


class RangeError(ValidationError):
    pass


class MissingPair(ValidationError):
    pass


class DuplicatePair(ValidationError):
    pass


class AllNotApplicable(ValidationError):
    def __init__(self, subscale: str):
        self.subscale = subscale
        super().__init__(f"PSSUQ subscale '{subscale}' has no answered items")


class AnonymityViolation(ValidationError):
    pass


class ConfigError(ValidationError):
    pass


class InvalidEffectSize(ValidationError):
    pass


class UnknownFormat(ValidationError):
    pass


# ---------- analysis impossible (exit 2) ----------

class AnalysisError(StudyKitError, ArithmeticError):
    exit_code = 2


class EmptyInput(AnalysisError):
    pass


class DegenerateInput(AnalysisError):
    pass


class SampleTooSmall(AnalysisError):
    pass


class SampleTooLarge(AnalysisError):
    pass


class ZeroVariance(AnalysisError):
    pass


class TooFewGroups(AnalysisError):
    pass


class GroupTooSmall(AnalysisError):
    pass


class BothDegenerate(AnalysisError):
    pass


class DegenerateWithin(AnalysisError):
    pass


class LengthMismatch(AnalysisError):
    pass


class ConstantInput(AnalysisError):
    pass


class DomainError(AnalysisError):
    pass


class GroupTooSmallForNormality(AnalysisError):
    pass


# ---------- I/O (exit 3) ----------

class StudyIOError(StudyKitError, OSError):
    exit_code = 3
