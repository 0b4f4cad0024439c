"""Exception types shared across the engine.

Every error carries a stable machine-readable ``code`` so the HTTP layer
and the CLI can map failures to the error envelope / exit codes without
string matching.
"""

from __future__ import annotations


class SciError(Exception):
    """Base class for all engine errors."""

    code = "error"

    def __init__(self, message: str, details: list[str] | None = None):
        super().__init__(message)
        self.message = message
        self.details = list(details or [])

    def to_envelope(self) -> dict:
        return {"error": {"code": self.code, "message": self.message, "details": self.details}}


class ParseError(SciError):
    """Input document is not well-formed (bad JSON, bad encoding)."""

    code = "parse_error"


class SchemaError(SciError):
    """Document parsed but a required field is missing or has the wrong type."""

    code = "schema_error"


class ValidationError(SciError):
    """Document is schema-valid but violates a data invariant."""

    code = "validation_error"


class EmptyCatalog(SciError):
    code = "empty_catalog"


class EmptyPlan(SciError):
    code = "empty_plan"


class IncompleteAssessment(SciError):
    """Assessment ratings do not cover exactly the plan entries."""

    code = "incomplete_assessment"

    def __init__(self, missing: list[str], extra: list[str]):
        details = [f"missing rating for {tid}" for tid in missing]
        details += [f"rating for unknown test {tid}" for tid in extra]
        super().__init__("assessment does not cover the plan exactly", details)
        self.missing = list(missing)
        self.extra = list(extra)


class OutOfRange(SciError):
    code = "out_of_range"


class MismatchedCatalog(SciError):
    code = "mismatched_catalog"


class PlanMismatch(SciError):
    code = "plan_mismatch"


class InconsistentInputs(SciError):
    code = "inconsistent_inputs"


class InvalidTransition(SciError):
    code = "invalid_transition"


class InvalidDelta(SciError):
    code = "invalid_delta"


class NotFound(SciError):
    code = "not_found"


class StorageError(SciError):
    code = "storage_error"
