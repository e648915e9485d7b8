"""Exception hierarchy shared by all modules.

Every error carries a short machine-readable ``code`` so the CLI can map
failures to distinct exit codes and JSON error objects.
"""

from __future__ import annotations


class HpiError(Exception):
    """Base class for all package errors."""

    code = "internal"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def as_dict(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.details:
            out.update(self.details)
        return out


class SchemaError(HpiError):
    """Malformed input document or expansion reference."""

    code = "schema"


class DimensionMismatchError(HpiError):
    code = "dimension-mismatch"


class OrderMismatchError(HpiError):
    """Two nontrivial cyclotomic orders mixed in one expression."""

    code = "order-mismatch"


class FieldTooSmallError(HpiError):
    """A minimal polynomial has an irreducible factor of degree > 1 over
    the ground field; the caller may retry over a larger cyclotomic field."""

    code = "field-too-small"

    def __init__(self, message: str, factor=None, **details):
        super().__init__(message, **details)
        self.factor = factor


class NotUnitalError(HpiError):
    code = "not-unital"


class NotCompletelyReducibleError(HpiError):
    """The equivariant-projection linear system has no solution."""

    code = "not-completely-reducible"


class RelationError(HpiError):
    """A named presentation relation fails on the supplied operators."""

    code = "relation"

    def __init__(self, message: str, relation: str = "", **details):
        super().__init__(message, relation=relation, **details)
        self.relation = relation


class ValidationError(HpiError):
    """Action axiom or map-multiplicativity validation failure."""

    code = "validation"


class GradingError(HpiError):
    """A basis pair violates the declared grading."""

    code = "grading"


class DecompositionFailureError(HpiError):
    """A putative block fails the H-simplicity check."""

    code = "decomposition-failure"


class CannotCertifyError(HpiError):
    """Simplicity could not be certified either way over this ground field."""

    code = "cannot-certify"


class ResourceCapError(HpiError):
    """Estimated work exceeds the configured cap; refused up front."""

    code = "resource-cap"

    def __init__(self, message: str, estimate: int = 0, cap: int = 0, **details):
        super().__init__(message, estimate=estimate, cap=cap, **details)
        self.estimate = estimate
        self.cap = cap
