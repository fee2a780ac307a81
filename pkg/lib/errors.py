from typing import Any, Dict, Optional


class MatroidError(Exception):
    """Base error for the matroid certificate toolkit"""

    code = "matroid_error"

    def __init__(self, message: str, data: Optional[Dict[str, Any]] = None):
        self.message = message
        self.data = data or {}
        super().__init__(f"{self.code}: {message}")

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": self.message, "data": self.data}


class FieldError(MatroidError):
    code = "field_error"


class InversionOfZero(MatroidError):
    code = "inversion_of_zero"


class AmbientMismatch(MatroidError):
    code = "ambient_mismatch"


class ShapeMismatch(MatroidError):
    code = "shape_mismatch"


class UnknownElement(MatroidError):
    code = "unknown_element"


class InvalidMinorQuery(MatroidError):
    code = "invalid_minor_query"


class ExhaustiveBoundExceeded(MatroidError):
    code = "exhaustive_bound_exceeded"


class GroundSetMismatch(MatroidError):
    code = "ground_set_mismatch"


class InvalidMatroid(MatroidError):
    code = "invalid_matroid"


class InvalidAlpha(MatroidError):
    code = "invalid_alpha"


class NotDependent(MatroidError):
    code = "not_dependent"


class AdjacentTransversal(MatroidError):
    """Two dependent transversals of a spike would differ in exactly one leg"""

    code = "adjacent_transversal"


class NotApplicable(MatroidError):
    code = "not_applicable"


class NothingToCertify(MatroidError):
    code = "nothing_to_certify"


class NotStandardForm(MatroidError):
    code = "not_standard_form"


class MalformedCertificate(MatroidError):
    code = "malformed_certificate"
