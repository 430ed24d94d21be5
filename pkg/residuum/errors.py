from typing import Iterable, Optional


class ResiduumError(Exception):
    """Base class for every error raised by the residuum engine"""

    code = "residuum_error"
    exit_code = 2

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.field = field

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "field": self.field}


class ValidationFailure(ResiduumError):
    """Input that cannot be accepted before any computation runs"""

    code = "validation_error"
    exit_code = 1


class NumericalFailure(ResiduumError):
    """A computation that ran but could not produce a trustworthy value"""

    code = "numerical_error"
    exit_code = 2


# Expression language

class ExprSyntaxError(ValidationFailure):
    code = "expr_syntax"

    def __init__(self, message: str, offset: int, expected: Iterable[str] = ()):
        self.offset = offset
        self.expected = sorted(set(expected))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at byte {offset}{detail}", field="expression")


class ExprArityError(ValidationFailure):
    code = "expr_arity"

    def __init__(self, name: str, expected: int, got: int, offset: int):
        self.offset = offset
        super().__init__(
            f"{name} takes {expected} argument(s), got {got} at byte {offset}",
            field="expression",
        )


class ExponentRangeError(ValidationFailure):
    code = "exponent_range"

    def __init__(self, exponent: int, offset: int):
        self.offset = offset
        super().__init__(
            f"integer exponent {exponent} outside [-64, 64] at byte {offset}",
            field="expression",
        )


class EvaluationError(NumericalFailure):
    code = "evaluation"

    def __init__(self, message: str, position: Optional[complex] = None):
        self.position = position
        where = f" at z={position!r}" if position is not None else ""
        super().__init__(f"{message}{where}", field="expression")


class DivisionByZeroError(EvaluationError):
    code = "division_by_zero"


class LogOfZeroError(EvaluationError):
    code = "log_of_zero"


class NonFiniteValueError(EvaluationError):
    code = "non_finite_value"


# Geometry and configuration

class GeometryError(ValidationFailure):
    code = "geometry"


class OpenContourError(GeometryError):
    code = "open_contour"


class ConfigError(ValidationFailure):
    code = "config"


class OverlappingExcisionError(ValidationFailure):
    code = "overlapping_excision"


class EndpointSingularError(ValidationFailure):
    code = "endpoint_singular"


# Quadrature and limits

class SingularityOnPathError(NumericalFailure):
    code = "singularity_on_path"

    def __init__(self, point: complex):
        self.point = point
        super().__init__(f"integrand is singular on the path near {point!r}", field="path")


class SingularityInDomainError(NumericalFailure):
    code = "singularity_in_domain"

    def __init__(self, point: complex):
        self.point = point
        super().__init__(f"integrand is singular inside the domain near {point!r}", field="domain")


class NonConvergentError(NumericalFailure):
    """Limit extraction failed; `direction` is the unit phase of the growth when it diverges"""

    code = "non_convergent"

    def __init__(self, message: str, direction: Optional[complex] = None):
        self.direction = direction
        super().__init__(message)


class OscillatoryError(NonConvergentError):
    code = "oscillatory"


class SectorNonConvergentError(NonConvergentError):
    code = "sector_non_convergent"

    def __init__(self, sector: int, message: str = ""):
        self.sector = sector
        super().__init__(f"sector {sector} limit did not converge{': ' + message if message else ''}")


class TruncationNonConvergentError(NonConvergentError):
    code = "truncation_non_convergent"


class InversionMismatchError(NumericalFailure):
    code = "inversion_mismatch"


class MismatchBeyondToleranceError(NumericalFailure):
    code = "mismatch_beyond_tolerance"
