"""aerial_kpi.exceptions"""
from typing import List, Optional


class AerialKpiException(Exception):
    """Base aerial_kpi exception"""


class ValidationError(AerialKpiException):
    """Input data or configuration is invalid; the cli maps this to exit code 2"""


class NumericalError(AerialKpiException):
    """Inputs are valid but a numerical procedure failed"""


class ParseError(ValidationError):
    def __init__(
        self, message: str, row: Optional[int] = None, column: Optional[str] = None
    ) -> None:
        """
        Malformed value in a csv or json document

        Args:
            message: error message
            row: 1-based line number in the source file (header is line 1), if known
            column: offending column name, if known

        Returns:
            N/A  # noqa: DAR202

        Raises:
            N/A

        """
        location = ""
        if row is not None:
            location += f" (row {row}"
            location += f", column '{column}')" if column else ")"
        super().__init__(f"{message}{location}")
        self.row = row
        self.column = column


class SchemaError(ValidationError):
    def __init__(self, missing: List[str]) -> None:
        """
        Required columns are absent from a csv header

        Args:
            missing: names of the missing canonical columns

        Returns:
            N/A  # noqa: DAR202

        Raises:
            N/A

        """
        super().__init__(f"missing required column(s): {', '.join(missing)}")
        self.missing = missing


class DomainError(ValidationError):
    """Value outside the domain of an operation"""


class ConfigError(ValidationError):
    """Malformed or incomplete json configuration"""


class BadSpec(ValidationError):
    """Degenerate trajectory specification"""


class LengthMismatch(ValidationError):
    """Paired sequences differ in length"""


class MissingColumn(ValidationError):
    """A kpi required by an operation is absent from every record"""


class UnknownKpi(ValidationError):
    """Kpi name is not a recognized flight log column"""


class UnknownModelFamily(ValidationError):
    """No model family registered under the requested name"""


class NoOverlap(ValidationError):
    """Two flight logs cannot be aligned sample to sample"""


class DegenerateGeometry(ValidationError):
    """Uav is co-located with the base station antenna"""


class RankDeficient(NumericalError, ValidationError):
    """Least squares design matrix is numerically singular"""


class SingularCovariance(NumericalError):
    """Pooled within-class covariance is numerically singular"""


class NonFinite(NumericalError):
    """Training loss diverged to a non-finite value"""
