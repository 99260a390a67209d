"""Exception hierarchy shared across the package.

Recoverable errors (a rejected interactive update, a bad message) derive
from ``RecoverableError`` so the session can report them without dying.
"""


class TourError(Exception):
    """Base class for all package errors."""

    code = "error"


class RecoverableError(TourError):
    """An operation failed but the previous state remains valid."""


class RankDeficient(RecoverableError):
    """Gram-Schmidt hit a residual below the rank tolerance."""

    code = "rank_deficient"


class DimensionMismatch(TourError):
    code = "dimension_mismatch"


class TargetTooLarge(RecoverableError):
    """Requested row norm leaves no mass for the remaining rows."""

    code = "target_too_large"


class DegenerateTarget(RecoverableError):
    """Requested row is too close to zero to define a direction."""

    code = "degenerate_target"


class MissingPrevBasis(RecoverableError):
    """Continuous basis completion called without a cached basis."""

    code = "missing_prev_basis"


class DomainError(TourError):
    code = "domain_error"


class DegenerateRange(TourError):
    """A variable has min == max, so it cannot be rescaled."""

    code = "degenerate_range"


class ParseError(TourError):
    code = "parse_error"


class EmptyData(TourError):
    code = "empty_data"


class ZeroVariance(TourError):
    code = "zero_variance"


class SingularCovariance(TourError):
    code = "singular_covariance"


class TooFewSamples(TourError):
    code = "too_few_samples"


class GridTooLarge(TourError):
    code = "grid_too_large"


class FrameMismatch(TourError):
    """Prediction file metadata disagrees with the dataset scaling."""

    code = "frame_mismatch"


class UnknownMessage(RecoverableError):
    code = "unknown_message"
