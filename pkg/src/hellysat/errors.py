"""Exception hierarchy shared by every module."""


class HellySatError(ValueError):
    """Base class for all checked domain errors."""

    code = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class FaceError(HellySatError):
    code = "invalid-face"


class ParameterRange(HellySatError):
    code = "parameter-range"


class CollapseError(HellySatError):
    code = "collapse-error"


class SigmaNotAFace(CollapseError):
    code = "sigma-not-a-face"


class TauNotUniqueMaximal(CollapseError):
    code = "tau-not-unique-maximal"


class SizeMismatch(CollapseError):
    code = "size-mismatch"


class UnverifiedSequence(HellySatError):
    code = "unverified-sequence"


class DimensionTooLarge(HellySatError):
    code = "dimension-too-large"


class InducedDimensionTooLarge(HellySatError):
    code = "induced-dimension-too-large"


class PartCountMismatch(HellySatError):
    code = "part-count-mismatch"


class WrongSize(HellySatError):
    code = "wrong-size"


class NotRainbow(HellySatError):
    code = "not-rainbow"


class NotSubhypergraph(HellySatError):
    code = "not-subhypergraph"


class HostTooLarge(HellySatError):
    code = "host-too-large"


class RankMismatch(HellySatError):
    """Raised when exact rank disagrees with the closed-form bound.

    With moment-curve forms this cannot happen; it indicates a bug.
    """

    code = "rank-mismatch"


class CapExceeded(HellySatError):
    code = "cap-exceeded"


class RejectionBudgetExceeded(HellySatError):
    code = "rejection-budget-exceeded"


class HypothesisViolated(HellySatError):
    code = "hypothesis-violated"


class NotCollapsibleOrUnknown(HellySatError):
    """The audit could not certify collapsibility.

    ``details["status"]`` is ``"not-collapsible"`` (a checked failure) or
    ``"unknown"`` (search budget exhausted, inconclusive).
    """

    code = "not-collapsible-or-unknown"
