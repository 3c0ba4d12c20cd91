"""Exception hierarchy.

Two families exist so callers (the CLI in particular) can tell bad input
apart from input that parsed fine but cannot be evaluated.
"""


class KgEdasError(ValueError):
    """Base class for every error raised by this package."""


class InputError(KgEdasError):
    """Malformed files, bad configuration, or an unresolvable name."""


class ValidationError(KgEdasError):
    """Well-formed input that violates a semantic constraint."""


# input family
class ParseError(InputError):
    pass


class DuplicateRecord(InputError):
    pass


class MissingDirection(InputError):
    pass


class ConfigError(InputError):
    pass


class UnknownMetric(InputError):
    pass


class EmptyRankList(InputError):
    pass


class InvalidRank(InputError):
    pass


class InvalidK(InputError):
    pass


# validation family
class InvalidMatrix(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class ZeroAverageColumn(ValidationError):
    pass


class MissingCell(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class NoCriteriaLeft(ValidationError):
    pass


class ZeroVariance(ValidationError):
    pass


class TooFewSamples(ValidationError):
    pass
