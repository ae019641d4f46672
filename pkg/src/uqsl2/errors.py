"""Exception types shared across the package."""


class Uqsl2Error(Exception):
    """Base class for every error raised by this package."""


class ConfigError(Uqsl2Error, ValueError):
    """Invalid parameters: q a root of unity, theta incompatible with q, ..."""


class DimensionError(Uqsl2Error, ValueError):
    pass


class SingularMatrixError(Uqsl2Error, ZeroDivisionError):
    pass


class NotNilpotentError(Uqsl2Error, ValueError):
    pass


class DuplicateNodeError(Uqsl2Error, ValueError):
    pass


class InconsistentError(Uqsl2Error, AssertionError):
    """Two formulas that must agree did not; signals a construction bug."""


class RelationFailure(Uqsl2Error, AssertionError):
    """Generator matrices violate the defining relations of their presentation."""


class MixedTypeError(Uqsl2Error, ValueError):
    pass


class NotTypeOneError(Uqsl2Error, ValueError):
    pass


class NonIntegralWeightError(Uqsl2Error, ValueError):
    pass


class UnknownSymbolError(Uqsl2Error, KeyError):
    pass


class UnknownOperatorError(Uqsl2Error, KeyError):
    pass
