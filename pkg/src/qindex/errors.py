"""Exception hierarchy shared by all modules."""


class QIndexError(Exception):
    """Base class; ``exit_code`` is used by the command line front end."""

    exit_code = 2


class InputError(QIndexError):
    exit_code = 2


class ParseError(InputError):
    pass


class DegeneratePolygon(InputError):
    pass


class InvalidMultiplicity(InputError):
    pass


class HalfIntegerExponent(QIndexError):
    pass


class ZeroMultiplicity(QIndexError):
    pass


class NonGenericMomenta(InputError):
    def __init__(self, message, tree_id=None):
        super().__init__(message)
        self.tree_id = tree_id


class NotToricTypeI(QIndexError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class NonRealBoundary(NotToricTypeI):
    pass


class PolygonMismatch(InputError):
    pass


class ParityViolation(QIndexError):
    exit_code = 1


class EndpointOnCurve(InputError):
    pass


class NumericFailure(QIndexError):
    exit_code = 3


class RootIsolationFailure(NumericFailure):
    pass


class QuadratureFailure(NumericFailure):
    pass


class DegenerateGauss(NumericFailure):
    pass


class SnapFailure(NumericFailure):
    pass


class ClusterUnresolved(NumericFailure):
    pass


class TargetDegenerate(NumericFailure):
    pass
