"""Exception hierarchy.

Every error carries the CLI exit code it maps to: 2 for malformed input,
3 for violated preconditions, 4 for numeric non-convergence.
"""


class TropFayError(Exception):
    exit_code = 1


class InputError(TropFayError):
    exit_code = 2


class PreconditionError(TropFayError):
    exit_code = 3


class NumericError(TropFayError):
    exit_code = 4


class DimensionMismatch(InputError):
    pass


class InvalidChain(InputError):
    pass


class NonHalfIntegerBeta(InputError):
    pass


class UnsupportedGenus(InputError):
    pass


class InvalidState(PreconditionError):
    pass


class NotGeneric(PreconditionError):
    pass


class NotPositiveDefinite(PreconditionError):
    pass


class NotOnCurve(PreconditionError):
    pass


class NonPositive(PreconditionError):
    pass


class QuasiPeriodicityBroken(PreconditionError):
    pass


class EmptyASet(PreconditionError):
    pass


class RootOrderingFailed(NumericError):
    pass


class QuadratureNotConverged(NumericError):
    pass
