"""Exception hierarchy.  The CLI maps these onto exit codes."""


class SubcircError(Exception):
    exit_code = 1


class InputError(SubcircError, ValueError):
    """Malformed input (wrong dimension, duplicate points, bad JSON...)."""

    exit_code = 2


class InfeasibleError(SubcircError):
    """A linear system has no solution."""

    exit_code = 3


class EmptyPolyhedronError(InfeasibleError):
    exit_code = 3


class PreconditionError(SubcircError):
    exit_code = 4


class NotAConeError(PreconditionError):
    pass


class NotAMemberError(PreconditionError):
    pass


class NonCompactError(PreconditionError):
    pass


class DegenerateSupportError(PreconditionError):
    pass


class UnboundedSamplingError(PreconditionError):
    pass


class WitnessMismatchError(PreconditionError):
    pass


class DependentExponentialsError(PreconditionError):
    """The exponentials exp(<alpha, x>) are not independent on X."""

    exit_code = 5


class NotPointedError(SubcircError):
    """Internal consistency failure: a circuit graph that contains a line."""

    exit_code = 1
