"""Exception hierarchy shared by every module."""


class CayleySpectraError(Exception):
    """Base class; the CLI maps subclasses of ``InputError`` to exit code 2."""


class InputError(CayleySpectraError, ValueError):
    pass


class ComputationError(CayleySpectraError, RuntimeError):
    pass


class InvalidGroupSpec(InputError):
    pass


class GroupMismatch(InputError):
    pass


class InvalidPermutation(InputError):
    pass


class ClosureBoundExceeded(ComputationError):
    pass


class GroupTooLarge(ComputationError):
    pass


class InvalidModulus(InputError):
    pass


class InvalidArgument(InputError):
    pass


class CrtInfeasible(InputError):
    pass


class InfeasibleDelta(InputError):
    pass


class ParseError(InputError):
    pass


class InvalidSpec(InputError):
    def __init__(self, field: str, reason: str):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason
