"""Exception types shared across the package."""


class OBGError(Exception):
    """Base class for all package errors."""


class EmptyInterval(OBGError, ValueError):
    pass


class UnknownId(OBGError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class SameColor(OBGError, ValueError):
    pass


class MalformedSpec(OBGError, ValueError):
    pass


class BudgetExceeded(OBGError, RuntimeError):
    pass


class Inconclusive(OBGError, RuntimeError):
    pass


class NotApplicable(OBGError, ValueError):
    pass


class UnknownEntry(OBGError, ValueError):
    pass


class StructureError(OBGError, ValueError):
    """A FinStruct violates one of its invariants.

    ``code`` is a short stable identifier so callers (and the file parser)
    can tell failure kinds apart.
    """

    def __init__(self, code, message):
        super().__init__(f"{code}: {message}")
        self.code = code
