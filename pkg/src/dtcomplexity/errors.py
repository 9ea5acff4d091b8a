"""Exception hierarchy shared by every module of the package."""


class DTError(Exception):
    """Base class for all errors raised by dtcomplexity."""


class TableError(DTError, ValueError):
    pass


class EmptyTable(TableError):
    pass


class DuplicateTuple(TableError):
    pass


class BadDimension(TableError):
    pass


class BadDecision(TableError):
    pass


class FamilyError(DTError, ValueError):
    pass


class UnknownAttribute(FamilyError):
    pass


class UniverseTooSmall(FamilyError):
    pass


class Unsupported(FamilyError):
    pass


class TreeFormatError(DTError, ValueError):
    pass


class AttributeOutOfRange(DTError, IndexError):
    pass


class IncompatibleSystem(DTError, ValueError):
    pass


class ResourceLimit(DTError, RuntimeError):
    """A configured size cap was exceeded; results would not be exact."""


class InconsistentProfile(DTError):
    """An observed behaviour combination matches no admissible local type."""
