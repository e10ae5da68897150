"""Exception hierarchy shared by every module of the package."""


class GameError(Exception):
    """Base class for all errors raised by :mod:`abscgt`."""


class StructuralError(GameError, ValueError):
    """A form refers to an id that does not exist in its arena."""


class DomainError(GameError, ValueError):
    """A constructor or universe was given a parameter outside its domain."""


class ContractError(GameError, ValueError):
    """A documented precondition of an operation does not hold."""


class ResourceError(GameError, RuntimeError):
    """A configured capacity (arena size, birthday, enumeration budget) was exceeded."""


class FrozenArenaError(GameError, RuntimeError):
    """An operation tried to create a new form in a frozen arena."""
