class StructuralError(ValueError):
    """Malformed map or diagram data."""


class ArgumentError(ValueError):
    """An operation was called with an argument outside its domain."""


class NotFoundError(KeyError):
    """A requested catalog entry does not exist."""


class UnrealizableError(ArgumentError):
    """A marked contraction does not end in a flow of the same class."""
