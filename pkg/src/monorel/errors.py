from .linalg import DimensionError


class PreconditionError(ValueError):
    """An operation was called on a relation lacking a required property."""


class NotMonotone(PreconditionError):
    pass


class NotMaximal(PreconditionError):
    pass


class NotSingleValued(PreconditionError):
    """<x, Ax> is not a single number (x is in dom A but not orthogonal to A0)."""


__all__ = ["DimensionError", "PreconditionError", "NotMonotone", "NotMaximal", "NotSingleValued"]
